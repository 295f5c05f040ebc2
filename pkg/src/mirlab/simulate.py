"""Exact Gaussian simulation of fractionally integrated processes.

Families
--------
``fgn``
    Fractional Gaussian noise with Hurst index H = d + 0.5, d in (-0.5, 0.5).
``arfima``
    ARFIMA(p', d, q') with Gaussian innovations, d in (-0.5, 1.5).  The AR
    polynomial is 1 - a_1 z - ... - a_p z^p and the MA polynomial
    1 + b_1 z + ... + b_q z^q.
``spectral_f3``
    Spectral density |x|^(-2d) * (1 + c1*|x|^beta) on (0, pi].
``spectral_f4``
    Spectral density |x|^(-2d) * (1 + |log x|*|x|) on (0, pi].
``trend``
    sin(2*pi*t/n) + sqrt(2*t/n) * ARFIMA(0, d, 0)_t, i.e. a smooth additive
    trend plus a multiplicatively trended fractional factor.

Stationary paths (d < 0.5) are drawn exactly by circulant embedding of the
autocovariance (Davies and Harte, 1987; Wood and Chan, 1994): the Toeplitz
covariance is embedded in a circulant matrix diagonalized by the FFT.  For
d >= 0.5 the increment process with memory d - 1 is drawn the same way and
cumulated.  Randomness comes from a counter-based Philox generator keyed by
the spec seed, so paths are reproducible and substreams are independent.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, replace
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.fft import next_fast_len
from scipy.signal import fftconvolve, lfilter
from scipy.special import gammaln

from .exceptions import EmbeddingError, NonStationarySpecError, QuadratureError

FAMILIES = ("fgn", "arfima", "spectral_f3", "spectral_f4", "trend")

#: Relative tolerance below which negative circulant eigenvalues are truncated.
_EIG_TRUNCATION = 1e-8

#: Maximum embedding growth (8x the minimal size) before giving up.
_MAX_DOUBLINGS = 3


@dataclass(frozen=True)
class ProcessSpec:
    """Declarative description of one simulated process.

    ``ar``/``ma`` only apply to the arfima family; ``c1``/``beta`` only to
    spectral_f3.  ``seed`` fully determines the sample path.
    """

    family: str
    d: float
    n: int
    seed: int = 0
    ar: tuple = ()
    ma: tuple = ()
    c1: float = 1.0
    beta: float = 0.1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 1:
            raise ValueError(f"path length n={self.n!r} must be positive")
        object.__setattr__(self, "ar", tuple(float(a) for a in self.ar))
        object.__setattr__(self, "ma", tuple(float(b) for b in self.ma))
        if self.family == "fgn":
            if not -0.5 < self.d < 0.5:
                raise ValueError(
                    f"fgn requires d in (-0.5, 0.5) (H = d + 0.5 in (0, 1)), got d={self.d}"
                )
        elif not -0.5 < self.d < 1.5:
            raise ValueError(f"d={self.d} outside (-0.5, 1.5)")
        if self.family != "arfima" and (self.ar or self.ma):
            raise ValueError(f"ar/ma coefficients are only valid for arfima, not {self.family}")
        if self.family == "arfima" and self.ar:
            roots = np.polynomial.polynomial.polyroots((1.0,) + tuple(-a for a in self.ar))
            if np.any(np.abs(roots) <= 1.0 + 1e-10):
                raise NonStationarySpecError(
                    f"AR polynomial has a root on or inside the unit circle: ar={self.ar}"
                )
        if self.family == "spectral_f3" and self.c1 < 0:
            raise ValueError(f"c1={self.c1} must be nonnegative")
        if self.family == "spectral_f3" and self.c1 > 0 and self.beta <= 0:
            raise ValueError(f"beta={self.beta} must be positive")

    def to_json(self) -> str:
        d = asdict(self)
        d["ar"] = list(self.ar)
        d["ma"] = list(self.ma)
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ProcessSpec":
        return cls(**json.loads(text))


def _rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


# ---------------------------------------------------------------------------
# Autocovariances
# ---------------------------------------------------------------------------

def _fgn_autocov(hurst: float, nlags: int) -> np.ndarray:
    k = np.arange(nlags, dtype=float)
    two_h = 2.0 * hurst
    return 0.5 * (np.abs(k + 1) ** two_h - 2 * np.abs(k) ** two_h + np.abs(k - 1) ** two_h)


def _fracnoise_autocov(d: float, nlags: int) -> np.ndarray:
    # ARFIMA(0, d, 0): gamma(0) = Gamma(1-2d)/Gamma(1-d)^2 and the ratio
    # gamma(k)/gamma(k-1) = (k-1+d)/(k-d), both exact.
    g0 = math.exp(gammaln(1.0 - 2.0 * d) - 2.0 * gammaln(1.0 - d))
    if nlags == 1:
        return np.array([g0])
    k = np.arange(1, nlags, dtype=float)
    ratios = (k - 1.0 + d) / (k - d)
    return g0 * np.concatenate(([1.0], np.cumprod(ratios)))


def _arma_psi_weights(ar: tuple, ma: tuple) -> np.ndarray:
    # Impulse response of theta(B)/phi(B); geometric decay is guaranteed by
    # the stationarity check in ProcessSpec.
    b = np.concatenate(([1.0], np.asarray(ma, dtype=float)))
    a = np.concatenate(([1.0], -np.asarray(ar, dtype=float)))
    length = 64
    while True:
        impulse = np.zeros(length)
        impulse[0] = 1.0
        psi = lfilter(b, a, impulse)
        scale = np.max(np.abs(psi))
        if np.max(np.abs(psi[-8:])) <= 1e-17 * scale or length >= 1 << 20:
            return psi
        length *= 2


def _arfima_autocov(d: float, ar: tuple, ma: tuple, nlags: int) -> np.ndarray:
    if not (ar or ma):
        return _fracnoise_autocov(d, nlags)
    psi = _arma_psi_weights(ar, ma)
    # Fourier coefficients of |theta/phi|^2: c_r = sum_j psi_j psi_{j+r}.
    c = np.correlate(psi, psi, mode="full")[len(psi) - 1 :]
    w = len(c)
    base = _fracnoise_autocov(d, nlags + w - 1)
    # sym[i] = gamma0(i - (w-1)); kernel[i] = c(|i - (w-1)|); the convolution
    # then carries gamma(k) at index k + 2*(w-1).
    sym = np.concatenate((base[w - 1 : 0 : -1], base))
    kernel = np.concatenate((c[::-1], c[1:]))
    full = fftconvolve(sym, kernel)
    return full[2 * (w - 1) : 2 * (w - 1) + nlags]


def _spectral_autocov(spec: ProcessSpec, nlags: int) -> np.ndarray:
    # gamma(k) = (1/pi) * int_0^pi f(x) cos(kx) dx, with the x = u^(1/(1-2d))
    # substitution taming the |x|^(-2d) endpoint singularity and an
    # oscillatory-weight rule on the remainder.
    d = spec.d
    if spec.family == "spectral_f3":
        smooth = lambda x: 1.0 + spec.c1 * x**spec.beta
    else:
        smooth = lambda x: 1.0 + np.abs(np.log(x)) * x

    def density(x):
        return x ** (-2.0 * d) * smooth(x)

    singular = d > 1e-12
    if singular:
        q = 1.0 - 2.0 * d
        sub = lambda u: (smooth(u ** (1.0 / q)) * np.cos(k_cur * u ** (1.0 / q))) / q
    gamma = np.empty(nlags)
    err_budget = 0.0
    for k in range(nlags):
        k_cur = k
        cut = math.pi if k == 0 else min(1.0, math.pi / k)
        if singular:
            head, e1 = integrate.quad(sub, 0.0, cut**q, epsabs=1e-12, epsrel=1e-9, limit=200)
        else:
            head, e1 = integrate.quad(
                lambda x: density(x) * np.cos(k * x), 0.0, cut,
                epsabs=1e-12, epsrel=1e-9, limit=200,
            )
        if cut < math.pi:
            tail, e2 = integrate.quad(
                density, cut, math.pi, weight="cos", wvar=k,
                epsabs=1e-12, epsrel=1e-9, limit=400,
            )
        else:
            tail, e2 = 0.0, 0.0
        gamma[k] = (head + tail) / math.pi
        err_budget = max(err_budget, e1 + e2)
    if not np.isfinite(gamma).all() or err_budget > 1e-6 * max(abs(gamma[0]), 1.0):
        raise QuadratureError(
            f"autocovariance quadrature did not converge for {spec.family} "
            f"(d={d}, error estimate {err_budget:.2e})"
        )
    return gamma


def _stationary_autocov(spec: ProcessSpec, nlags: int) -> np.ndarray:
    if spec.family == "fgn":
        return _fgn_autocov(spec.d + 0.5, nlags)
    if spec.family == "arfima":
        return _arfima_autocov(spec.d, spec.ar, spec.ma, nlags)
    return _spectral_autocov(spec, nlags)


def autocov(spec: ProcessSpec, lags: int) -> np.ndarray:
    """Theoretical autocovariance gamma(0..lags-1) of a stationary spec.

    Raises ``NonStationarySpecError`` when the effective memory parameter is
    0.5 or larger; for those paths :func:`generate` simulates the increment
    process (memory d - 1) internally and cumulates.
    """
    if lags < 1:
        raise ValueError("lags must be positive")
    if spec.family == "trend":
        raise NonStationarySpecError("the trend family has no stationary autocovariance")
    if spec.family != "fgn" and spec.d >= 0.5:
        raise NonStationarySpecError(
            f"d={spec.d} >= 0.5 is not a stationary parameterization"
        )
    gamma = _stationary_autocov(spec, lags)
    if gamma[0] <= 0 or np.max(np.abs(gamma)) > gamma[0] * (1.0 + 1e-9):
        raise QuadratureError("computed autocovariance violates |gamma(k)| <= gamma(0)")
    return gamma


# ---------------------------------------------------------------------------
# Circulant embedding
# ---------------------------------------------------------------------------

def _embedding_key(spec: ProcessSpec):
    return (spec.family, spec.d, spec.ar, spec.ma, spec.c1, spec.beta, spec.n)


@lru_cache(maxsize=64)
def _cached_eigenvalues(key) -> tuple:
    family, d, ar, ma, c1, beta, n = key
    spec = ProcessSpec(family=family, d=d, n=n, ar=ar, ma=ma, c1=c1, beta=beta)
    size = next_fast_len(max(2 * (n - 1), 2))
    for _ in range(_MAX_DOUBLINGS + 1):
        half = size // 2
        gamma = _stationary_autocov(spec, half + 1)
        circ = np.empty(size)
        circ[: half + 1] = gamma
        circ[half + 1 :] = gamma[size - half - 1 : 0 : -1]
        eig = np.fft.fft(circ).real
        low, high = eig.min(), eig.max()
        if low >= -_EIG_TRUNCATION * high:
            return size, np.maximum(eig, 0.0)
        size = next_fast_len(2 * size)
    raise EmbeddingError(
        f"circulant embedding stayed indefinite up to {size} points for {spec}"
    )


def _draw_stationary(spec: ProcessSpec, rng: np.random.Generator) -> np.ndarray:
    size, eig = _cached_eigenvalues(_embedding_key(spec))
    z = rng.standard_normal((2, size))
    w = np.fft.fft(np.sqrt(eig) * (z[0] + 1j * z[1]))
    return w.real[: spec.n] / math.sqrt(size)


def generate(spec: ProcessSpec) -> np.ndarray:
    """Draw one exact Gaussian path described by ``spec``.

    Deterministic in ``spec`` (including the seed); repeated calls return
    bit-identical arrays.  For d >= 0.5 the returned path is the cumulative
    sum of an exact stationary increment path with memory d - 1.
    """
    rng = _rng_from_seed(spec.seed)
    if spec.family == "trend":
        base = replace(spec, family="arfima")
        factor = _generate_with_rng(base, rng)
        t = np.arange(1, spec.n + 1, dtype=float)
        return np.sin(2.0 * math.pi * t / spec.n) + np.sqrt(2.0 * t / spec.n) * factor
    return _generate_with_rng(spec, rng)


def _generate_with_rng(spec: ProcessSpec, rng: np.random.Generator) -> np.ndarray:
    if spec.family != "fgn" and spec.d >= 0.5:
        incr = replace(spec, d=spec.d - 1.0)
        return np.cumsum(_draw_stationary(incr, rng))
    return _draw_stationary(spec, rng)


def write_series_csv(path, values, header: str | None = None) -> None:
    """Write a path as a single-column CSV (optional header line)."""
    arr = np.asarray(values, dtype=float)
    with open(path, "w") as fh:
        if header:
            fh.write(header.strip() + "\n")
        for v in arr:
            fh.write(f"{v!r}\n")


def read_series_csv(path) -> np.ndarray:
    """Read a single-column CSV written by :func:`write_series_csv`.

    Accepts one value per line or comma-separated values, with an optional
    non-numeric header line.  Raises ``ValueError`` naming the offending line
    on non-finite or unparseable entries.
    """
    values = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            for token in line.split(","):
                token = token.strip()
                if not token:
                    continue
                try:
                    v = float(token)
                except ValueError:
                    if lineno == 1 and not values:
                        break  # header line
                    raise ValueError(f"line {lineno}: cannot parse {token!r}") from None
                if not math.isfinite(v):
                    raise ValueError(f"line {lineno}: non-finite value {token!r}")
                values.append(v)
    if not values:
        raise ValueError("no numeric data found")
    return np.asarray(values)
