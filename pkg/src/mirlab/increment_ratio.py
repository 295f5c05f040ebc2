"""The increment-ratio statistic and its multiscale vector.

For a path X_1,...,X_N and a scale ``ell`` the statistic averages
|A_k + B_k| / (|A_k| + |B_k|) over k = 0,...,N-3*ell-1, where A_k and B_k are
the sums of lag-``ell`` increments over two adjacent windows of length
``ell``:

    A_k = sum_{t=k+1..k+ell}      (X_{t+ell} - X_t)
    B_k = sum_{t=k+ell+1..k+2ell} (X_{t+ell} - X_t)

The ratio is invariant to affine maps of the series, lies in [0, 1], and its
mean value is a monotone function of the memory parameter (see
:mod:`mirlab.link`).  The implementation uses prefix sums of the lag-``ell``
increment series, so each scale costs O(N).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .exceptions import DegenerateSeriesError, SeriesTooShortError


class IrVector(NamedTuple):
    """Increment-ratio values at the scales m, 2m, ..., p*m."""

    m: int
    p: int
    values: np.ndarray


def as_series(x) -> np.ndarray:
    """Validate and return a 1-d float array of observations.

    Raises ``ValueError`` on empty input, wrong dimensionality, or any
    non-finite value.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"series must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError("series is empty")
    if not np.isfinite(arr).all():
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ValueError(f"series contains a non-finite value at index {bad}")
    return arr


def _window_sums(x: np.ndarray, ell: int) -> np.ndarray:
    # a[k] = sum of lag-ell increments over t = k+1..k+ell, k = 0..N-2*ell.
    # Built from the increment series so that additive shifts of x cancel
    # exactly and no large partial sums accumulate.
    incr = x[ell:] - x[:-ell]
    csum = np.concatenate(([0.0], np.cumsum(incr)))
    return csum[ell:] - csum[:-ell]


def ir_statistic(x, ell: int) -> float:
    """Increment-ratio statistic at a single scale.

    Parameters
    ----------
    x : array_like
        Observed path, at least 3*ell + 1 points.
    ell : int
        Positive aggregation scale.

    Returns
    -------
    float
        Value in [0, 1].

    Raises
    ------
    SeriesTooShortError
        If N < 3*ell + 1 (no summand exists).
    DegenerateSeriesError
        If some term is 0/0, i.e. both half-window sums vanish.  This cannot
        happen almost surely for series with a continuous distribution, so it
        signals degenerate input rather than being imputed away.
    """
    arr = as_series(x)
    ell = int(ell)
    if ell < 1:
        raise ValueError(f"scale ell={ell!r} must be a positive integer")
    n = arr.size
    if n < 3 * ell + 1:
        raise SeriesTooShortError(
            f"series too short: need N >= {3 * ell + 1} for ell={ell}, got N={n}"
        )
    sums = _window_sums(arr, ell)
    k = n - 3 * ell
    a = sums[:k]
    b = sums[ell : ell + k]
    denom = np.abs(a) + np.abs(b)
    if np.any(denom == 0.0):
        raise DegenerateSeriesError(
            "degenerate series: a term has both half-window sums equal to zero"
        )
    return float(np.mean(np.abs(a + b) / denom))


def ir_vector(x, m, p: int) -> IrVector:
    """Increment-ratio values at the p scales j*m, j = 1..p.

    A real-valued ``m`` is floored to an integer first; this is the
    convention used throughout the estimation pipeline.

    Raises
    ------
    SeriesTooShortError
        If N < 3*p*floor(m) + 1, i.e. the largest scale has no summand.
    """
    arr = as_series(x)
    m_int = int(np.floor(m))
    if m_int < 1:
        raise ValueError(f"base scale m={m!r} floors below 1")
    p = int(p)
    if p < 1:
        raise ValueError(f"scale count p={p!r} must be a positive integer")
    if arr.size < 3 * p * m_int + 1:
        raise SeriesTooShortError(
            f"series too short: need N >= {3 * p * m_int + 1} for m={m_int}, "
            f"p={p}, got N={arr.size}"
        )
    values = np.array([ir_statistic(arr, j * m_int) for j in range(1, p + 1)])
    return IrVector(m=m_int, p=p, values=values)
