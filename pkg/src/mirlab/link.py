"""Link functions between increment-ratio values and the memory parameter.

The expected value of the increment-ratio statistic of a fractionally
integrated Gaussian series converges, as the aggregation scale grows, to a
smooth strictly increasing function ``lambda0_of_d`` of the memory parameter
``d``.  This module provides that function, its building blocks (a bivariate
Gaussian expectation ``lambda_of_r`` and a lag-one correlation ``rho_of_d``),
its derivative, and a clamped numerical inverse.  Everything here is exact
closed-form math; no data is touched.
"""

from __future__ import annotations

import math
from typing import NamedTuple

D_LOWER = -0.5
D_UPPER = 1.5

#: Guard band keeping the inverse away from the open-interval endpoints.
INVERSION_GUARD = 1e-4

#: Width of the removable singularity of rho_of_d at d = 0.5.
_RHO_SINGULARITY_GUARD = 1e-6

#: rho(0.5) = 9*log(3)/(8*log(2)) - 2, the continuity value of the closed form.
RHO_AT_HALF = 9.0 * math.log(3.0) / (8.0 * math.log(2.0)) - 2.0

# First derivative of rho at d = 0.5, from the series expansion of the
# quotient around the removable singularity.
_LN4 = math.log(4.0)
_LN9 = math.log(9.0)
_RHO_PRIME_AT_HALF = RHO_AT_HALF * (
    (16.0 * _LN4**2 - 9.0 * _LN9**2) / (2.0 * (16.0 * _LN4 - 9.0 * _LN9))
    - _LN4 / 2.0
)


class InversionResult(NamedTuple):
    """Value returned by :func:`lambda0_inverse`.

    ``clamped`` is True when the target lay outside the attainable range and
    the returned ``d`` is the guard-band boundary.
    """

    d: float
    clamped: bool


def _check_d(d: float) -> None:
    if not (D_LOWER < d < D_UPPER):
        raise ValueError(f"memory parameter d={d!r} outside ({D_LOWER}, {D_UPPER})")


def lambda_of_r(r: float) -> float:
    """Expected ratio |X+Y| / (|X|+|Y|) for standardized Gaussians with correlation r.

    Closed form: (2/pi)*arctan(sqrt((1+r)/(1-r)))
    + (1/pi)*sqrt((1+r)/(1-r))*log(2/(1+r)).  The endpoints r = +/-1 are the
    analytic limits 1 and 0.

    Parameters
    ----------
    r : float
        Correlation in [-1, 1].

    Returns
    -------
    float
        Value in [0, 1].
    """
    if not -1.0 <= r <= 1.0:
        raise ValueError(f"correlation r={r!r} outside [-1, 1]")
    if r == 1.0:
        return 1.0
    if r == -1.0:
        return 0.0
    s = math.sqrt((1.0 + r) / (1.0 - r))
    return 2.0 / math.pi * math.atan(s) + s / math.pi * math.log(2.0 / (1.0 + r))


def _lambda_prime_of_r(r: float) -> float:
    # d/dr of lambda_of_r on the open interval (-1, 1).
    s = math.sqrt((1.0 + r) / (1.0 - r))
    one_minus = 1.0 - r
    return (
        1.0 / (s * one_minus)
        + math.log(2.0 / (1.0 + r)) / (s * one_minus**2)
        - s / (1.0 + r)
    ) / math.pi


def rho_of_d(d: float) -> float:
    """Limiting lag-one correlation of scale-aggregated second increments.

    Closed form (4**(d+1.5) - 9**(d+0.5) - 7) / (2*(4 - 4**(d+0.5))), applied
    on the whole range (-0.5, 1.5); the singularity at d = 0.5 is removable
    and evaluated by its limit 9*log(3)/(8*log(2)) - 2.
    """
    _check_d(d)
    t = d - 0.5
    if abs(t) < _RHO_SINGULARITY_GUARD:
        # First-order expansion across the removable singularity; the O(t^2)
        # error is below 1e-12 inside the guard band.
        return RHO_AT_HALF + _RHO_PRIME_AT_HALF * t
    num = 4.0 ** (d + 1.5) - 9.0 ** (d + 0.5) - 7.0
    den = 2.0 * (4.0 - 4.0 ** (d + 0.5))
    return num / den


def _rho_prime(d: float) -> float:
    t = d - 0.5
    if abs(t) < _RHO_SINGULARITY_GUARD:
        return _RHO_PRIME_AT_HALF
    a = 4.0 ** (d + 1.5) - 9.0 ** (d + 0.5) - 7.0
    b = 2.0 * (4.0 - 4.0 ** (d + 0.5))
    a_prime = _LN4 * 4.0 ** (d + 1.5) - _LN9 * 9.0 ** (d + 0.5)
    b_prime = -2.0 * _LN4 * 4.0 ** (d + 0.5)
    return (a_prime * b - a * b_prime) / b**2


def lambda0_of_d(d: float) -> float:
    """Limit of the expected increment ratio as a function of d.

    Strictly increasing on (-0.5, 1.5), which is what makes the
    increment-ratio statistic invertible into a memory-parameter estimate.
    """
    return lambda_of_r(rho_of_d(d))


def lambda0_prime(d: float) -> float:
    """Derivative of :func:`lambda0_of_d` by the chain rule; strictly positive."""
    r = rho_of_d(d)
    return _lambda_prime_of_r(r) * _rho_prime(d)


def lambda0_inverse(x: float, tol: float = 1e-10) -> InversionResult:
    """Invert :func:`lambda0_of_d` by bisection.

    Any real ``x`` is accepted.  Targets below ``lambda0_of_d(-0.5 + eps)`` or
    above ``lambda0_of_d(1.5 - eps)`` (eps = 1e-4) return the clamped boundary
    with ``clamped=True`` instead of failing; monotonicity makes the bisection
    unconditionally safe in between.

    Parameters
    ----------
    x : float
        Target increment-ratio value.
    tol : float
        Terminal bracket width.

    Returns
    -------
    InversionResult
        Estimated ``d`` and a clamp flag.
    """
    lo = D_LOWER + INVERSION_GUARD
    hi = D_UPPER - INVERSION_GUARD
    if x <= lambda0_of_d(lo):
        return InversionResult(lo, True)
    if x >= lambda0_of_d(hi):
        return InversionResult(hi, True)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if lambda0_of_d(mid) < x:
            lo = mid
        else:
            hi = mid
    return InversionResult(0.5 * (lo + hi), False)
