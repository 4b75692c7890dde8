"""Entire-in-energy trigonometric kernels.

Every closed-form band function in this package is assembled from cos(k*L)
and sin(k*L)/(k*L) with k = sqrt(eps).  Only even powers of k appear, so each
building block is an entire function of the energy eps: a single expression is
oscillatory for eps > 0 and becomes the cosh/sinh pair for eps < 0, with no
seam at eps = 0.  The derivative combinations divide by eps, which destroys
naive evaluation near zero through cancellation, so each kernel switches to
its Maclaurin series in u = L**2 * eps once |u| <= U_SERIES.  The switch is
scale aware (it depends on u, not on eps alone), which keeps full double
precision for any lattice spacing.

For very negative energies the hyperbolic branch grows like exp(L*sqrt(-eps));
overflow then propagates as inf, which downstream code reads as "deep inside a
forbidden region".
"""

from __future__ import annotations

from math import cos, cosh, factorial, sin, sinh, sqrt

import numpy as np

U_SERIES = 1.0

_N_TERMS = 13
_COS = [(-1.0) ** n / factorial(2 * n) for n in range(_N_TERMS)]
_SINC = [(-1.0) ** n / factorial(2 * n + 1) for n in range(_N_TERMS)]
# d/du of the sinc series: term n >= 1 contributes n * u**(n-1) / (2n+1)!
_DSINC = [(-1.0) ** (n + 1) * (n + 1) / factorial(2 * n + 3) for n in range(_N_TERMS)]

_COS_ARR = np.array(_COS)
_SINC_ARR = np.array(_SINC)
_DSINC_ARR = np.array(_DSINC)


def _horner(u: float, coeffs: list[float]) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * u + c
    return acc


def _cos_u(u: float) -> float:
    if abs(u) <= U_SERIES:
        return _horner(u, _COS)
    if u > 0.0:
        return cos(sqrt(u))
    return cosh(sqrt(-u))


def _sinc_u(u: float) -> float:
    if abs(u) <= U_SERIES:
        return _horner(u, _SINC)
    if u > 0.0:
        r = sqrt(u)
        return sin(r) / r
    r = sqrt(-u)
    return sinh(r) / r


def _masked(u: np.ndarray, coeffs: np.ndarray, closed) -> np.ndarray:
    out = np.empty_like(u)
    small = np.abs(u) <= U_SERIES
    if small.any():
        out[small] = np.polynomial.polynomial.polyval(u[small], coeffs)
    big = ~small
    if big.any():
        out[big] = closed(u[big])
    return out


def _cos_u_arr(u: np.ndarray) -> np.ndarray:
    def closed(ub):
        return np.cos(np.sqrt(ub.astype(complex))).real

    return _masked(u, _COS_ARR, closed)


def _sinc_u_arr(u: np.ndarray) -> np.ndarray:
    def closed(ub):
        z = np.sqrt(ub.astype(complex))
        return (np.sin(z) / z).real

    return _masked(u, _SINC_ARR, closed)


def cos_kl(eps, L: float):
    """cos(L*sqrt(eps)) as an entire function of eps (cosh for eps < 0)."""
    if isinstance(eps, np.ndarray):
        return _cos_u_arr(L * L * eps)
    return _cos_u(L * L * float(eps))


def sinc_kl(eps, L: float):
    """sin(L*sqrt(eps)) / (L*sqrt(eps)); equals 1 at eps = 0, sinh form below."""
    if isinstance(eps, np.ndarray):
        return _sinc_u_arr(L * L * eps)
    return _sinc_u(L * L * float(eps))


def dcos_kl(eps, L: float):
    """d/d(eps) of cos_kl; identically -(L**2 / 2) * sinc_kl."""
    return -0.5 * L * L * sinc_kl(eps, L)


def dsinc_kl(eps, L: float):
    """d/d(eps) of sinc_kl, i.e. (cos_kl - sinc_kl) / (2*eps) with safe eps -> 0."""
    L2 = L * L
    if isinstance(eps, np.ndarray):
        u = L2 * eps
        out = np.empty_like(u)
        small = np.abs(u) <= U_SERIES
        if small.any():
            out[small] = L2 * np.polynomial.polynomial.polyval(u[small], _DSINC_ARR)
        big = ~small
        if big.any():
            ub = u[big]
            out[big] = (_cos_u_arr(ub) - _sinc_u_arr(ub)) / (2.0 * eps[big])
        return out
    u = L2 * float(eps)
    if abs(u) <= U_SERIES:
        return L2 * _horner(u, _DSINC)
    return (_cos_u(u) - _sinc_u(u)) / (2.0 * float(eps))


def _diff_coeffs(La: float, Lb: float) -> np.ndarray:
    """Coefficients of (cos_kl(eps, La) - cos_kl(eps, Lb)) / eps in powers of eps."""
    a2, b2 = La * La, Lb * Lb
    pa, pb = 1.0, 1.0
    coeffs = np.empty(_N_TERMS)
    for n in range(1, _N_TERMS + 1):
        pa *= a2
        pb *= b2
        coeffs[n - 1] = (-1.0) ** n * (pa - pb) / factorial(2 * n)
    return coeffs


def cos_diff_over_e(eps, La: float, Lb: float):
    """(cos_kl(eps, La) - cos_kl(eps, Lb)) / eps, regular at eps = 0."""
    scale = max(La * La, Lb * Lb)
    if isinstance(eps, np.ndarray):
        out = np.empty_like(eps)
        small = np.abs(eps) * scale <= U_SERIES
        if small.any():
            out[small] = np.polynomial.polynomial.polyval(eps[small], _diff_coeffs(La, Lb))
        big = ~small
        if big.any():
            eb = eps[big]
            out[big] = (_cos_u_arr(La * La * eb) - _cos_u_arr(Lb * Lb * eb)) / eb
        return out
    e = float(eps)
    if abs(e) * scale <= U_SERIES:
        return float(np.polynomial.polynomial.polyval(e, _diff_coeffs(La, Lb)))
    return (_cos_u(La * La * e) - _cos_u(Lb * Lb * e)) / e


def dcos_diff_over_e(eps, La: float, Lb: float):
    """d/d(eps) of cos_diff_over_e."""
    scale = max(La * La, Lb * Lb)
    base = _diff_coeffs(La, Lb)
    dcoef = base[1:] * np.arange(1, _N_TERMS)
    if isinstance(eps, np.ndarray):
        out = np.empty_like(eps)
        small = np.abs(eps) * scale <= U_SERIES
        if small.any():
            out[small] = np.polynomial.polynomial.polyval(eps[small], dcoef)
        big = ~small
        if big.any():
            eb = eps[big]
            num = dcos_kl(eb, La) - dcos_kl(eb, Lb) - cos_diff_over_e(eb, La, Lb)
            out[big] = num / eb
        return out
    e = float(eps)
    if abs(e) * scale <= U_SERIES:
        return float(np.polynomial.polynomial.polyval(e, dcoef))
    return (dcos_kl(e, La) - dcos_kl(e, Lb) - cos_diff_over_e(e, La, Lb)) / e
