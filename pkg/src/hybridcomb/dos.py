"""Density of states and thermal occupation factors.

With q(eps) = arccos(F(eps)) / a the density of states per unit cell is

    g(eps) = (1/pi) |Re d arccos F / d eps| = (1/pi) |F'(eps)| / sqrt(1 - F**2)

inside an allowed band and zero in the gaps, where arccos F is purely
imaginary and the real part of dq/d(eps) vanishes.  g diverges like an inverse
square root at every band edge (the 1-D van Hove singularity); an exact edge
hit returns +inf as a marker.

Normalization: the change of variables q -> eps turns the Brillouin-zone
integral into exactly one state per cell per band, so every band integral of
g equals 1.  ``dos_band_integral`` checks that with edge-aware quadrature
(substituting eps = edge +- s**2 removes the singularity).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import exp, inf, pi, sqrt

import numpy as np

from .bands import Band
from .errors import BoseDivergence, QuadratureFailure
from .secular import secular_grid, secular_value

_STATISTICS = ("fermi_dirac", "bose_einstein")


@dataclass(frozen=True)
class DosSample:
    """One (eps, g) point, optionally with an occupation number attached."""

    epsilon: float
    g: float
    occupation: float | None = None


@dataclass(frozen=True)
class OccupationSpec:
    """Statistics plus chemical potential mu and temperature T.

    T absorbs Boltzmann's constant: occupation arguments are (eps - mu) / T
    in the same dimensionless energy units as eps.
    """

    statistics: str
    mu: float
    T: float

    def __post_init__(self) -> None:
        if self.statistics not in _STATISTICS:
            raise ValueError(f"statistics must be one of {_STATISTICS}, got {self.statistics!r}")
        if not self.T > 0.0:
            raise ValueError(f"temperature must be > 0, got {self.T}")


def _g_from(F: float, dF: float) -> float:
    one_minus = 1.0 - F * F
    if one_minus < 0.0:
        return 0.0
    if one_minus == 0.0:
        return inf
    return abs(dF) / (pi * sqrt(one_minus))


def density_of_states(epsilon: float, p) -> DosSample:
    """g(eps) for either comb; 0 in gaps, +inf exactly at a band edge."""
    val = secular_value(epsilon, p)
    return DosSample(epsilon=float(epsilon), g=_g_from(val.F, val.dF))


def dos_grid(epsilon, p) -> np.ndarray:
    """Vectorized g over an energy grid (inf markers included)."""
    eps = np.asarray(epsilon, dtype=float)
    F, dF = secular_grid(eps, p)
    one_minus = 1.0 - F * F
    g = np.zeros_like(eps)
    inside = one_minus > 0.0
    g[inside] = np.abs(dF[inside]) / (np.pi * np.sqrt(one_minus[inside]))
    g[one_minus == 0.0] = np.inf
    return g


def _half_band_integral(p, edge: float, mid: float, n_quad: int) -> float:
    """Integral of g from a band edge to the band midpoint.

    Substituting eps = edge + sgn * s**2 gives integrand 2 s g(...), finite at
    the edge, handled by Gauss-Legendre nodes (which avoid the endpoints).
    """
    sgn = 1.0 if mid > edge else -1.0
    smax = sqrt(abs(mid - edge))
    x, w = np.polynomial.legendre.leggauss(n_quad)
    s = 0.5 * smax * (x + 1.0)
    eps = edge + sgn * s * s
    g = dos_grid(eps, p)
    vals = 2.0 * s * g
    return float(np.sum(w * vals) * 0.5 * smax)


def dos_band_integral(band: Band, p, n_quad: int = 256) -> float:
    """Integral of g over one band; equals 1 to quadrature accuracy.

    Raises QuadratureFailure if the result stays more than 1e-3 away from 1
    after escalating the node count, which indicates a band record that does
    not belong to p.
    """
    lo, hi = band.lower.epsilon, band.upper.epsilon
    mid = 0.5 * (lo + hi)
    n = n_quad
    while True:
        total = _half_band_integral(p, lo, mid, n) + _half_band_integral(p, hi, mid, n)
        if abs(total - 1.0) <= 1e-3 or not np.isfinite(total):
            return total
        if n >= 4096:
            raise QuadratureFailure(
                f"band integral {total!r} differs from 1 by more than 1e-3 "
                f"at n_quad={n}; band edges ({lo}, {hi}) likely inconsistent with p"
            )
        n *= 4


def occupation(sample: DosSample, spec: OccupationSpec) -> DosSample:
    """Attach N(eps) = g(eps) * statistics factor, overflow safe.

    Fermi-Dirac: g / (exp((eps - mu)/T) + 1); Bose-Einstein:
    g / (exp((eps - mu)/T) - 1), which requires eps > mu.
    """
    x = (sample.epsilon - spec.mu) / spec.T
    if spec.statistics == "fermi_dirac":
        if x >= 0.0:
            e = exp(-x)
            factor = e / (1.0 + e)
        else:
            factor = 1.0 / (1.0 + exp(x))
    else:
        if x <= 0.0:
            raise BoseDivergence(
                f"Bose-Einstein occupation diverges for eps <= mu (eps={sample.epsilon}, mu={spec.mu})"
            )
        e = exp(-x)
        factor = e / (1.0 - e)
    return replace(sample, occupation=sample.g * factor)
