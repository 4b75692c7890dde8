"""The band function F(eps) entering the Bloch condition cos(q a) = F(eps).

Energies with |F| <= 1 are allowed (q real), energies with |F| > 1 are
forbidden (q acquires an imaginary part).  Negative energies go through the
same expressions: with k = sqrt(eps) continued to the positive imaginary axis
the trigonometric kernels turn hyperbolic automatically (see ``_kernels``).

Three evaluation paths are provided:

* ``secular_generic`` builds F directly from scattering amplitudes,
  F = [exp(i a k) (t**2 - r_L r_R) + exp(-i a k)] / (2 t),
  for any potential confined to a fraction of the cell;
* ``secular_one_species`` / ``secular_two_species`` are the specialized closed
  forms of the hybrid combs, cheaper and equipped with an analytic derivative
  dF/d(eps) (the density of states needs it);
* ``hybridcomb.transfer`` recomputes the same quantity as half the trace of
  the unit-cell transfer matrix, serving as an independent cross-check.

The trace/determinant rewriting of the generic secular equation,
tr(S) cos(q a) = exp(-i a k) + det(S) exp(i a k), is algebraically identical
to the form above and is not a separate code path.
"""

from __future__ import annotations

from dataclasses import dataclass

import cmath

import numpy as np

from ._kernels import (
    cos_diff_over_e,
    cos_kl,
    dcos_diff_over_e,
    dcos_kl,
    dsinc_kl,
    sinc_kl,
)
from .errors import OpaqueRegime
from .params import Momentum, OneSpeciesParams, TwoSpeciesParams, as_momentum
from .scattering import TAU_POLE_SCALE, ScatteringAmplitudes


@dataclass(frozen=True)
class SecularValue:
    """F(eps) together with its energy derivative.

    ``dF`` is None when the evaluation path has no analytic derivative (the
    generic scattering route); ``imag_residual`` records |Im F| before the real
    part was taken.
    """

    epsilon: float
    F: float
    dF: float | None
    imag_residual: float

    @property
    def in_band(self) -> bool:
        return abs(self.F) <= 1.0


def _reject_opaque(p) -> None:
    if p.is_opaque:
        raise OpaqueRegime(
            "delta-prime coupling within 1e-9 of +-1: transmission vanishes and the "
            "band formulas degenerate; use the discrete-spectrum path instead"
        )


def _one_species_fdf(eps, p: OneSpeciesParams):
    w0, w1, a = p.w0, p.w1, p.a
    pref = (1.0 + w1 * w1) / (1.0 - w1 * w1)
    c = 0.5 * a * w0 / (1.0 + w1 * w1)
    F = pref * (cos_kl(eps, a) + c * sinc_kl(eps, a))
    dF = pref * (dcos_kl(eps, a) + c * dsinc_kl(eps, a))
    return F, dF


def _two_species_fdf(eps, p: TwoSpeciesParams):
    w0, w1, v0, v1, d, a = p.w0, p.w1, p.v0, p.v1, p.d, p.a
    b = a - 2.0 * d
    hw = 1.0 / (1.0 + w1 * w1)
    hv = 1.0 / (1.0 + v1 * v1)
    pref = ((1.0 + w1 * w1) / (1.0 - w1 * w1)) * ((1.0 + v1 * v1) / (1.0 - v1 * v1))
    c_sa = 0.5 * a * (w0 * hw + v0 * hv)
    c_sb = (v0 * w1 - v1 * w0) * hv * hw * b
    c_cb = 4.0 * w1 * v1 * hv * hw
    c_d = 0.25 * v0 * w0 * hv * hw
    F = pref * (
        c_sa * sinc_kl(eps, a)
        + c_sb * sinc_kl(eps, b)
        + cos_kl(eps, a)
        + c_cb * cos_kl(eps, b)
        - c_d * cos_diff_over_e(eps, a, b)
    )
    dF = pref * (
        c_sa * dsinc_kl(eps, a)
        + c_sb * dsinc_kl(eps, b)
        + dcos_kl(eps, a)
        + c_cb * dcos_kl(eps, b)
        - c_d * dcos_diff_over_e(eps, a, b)
    )
    return F, dF


def secular_one_species(epsilon: float, p: OneSpeciesParams) -> SecularValue:
    """F(eps) of the one-species comb.

    F = (1 + w1**2)/(1 - w1**2) * [cos(a k) + (a w0 / 2) * sin(a k)/(a k) / (1 + w1**2)]
    with k = sqrt(eps); real-kernel evaluation, so the imaginary residual is
    identically zero.
    """
    _reject_opaque(p)
    F, dF = _one_species_fdf(float(epsilon), p)
    return SecularValue(epsilon=float(epsilon), F=F, dF=dF, imag_residual=0.0)


def secular_two_species(epsilon: float, p: TwoSpeciesParams) -> SecularValue:
    """F(eps) of the two-species comb (closed form with analytic derivative)."""
    _reject_opaque(p)
    F, dF = _two_species_fdf(float(epsilon), p)
    return SecularValue(epsilon=float(epsilon), F=F, dF=dF, imag_residual=0.0)


def secular_value(epsilon: float, p) -> SecularValue:
    """Dispatch to the closed form matching the parameter record type."""
    if isinstance(p, OneSpeciesParams):
        return secular_one_species(epsilon, p)
    if isinstance(p, TwoSpeciesParams):
        return secular_two_species(epsilon, p)
    raise TypeError(f"unsupported parameter record {type(p).__name__}")


def secular_grid(epsilon, p) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (F, dF) on an energy grid; used by the band scanner and CLI."""
    _reject_opaque(p)
    eps = np.asarray(epsilon, dtype=float)
    if isinstance(p, OneSpeciesParams):
        return _one_species_fdf(eps, p)
    if isinstance(p, TwoSpeciesParams):
        return _two_species_fdf(eps, p)
    raise TypeError(f"unsupported parameter record {type(p).__name__}")


def secular_generic(k, amplitudes: ScatteringAmplitudes, a: float) -> SecularValue:
    """F(eps) from raw scattering data of the cell potential.

    No derivative is attached; use ``secular_derivative_check`` style finite
    differences if one is required on this path.
    """
    mom = as_momentum(k)
    if amplitudes.k.value != mom.value:
        raise ValueError(
            f"amplitudes were evaluated at k={amplitudes.k.value!r}, not k={mom.value!r}"
        )
    kv = mom.value
    t = amplitudes.t
    if abs(t) < TAU_POLE_SCALE * (1.0 + abs(kv)):
        raise OpaqueRegime("transmission amplitude vanishes: band function undefined")
    z = cmath.exp(1j * a * kv) * (t * t - amplitudes.r_left * amplitudes.r_right) + cmath.exp(
        -1j * a * kv
    )
    F = z / (2.0 * t)
    return SecularValue(
        epsilon=mom.energy, F=F.real, dF=None, imag_residual=abs(F.imag)
    )


def secular_generic_from_energy(epsilon: float, amplitude_fn, a: float) -> SecularValue:
    """Convenience wrapper: momentum convention + amplitude_fn + secular_generic."""
    mom = Momentum.from_energy(epsilon)
    return secular_generic(mom, amplitude_fn(mom), a)


def secular_derivative_check(epsilon: float, p, h_fd: float) -> float:
    """|analytic dF - central finite difference| at one energy.

    The two probe points eps +- h_fd must not straddle zero merely as a guard
    against comparing across scales; the kernels themselves are smooth there.
    """
    if (epsilon - h_fd) * (epsilon + h_fd) < 0.0:
        raise ValueError("probe points straddle eps = 0; shrink h_fd or move epsilon")
    val = secular_value(epsilon, p)
    fp = secular_value(epsilon + h_fd, p).F
    fm = secular_value(epsilon - h_fd, p).F
    return abs(val.dF - (fp - fm) / (2.0 * h_fd))
