"""Closed-form scattering amplitudes of single and double delta / delta-prime
potentials, plus S-matrix unitarity checks.

The 2x2 S matrix [[t, r_right], [r_left, t]] is unitary for real k, which is
what ``check_unitarity`` verifies column by column.  A single transmission
amplitude t serves both incidence directions (time-reversal symmetry); the two
reflection amplitudes differ whenever the potential is not parity symmetric,
i.e. whenever a delta-prime coupling is present.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import DegenerateMomentum, NotApplicable, PoleHit
from .params import Momentum, OneSpeciesParams, TwoSpeciesParams, as_momentum

# Denominators smaller than TAU_POLE_SCALE * (1 + |k|) count as a pole hit.
TAU_POLE_SCALE = 1e-12


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Transmission and left/right reflection amplitudes at momentum k."""

    t: complex
    r_right: complex
    r_left: complex
    k: Momentum


def _pole_guard(den: complex, k: complex) -> None:
    if abs(den) < TAU_POLE_SCALE * (1.0 + abs(k)):
        raise PoleHit(f"amplitude denominator {den!r} vanishes at k={k!r}")


def one_species_amplitudes(k, p: OneSpeciesParams) -> ScatteringAmplitudes:
    """Amplitudes of a single w0*delta + w1-type delta-prime potential.

    t(k)  = (1 - w1**2) k / D,  D = (1 + w1**2) k + i w0 / 2,
    r_R   = -(2 k w1 + i w0 / 2) / D,
    r_L   =  (2 k w1 - i w0 / 2) / D.

    D can only vanish on the positive imaginary axis (the bound-state pole of
    an attractive potential); that raises PoleHit.
    """
    mom = as_momentum(k)
    kv = mom.value
    if kv == 0:
        raise DegenerateMomentum("amplitudes are undefined at k = 0")
    w0, w1 = p.w0, p.w1
    den = (1.0 + w1 * w1) * kv + 0.5j * w0
    _pole_guard(den, kv)
    t = (1.0 - w1 * w1) * kv / den
    r_right = -(2.0 * kv * w1 + 0.5j * w0) / den
    r_left = (2.0 * kv * w1 - 0.5j * w0) / den
    return ScatteringAmplitudes(t=t, r_right=r_right, r_left=r_left, k=mom)


def two_species_amplitudes(k, p: TwoSpeciesParams) -> ScatteringAmplitudes:
    """Amplitudes of the double potential: (w0, w1) pair at -d/2, (v0, v1) at +d/2.

    All three amplitudes share the denominator

        Delta(k) = exp(2 i d k) (4 k v1 + i v0)(4 k w1 - i w0)
                 + (2 k (v1**2 + 1) + i v0)(2 k (w1**2 + 1) + i w0),

    which for real k can only vanish when both pairs are opaque
    (|w1| = |v1| = 1); on the imaginary axis its zeros are the bound states of
    the double well.
    """
    mom = as_momentum(k)
    kv = mom.value
    if kv == 0:
        raise DegenerateMomentum("amplitudes are undefined at k = 0")
    w0, w1, v0, v1, d = p.w0, p.w1, p.v0, p.v1, p.d
    phase = cmath.exp(2j * d * kv)
    delta = phase * (4.0 * kv * v1 + 1j * v0) * (4.0 * kv * w1 - 1j * w0) + (
        2.0 * kv * (v1 * v1 + 1.0) + 1j * v0
    ) * (2.0 * kv * (w1 * w1 + 1.0) + 1j * w0)
    _pole_guard(delta, kv)
    t = 4.0 * kv * kv * (v1 * v1 - 1.0) * (w1 * w1 - 1.0) / delta
    half = cmath.exp(1j * d * kv)
    r_right = (
        -(
            (2.0 * kv * (v1 * v1 + 1.0) + 1j * v0) * (4.0 * kv * w1 + 1j * w0) / half
            + half * (2.0 * kv * (w1 * w1 + 1.0) - 1j * w0) * (4.0 * kv * v1 + 1j * v0)
        )
        / delta
    )
    r_left = (
        half * (2.0 * kv * (v1 * v1 + 1.0) - 1j * v0) * (4.0 * kv * w1 - 1j * w0)
        + (2.0 * kv * (w1 * w1 + 1.0) + 1j * w0) * (4.0 * kv * v1 - 1j * v0) / half
    ) / delta
    return ScatteringAmplitudes(t=t, r_right=r_right, r_left=r_left, k=mom)


def unitarity_residuals(s: ScatteringAmplitudes) -> tuple[float, float, float]:
    """Column-orthonormality residuals of [[t, r_R], [r_L, t]].

    Returns (| |t|**2 + |r_L|**2 - 1 |, | |t|**2 + |r_R|**2 - 1 |,
    | t conj(r_R) + r_L conj(t) |); all three vanish for a unitary S matrix.
    """
    if not s.k.is_real:
        raise NotApplicable("unitarity is stated only for real scattering momenta")
    if s.k.value == 0:
        raise DegenerateMomentum("unitarity is undefined at k = 0")
    tt = abs(s.t) ** 2
    return (
        abs(tt + abs(s.r_left) ** 2 - 1.0),
        abs(tt + abs(s.r_right) ** 2 - 1.0),
        abs(s.t * s.r_right.conjugate() + s.r_left * s.t.conjugate()),
    )


def check_unitarity(s: ScatteringAmplitudes, tol: float = 1e-10) -> bool:
    """True iff all three unitarity residuals are below tol."""
    return max(unitarity_residuals(s)) < tol
