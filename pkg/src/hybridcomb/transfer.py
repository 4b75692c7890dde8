"""Transfer-matrix route to the band spectrum: an independent oracle.

A point interaction acts on the state vector (psi, psi') as a jump matrix,
free stretches act as propagation matrices, and the product over one unit cell
is the monodromy matrix M.  The Bloch condition reads cos(q a) = tr(M) / 2,
which must agree with the closed forms in ``hybridcomb.secular`` for every
non-opaque parameter set — that agreement is the central correctness test of
the whole package, since the two routes share no code.

Convention note: the delta / delta-prime couplings (w0, w1) enter the jump as

    alpha = (1 + w1) / (1 - w1),   beta = w0 / (1 - w1**2),
    (psi, psi')(0+) = [[alpha, 0], [beta, 1/alpha]] (psi, psi')(0-).

This is the local definition of the delta-prime; it is calibrated (not
assumed) by requiring ``scattering_from_jump`` to reproduce the closed-form
amplitudes exactly — see the calibration tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._kernels import cos_kl, sinc_kl
from .errors import (
    DegenerateMomentum,
    NotApplicable,
    OpaqueRegime,
    SingularConversion,
)
from .params import (
    TAU_CRIT,
    Momentum,
    OneSpeciesParams,
    TwoSpeciesParams,
    as_momentum,
)
from .scattering import ScatteringAmplitudes


@dataclass(frozen=True)
class TransferMatrix:
    """Real 2x2 matrix acting on (psi, psi'); unimodular by construction."""

    m11: float
    m12: float
    m21: float
    m22: float

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(
            m11=self.m11 * other.m11 + self.m12 * other.m21,
            m12=self.m11 * other.m12 + self.m12 * other.m22,
            m21=self.m21 * other.m11 + self.m22 * other.m21,
            m22=self.m21 * other.m12 + self.m22 * other.m22,
        )


def jump_matrix(w0: float, w1: float) -> TransferMatrix:
    """Matching-condition matrix [[alpha, 0], [beta, 1/alpha]] of one pair."""
    if abs(abs(w1) - 1.0) < TAU_CRIT:
        raise OpaqueRegime("jump matrix degenerates at w1 = +-1 (opaque wall)")
    alpha = (1.0 + w1) / (1.0 - w1)
    beta = w0 / (1.0 - w1 * w1)
    return TransferMatrix(m11=alpha, m12=0.0, m21=beta, m22=1.0 / alpha)


def propagation_matrix(epsilon: float, L: float) -> TransferMatrix:
    """Free propagation over a stretch of length L at energy eps.

    [[cos(kL), sin(kL)/k], [-k sin(kL), cos(kL)]] with k = sqrt(eps); the
    entire kernels make this the cosh/sinh matrix for eps < 0 and
    [[1, L], [0, 1]] at eps = 0.
    """
    if L <= 0.0:
        raise ValueError(f"propagation length must be > 0, got {L}")
    c = cos_kl(epsilon, L)
    s = sinc_kl(epsilon, L)
    return TransferMatrix(m11=c, m12=L * s, m21=-epsilon * L * s, m22=c)


def monodromy_one_species(epsilon: float, p: OneSpeciesParams) -> TransferMatrix:
    """Unit-cell transfer matrix: one jump followed by a free stretch a."""
    if p.is_opaque:
        raise OpaqueRegime("monodromy undefined for opaque couplings")
    return jump_matrix(p.w0, p.w1) @ propagation_matrix(epsilon, p.a)


def monodromy_two_species(epsilon: float, p: TwoSpeciesParams) -> TransferMatrix:
    """Unit-cell transfer matrix of the two-species comb.

    Cell decomposition: jump (w0, w1), stretch d, jump (v0, v1), stretch a - d.
    The trace is invariant under cyclic rotation of these factors, so any
    starting point in the cell gives the same band function.
    """
    if p.is_opaque:
        raise OpaqueRegime("monodromy undefined for opaque couplings")
    return (
        jump_matrix(p.v0, p.v1)
        @ propagation_matrix(epsilon, p.d)
        @ jump_matrix(p.w0, p.w1)
        @ propagation_matrix(epsilon, p.a - p.d)
    )


def bloch_cosine(epsilon: float, p) -> float:
    """cos(q a) = tr(M)/2 via the transfer route, either species count."""
    if isinstance(p, OneSpeciesParams):
        return 0.5 * monodromy_one_species(epsilon, p).trace
    if isinstance(p, TwoSpeciesParams):
        return 0.5 * monodromy_two_species(epsilon, p).trace
    raise TypeError(f"unsupported parameter record {type(p).__name__}")


def scattering_from_jump(k, J: TransferMatrix) -> ScatteringAmplitudes:
    """Scattering amplitudes of an isolated jump matrix at real momentum k.

    Matching plane waves across the jump gives the closed solution

        D   = k**2 J12 - J21 + i k (J11 + J22)
        t   = 2 i k det(J) / D
        r_R = [k**2 J12 + J21 + i k (J22 - J11)] / D
        r_L = [k**2 J12 + J21 + i k (J11 - J22)] / D.
    """
    mom = as_momentum(k)
    if mom.value == 0:
        raise DegenerateMomentum("conversion undefined at k = 0")
    if not mom.is_real:
        raise NotApplicable("plane-wave matching is stated for real momenta")
    kv = mom.value
    den = kv * kv * J.m12 - J.m21 + 1j * kv * (J.m11 + J.m22)
    scale = (1.0 + abs(kv)) * (1.0 + max(abs(J.m11), abs(J.m12), abs(J.m21), abs(J.m22)))
    if abs(den) < 1e-12 * scale:
        raise SingularConversion(f"degenerate plane-wave matching at k={kv!r}")
    t = 2j * kv * J.det / den
    r_right = (kv * kv * J.m12 + J.m21 + 1j * kv * (J.m22 - J.m11)) / den
    r_left = (kv * kv * J.m12 + J.m21 + 1j * kv * (J.m11 - J.m22)) / den
    return ScatteringAmplitudes(t=t, r_right=r_right, r_left=r_left, k=mom)
