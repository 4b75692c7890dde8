"""Coupling merging laws: the two-species comb as its displacement degenerates.

When the intra-cell displacement d shrinks to 0 (or grows to a), the two point
interactions of each cell coalesce into a single delta / delta-prime pair.
Composing the two jump matrices gives the effective couplings; the composition
is non-abelian, so the two directions produce different effective delta
strengths u0 while sharing the same delta-prime strength u1.

For d -> 0 the (v0, v1) pair ends up immediately to the right of (w0, w1) at
the same node and the merged couplings are

    u0 = [w0 (1 - v1)**2 + v0 (1 + w1)**2] / (1 + w1 v1)**2,
    u1 = (v1 + w1) / (1 + v1 w1);

for d -> a the roles swap (each v merges with the w of the next cell, sitting
to its right), exchanging (w0, w1) <-> (v0, v1) in u0.  Both assignments are
fixed by the transfer-matrix composition and verified spectrally: the band
edges of the finite-d comb converge to those of the merged one-species comb,
empirically at linear rate in d (residual ~ d, see the limit tests).

Near 1 + v1 w1 = 0 the merged couplings diverge; the operations refuse inputs
that close rather than return huge values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MergeSingular
from .params import TwoSpeciesParams

TAU_MERGE = 1e-9


@dataclass(frozen=True)
class MergedCouplings:
    """Effective one-species couplings after the displacement limit."""

    u0: float
    u1: float
    direction: str  # "to_zero" or "to_a"


def _guard(p: TwoSpeciesParams) -> float:
    denom = 1.0 + p.v1 * p.w1
    if abs(denom) < TAU_MERGE:
        raise MergeSingular(f"1 + v1*w1 = {denom!r}: merged couplings diverge")
    return denom


def merge_d_to_zero(p: TwoSpeciesParams) -> MergedCouplings:
    """Effective couplings of the d -> 0 limit."""
    denom = _guard(p)
    u0 = (p.w0 * (1.0 - p.v1) ** 2 + p.v0 * (1.0 + p.w1) ** 2) / denom**2
    u1 = (p.v1 + p.w1) / denom
    return MergedCouplings(u0=u0, u1=u1, direction="to_zero")


def merge_d_to_a(p: TwoSpeciesParams) -> MergedCouplings:
    """Effective couplings of the d -> a limit; same u1, swapped-order u0."""
    denom = _guard(p)
    u0 = (p.v0 * (1.0 - p.w1) ** 2 + p.w0 * (1.0 + p.v1) ** 2) / denom**2
    u1 = (p.v1 + p.w1) / denom
    return MergedCouplings(u0=u0, u1=u1, direction="to_a")


def exchange_map(p: TwoSpeciesParams) -> TwoSpeciesParams:
    """The spectrum-preserving relabeling (w, v, d) -> (v, w, a - d).

    Looking at the chain from the other species' nodes swaps the coupling
    pairs and replaces d by a - d; the band function is invariant.  The map
    is an involution with fixed points at d = a/2, w = v.
    """
    return TwoSpeciesParams(w0=p.v0, w1=p.v1, v0=p.w0, v1=p.w1, d=p.a - p.d, a=p.a)
