"""Parameter records for the periodic delta / delta-prime combs.

Couplings and lengths are dimensionless: lengths in units of the particle's
Compton wavelength, energies in units of m*c**2/2 (see ``hybridcomb.units``
for the conversion from laboratory quantities).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite, sqrt

# |w1 -+ 1| below this counts as an opaque (zero transmission) coupling.  The
# closed band forms carry 1/(1 - w1**2) prefactors, so they lose all precision
# this close to the critical values; band-mode operations refuse such inputs
# and the discrete-spectrum path takes over.
TAU_CRIT = 1e-9


def _require_finite(name: str, value: float) -> None:
    if not isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


def _near_critical(c: float) -> bool:
    return abs(abs(c) - 1.0) < TAU_CRIT


@dataclass(frozen=True)
class OneSpeciesParams:
    """Identical delta (w0) + delta-prime (w1) pairs on a lattice of spacing a."""

    w0: float
    w1: float = 0.0
    a: float = 1.0

    def __post_init__(self) -> None:
        for name in ("w0", "w1", "a"):
            _require_finite(name, getattr(self, name))
        if self.a <= 0.0:
            raise ValueError(f"lattice spacing a must be > 0, got {self.a}")

    @property
    def is_opaque(self) -> bool:
        return _near_critical(self.w1)


@dataclass(frozen=True)
class TwoSpeciesParams:
    """Alternating pairs: (w0, w1) at the lattice nodes, (v0, v1) displaced by d.

    Within one cell of length a the two point interactions sit a distance d
    apart, 0 < d < a.
    """

    w0: float
    w1: float
    v0: float
    v1: float
    d: float
    a: float = 1.0

    def __post_init__(self) -> None:
        for name in ("w0", "w1", "v0", "v1", "d", "a"):
            _require_finite(name, getattr(self, name))
        if self.a <= 0.0:
            raise ValueError(f"lattice spacing a must be > 0, got {self.a}")
        if not 0.0 < self.d < self.a:
            raise ValueError(f"displacement must satisfy 0 < d < a, got d={self.d}, a={self.a}")

    @property
    def is_opaque(self) -> bool:
        return _near_critical(self.w1) or _near_critical(self.v1)


@dataclass(frozen=True)
class Momentum:
    """Momentum k with eps = k**2.

    Convention: eps >= 0 maps to k = sqrt(eps) on the nonnegative real axis,
    eps < 0 to k = i*sqrt(-eps) on the positive imaginary axis.  Values off
    those two axes are rejected.
    """

    value: complex

    def __post_init__(self) -> None:
        v = complex(self.value)
        object.__setattr__(self, "value", v)
        if not (isfinite(v.real) and isfinite(v.imag)):
            raise ValueError(f"momentum must be finite, got {v!r}")
        if v.real < 0.0 or v.imag < 0.0 or (v.real != 0.0 and v.imag != 0.0):
            raise ValueError(
                f"momentum must lie on the nonnegative real or imaginary axis, got {v!r}"
            )

    @classmethod
    def from_energy(cls, eps: float) -> "Momentum":
        if eps >= 0.0:
            return cls(complex(sqrt(eps), 0.0))
        return cls(complex(0.0, sqrt(-eps)))

    @property
    def energy(self) -> float:
        v = self.value
        return v.real * v.real - v.imag * v.imag

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0

    @property
    def is_imaginary(self) -> bool:
        return self.value.imag != 0.0


def as_momentum(k) -> Momentum:
    """Coerce a Momentum, complex or real number into a Momentum record."""
    if isinstance(k, Momentum):
        return k
    return Momentum(complex(k))
