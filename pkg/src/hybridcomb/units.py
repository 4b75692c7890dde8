"""Conversion from laboratory units to the dimensionless comb parameters.

Lengths are measured in the particle's Compton wavelength hbar/(m c), energies
in m c**2 / 2.  A delta strength mu (eV*Angstrom) and a delta-prime strength
lambda (eV*Angstrom**2) then map to

    w0 = 2 mu / (hbar c),      w1 = m lambda / hbar**2,      a = y0 m c / hbar.

w0 is independent of the particle mass; w1 = 1 (the opaque coupling) occurs
for an electron at |lambda| = hbar**2/m_e = 7.62 eV*Angstrom**2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonPositiveInput
from .params import OneSpeciesParams

HBARC_EV_ANGSTROM = 1973.27
HBAR2_OVER_ME_EV_ANGSTROM2 = 7.62
# Electron Compton wavelength consistent with the two constants above.
ELECTRON_COMPTON_ANGSTROM = HBAR2_OVER_ME_EV_ANGSTROM2 / HBARC_EV_ANGSTROM


@dataclass(frozen=True)
class PhysicalUnitsSpec:
    """Laboratory inputs: couplings in eV-Angstrom units, mass in electron masses."""

    mu: float  # delta strength, eV*Angstrom
    lam: float  # delta-prime strength, eV*Angstrom**2
    y0: float  # lattice spacing, Angstrom
    mass: float = 1.0  # particle mass in electron masses


def to_dimensionless(spec: PhysicalUnitsSpec) -> OneSpeciesParams:
    """Map laboratory parameters to the dimensionless one-species record.

    The result may land on an opaque coupling (w1 = +-1); construction still
    succeeds and band-mode operations will route the caller to the
    discrete-spectrum path.
    """
    if spec.mass <= 0.0:
        raise NonPositiveInput(f"mass must be > 0, got {spec.mass}")
    if spec.y0 <= 0.0:
        raise NonPositiveInput(f"lattice spacing must be > 0, got {spec.y0}")
    w0 = 2.0 * spec.mu / HBARC_EV_ANGSTROM
    w1 = spec.mass * spec.lam / HBAR2_OVER_ME_EV_ANGSTROM2
    a = spec.y0 * spec.mass / ELECTRON_COMPTON_ANGSTROM
    return OneSpeciesParams(w0=w0, w1=w1, a=a)
