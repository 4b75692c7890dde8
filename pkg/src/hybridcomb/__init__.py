"""Band spectra of one-dimensional periodic delta / delta-prime potentials.

The package computes scattering amplitudes, the band function F(eps) of the
Bloch condition cos(q a) = F(eps), allowed-band enumeration with dispersion
samples, densities of states with thermal occupation, coupling merging laws,
and the discrete spectra of the opaque (|w1| = 1) regimes — for combs with one
point-interaction species per cell and for combs alternating two species.

Every closed form is backed by an independent transfer-matrix route
(``hybridcomb.transfer``); the test suite holds the two against each other.
"""

__version__ = "0.1.0"

from .bands import (
    Band,
    BandEdge,
    allowed_intervals,
    classify_negative_band,
    default_energy_floor,
    discrete_spectrum_critical,
    enumerate_bands,
    find_band_edges,
    forbidden_measure,
)
from .dos import DosSample, OccupationSpec, density_of_states, dos_band_integral, dos_grid, occupation
from .errors import (
    BoseDivergence,
    DegenerateMomentum,
    GridTooLarge,
    HybridCombError,
    InvalidRegime,
    MergeSingular,
    NonPositiveInput,
    NotApplicable,
    NotCritical,
    NumericalError,
    OpaqueRegime,
    ParameterError,
    PoleHit,
    QuadratureFailure,
    ScanTooCoarse,
    SingularConversion,
)
from .limits import MergedCouplings, exchange_map, merge_d_to_a, merge_d_to_zero
from .params import TAU_CRIT, Momentum, OneSpeciesParams, TwoSpeciesParams, as_momentum
from .scattering import (
    ScatteringAmplitudes,
    check_unitarity,
    one_species_amplitudes,
    two_species_amplitudes,
    unitarity_residuals,
)
from .secular import (
    SecularValue,
    secular_derivative_check,
    secular_generic,
    secular_generic_from_energy,
    secular_grid,
    secular_one_species,
    secular_two_species,
    secular_value,
)
from .transfer import (
    TransferMatrix,
    bloch_cosine,
    jump_matrix,
    monodromy_one_species,
    monodromy_two_species,
    propagation_matrix,
    scattering_from_jump,
)
from .units import PhysicalUnitsSpec, to_dimensionless

__all__ = [name for name in dir() if not name.startswith("_")]
