"""Exception hierarchy.

``ParameterError`` subclasses signal inputs that violate an operation's
contract (the CLI maps them to exit code 2).  ``NumericalError`` subclasses
signal a computation that could not be completed reliably (exit code 4).
"""


class HybridCombError(Exception):
    pass


class ParameterError(HybridCombError):
    pass


class NumericalError(HybridCombError):
    pass


class DegenerateMomentum(ParameterError):
    """k = 0 requested where the scattering amplitudes are singular."""


class PoleHit(NumericalError):
    """Amplitude denominator vanished (bound-state pole on the imaginary axis)."""


class OpaqueRegime(ParameterError):
    """|w1| (or |v1|) = 1: zero transmission, the band machinery does not apply."""


class NotApplicable(ParameterError):
    """Operation stated only for real scattering momenta."""


class NotCritical(ParameterError):
    """Discrete-spectrum solver called away from |w1| = 1."""


class InvalidRegime(ParameterError):
    """Negative-band classifier called outside the attractive pure-delta comb."""


class ScanTooCoarse(NumericalError):
    """Band scan produced inconsistent edges; increase the scan resolution."""


class SingularConversion(NumericalError):
    """Transfer-to-scattering conversion hit a degenerate linear system."""


class MergeSingular(ParameterError):
    """1 + v1*w1 = 0: the merged couplings diverge."""


class QuadratureFailure(NumericalError):
    """Band integral failed to reach its normalization tolerance."""


class BoseDivergence(ParameterError):
    """Bose-Einstein occupation requested at energy <= chemical potential."""


class GridTooLarge(ParameterError):
    """Sweep grid exceeds the supported number of cells."""


class NonPositiveInput(ParameterError):
    """Physical-units conversion needs positive mass and spacing."""
