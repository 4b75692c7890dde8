"""Band enumeration: edges where |F| = 1, dispersion sampling, discrete
spectra at the critical couplings, and negative-band classification.

Scanning strategy.  Band edges are roots of F(eps) = +-1.  F is quasi-periodic
in k = sqrt(eps) with period pi/a, so the scan grid is uniform in k (in
sign(eps)*sqrt(|eps|) across the negative axis), with N_PER_BAND points per
period by default.  Between consecutive zeros of dF/d(eps) the function F is
strictly monotone, so the scanner first locates every critical point of F and
then runs plain bisection on each monotone stretch — brackets can never be
lost, even arbitrarily close to a band touching.

Touchings.  Where F reaches +-1 *without crossing* (dF = 0 exactly at |F| = 1)
two bands meet with zero gap.  Such points are not sign changes, hence not
edges in the crossing sense: ``find_band_edges`` omits them by default (the
free comb, whose F = cos(a k) touches +-1 at every multiple of pi/a, correctly
reports no edges), and reports them as coincident edge pairs when asked with
``include_touch=True``.  ``enumerate_bands`` always splits bands at touch
points, so each reported band is one monotone branch of F and integrates to
exactly one state per cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import acos, ceil, copysign, cos, pi, sin, sqrt

import numpy as np

from .errors import InvalidRegime, NotCritical, OpaqueRegime, ScanTooCoarse
from .params import TAU_CRIT, OneSpeciesParams, TwoSpeciesParams
from .secular import secular_grid, secular_value

N_PER_BAND = 64
TOL_EDGE = 1e-10
# |F - (+-1)| below this at a critical point counts as an exact band touching.
TOUCH_TOL = 1e-12


@dataclass(frozen=True)
class BandEdge:
    """One root of F = +1 or F = -1, with the final bisection bracket.

    A degenerate (touching) boundary carries a zero-length bracket.
    """

    epsilon: float
    edge_sign: int
    bracket: tuple[float, float]

    @property
    def is_touch(self) -> bool:
        return self.bracket[0] == self.bracket[1]


@dataclass(frozen=True)
class Band:
    """One allowed band with dispersion samples.

    ``samples`` holds (q, eps) pairs with q increasing on [0, pi/a]; the
    dispersion is even in q, so only the q >= 0 half is stored.
    ``curvature_sign`` is the sign of d2(eps)/dq2 at q = 0.
    """

    index: int
    lower: BandEdge
    upper: BandEdge
    samples: tuple[tuple[float, float], ...]
    curvature_sign: int

    @property
    def width(self) -> float:
        return self.upper.epsilon - self.lower.epsilon

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.upper.epsilon + self.lower.epsilon)


def default_energy_floor(p) -> float:
    """Heuristic lower bound below every negative band.

    The deepest bound state of a single pair sits at kappa = |w0|/2 or less;
    the squared coupling sums below overshoot that by a wide margin.  The
    brute-force scan tests confirm no band is missed for the regimes covered.
    """
    if isinstance(p, OneSpeciesParams):
        return -((abs(p.w0) * (1.0 + abs(p.w1))) ** 2) - 1.0
    if isinstance(p, TwoSpeciesParams):
        return -(((abs(p.w0) + abs(p.v0)) * (1.0 + abs(p.w1) + abs(p.v1))) ** 2) - 1.0
    raise TypeError(f"unsupported parameter record {type(p).__name__}")


def _s_of(eps: float) -> float:
    return copysign(sqrt(abs(eps)), eps)


def _eps_of(s: float) -> float:
    return copysign(s * s, s)


class _Boundary:
    __slots__ = ("edge", "clipped")

    def __init__(self, edge: BandEdge | None, clipped: bool):
        self.edge = edge
        self.clipped = clipped


class _Interval:
    __slots__ = ("lo", "hi", "lo_eps", "hi_eps")

    def __init__(self, lo: _Boundary, hi: _Boundary, lo_eps: float, hi_eps: float):
        self.lo = lo
        self.hi = hi
        self.lo_eps = lo_eps
        self.hi_eps = hi_eps

    @property
    def complete(self) -> bool:
        return not (self.lo.clipped or self.hi.clipped)


def _scan_arrays(p, eps_min: float, eps_max: float, n_scan: int | None):
    if eps_min >= eps_max:
        raise ValueError(f"need eps_min < eps_max, got [{eps_min}, {eps_max}]")
    s_lo, s_hi = _s_of(eps_min), _s_of(eps_max)
    expected_bands = max(1.0, (s_hi - s_lo) * p.a / pi)
    if n_scan is None:
        n_scan = max(64, ceil(expected_bands * N_PER_BAND) + 1)
    elif n_scan < 10.0 * expected_bands:
        raise ValueError(
            f"n_scan={n_scan} is below 10 points per expected band "
            f"(~{expected_bands:.0f} bands in window)"
        )
    s = np.linspace(s_lo, s_hi, n_scan)
    eps = np.copysign(s * s, s)
    F, dF = secular_grid(eps, p)
    return s, F, dF


def _refine_critical(p, sa: float, sb: float, da: float, db: float) -> float:
    """Bisect dF/d(eps) = 0 in the k-like coordinate s."""
    for _ in range(200):
        sm = 0.5 * (sa + sb)
        if sm == sa or sm == sb:
            break
        dm = secular_value(_eps_of(sm), p).dF
        if dm == 0.0:
            return sm
        if (dm < 0.0) == (da < 0.0):
            sa, da = sm, dm
        else:
            sb, db = sm, dm
        if sb - sa <= 1e-13 * (1.0 + abs(sa) + abs(sb)):
            break
    return 0.5 * (sa + sb)


def _refine_edge(p, sa, sb, ga, gb, target: int, tol_edge: float) -> BandEdge:
    """Bisect F - target on a monotone stretch with a guaranteed bracket."""
    for _ in range(220):
        if abs(_eps_of(sb) - _eps_of(sa)) <= tol_edge:
            break
        sm = 0.5 * (sa + sb)
        if sm == sa or sm == sb:
            break
        gm = secular_value(_eps_of(sm), p).F - target
        if gm == 0.0:
            sa = sb = sm
            break
        if (gm < 0.0) == (ga < 0.0):
            sa, ga = sm, gm
        else:
            sb, gb = sm, gm
    e1, e2 = _eps_of(sa), _eps_of(sb)
    lo, hi = (e1, e2) if e1 <= e2 else (e2, e1)
    return BandEdge(epsilon=0.5 * (lo + hi), edge_sign=target, bracket=(lo, hi))


def _touch_edge(eps: float, sign: int) -> BandEdge:
    return BandEdge(epsilon=eps, edge_sign=sign, bracket=(eps, eps))


def _segment_interval(p, sa, sb, fa, fb, is_crit_a, is_crit_b, tol_edge):
    """Allowed subinterval of one monotone stretch of F (or None)."""
    decreasing = fa > fb
    top_s, top_f, top_crit = (sa, fa, is_crit_a) if decreasing else (sb, fb, is_crit_b)
    bot_s, bot_f, bot_crit = (sb, fb, is_crit_b) if decreasing else (sa, fa, is_crit_a)

    # Boundary where F passes (or touches) +1.
    if top_f > 1.0 + TOUCH_TOL:
        if bot_f >= 1.0 - TOUCH_TOL:
            return None  # F stays at or above +1 on the whole stretch
        hi_b = _Boundary(
            _refine_edge(p, sa, sb, fa - 1.0, fb - 1.0, +1, tol_edge), clipped=False
        )
    elif abs(top_f - 1.0) <= TOUCH_TOL:
        if top_crit:
            hi_b = _Boundary(_touch_edge(_eps_of(top_s), +1), clipped=False)
        else:
            hi_b = _Boundary(None, clipped=True)  # window cuts right at an edge
    else:
        if top_crit:
            raise ScanTooCoarse(
                f"critical point at eps={_eps_of(top_s)!r} has |F| < 1; "
                "monotone-segment assumption violated"
            )
        hi_b = _Boundary(None, clipped=True)

    # Boundary where F passes (or touches) -1.
    if bot_f < -1.0 - TOUCH_TOL:
        if top_f <= -1.0 + TOUCH_TOL:
            return None
        lo_b = _Boundary(
            _refine_edge(p, sa, sb, fa + 1.0, fb + 1.0, -1, tol_edge), clipped=False
        )
    elif abs(bot_f + 1.0) <= TOUCH_TOL:
        if bot_crit:
            lo_b = _Boundary(_touch_edge(_eps_of(bot_s), -1), clipped=False)
        else:
            lo_b = _Boundary(None, clipped=True)
    else:
        if bot_crit:
            raise ScanTooCoarse(
                f"critical point at eps={_eps_of(bot_s)!r} has |F| < 1; "
                "monotone-segment assumption violated"
            )
        lo_b = _Boundary(None, clipped=True)

    # Order the two boundaries by energy along the stretch.
    eps_a, eps_b = _eps_of(sa), _eps_of(sb)
    if decreasing:
        left, right = hi_b, lo_b  # F=+1 end sits at lower eps
    else:
        left, right = lo_b, hi_b
    lo_eps = left.edge.epsilon if left.edge else min(eps_a, eps_b)
    hi_eps = right.edge.epsilon if right.edge else max(eps_a, eps_b)
    if hi_eps <= lo_eps:
        return None
    return _Interval(left, right, lo_eps, hi_eps)


def _skeleton(p, eps_min, eps_max, n_scan, tol_edge):
    """Monotone-segment decomposition of the window.

    Returns (intervals, crossing_edges, touch_edges, critical_eps).
    """
    if p.is_opaque:
        raise OpaqueRegime(
            "opaque coupling: the spectrum is discrete; use discrete_spectrum_critical"
        )
    s, F, dF = _scan_arrays(p, eps_min, eps_max, n_scan)

    crit_s: list[float] = []
    for i in range(len(s) - 1):
        if dF[i] == 0.0:
            if 0 < i:
                crit_s.append(float(s[i]))
        elif (dF[i] < 0.0) != (dF[i + 1] < 0.0):
            crit_s.append(_refine_critical(p, float(s[i]), float(s[i + 1]), float(dF[i]), float(dF[i + 1])))
    crit_s = sorted(set(c for c in crit_s if s[0] < c < s[-1]))

    nodes = [float(s[0])] + crit_s + [float(s[-1])]
    kinds = [False] + [True] * len(crit_s) + [False]
    values = [float(F[0])] + [secular_value(_eps_of(c), p).F for c in crit_s] + [float(F[-1])]

    intervals: list[_Interval] = []
    for i in range(len(nodes) - 1):
        iv = _segment_interval(
            p,
            nodes[i],
            nodes[i + 1],
            values[i],
            values[i + 1],
            kinds[i],
            kinds[i + 1],
            tol_edge,
        )
        if iv is not None:
            intervals.append(iv)

    crossing: list[BandEdge] = []
    touches: list[BandEdge] = []
    for iv in intervals:
        for b in (iv.lo, iv.hi):
            if b.edge is None:
                continue
            (touches if b.edge.is_touch else crossing).append(b.edge)
    crossing.sort(key=lambda e: e.epsilon)
    touches = sorted(set(touches), key=lambda e: e.epsilon)
    crit_eps = [_eps_of(c) for c in crit_s]
    return intervals, crossing, touches, crit_eps


def find_band_edges(
    p,
    eps_min: float | None = None,
    eps_max: float = 100.0,
    n_scan: int | None = None,
    tol_edge: float = TOL_EDGE,
    include_touch: bool = False,
) -> list[BandEdge]:
    """All roots of F(eps) = +-1 in the window, refined to |bracket| < tol_edge.

    ``eps_min=None`` uses ``default_energy_floor``.  Exact band touchings are
    no-crossing points and are omitted unless ``include_touch`` is set, in
    which case each appears as a coincident pair (upper edge of one band and
    lower edge of the next).
    """
    if eps_min is None:
        eps_min = default_energy_floor(p)
    _, crossing, touches, _ = _skeleton(p, eps_min, eps_max, n_scan, tol_edge)
    if not include_touch:
        return crossing
    edges = crossing + [t for t in touches for _ in range(2)]
    edges.sort(key=lambda e: e.epsilon)
    return edges


def allowed_intervals(
    p,
    eps_min: float | None = None,
    eps_max: float = 100.0,
    n_scan: int | None = None,
    tol_edge: float = TOL_EDGE,
) -> list[tuple[float, float]]:
    """(lo, hi) energy intervals with |F| <= 1, clipped to the window."""
    if eps_min is None:
        eps_min = default_energy_floor(p)
    intervals, _, _, _ = _skeleton(p, eps_min, eps_max, n_scan, tol_edge)
    return [(iv.lo_eps, iv.hi_eps) for iv in intervals]


def forbidden_measure(
    p,
    eps_min: float,
    eps_max: float,
    n_scan: int | None = None,
    tol_edge: float = TOL_EDGE,
) -> float:
    """Total length of the forbidden set {|F| > 1} inside [eps_min, eps_max]."""
    allowed = sum(hi - lo for lo, hi in allowed_intervals(p, eps_min, eps_max, n_scan, tol_edge))
    return (eps_max - eps_min) - allowed


def _band_samples(p, lo: BandEdge, hi: BandEdge, n_samples: int):
    a = p.a
    eps_grid = np.linspace(lo.epsilon, hi.epsilon, n_samples)
    F, _ = secular_grid(eps_grid, p)
    q = np.arccos(np.clip(F, -1.0, 1.0)) / a
    if q[0] > q[-1]:
        q = q[::-1]
        eps_grid = eps_grid[::-1]
    return tuple((float(qi), float(ei)) for qi, ei in zip(q, eps_grid))


def _curvature_sign(p, lo: BandEdge, hi: BandEdge) -> int:
    """Sign of d2(eps)/dq2 at q = 0 by a nonuniform second difference.

    The probe points sit just inside the band next to its q = 0 end (the edge
    where F = +1), so the estimate stays sharp regardless of how coarsely the
    dispersion itself is sampled.
    """
    a = p.a
    width = hi.epsilon - lo.epsilon
    if lo.edge_sign > 0:
        e0, direction = lo.epsilon, 1.0
    else:
        e0, direction = hi.epsilon, -1.0
    pts = [e0, e0 + direction * 1e-3 * width, e0 + direction * 4e-3 * width]
    qs = []
    for e in pts:
        f = min(1.0, max(-1.0, secular_value(e, p).F))
        qs.append(acos(f) / a)
    h1 = qs[1] - qs[0]
    h2 = qs[2] - qs[1]
    num = pts[0] * h2 - pts[1] * (h1 + h2) + pts[2] * h1
    d2 = 2.0 * num / (h1 * h2 * (h1 + h2))
    return 1 if d2 > 0.0 else -1


def enumerate_bands(
    p,
    eps_min: float | None = None,
    eps_max: float = 100.0,
    n_scan: int | None = None,
    tol_edge: float = TOL_EDGE,
    n_samples: int = 33,
) -> list[Band]:
    """Allowed bands fully contained in the window, in increasing energy.

    Bands cut off by the window boundaries are dropped; widen the window if
    the last band matters.  Bands separated by a zero-width gap appear as
    consecutive records whose facing edges coincide.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    if eps_min is None:
        eps_min = default_energy_floor(p)
    intervals, _, _, _ = _skeleton(p, eps_min, eps_max, n_scan, tol_edge)
    bands: list[Band] = []
    for iv in intervals:
        if not iv.complete:
            continue
        lo, hi = iv.lo.edge, iv.hi.edge
        bands.append(
            Band(
                index=len(bands),
                lower=lo,
                upper=hi,
                samples=_band_samples(p, lo, hi, n_samples),
                curvature_sign=_curvature_sign(p, lo, hi),
            )
        )
    return bands


def discrete_spectrum_critical(
    p: OneSpeciesParams, count: int, tol: float = 1e-12
) -> list[float]:
    """First ``count`` positive energies of the opaque comb (|w1| = 1).

    Box eigenvalues solve tan(x)/x = -4/(w0 a) with x = a k; in the smooth
    form w0 a sin(x) + 4 x cos(x) = 0 every branch ((n-1/2) pi, (n+1/2) pi)
    holds exactly one root, plus one in (0, pi/2) iff -4 < w0 a < 0.  x = 0
    solves the equation when w0 a = -4 but is not a spectrum point.
    """
    if abs(abs(p.w1) - 1.0) > TAU_CRIT:
        raise NotCritical(f"discrete spectrum requires |w1| = 1, got w1={p.w1}")
    if count <= 0:
        return []
    w0a = p.w0 * p.a

    if w0a == 0.0:
        return [((n - 0.5) * pi / p.a) ** 2 for n in range(1, count + 1)]

    def psi(x: float) -> float:
        return w0a * sin(x) + 4.0 * x * cos(x)

    def bisect(lo: float, hi: float) -> float:
        flo = psi(lo)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            fm = psi(mid)
            if fm == 0.0:
                return mid
            if (fm < 0.0) == (flo < 0.0):
                lo, flo = mid, fm
            else:
                hi = mid
            if hi - lo <= tol * (1.0 + abs(lo)):
                break
        return 0.5 * (lo + hi)

    roots: list[float] = []
    if -4.0 < w0a < 0.0:
        roots.append(bisect(1e-9, 0.5 * pi))
    n = 1
    while len(roots) < count:
        roots.append(bisect((n - 0.5) * pi + 1e-12, (n + 0.5) * pi - 1e-12))
        n += 1
    return [(x / p.a) ** 2 for x in roots[:count]]


def classify_negative_band(p: OneSpeciesParams) -> str:
    """Regime of the attractive pure-delta comb's negative band.

    Returns one of:

    * ``"straddling"``: the lowest band contains eps = 0 (|w0| a < 4);
    * ``"detached"``: fully negative band, F monotone below zero (4 < |w0| a < 6);
    * ``"detached_with_interior_max"``: fully negative band plus an interior
      critical point of F at some kappa_0 > 0 (|w0| a > 6).

    The answer is read off the computed spectrum (band edges and located
    critical points), not from the threshold arithmetic.
    """
    if not isinstance(p, OneSpeciesParams) or p.w1 != 0.0:
        raise InvalidRegime("classification applies to the pure-delta comb (w1 = 0)")
    if p.w0 >= 0.0:
        raise InvalidRegime("classification needs attractive deltas (w0 < 0)")
    eps_min = default_energy_floor(p)
    eps_max = (2.0 * pi / p.a) ** 2
    intervals, _, _, crit_eps = _skeleton(p, eps_min, eps_max, None, TOL_EDGE)
    spans = [(iv.lo_eps, iv.hi_eps) for iv in intervals]
    if any(lo < 0.0 < hi for lo, hi in spans):
        return "straddling"
    if any(c < -1e-9 for c in crit_eps):
        return "detached_with_interior_max"
    return "detached"
