"""Direction sweeps that instrument the uniqueness statements.

Profiles compare two polygons through the same hedgehog: chord lengths cut by
its supporting lines, or areas cut by its slabs.  The suites here build the
reflected-pair counterexample, run seeded perturbation trials, and check the
local identities (Taylor expansion in the rotated frame, support point as
midpoint) used in the arguments.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    ContainmentViolated,
    Degenerate,
    NonDifferentiableAt,
    NotCentrallySymmetric,
    NotConvex,
)
from .polygon import (
    ConvexPolygon,
    from_vertices,
    is_origin_symmetric,
    negate,
    same_polygon,
)
from .sections import (
    SectionConfig,
    VertexPolicy,
    chord_lengths,
    hedgehog_inside,
    slab_areas,
)
from .support_fn import (
    TWO_PI,
    Direction,
    DirectionLike,
    Point,
    SupportFunction,
    TrigPolynomial,
    det2,
    dot,
    is_centrally_symmetric,
    normalize_angle,
    support_point,
)
from .tolerances import DEFAULT_TOL, ToleranceConfig


@dataclass(frozen=True)
class SweepConfig:
    samples: int = 4096
    refine_top: int = 8
    strict: bool = False          # enforce the symmetry hypotheses before a slab sweep
    containment_samples: int = 1024
    section: SectionConfig = SectionConfig(vertex_policy=VertexPolicy.REPORT)

    @property
    def tol(self) -> ToleranceConfig:
        return self.section.tolerances


DEFAULT_SWEEP = SweepConfig()


@dataclass(frozen=True)
class DirectionWindow:
    """Open arc ``(theta_lo, theta_hi)`` minus finitely many excluded angles."""

    theta_lo: float
    theta_hi: float
    excluded: tuple = ()

    def __post_init__(self):
        if not self.theta_lo < self.theta_hi:
            raise ValueError("theta_lo must be below theta_hi")

    def thetas(self, n: int, tol: float = 1e-9) -> np.ndarray:
        t = np.linspace(self.theta_lo, self.theta_hi, n + 2)[1:-1]
        for x in self.excluded:
            t = t[np.abs(t - x) > tol]
        return t


class SkippedDirection(NamedTuple):
    theta: float
    reason: str          # "vertex" or "inverted"


@dataclass(frozen=True)
class DiscrepancyProfile:
    kind: str                      # "section" | "slab"
    thetas: np.ndarray
    value_p: np.ndarray
    value_q: np.ndarray
    skipped: tuple = ()

    @property
    def values(self) -> np.ndarray:
        return np.abs(self.value_p - self.value_q)

    @property
    def sup(self) -> float:
        v = self.values
        return float(v.max()) if v.size else 0.0

    @property
    def arg_sup(self) -> float:
        v = self.values
        if not v.size:
            return float("nan")
        # first occurrence on an ascending grid = smallest theta among ties
        return float(self.thetas[int(np.argmax(v))])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theta", "value_P", "value_Q", "abs_diff"])
        for t, a, b, d in zip(self.thetas, self.value_p, self.value_q, self.values):
            writer.writerow([repr(float(t)), repr(float(a)), repr(float(b)), repr(float(d))])
        if self.skipped:
            buf.write("# skipped directions (theta, reason)\n")
            for s in self.skipped:
                buf.write(f"# {float(s.theta)!r},{s.reason}\n")
        return buf.getvalue()


# ---------------------------------------------------------------- sweeps

def _require_inside(P, Q, h, cfg: SweepConfig):
    for name, poly in (("P", P), ("Q", Q)):
        if not hedgehog_inside(poly, h, cfg.containment_samples, cfg.tol):
            raise ContainmentViolated(f"hedgehog is not strictly inside {name}")


def _sweep(
    kind: str, measure: Callable, P, Q, thetas: np.ndarray, cfg: SweepConfig, periodic: bool = True
) -> DiscrepancyProfile:
    vp, bad_p = measure(P, thetas)
    vq, bad_q = measure(Q, thetas)
    bad = bad_p | bad_q
    reason = "vertex" if kind == "section" else "inverted"
    skipped = [SkippedDirection(float(t), reason) for t in thetas[bad]]
    thetas, vp, vq = thetas[~bad], vp[~bad], vq[~bad]

    if cfg.refine_top and thetas.size >= 3:
        extra = _refine(measure, P, Q, thetas, np.abs(vp - vq), cfg.refine_top, periodic)
        if extra:
            et = np.array([e[0] for e in extra])
            thetas = np.concatenate([thetas, et])
            vp = np.concatenate([vp, [e[1] for e in extra]])
            vq = np.concatenate([vq, [e[2] for e in extra]])
            order = np.argsort(thetas, kind="stable")
            thetas, vp, vq = thetas[order], vp[order], vq[order]
    skipped.sort()
    return DiscrepancyProfile(kind, thetas, vp, vq, tuple(skipped))


def _refine(measure, P, Q, thetas, diff, top: int, periodic: bool) -> list:
    """Bounded scalar maximization of |value_P - value_Q| around the largest grid peaks."""
    n = thetas.size
    left, right = np.roll(diff, 1), np.roll(diff, -1)
    peaks = np.nonzero((diff >= left) & (diff >= right) & (diff > 0.0))[0]
    if not peaks.size:
        return []
    peaks = sorted(peaks, key=lambda i: (-diff[i], thetas[i]))[:top]

    def evaluate_at(t):
        arr = np.array([t])
        a, bad_a = measure(P, arr)
        b, bad_b = measure(Q, arr)
        if bad_a[0] or bad_b[0]:
            return None
        return float(a[0]), float(b[0])

    known = set(thetas.tolist())
    extra = []
    for i in peaks:
        if i > 0:
            lo = thetas[i - 1]
        else:
            lo = thetas[-1] - TWO_PI if periodic else thetas[0]
        if i + 1 < n:
            hi = thetas[i + 1]
        else:
            hi = thetas[0] + TWO_PI if periodic else thetas[-1]

        # search in the offset from the grid peak: the bounded method's stopping
        # rule scales with |x|, which would cap accuracy near 1e-7 rad at theta ~ 5
        t0 = thetas[i]

        def neg(s, t0=t0):
            r = evaluate_at(t0 + s)
            return 0.0 if r is None else -abs(r[0] - r[1])

        res = minimize_scalar(neg, bounds=(lo - t0, hi - t0), method="bounded", options={"xatol": 1e-12})
        t = normalize_angle(t0 + res.x)
        r = evaluate_at(t)
        if r is None or t in known or -res.fun <= diff[i]:
            continue
        known.add(t)
        extra.append((t, r[0], r[1]))
    return extra


def section_profile(
    P: ConvexPolygon,
    Q: ConvexPolygon,
    h: SupportFunction,
    n: Optional[int] = None,
    cfg: SweepConfig = DEFAULT_SWEEP,
    window: Optional[DirectionWindow] = None,
) -> DiscrepancyProfile:
    """|chord_P - chord_Q| along the supporting lines of h, over a uniform sweep."""
    _require_inside(P, Q, h, cfg)
    thetas = _grid(n or cfg.samples, window)

    def measure(poly, ts):
        return chord_lengths(poly, h, ts, cfg.section)

    return _sweep("section", measure, P, Q, thetas, cfg, window is None)


def slab_profile(
    P: ConvexPolygon,
    Q: ConvexPolygon,
    h: SupportFunction,
    n: Optional[int] = None,
    cfg: SweepConfig = DEFAULT_SWEEP,
    window: Optional[DirectionWindow] = None,
) -> DiscrepancyProfile:
    """|area(P ∩ S(xi)) - area(Q ∩ S(xi))| over a uniform sweep."""
    _require_inside(P, Q, h, cfg)
    if cfg.strict:
        if not is_centrally_symmetric(h):
            raise NotCentrallySymmetric("strict mode needs h(theta) = h(theta + pi)")
        for name, poly in (("P", P), ("Q", Q)):
            if not is_origin_symmetric(poly):
                raise NotCentrallySymmetric(f"strict mode needs {name} origin-symmetric")
    thetas = _grid(n or cfg.samples, window)

    def measure(poly, ts):
        return slab_areas(poly, h, ts, cfg.section)

    return _sweep("slab", measure, P, Q, thetas, cfg, window is None)


def _grid(n: int, window: Optional[DirectionWindow]) -> np.ndarray:
    if window is not None:
        return window.thetas(n)
    return np.linspace(0.0, TWO_PI, n, endpoint=False)


# ------------------------------------------------------- local identities

@dataclass(frozen=True)
class TaylorReport:
    base_theta: float
    scales: tuple
    residuals: tuple              # |h(phi) - h(0) - h'(0) phi|
    ratios: tuple                 # residual[k] / residual[k+1]
    fitted_c: tuple               # residual / phi^2
    curvature: float              # d^2 h / d phi^2 at phi = 0
    fd_error: float               # |analytic dh/dphi - central difference|
    chain_rule_error: float       # |dh/dphi - d/dx1 of the 1-homogeneous extension|
    exact: bool                   # all residuals vanish (h affine in phi, e.g. a disk)
    quadratic_applicable: bool    # curvature bounded away from 0
    higher_order: bool            # curvature vanishes and residuals decay faster than phi^2
    ratio_ok: bool
    c_stable: bool
    fd_ok: bool
    chain_rule_ok: bool

    @property
    def passed(self) -> bool:
        local = self.exact or self.higher_order or (self.ratio_ok and self.c_stable)
        return self.fd_ok and self.chain_rule_ok and local


def taylor_checks(
    h: SupportFunction,
    cfg: SweepConfig = DEFAULT_SWEEP,
    base_theta: float = math.pi / 2,
    scales: Sequence[float] = (1e-2, 1e-3, 1e-4),
    ratio_band: tuple = (50.0, 200.0),
    curvature_floor: float = 1e-6,
) -> TaylorReport:
    """First-order expansion of h in the frame ``xi(phi) = (sin phi, cos phi)`` rotated to ``base_theta``.

    With ``base_theta = pi/2`` this is the ``e2`` frame: phi = 0 is e2 and
    ``h(phi) = h(base_theta - phi)``.
    """
    tol = cfg.tol
    if h.kink_at(base_theta):
        raise NonDifferentiableAt(normalize_angle(base_theta))

    def hp(phi):
        return h(base_theta - phi)

    h0 = hp(0.0)
    dh0 = -h.slope(base_theta)          # d/dphi = -d/dtheta
    d2 = _second_derivative(h, base_theta)
    residuals = tuple(abs(hp(p) - h0 - dh0 * p) for p in scales)
    exact = all(r <= 1e-14 for r in residuals)
    ratios = tuple(
        (residuals[k] / residuals[k + 1]) if residuals[k + 1] > 0 else math.inf
        for k in range(len(residuals) - 1)
    )
    fitted = tuple(r / p ** 2 for r, p in zip(residuals, scales))
    applicable = abs(d2) > curvature_floor
    lo, hi = ratio_band
    ratio_ok = applicable and all(lo <= r <= hi for r in ratios)
    c_stable = applicable and (max(fitted) - min(fitted)) <= 0.1 * max(fitted)
    higher = not exact and not applicable and all(r >= hi for r in ratios)

    step = tol.fd_step
    fd = (hp(step) - hp(-step)) / (2 * step)
    fd_error = abs(fd - dh0)

    # 1-homogeneous extension H(x) = |x| h(angle(x)); rotate so base_theta plays e2
    rot = base_theta - math.pi / 2

    def H(x1, x2):
        c, s = math.cos(rot), math.sin(rot)
        y1, y2 = c * x1 - s * x2, s * x1 + c * x2
        return math.hypot(y1, y2) * h(math.atan2(y2, y1))

    dH_dx1 = (H(step, 1.0) - H(-step, 1.0)) / (2 * step)
    chain_err = abs(dH_dx1 - dh0)
    return TaylorReport(
        base_theta=normalize_angle(base_theta),
        scales=tuple(scales),
        residuals=residuals,
        ratios=ratios,
        fitted_c=fitted,
        curvature=d2,
        fd_error=fd_error,
        chain_rule_error=chain_err,
        exact=exact,
        quadratic_applicable=applicable,
        higher_order=higher,
        ratio_ok=ratio_ok,
        c_stable=c_stable,
        fd_ok=fd_error <= tol.finite_difference,
        chain_rule_ok=chain_err <= tol.finite_difference,
    )


def _second_derivative(h: SupportFunction, theta: float) -> float:
    i = h.piece_index(theta)
    return h.pieces[i].poly.derivative().derivative()(normalize_angle(theta))


def midpoint_obstruction(h: SupportFunction, v, w, d: DirectionLike, tol: float = 1e-9) -> bool:
    """True when the support point in direction d is the midpoint of v and w."""
    x = support_point(h, d)
    mx, my = 0.5 * (v[0] + w[0]), 0.5 * (v[1] + w[1])
    return math.hypot(x.x - mx, x.y - my) <= tol


def edge_normal_directions(P: ConvexPolygon) -> list:
    out = []
    for e in P.edges():
        base = math.atan2(e.dir.y, e.dir.x)
        out += [normalize_angle(base + math.pi / 2), normalize_angle(base - math.pi / 2)]
    return out


def _unique_angles(angles, tol: float) -> list:
    out = []
    for a in sorted(normalize_angle(x) for x in angles):
        if not out or a - out[-1] > tol:
            out.append(a)
    if len(out) > 1 and out[0] + TWO_PI - out[-1] <= tol:
        out.pop()
    return out


def nonanalytic_direction_audit(
    P: ConvexPolygon, Q: ConvexPolygon, h: SupportFunction, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple:
    """Breakpoints of h plus every direction perpendicular to an edge of P or Q."""
    angles = list(h.nonanalytic_points()) + edge_normal_directions(P) + edge_normal_directions(Q)
    return tuple(Direction(a) for a in _unique_angles(angles, tol.angle))


def is_vertex_grazing(P: ConvexPolygon, h: SupportFunction, theta: float, tol: float = 1e-9) -> bool:
    d = Direction(theta)
    hv = h(d.theta)
    return any(abs(dot(v, d.vector) - hv) <= tol for v in P.vertices)


def skip_set_consistent(profile: DiscrepancyProfile, P, Q, h, tol: float = 1e-9) -> bool:
    audit = [d.theta for d in nonanalytic_direction_audit(P, Q, h)]
    for s in profile.skipped:
        if s.reason != "vertex":
            continue
        near = any(min(abs(s.theta - a), TWO_PI - abs(s.theta - a)) <= tol for a in audit)
        if not (near or is_vertex_grazing(P, h, s.theta, tol) or is_vertex_grazing(Q, h, s.theta, tol)):
            return False
    return True


# ---------------------------------------------------------- scenes/trials

FIGURE1_Q = [(1, 4), (3, 2), (3, -4), (-3, -4), (-3, 4)]
FIGURE1_RADIUS = 0.77


def build_figure1() -> tuple:
    """``(P, Q, h)``: Q the cut rectangle, P = -Q, h the disk of radius 0.77."""
    Q = from_vertices(FIGURE1_Q)
    P = negate(Q)
    h = SupportFunction.constant(FIGURE1_RADIUS)
    assert hedgehog_inside(P, h) and hedgehog_inside(Q, h)
    assert not same_polygon(P, Q)
    return P, Q, h


def random_polygon(
    rng: np.random.Generator,
    k: int = 6,
    h: Optional[SupportFunction] = None,
    radius_range: tuple = (2.0, 4.0),
    max_tries: int = 1000,
) -> ConvexPolygon:
    """Hull of k points on a circle of random radius; rejected until it holds h strictly inside."""
    for _ in range(max_tries):
        r = rng.uniform(*radius_range)
        ang = np.sort(rng.uniform(0.0, TWO_PI, k))
        try:
            P = from_vertices([(r * math.cos(a), r * math.sin(a)) for a in ang])
        except (Degenerate, NotConvex):
            continue
        if len(P) == k and (h is None or hedgehog_inside(P, h)):
            return P
    raise RuntimeError("could not sample a polygon satisfying the constraints")


def random_symmetric_polygon(
    rng: np.random.Generator,
    half: int = 3,
    h: Optional[SupportFunction] = None,
    radius_range: tuple = (2.0, 4.0),
    max_tries: int = 1000,
) -> ConvexPolygon:
    """Origin-symmetric 2*half-gon: generators on a half circle and their negatives."""
    for _ in range(max_tries):
        r = rng.uniform(*radius_range)
        ang = np.sort(rng.uniform(0.0, math.pi, half))
        gens = [(r * math.cos(a), r * math.sin(a)) for a in ang]
        try:
            P = from_vertices(gens + [(-x, -y) for x, y in gens])
        except (Degenerate, NotConvex):
            continue
        if len(P) == 2 * half and (h is None or hedgehog_inside(P, h)):
            return P
    raise RuntimeError("could not sample a symmetric polygon satisfying the constraints")


def _transversal(P_verts, i: int, delta) -> bool:
    n = len(P_verts)
    a, b, c = P_verts[i - 1], P_verts[i], P_verts[(i + 1) % n]
    for e in (b - a, c - b):
        e_len = e.norm()
        if abs(det2(e, delta)) <= math.sin(math.radians(10.0)) * e_len * delta.norm():
            return False
    return True


def perturb_vertex(
    rng: np.random.Generator,
    P: ConvexPolygon,
    h: SupportFunction,
    size: float = 0.05,
    symmetric: bool = False,
    max_tries: int = 1000,
) -> ConvexPolygon:
    """Move one vertex (and its antipode when ``symmetric``) by ``size`` in a transversal direction."""
    verts = list(P.vertices)
    n = len(verts)
    for _ in range(max_tries):
        i = int(rng.integers(n))
        a = rng.uniform(0.0, TWO_PI)
        delta = Point(size * math.cos(a), size * math.sin(a))
        if not _transversal(verts, i, delta):
            continue
        moved = list(verts)
        moved[i] = verts[i] + delta
        if symmetric:
            j = next(k for k in range(n) if math.dist(verts[k], -verts[i]) <= 1e-9)
            moved[j] = verts[j] - delta
        try:
            Q = from_vertices(moved)
        except (Degenerate, NotConvex):
            continue
        if len(Q) == n and hedgehog_inside(Q, h) and not same_polygon(P, Q):
            return Q
    raise RuntimeError("could not find an admissible perturbation")


def symmetric_test_hedgehogs() -> tuple:
    """Disk and the even-harmonic oval ``1 + 0.2 cos 2 theta`` (h + h'' > 0)."""
    return (
        SupportFunction.constant(FIGURE1_RADIUS),
        SupportFunction.from_coefficients(1.0, (0.0, 0.2)),
    )


@dataclass(frozen=True)
class TrialResult:
    index: int
    sup: float
    arg_sup: float
    P: ConvexPolygon
    Q: ConvexPolygon


def theorem1_trials(
    n_trials: int = 100, seed: int = 0, cfg: SweepConfig = DEFAULT_SWEEP, size: float = 0.05
) -> list:
    """Section sweeps for random hexagons P and a one-vertex perturbation Q, around the 0.77 disk."""
    rng = np.random.default_rng(seed)
    h = SupportFunction.constant(FIGURE1_RADIUS)
    out = []
    for k in range(n_trials):
        P = random_polygon(rng, 6, h)
        Q = perturb_vertex(rng, P, h, size)
        prof = section_profile(P, Q, h, cfg=cfg)
        out.append(TrialResult(k, prof.sup, prof.arg_sup, P, Q))
    return out


def theorem2_trials(
    n_trials: int = 50, seed: int = 0, cfg: Optional[SweepConfig] = None, size: float = 0.05
) -> list:
    """Strict slab sweeps for origin-symmetric pairs, alternating the two symmetric hedgehogs."""
    cfg = cfg or SweepConfig(strict=True)
    rng = np.random.default_rng(seed)
    hs = symmetric_test_hedgehogs()
    out = []
    for k in range(n_trials):
        h = hs[k % len(hs)]
        P = random_symmetric_polygon(rng, 3, h)
        Q = perturb_vertex(rng, P, h, size, symmetric=True)
        prof = slab_profile(P, Q, h, cfg=cfg)
        out.append(TrialResult(k, prof.sup, prof.arg_sup, P, Q))
    return out


# ------------------------------------------------------------- corollary

def corollary_hedgehog() -> SupportFunction:
    """Centrally symmetric, piecewise analytic, with derivative jumps at the four axis directions."""
    bump = TrigPolynomial(1.0, (), (0.0, 0.1))   # 1 + 0.1 sin 2theta
    flat = TrigPolynomial(1.0)
    q = math.pi / 2
    return SupportFunction.piecewise(
        [((0.0, q), bump), ((q, 2 * q), flat), ((2 * q, 3 * q), bump), ((3 * q, 4 * q), flat)]
    )


def _boundary_contacts(P: ConvexPolygon, Q: ConvexPolygon, eps: float) -> tuple:
    """Shared boundary points and shared boundary segments of P and Q."""
    points, segments = [], []
    for e in P.edges():
        for f in Q.edges():
            cross = det2(e.dir, f.dir)
            w = f.base - e.base
            if abs(cross) > eps:
                s = det2(w, f.dir) / cross
                t = det2(w, e.dir) / cross
                if -eps <= s <= e.length + eps and -eps <= t <= f.length + eps:
                    points.append(e.base + e.dir * s)
            elif abs(det2(e.dir, w)) <= eps:
                # collinear: overlap of the two parameter ranges along e
                t0, t1 = sorted((dot(w, e.dir), dot(w, e.dir) + f.length * dot(f.dir, e.dir)))
                lo, hi = max(0.0, t0), min(e.length, t1)
                if hi >= lo - eps:
                    segments.append((e.base + e.dir * lo, e.base + e.dir * hi))
    uniq = []
    for p in points:
        if all(math.dist(p, q) > eps for q in uniq):
            uniq.append(p)
    return tuple(uniq), tuple(segments)


@dataclass(frozen=True)
class CorollaryReport:
    breakpoints: tuple         # non-analytic directions of h
    shared_points: tuple
    shared_segments: tuple
    clearances: tuple          # per breakpoint: distance of its line from the shared set
    ok: bool


def corollary_check(
    P: ConvexPolygon, Q: ConvexPolygon, h: SupportFunction, tol: ToleranceConfig = DEFAULT_TOL
) -> CorollaryReport:
    """Check that no supporting line at a non-analytic direction meets a common boundary point.

    Common points are transversal crossings of the two boundaries and the
    endpoints of shared boundary segments.
    """
    pts, segs = _boundary_contacts(P, Q, tol.geometric)
    clearances = []
    for theta in h.nonanalytic_points():
        d = Direction(theta)
        hv = h(theta)
        # the proof only uses points where the boundaries meet or part ways, so a
        # shared edge contributes its two endpoints, not its interior
        contacts = list(pts) + [p for seg in segs for p in seg]
        gaps = [abs(dot(c, d.vector) - hv) for c in contacts]
        clearances.append(min(gaps) if gaps else math.inf)
    ok = all(c > tol.geometric for c in clearances)
    return CorollaryReport(tuple(h.nonanalytic_points()), pts, segs, tuple(clearances), ok)
