"""Piecewise trigonometric support functions on the circle and their hedgehogs.

A hedgehog is the envelope of the lines ``<x, xi(theta)> = h(theta)``.  Here
``h`` is stored as a finite trigonometric polynomial per arc, which keeps it
real analytic on each arc and exactly differentiable.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .errors import DiscontinuousSupportFunction, NonDifferentiableAt
from .tolerances import DEFAULT_TOL, ToleranceConfig

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Map any real angle into ``[0, 2*pi)``."""
    t = math.fmod(float(theta), TWO_PI)
    if t < 0.0:
        t += TWO_PI
    # fmod of a tiny negative number lands exactly on 2*pi after the shift
    if t >= TWO_PI:
        t = 0.0
    return t


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Point(-self.x, -self.y)

    def __mul__(self, k):
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


Vector = Point


def dot(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1]


def det2(u, v) -> float:
    """Determinant ``|u, v|`` of the 2x2 matrix with columns u, v."""
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Direction:
    """Unit vector ``(cos theta, sin theta)``; theta is kept in ``[0, 2*pi)``."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @property
    def vector(self) -> Point:
        return Point(math.cos(self.theta), math.sin(self.theta))

    @property
    def perp(self) -> Point:
        """``d xi / d theta = (-sin, cos)``."""
        return Point(-math.sin(self.theta), math.cos(self.theta))

    def opposite(self) -> "Direction":
        return Direction(self.theta + math.pi)

    @classmethod
    def from_vector(cls, v) -> "Direction":
        return cls(math.atan2(v[1], v[0]))


DirectionLike = Union[Direction, float]


def as_direction(d: DirectionLike) -> Direction:
    return d if isinstance(d, Direction) else Direction(d)


def _pad(seq: Sequence[float], n: int) -> tuple:
    return tuple(float(c) for c in seq) + (0.0,) * (n - len(seq))


@dataclass(frozen=True)
class TrigPolynomial:
    """``a0 + sum_k a_k cos(k theta) + b_k sin(k theta)`` for k = 1..N."""

    const: float = 0.0
    cos: tuple = ()
    sin: tuple = ()

    def __post_init__(self):
        n = max(len(self.cos), len(self.sin))
        object.__setattr__(self, "const", float(self.const))
        object.__setattr__(self, "cos", _pad(self.cos, n))
        object.__setattr__(self, "sin", _pad(self.sin, n))

    @property
    def degree(self) -> int:
        return len(self.cos)

    def __call__(self, theta: float) -> float:
        s = self.const
        for k, (a, b) in enumerate(zip(self.cos, self.sin), start=1):
            if a:
                s += a * math.cos(k * theta)
            if b:
                s += b * math.sin(k * theta)
        return s

    def values(self, thetas) -> np.ndarray:
        thetas = np.asarray(thetas, dtype=float)
        out = np.full(thetas.shape, self.const)
        for k, (a, b) in enumerate(zip(self.cos, self.sin), start=1):
            if a:
                out = out + a * np.cos(k * thetas)
            if b:
                out = out + b * np.sin(k * thetas)
        return out

    def derivative(self) -> "TrigPolynomial":
        ks = range(1, self.degree + 1)
        return TrigPolynomial(
            0.0,
            tuple(k * b for k, b in zip(ks, self.sin)),
            tuple(-k * a for k, a in zip(ks, self.cos)),
        )

    # Complex-exponential form c_{-N..N}, used for products.
    def _exp_coeffs(self) -> np.ndarray:
        n = self.degree
        c = np.zeros(2 * n + 1, dtype=complex)
        c[n] = self.const
        for k in range(1, n + 1):
            a, b = self.cos[k - 1], self.sin[k - 1]
            c[n + k] = (a - 1j * b) / 2
            c[n - k] = (a + 1j * b) / 2
        return c

    @classmethod
    def _from_exp_coeffs(cls, c: np.ndarray) -> "TrigPolynomial":
        n = (len(c) - 1) // 2
        cos = [2.0 * c[n + k].real for k in range(1, n + 1)]
        sin = [-2.0 * c[n + k].imag for k in range(1, n + 1)]
        return cls(c[n].real, tuple(cos), tuple(sin))

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return TrigPolynomial(self.const + other, self.cos, self.sin)
        n = max(self.degree, other.degree)
        a, b = _pad(self.cos, n), _pad(other.cos, n)
        c, d = _pad(self.sin, n), _pad(other.sin, n)
        return TrigPolynomial(
            self.const + other.const,
            tuple(x + y for x, y in zip(a, b)),
            tuple(x + y for x, y in zip(c, d)),
        )

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            k = float(other)
            return TrigPolynomial(
                self.const * k, tuple(a * k for a in self.cos), tuple(b * k for b in self.sin)
            )
        return TrigPolynomial._from_exp_coeffs(np.convolve(self._exp_coeffs(), other._exp_coeffs()))

    __rmul__ = __mul__

    def trimmed(self, tol: float = 0.0) -> "TrigPolynomial":
        n = self.degree
        while n and abs(self.cos[n - 1]) <= tol and abs(self.sin[n - 1]) <= tol:
            n -= 1
        return TrigPolynomial(self.const, self.cos[:n], self.sin[:n])

    def isclose(self, other: "TrigPolynomial", tol: float = 1e-12) -> bool:
        diff = (self - other)
        return abs(diff.const) <= tol and all(abs(c) <= tol for c in diff.cos + diff.sin)

    def to_dict(self) -> dict:
        return {"const": self.const, "cos": list(self.cos), "sin": list(self.sin)}


@dataclass(frozen=True)
class Piece:
    """``poly`` on the half-open arc ``[start, start + length)`` (mod 2*pi)."""

    start: float
    length: float
    poly: TrigPolynomial

    @property
    def end(self) -> float:
        return self.start + self.length

    def contains(self, theta: float) -> bool:
        return normalize_angle(theta - self.start) < self.length


@dataclass(frozen=True)
class Breakpoint:
    theta: float
    left: int                # index of the piece ending here
    right: int               # index of the piece starting here
    value_jump: float
    slope_jump: float
    kink: bool               # derivative discontinuous beyond tolerance
    analytic: bool           # both sides are the same polynomial


@dataclass(frozen=True)
class SupportFunction:
    pieces: tuple
    tol: ToleranceConfig = field(default=DEFAULT_TOL, compare=False, repr=False)
    breakpoints: tuple = field(init=False, compare=False, repr=False)
    _starts: tuple = field(init=False, compare=False, repr=False)
    _derivs: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        pieces = [self._canon(p) for p in self.pieces]
        if not pieces:
            raise ValueError("support function needs at least one piece")
        pieces.sort(key=lambda p: p.start)
        total = sum(p.length for p in pieces)
        if abs(total - TWO_PI) > 1e-9:
            raise ValueError(f"arcs cover {total!r} radians, expected 2*pi")
        for i, p in enumerate(pieces):
            nxt = pieces[(i + 1) % len(pieces)]
            gap = normalize_angle(nxt.start - p.end)
            gap = min(gap, TWO_PI - gap)
            if gap > 1e-9:
                raise ValueError(f"arcs are not contiguous at theta={p.end!r}")
        object.__setattr__(self, "pieces", tuple(pieces))
        object.__setattr__(self, "_starts", tuple(p.start for p in pieces))
        object.__setattr__(self, "_derivs", tuple(p.poly.derivative() for p in pieces))
        object.__setattr__(self, "breakpoints", self._find_breakpoints())

    @staticmethod
    def _canon(p) -> Piece:
        if isinstance(p, Piece):
            start, length, poly = p.start, p.length, p.poly
        else:
            (a, b), poly = p
            start = a
            length = b - a if b > a else b - a + TWO_PI
        if not 0.0 < length <= TWO_PI + 1e-12:
            raise ValueError(f"bad arc length {length!r}")
        return Piece(normalize_angle(start), min(length, TWO_PI), poly)

    def _find_breakpoints(self) -> tuple:
        if len(self.pieces) == 1:
            return ()
        out = []
        n = len(self.pieces)
        for j in range(n):
            i = (j - 1) % n
            theta = self.pieces[j].start
            left, right = self.pieces[i].poly, self.pieces[j].poly
            vj = abs(left(theta) - right(theta))
            if vj > self.tol.continuity:
                raise DiscontinuousSupportFunction(
                    f"value jump {vj:.3g} at breakpoint theta={theta!r}"
                )
            sj = abs(self._derivs[i](theta) - self._derivs[j](theta))
            same = left.isclose(right, self.tol.coefficient)
            out.append(Breakpoint(theta, i, j, vj, sj, sj > self.tol.continuity, same))
        return tuple(out)

    # construction helpers
    @classmethod
    def analytic(cls, poly: TrigPolynomial, tol: ToleranceConfig = DEFAULT_TOL) -> "SupportFunction":
        return cls((Piece(0.0, TWO_PI, poly),), tol)

    @classmethod
    def constant(cls, t: float) -> "SupportFunction":
        return cls.analytic(TrigPolynomial(t))

    @classmethod
    def from_coefficients(cls, const=0.0, cos=(), sin=()) -> "SupportFunction":
        return cls.analytic(TrigPolynomial(const, tuple(cos), tuple(sin)))

    @classmethod
    def piecewise(cls, arcs: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> "SupportFunction":
        """``arcs`` is an iterable of ``((theta_a, theta_b), TrigPolynomial)``."""
        return cls(tuple(arcs), tol)

    # lookup
    def piece_index(self, theta: float) -> int:
        t = normalize_angle(theta)
        i = bisect.bisect_right(self._starts, t) - 1
        return i if i >= 0 else len(self.pieces) - 1

    def __call__(self, theta: float) -> float:
        t = normalize_angle(theta)
        return self.pieces[self.piece_index(t)].poly(t)

    def values(self, thetas) -> np.ndarray:
        thetas = np.mod(np.asarray(thetas, dtype=float), TWO_PI)
        if len(self.pieces) == 1:
            return self.pieces[0].poly.values(thetas)
        idx = np.searchsorted(np.asarray(self._starts), thetas, side="right") - 1
        idx[idx < 0] = len(self.pieces) - 1
        out = np.empty(thetas.shape)
        for i, p in enumerate(self.pieces):
            mask = idx == i
            out[mask] = p.poly.values(thetas[mask])
        return out

    def kink_at(self, theta: float) -> bool:
        t = normalize_angle(theta)
        for b in self.breakpoints:
            if b.kink and _angle_gap(t, b.theta) <= self.tol.angle:
                return True
        return False

    def slope(self, theta: float) -> float:
        t = normalize_angle(theta)
        if self.breakpoints and self.kink_at(t):
            raise NonDifferentiableAt(t)
        return self._derivs[self.piece_index(t)](t)

    def kinks(self) -> list:
        return [b.theta for b in self.breakpoints if b.kink]

    def nonanalytic_points(self) -> list:
        """Breakpoints where the two adjacent pieces are different polynomials."""
        return [b.theta for b in self.breakpoints if not b.analytic]

    def extend(self, index: int, theta: float) -> float:
        """Analytic continuation of piece ``index`` evaluated anywhere on the circle."""
        return self.pieces[index].poly(normalize_angle(theta))

    def is_single_analytic(self) -> bool:
        first = self.pieces[0].poly
        return all(p.poly.isclose(first, self.tol.coefficient) for p in self.pieces[1:])

    # serialization
    def to_dict(self) -> dict:
        if len(self.pieces) == 1:
            return {"pieces": [self.pieces[0].poly.to_dict()]}
        return {
            "pieces": [
                {"arc": [p.start, p.end], **p.poly.to_dict()} for p in self.pieces
            ]
        }

    @classmethod
    def from_dict(cls, data: dict, tol: ToleranceConfig = DEFAULT_TOL) -> "SupportFunction":
        raw = data["pieces"] if "pieces" in data else [data]
        pieces = []
        for item in raw:
            poly = TrigPolynomial(item.get("const", 0.0), tuple(item.get("cos", ())), tuple(item.get("sin", ())))
            if "arc" in item:
                a, b = item["arc"]
            elif len(raw) == 1:
                a, b = 0.0, TWO_PI
            else:
                raise ValueError("every piece of a piecewise support function needs an 'arc'")
            pieces.append(((float(a), float(b)), poly))
        return cls(tuple(pieces), tol)


def _angle_gap(a: float, b: float) -> float:
    g = abs(normalize_angle(a) - normalize_angle(b))
    return min(g, TWO_PI - g)


@dataclass(frozen=True)
class SupportingLine:
    """The line ``<x, xi> = offset``."""

    direction: Direction
    offset: float

    def residual(self, x) -> float:
        return dot(x, self.direction.vector) - self.offset

    def point_at(self, s: float) -> Point:
        """Point of the line at signed position ``s`` along ``xi_perp``."""
        return self.direction.vector * self.offset + self.direction.perp * s


def evaluate(h: SupportFunction, d: DirectionLike) -> float:
    return h(as_direction(d).theta)


def derivative(h: SupportFunction, d: DirectionLike) -> float:
    """``dh/dtheta``; raises NonDifferentiableAt at a kinked breakpoint."""
    return h.slope(as_direction(d).theta)


def support_point(h: SupportFunction, d: DirectionLike) -> Point:
    """Point where the supporting line touches the envelope: ``h xi + h' xi_perp``."""
    d = as_direction(d)
    v, dv = h(d.theta), h.slope(d.theta)
    c, s = math.cos(d.theta), math.sin(d.theta)
    return Point(v * c - dv * s, v * s + dv * c)


def support_points(h: SupportFunction, thetas) -> np.ndarray:
    """Vectorized support points, shape ``(n, 2)``; kinks are not checked."""
    thetas = np.asarray(thetas, dtype=float)
    v = h.values(thetas)
    dv = np.empty_like(v)
    idx = [h.piece_index(t) for t in thetas]
    for i, t in enumerate(thetas):
        dv[i] = h._derivs[idx[i]](normalize_angle(t))
    c, s = np.cos(thetas), np.sin(thetas)
    return np.column_stack([v * c - dv * s, v * s + dv * c])


def envelope_residual(h: SupportFunction, d: DirectionLike, x) -> tuple:
    """``(F, dF/dtheta)`` for ``F(theta, x) = <x, xi> - h(theta)``."""
    d = as_direction(d)
    f = dot(x, d.vector) - h(d.theta)
    df = dot(x, d.perp) - h.slope(d.theta)
    return f, df


def supporting_line(h: SupportFunction, d: DirectionLike) -> SupportingLine:
    d = as_direction(d)
    return SupportingLine(d, h(d.theta))


def is_trivial(h: SupportFunction) -> bool:
    """True when h is a pure first harmonic, i.e. the hedgehog is a single point."""
    if not h.is_single_analytic():
        return False
    p = h.pieces[0].poly
    eps = h.tol.coefficient
    return abs(p.const) <= eps and all(
        abs(a) <= eps and abs(b) <= eps for a, b in zip(p.cos[1:], p.sin[1:])
    )


def is_centrally_symmetric(h: SupportFunction) -> bool:
    """``h(theta) == h(theta + pi)`` everywhere."""
    if h.is_single_analytic():
        p = h.pieces[0].poly
        eps = h.tol.coefficient
        return all(
            abs(p.cos[k]) <= eps and abs(p.sin[k]) <= eps for k in range(0, p.degree, 2)
        )
    thetas = np.linspace(0.0, TWO_PI, h.tol.symmetry_samples, endpoint=False)
    gap = np.abs(h.values(thetas) - h.values(thetas + math.pi))
    return bool(np.max(gap) <= h.tol.continuity)
