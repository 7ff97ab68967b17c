"""Homogeneous coordinates in the real projective plane.

Scalars are either :class:`fractions.Fraction` (exact) or ``float``
(approximate). Every routine here is generic over that choice: exact inputs
give exact outputs and exact zero tests, float inputs use scale-aware
tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .errors import AtInfinity, DegenerateInput, ZeroResult

Scalar = Union[Fraction, float]

POINT = "point"
LINE = "line"

# |det| <= COLLINEAR_TOL * |p||q||r| counts as collinear for float triples
COLLINEAR_TOL = 1e-12
# |u x v| <= COINCIDE_TOL * |u||v| counts as the same projective element
COINCIDE_TOL = 1e-12


def is_exact(*values) -> bool:
    return not any(isinstance(v, float) for v in values)


def as_scalar(value, exact: bool = True) -> Scalar:
    """Coerce ints, strings like ``"-3/4"`` and floats to the requested scalar kind."""
    if exact:
        if isinstance(value, float):
            return Fraction(value)
        return Fraction(value)
    return float(Fraction(value)) if isinstance(value, str) else float(value)


def _norm(v: Sequence[Scalar]) -> float:
    return math.sqrt(sum(float(c) * float(c) for c in v))


def cross3(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot3(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(p: Sequence[Scalar], q: Sequence[Scalar], r: Sequence[Scalar]) -> Scalar:
    return dot3(p, cross3(q, r))


def _is_zero_vec(v: Sequence[Scalar], scale: float) -> bool:
    if is_exact(*v):
        return all(c == 0 for c in v)
    return _norm(v) <= COINCIDE_TOL * scale


@dataclass(frozen=True)
class HomTriple:
    """A point or a line of RP^2, given by a nonzero triple up to scale."""

    a: Scalar
    b: Scalar
    c: Scalar
    kind: str = POINT

    __hash__ = None  # equality is scale-invariant and tolerance-based for floats

    def __post_init__(self):
        if self.kind not in (POINT, LINE):
            raise ValueError(f"kind must be {POINT!r} or {LINE!r}, got {self.kind!r}")
        if all(c == 0 for c in self.coords):
            raise ZeroResult("the zero triple does not represent a projective element")

    @classmethod
    def point(cls, a, b, c) -> HomTriple:
        return cls(a, b, c, POINT)

    @classmethod
    def line(cls, a, b, c) -> HomTriple:
        return cls(a, b, c, LINE)

    @classmethod
    def affine(cls, x, y) -> HomTriple:
        one = 1.0 if isinstance(x, float) or isinstance(y, float) else Fraction(1)
        return cls(x, y, one, POINT)

    @property
    def coords(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def exact(self) -> bool:
        return is_exact(*self.coords)

    def norm(self) -> float:
        return _norm(self.coords)

    def canonical(self) -> tuple:
        """Representative scaled so the last nonzero coordinate (c, then b, then a) is 1."""
        for pivot in (self.c, self.b, self.a):
            if pivot != 0:
                return tuple(x / pivot for x in self.coords)
        raise ZeroResult("zero triple")  # unreachable, guarded in __post_init__

    def to_float(self) -> HomTriple:
        return HomTriple(float(self.a), float(self.b), float(self.c), self.kind)

    def to_exact(self) -> HomTriple:
        return HomTriple(Fraction(self.a), Fraction(self.b), Fraction(self.c), self.kind)

    def scaled(self, r: Scalar) -> HomTriple:
        return HomTriple(r * self.a, r * self.b, r * self.c, self.kind)

    def equivalent(self, other: HomTriple, tol: float = COINCIDE_TOL) -> bool:
        """Scale-invariant equality; exact when both triples are exact."""
        w = cross3(self.coords, other.coords)
        if self.exact and other.exact:
            return all(c == 0 for c in w)
        return _norm(w) <= tol * self.norm() * other.norm()

    def __eq__(self, other):
        if not isinstance(other, HomTriple):
            return NotImplemented
        return self.kind == other.kind and self.equivalent(other)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        body = ":".join(str(c) for c in self.coords)
        return f"{self.kind.capitalize()}[{body}]"


def _dual_kind(u: HomTriple, v: HomTriple) -> str:
    if u.kind == POINT and v.kind == POINT:
        return LINE
    if u.kind == LINE and v.kind == LINE:
        return POINT
    raise ValueError("cross of a point and a line has no projective meaning")


def cross(u: HomTriple, v: HomTriple) -> HomTriple:
    """Line through two points, or intersection point of two lines."""
    w = cross3(u.coords, v.coords)
    if _is_zero_vec(w, u.norm() * v.norm()):
        raise ZeroResult(f"{u!r} and {v!r} are the same projective element")
    return HomTriple(*w, kind=_dual_kind(u, v))


def collinear(p: HomTriple, q: HomTriple, r: HomTriple, tol: float = COLLINEAR_TOL) -> bool:
    """True iff three points are collinear (or three lines concurrent)."""
    d = det3(p.coords, q.coords, r.coords)
    if p.exact and q.exact and r.exact:
        return d == 0
    return abs(d) <= tol * p.norm() * q.norm() * r.norm()


def affine_chart(p: HomTriple) -> tuple:
    """(a/c, b/c) for a point [a:b:c]."""
    if p.c == 0:
        raise AtInfinity(f"{p!r} lies on the line at infinity")
    if not p.exact and abs(p.c) <= COINCIDE_TOL * p.norm():
        raise AtInfinity(f"{p!r} lies on the line at infinity (to tolerance)")
    return (p.a / p.c, p.b / p.c)


@dataclass(frozen=True)
class ProjMap:
    """A projective transformation stored as an unnormalized 3x3 matrix (row-major)."""

    m: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.m)
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise ValueError("ProjMap needs a 3x3 matrix")
        object.__setattr__(self, "m", rows)

    @classmethod
    def identity(cls, exact: bool = True) -> ProjMap:
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        return cls(((one, zero, zero), (zero, one, zero), (zero, zero, one)))

    @classmethod
    def from_columns(cls, c0, c1, c2) -> ProjMap:
        return cls(tuple((c0[i], c1[i], c2[i]) for i in range(3)))

    def det(self) -> Scalar:
        return det3(*self.m)

    def is_singular(self) -> bool:
        d = self.det()
        if is_exact(*(x for row in self.m for x in row)):
            return d == 0
        scale = math.prod(_norm(row) for row in self.m)
        return abs(d) <= COLLINEAR_TOL * scale

    def adjugate(self) -> ProjMap:
        """Inverse up to the scalar det; sufficient for projective purposes."""
        r0, r1, r2 = self.m
        # columns of the adjugate are cross products of rows
        return ProjMap.from_columns(cross3(r1, r2), cross3(r2, r0), cross3(r0, r1))

    def transpose(self) -> ProjMap:
        return ProjMap(tuple(zip(*self.m)))

    def __matmul__(self, other: ProjMap) -> ProjMap:
        cols = list(zip(*other.m))
        return ProjMap(tuple(tuple(dot3(row, col) for col in cols) for row in self.m))

    def mul_vec(self, v: Sequence[Scalar]) -> tuple:
        return tuple(dot3(row, v) for row in self.m)


def apply_map(M: ProjMap, p: HomTriple) -> HomTriple:
    """Image of a point (M p) or of a line (M^{-T} l, up to scale)."""
    if p.kind == LINE:
        w = M.adjugate().transpose().mul_vec(p.coords)
    else:
        w = M.mul_vec(p.coords)
    return HomTriple(*w, kind=p.kind)


def _frame_matrix(pts: Sequence[HomTriple]) -> ProjMap:
    # matrix sending e1, e2, e3, (1,1,1) to the four points
    p1, p2, p3, p4 = (p.coords for p in pts)
    base = ProjMap.from_columns(p1, p2, p3)
    lam = base.adjugate().mul_vec(p4)  # = det * base^{-1} p4
    return ProjMap.from_columns(
        tuple(lam[0] * c for c in p1),
        tuple(lam[1] * c for c in p2),
        tuple(lam[2] * c for c in p3),
    )


def check_general_position(pts: Sequence[HomTriple]) -> None:
    for i, j, k in combinations(range(len(pts)), 3):
        if collinear(pts[i], pts[j], pts[k]):
            raise DegenerateInput(f"points {i + 1}, {j + 1}, {k + 1} are collinear")


def transform_from_correspondence(src: Sequence[HomTriple], dst: Sequence[HomTriple]) -> ProjMap:
    """The projective map (unique up to scale) taking src[i] to dst[i] for i = 0..3."""
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("need exactly four source and four target points")
    check_general_position(src)
    check_general_position(dst)
    return _frame_matrix(dst) @ _frame_matrix(src).adjugate()
