"""Unimodular lifts of pentagons and the frieze-pattern description of T.

All public indices are 1-based and cyclic mod n: ``a[0]`` holds a_1, and
so on. A lift ``P_1..P_n`` is unimodular when every consecutive determinant
``det(P_{i-1}, P_i, P_{i+1})`` equals 1; it then satisfies

    P_{i+2} = a_{i+1} P_{i+1} - b_i P_i + P_{i-1}.

The frieze coordinates of a pentagon are ``x = a_3, y = a_1``. They are a
different chart on pentagon moduli from the normalized-frame coordinates used
in :mod:`projevolute.pentagon`; see :func:`frame_frieze_coordinates`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateLift, DivisionByZero, InexactCubeRoot
from .projective import cross3, det3


@dataclass(frozen=True)
class Lift:
    """Vertices of a polygon lifted to R^3 (tuples of scalars)."""

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        if len(self.vertices) % 3 == 0:
            raise ValueError("unimodular lifts need n not divisible by 3")

    def __len__(self):
        return len(self.vertices)

    def at(self, i: int) -> tuple:
        """Vertex P_i with 1-based cyclic index."""
        return self.vertices[(i - 1) % len(self.vertices)]

    @property
    def exact(self) -> bool:
        return not any(isinstance(c, float) for v in self.vertices for c in v)

    def dets(self) -> tuple:
        """(D_1, ..., D_n) with D_i = det(P_{i-1}, P_i, P_{i+1})."""
        return tuple(det3(self.at(i - 1), self.at(i), self.at(i + 1)) for i in range(1, len(self) + 1))

    def is_unimodular(self, tol: float = 1e-12) -> bool:
        if self.exact:
            return all(d == 1 for d in self.dets())
        return all(abs(d - 1) <= tol for d in self.dets())

    def transformed(self, matrix) -> Lift:
        return Lift(tuple(tuple(det_row_dot(row, v) for row in matrix) for v in self.vertices))


def det_row_dot(row, v):
    return row[0] * v[0] + row[1] * v[1] + row[2] * v[2]


@dataclass(frozen=True)
class Coefficients:
    a: tuple
    b: tuple

    def a_(self, i: int):
        return self.a[(i - 1) % len(self.a)]

    def b_(self, i: int):
        return self.b[(i - 1) % len(self.b)]

    def relation_residuals(self) -> list:
        """Residuals of b_i = a_{i+3} and a_i + 1 = a_{i+2} a_{i+3} (pentagons only)."""
        if len(self.a) != 5:
            raise ValueError("the coefficient relations are stated for pentagons")
        out = []
        for i in range(1, 6):
            out.append(self.b_(i) - self.a_(i + 3))
            out.append(self.a_(i) + 1 - self.a_(i + 2) * self.a_(i + 3))
        return out

    def moduli(self) -> tuple:
        """Frieze coordinates (x, y) = (a_3, a_1)."""
        return (self.a_(3), self.a_(1))


def _icbrt(n: int) -> int:
    """Floor of the cube root of a non-negative integer."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def real_cbrt(v):
    """Sign-preserving real cube root; exact for Fractions that are rational cubes."""
    if isinstance(v, float):
        return math.copysign(abs(v) ** (1.0 / 3.0), v)
    v = Fraction(v)
    sign = -1 if v < 0 else 1
    num, den = abs(v.numerator), v.denominator
    rn, rd = _icbrt(num), _icbrt(den)
    if rn ** 3 != num or rd ** 3 != den:
        raise InexactCubeRoot(f"{v} is not the cube of a rational number")
    return Fraction(sign * rn, rd)


def lift_unimodular(U: Lift) -> Lift:
    """Rescale U_i by t_i = (prod D)^{1/3} / (D_{i-1} D_{i+1}) so that every D_i becomes 1."""
    D = U.dets()
    if any(d == 0 for d in D):
        raise DegenerateLift("a consecutive determinant vanishes")
    n = len(U)
    K = real_cbrt(math.prod(D))
    t = [K / (D[(i - 1) % n] * D[(i + 1) % n]) for i in range(n)]
    return Lift(tuple(tuple(ti * c for c in v) for ti, v in zip(t, U.vertices)))


def recurrence_coefficients(Q: Lift) -> Coefficients:
    """a_{i+1} = det(Q_{i-1}, Q_i, Q_{i+2}),  b_i = det(Q_{i-1}, Q_{i+1}, Q_{i+2})."""
    if not Q.is_unimodular(tol=1e-9):
        raise ValueError("recurrence coefficients need a unimodular lift")
    n = len(Q)
    a = [None] * n
    b = [None] * n
    for i in range(1, n + 1):
        a[i % n] = det3(Q.at(i - 1), Q.at(i), Q.at(i + 2))
        b[i - 1] = det3(Q.at(i - 1), Q.at(i + 1), Q.at(i + 2))
    return Coefficients(tuple(a), tuple(b))


def unimodular_coefficients(U: Lift) -> Coefficients:
    """Coefficients of the unimodular rescaling of an arbitrary pentagon lift, without cube roots.

    Substituting t_i into det(t_{i-1}U_{i-1}, t_i U_i, t_{i+2}U_{i+2}) gives

        a_{i+1} = det(U_{i-1}, U_i, U_{i+2}) * D_{i+2} / (D_{i-2} D_{i+1}),
        b_i     = det(U_{i-1}, U_{i+1}, U_{i+2}) * D_{i-1} / (D_{i-2} D_i),

    which is invariant under U_i -> s_i U_i.
    """
    if len(U) != 5:
        raise ValueError("the cube-root-free formula is specific to pentagons")
    D = U.dets()
    if any(d == 0 for d in D):
        raise DegenerateLift("a consecutive determinant vanishes")

    def Di(i):
        return D[(i - 1) % 5]

    a = [None] * 5
    b = [None] * 5
    for i in range(1, 6):
        a[i % 5] = det3(U.at(i - 1), U.at(i), U.at(i + 2)) * Di(i + 2) / (Di(i - 2) * Di(i + 1))
        b[i - 1] = det3(U.at(i - 1), U.at(i + 1), U.at(i + 2)) * Di(i - 1) / (Di(i - 2) * Di(i))
    return Coefficients(tuple(a), tuple(b))


def coefficients_from_moduli(x, y) -> Coefficients:
    """a_1..a_5 = (y, (1+x+y)/(xy), x, (1+y)/x, (1+x)/y) and b_i = a_{i+3}."""
    if x == 0 or y == 0:
        raise DivisionByZero("frieze coordinates need x != 0 and y != 0")
    a = (y, (1 + x + y) / (x * y), x, (1 + y) / x, (1 + x) / y)
    b = tuple(a[(i + 3) % 5] for i in range(5))
    return Coefficients(a, b)


def lift_from_coefficients(c: Coefficients) -> Lift:
    """Unimodular lift generated by the recurrence from P_0, P_1, P_2 = e_1, e_2, e_3."""
    n = len(c.a)
    one = c.a[0] * 0 + 1
    zero = one * 0
    P = {0: (one, zero, zero), 1: (zero, one, zero), 2: (zero, zero, one)}
    for i in range(1, n - 1):
        P[i + 2] = tuple(c.a_(i + 1) * p - c.b_(i) * q + s for p, q, s in zip(P[i + 1], P[i], P[i - 1]))
    return Lift(tuple(P[i] for i in range(1, n + 1)))


def frieze_lift(x, y) -> Lift:
    return lift_from_coefficients(coefficients_from_moduli(x, y))


def frieze_rows(x, y) -> list:
    """The four rows of the width-2 frieze pattern (one period each)."""
    if x == 0 or y == 0:
        raise DivisionByZero("frieze coordinates need x != 0 and y != 0")
    one = x * 0 + 1
    row1 = (x, (y + 1) / x, (x + 1) / y, y, (x + y + 1) / (x * y))
    row2 = (y, (x + y + 1) / (x * y), x, (y + 1) / x, (x + 1) / y)
    return [(one,) * 5, row1, row2, (one,) * 5]


def frieze_diamonds(rows) -> list:
    """``left * right - top * bottom`` for every diamond between adjacent rows.

    ``rows[2][j]`` sits below, between ``rows[1][j]`` and ``rows[1][j+1]``;
    the bounding rows are all ones. Every entry is 1 for a genuine frieze.
    """
    _, r1, r2, _ = rows
    n = len(r1)
    lower = [r1[j] * r1[(j + 1) % n] - r2[j] for j in range(n)]
    upper = [r2[j] * r2[(j + 1) % n] - r1[(j + 1) % n] for j in range(n)]
    return lower + upper


def evolute_lift(P: Lift) -> Lift:
    """Evolute of a lifted pentagon, computed by iterated cross products (no normalization).

    Vertex i of the result is n_i x n_{i+1}, where n_i is the projective normal
    of the edge P_i P_{i+1}; this matches :func:`projevolute.evolute.evolute`.
    """
    X = cross3
    n = len(P)
    out = []
    for j in range(1, n + 1):
        i = j + 1
        first = X(
            X(X(P.at(i - 2), P.at(i - 1)), X(P.at(i), P.at(i + 1))),
            X(X(P.at(i - 2), P.at(i)), X(P.at(i - 1), P.at(i + 1))),
        )
        second = X(
            X(X(P.at(i - 1), P.at(i)), X(P.at(i + 1), P.at(i + 2))),
            X(X(P.at(i - 1), P.at(i + 1)), X(P.at(i), P.at(i + 2))),
        )
        out.append(X(first, second))
    return Lift(tuple(out))


def evolute_coefficients(P: Lift) -> Coefficients:
    """Coefficients of the unimodular rescaling of the evolute of P."""
    return unimodular_coefficients(evolute_lift(P))


def frieze_t_map(x, y) -> tuple:
    """T in frieze coordinates: lift (x, y), take the evolute lift, read (a_3, a_1)."""
    return evolute_coefficients(frieze_lift(x, y)).moduli()


def monodromy_check(c: Coefficients) -> tuple:
    """(prod a_i, sum a_i + 3); both equal the invariant I at the frieze coordinates."""
    return (math.prod(c.a), sum(c.a) + 3)


def frame_lift(x, y) -> Lift:
    """The canonical triples of the normalized-frame pentagon P(x, y)."""
    one = x * 0 + 1
    zero = one * 0
    return Lift(((zero, -one, one), (one, zero, zero), (zero, one, zero), (-one, zero, one), (x, y, one)))


def frame_frieze_coordinates(x, y) -> tuple:
    """Frieze coordinates of the frame pentagon P(x, y)."""
    return unimodular_coefficients(frame_lift(x, y)).moduli()
