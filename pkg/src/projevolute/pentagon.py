"""Moduli space of projective pentagons.

A pentagon class is represented by ``(x, y)``: the unique projectively
equivalent pentagon with vertices

    [0:-1:1], [1:0:0], [0:1:0], [-1:0:1], [x:y:1].

The closed-form evolute map, its invariant and the conformal-symplectic
identity for its square all live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .dual import DualScalar, value_of
from .errors import DegenerateInput, DegenerateModuli, DivisionByZero, MapUndefined
from .evolute import Polygon, evolute
from .projective import HomTriple, affine_chart, apply_map, collinear, transform_from_correspondence

LOCI = ("x=0", "y=0", "x+1=0", "y+1=0", "x+y+1=0", "infinity")

# vertex of T(P) that becomes V1 when T(P) is renormalized; fixed by matching
# the geometric pipeline against the closed form
READOUT_OFFSET = 2

FLOAT_ZERO_TOL = 1e-12


def _is_zero(v, scale=1.0) -> bool:
    v = value_of(v)
    if isinstance(v, float):
        return abs(v) <= FLOAT_ZERO_TOL * max(1.0, scale)
    return v == 0


@dataclass(frozen=True)
class PentagonModuli:
    x: object
    y: object

    @classmethod
    def parse(cls, x, y, exact: bool = True) -> PentagonModuli:
        if exact:
            return cls(Fraction(x), Fraction(y))
        return cls(float(Fraction(x)) if isinstance(x, str) else float(x),
                   float(Fraction(y)) if isinstance(y, str) else float(y))

    @property
    def exact(self) -> bool:
        return not isinstance(self.x, float) and not isinstance(self.y, float)

    def as_tuple(self) -> tuple:
        return (self.x, self.y)

    def to_float(self) -> PentagonModuli:
        return PentagonModuli(float(self.x), float(self.y))


def _frame(exact: bool = True):
    one = Fraction(1) if exact else 1.0
    zero = one * 0
    return (
        HomTriple(zero, -one, one),
        HomTriple(one, zero, zero),
        HomTriple(zero, one, zero),
        HomTriple(-one, zero, one),
    )


def degeneracy_report(m: PentagonModuli) -> frozenset:
    """The degeneracy loci containing m (the line at infinity never applies to affine m)."""
    x, y = m.x, m.y
    scale = max(abs(float(value_of(x))), abs(float(value_of(y))))
    values = {"x=0": x, "y=0": y, "x+1=0": x + 1, "y+1=0": y + 1, "x+y+1=0": x + y + 1}
    return frozenset(name for name, v in values.items() if _is_zero(v, scale))


def pentagon_from_moduli(m: PentagonModuli) -> Polygon:
    bad = degeneracy_report(m)
    if bad:
        raise DegenerateModuli(bad)
    frame = _frame(m.exact)
    one = frame[0].c
    return Polygon(frame + (HomTriple(m.x, m.y, one),))


def moduli_from_pentagon(P: Polygon) -> PentagonModuli:
    """Normalize V1..V4 to the standard frame and read off V5."""
    if len(P) != 5:
        raise ValueError("need a pentagon")
    for i, j, k in combinations(range(5), 3):
        if collinear(P[i], P[j], P[k]):
            raise DegenerateInput(f"vertices {i + 1}, {j + 1}, {k + 1} are collinear")
    M = transform_from_correspondence(P.vertices[:4], _frame(P.exact))
    x, y = affine_chart(apply_map(M, P[4]))
    return PentagonModuli(x, y)


def _t_formula(x, y):
    one = x * 0 + 1
    factors = {
        "1+x": one + x,
        "-1-y+xy": -one - y + x * y,
        "1+x-y^2": one + x - y * y,
        "1+y-x^2": one + y - x * x,
    }
    scale = max(1.0, abs(float(value_of(x))), abs(float(value_of(y)))) ** 2
    vanishing = [name for name, f in factors.items() if _is_zero(f, scale)]
    if vanishing:
        raise MapUndefined(vanishing)
    xbar = (one + y) * (one + x - x * y) ** 2 / (factors["1+x"] * factors["-1-y+xy"] * factors["1+x-y^2"])
    ybar = (x - y) ** 2 * (one + x + y) / (factors["1+y-x^2"] * factors["1+x-y^2"])
    return xbar, ybar


def t_map(m: PentagonModuli) -> PentagonModuli:
    """Closed-form evolute map on moduli coordinates."""
    return PentagonModuli(*_t_formula(m.x, m.y))


def t_map_iterates(m: PentagonModuli, n: int) -> list:
    out = [m]
    for _ in range(n):
        out.append(t_map(out[-1]))
    return out


def t_map_geometric(m: PentagonModuli) -> PentagonModuli:
    """T computed from the polygon: build P(x,y), take its evolute, renormalize."""
    image = evolute(pentagon_from_moduli(m))
    return moduli_from_pentagon(image.shifted(READOUT_OFFSET))


def invariant_I(m: PentagonModuli):
    x, y = m.x, m.y
    if _is_zero(x) or _is_zero(y):
        raise DivisionByZero("invariant I needs x != 0 and y != 0")
    return (x + 1) * (y + 1) * (x + y + 1) / (x * y)


def t2_with_jacobian(m: PentagonModuli):
    """T^2(m) together with its 2x2 Jacobian, via exact dual-number arithmetic."""
    x = DualScalar.variable(m.x, 0)
    y = DualScalar.variable(m.y, 1)
    x1, y1 = _t_formula(x, y)
    x2, y2 = _t_formula(x1, y1)
    jac = ((x2.partials[0], x2.partials[1]), (y2.partials[0], y2.partials[1]))
    return PentagonModuli(x2.value, y2.value), jac


def jacobian_ratio_residual(m: PentagonModuli):
    """J/(x''y'') + 4/(xy) where J = det d(T^2) and (x'', y'') = T^2(x, y).

    Zero everywhere it is defined, which is the statement that T^2 pulls the
    area form dx^dy/(xy) back to -4 times itself.
    """
    if _is_zero(m.x) or _is_zero(m.y):
        raise MapUndefined(["x" if _is_zero(m.x) else "y"])
    image, ((a, b), (c, d)) = t2_with_jacobian(m)
    if _is_zero(image.x) or _is_zero(image.y):
        raise MapUndefined(["x''" if _is_zero(image.x) else "y''"])
    J = a * d - b * c
    return J / (image.x * image.y) + 4 / (m.x * m.y)


def t2_directional(m: PentagonModuli, direction) -> tuple:
    """(T^2(m), d(T^2)_m applied to direction)."""
    x = DualScalar.seeded(m.x, (direction[0],))
    y = DualScalar.seeded(m.y, (direction[1],))
    x1, y1 = _t_formula(x, y)
    x2, y2 = _t_formula(x1, y1)
    return PentagonModuli(x2.value, y2.value), (x2.partials[0], y2.partials[0])


def golden_symmetric_points() -> list:
    """The two solutions of x = y, 1 + x - xy = 0: the pentagram class (phi, phi) and the regular
    convex pentagon class (1 - phi, 1 - phi)."""
    s5 = math.sqrt(5.0)
    return [PentagonModuli((1 + s5) / 2, (1 + s5) / 2), PentagonModuli((1 - s5) / 2, (1 - s5) / 2)]


def regular_pentagon(step: int = 1) -> Polygon:
    """Regular pentagon (step=1) or pentagram (step=2) on the unit circle, float coordinates."""
    pts = [(math.cos(2 * math.pi * step * k / 5), math.sin(2 * math.pi * step * k / 5)) for k in range(5)]
    return Polygon.from_affine(pts)
