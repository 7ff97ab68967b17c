"""Hexagon moduli, axis-aligned hexagons and the circle map f.

A hexagon class is represented by ``(x5, y5, x6, y6)``: the projectively
equivalent hexagon with vertices (0,1), (-1,1), (-1,0), (0,0), (x5,y5),
(x6,y6). Hexagons whose sides alternate horizontal and vertical land on the
quadric ``A^2 - B^2 + C^2 = 1, D = 0``; this holds for every cyclic labeling
and both orientations, so :func:`moduli_from_hexagon` simply uses the vertex
order it is given.

Labeling used for ``H(a, b)``: vertices (0,0), (a,0), (a,b), (1,b), (1,1),
(0,1) in that order. The renormalized evolute step relabels T(H) starting at
its vertex 3, reflects in the diagonal y = x and applies the diagonal affine
map sending the new vertex 0 to (0,0) and vertex 4 to (1,1).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import AtInfinity, DegenerateImage, DegenerateInput, PoleAtInput
from .evolute import Polygon, evolute
from .projective import HomTriple, affine_chart, apply_map, collinear, transform_from_correspondence

STEP_OFFSET = 3


class _Infinity:
    """The point at infinity of the projective line R u {inf}."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    __str__ = __repr__


INFINITY = _Infinity()


def is_infinite(t) -> bool:
    return t is INFINITY or (isinstance(t, float) and math.isinf(t))


@dataclass(frozen=True)
class HexagonModuli:
    x5: object
    y5: object
    x6: object
    y6: object

    @classmethod
    def parse(cls, values, exact: bool = True) -> HexagonModuli:
        conv = Fraction if exact else (lambda v: float(Fraction(v)) if isinstance(v, str) else float(v))
        return cls(*(conv(v) for v in values))

    def as_tuple(self) -> tuple:
        return (self.x5, self.y5, self.x6, self.y6)

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.as_tuple())

    def abcd(self) -> tuple:
        return abcd(self)

    def axis_aligned_residual(self) -> tuple:
        return axis_aligned_residual(self)


def abcd(m: HexagonModuli) -> tuple:
    A = m.x5 + m.x6 + 1
    B = m.x5 - m.x6 + 2 * m.y5 - 1
    C = 2 * m.y5 - 1
    D = m.y6 - m.y5
    return A, B, C, D


def axis_aligned_residual(m: HexagonModuli) -> tuple:
    A, B, C, D = abcd(m)
    return (abs(A * A - B * B + C * C - 1), abs(D))


def _frame(exact: bool):
    one = Fraction(1) if exact else 1.0
    zero = one * 0
    return (
        HomTriple.affine(zero, one),
        HomTriple.affine(-one, one),
        HomTriple.affine(-one, zero),
        HomTriple.affine(zero, zero),
    )


def hexagon_from_moduli(m: HexagonModuli) -> Polygon:
    verts = _frame(m.exact) + (HomTriple.affine(m.x5, m.y5), HomTriple.affine(m.x6, m.y6))
    for i in range(6):
        if verts[i].equivalent(verts[(i + 1) % 6]):
            raise DegenerateInput(f"vertices {i + 1} and {(i + 1) % 6 + 1} coincide")
        if collinear(verts[i], verts[(i + 1) % 6], verts[(i + 2) % 6]):
            raise DegenerateInput(f"vertices {i + 1}, {(i + 1) % 6 + 1}, {(i + 2) % 6 + 1} are collinear")
    return Polygon(verts)


def moduli_from_hexagon(P: Polygon) -> HexagonModuli:
    """Send V1..V4 to the standard frame and read off V5 and V6."""
    if len(P) != 6:
        raise ValueError("need a hexagon")
    M = transform_from_correspondence(P.vertices[:4], _frame(P.exact))
    x5, y5 = affine_chart(apply_map(M, P[4]))
    x6, y6 = affine_chart(apply_map(M, P[5]))
    return HexagonModuli(x5, y5, x6, y6)


# -- the circle map f ------------------------------------------------------------


def f_map(t, strict: bool = False):
    """f(t) = (2t - 1)/(t^2 - 1) on R u {inf}; strict mode raises at the poles t = +-1."""
    if is_infinite(t):
        if strict:
            raise PoleAtInput("f is evaluated at infinity")
        return 0.0 if isinstance(t, float) else Fraction(0)
    den = t * t - 1
    if den == 0:
        if strict:
            raise PoleAtInput(f"f has a pole at t = {t}")
        return INFINITY
    return (2 * t - 1) / den


def f_iterates(t, n: int) -> list:
    out = [t]
    for _ in range(n):
        out.append(f_map(out[-1]))
    return out


def f_winding_number(samples: int = 20001) -> int:
    """Topological degree of f as a self-map of the circle R u {inf}.

    The circle is parameterized by t = tan(phi/2), phi in [0, 2pi); the
    lifted angle of f is accumulated over a fine grid.
    """
    phis = np.linspace(-math.pi, math.pi, samples)
    total = 0.0
    prev = None
    for phi in phis:
        if abs(abs(phi) - math.pi) < 1e-15:
            t = INFINITY
        else:
            t = math.tan(phi / 2)
        v = f_map(t)
        psi = math.pi if is_infinite(v) else 2 * math.atan(float(v))
        if prev is not None:
            d = psi - prev
            d = (d + math.pi) % (2 * math.pi) - math.pi
            total += d
        prev = psi
    return round(total / (2 * math.pi))


# -- axis-aligned hexagons -------------------------------------------------------


@dataclass(frozen=True)
class AxisAlignedHexagon:
    """H(a, b) with vertices (0,0), (a,0), (a,b), (1,b), (1,1), (0,1)."""

    a: object
    b: object

    @property
    def degenerate(self) -> bool:
        return any(is_infinite(v) or v == 0 or v == 1 for v in (self.a, self.b))

    def polygon(self) -> Polygon:
        if self.degenerate:
            raise DegenerateInput(f"H({self.a}, {self.b}) is degenerate")
        a, b = self.a, self.b
        one = a * 0 + 1
        zero = one * 0
        return Polygon.from_affine([(zero, zero), (a, zero), (a, b), (one, b), (one, one), (zero, one)])

    def moduli(self) -> HexagonModuli:
        return moduli_from_hexagon(self.polygon())


def side_directions(P: Polygon, tol: float = 1e-12) -> list:
    """'h', 'v' or '?' for each side V[i] V[i+1] of an affine polygon."""
    pts = P.affine_points()
    out = []
    for i in range(len(pts)):
        (x0, y0), (x1, y1) = pts[i], pts[(i + 1) % len(pts)]
        scale = max(1.0, abs(float(x0)), abs(float(x1)), abs(float(y0)), abs(float(y1)))
        if abs(y1 - y0) <= (0 if P.exact else tol * scale):
            out.append("h")
        elif abs(x1 - x0) <= (0 if P.exact else tol * scale):
            out.append("v")
        else:
            out.append("?")
    return out


def renormalized_step_geometric(h: AxisAlignedHexagon, tol: float = 1e-12) -> AxisAlignedHexagon:
    """Evolute of H(a, b), reflected in y = x and rescaled back to the H-form."""
    image = evolute(h.polygon()).shifted(STEP_OFFSET)
    try:
        pts = [(y, x) for x, y in image.affine_points()]
    except AtInfinity as exc:
        raise DegenerateImage(f"the evolute of H({h.a}, {h.b}) has a vertex at infinity") from exc
    (x0, y0), (x4, y4) = pts[0], pts[4]
    if x4 == x0 or y4 == y0:
        raise DegenerateImage("the reflected evolute has a degenerate bounding frame")
    # diagonal affine map: (x, y) -> ((x - x0)/(x4 - x0), (y - y0)/(y4 - y0))
    norm = Polygon.from_affine([((x - x0) / (x4 - x0), (y - y0) / (y4 - y0)) for x, y in pts])
    dirs = side_directions(norm, tol)
    if dirs != ["h", "v", "h", "v", "h", "v"]:
        raise DegenerateImage(f"renormalized image is not in H-form (sides {''.join(dirs)})")
    q = norm.affine_points()
    return AxisAlignedHexagon(q[1][0], q[2][1])


def renormalized_step(h: AxisAlignedHexagon, method: str = "auto") -> AxisAlignedHexagon:
    """One step of T on axis-aligned hexagons, in (a, b) form.

    ``method="geometric"`` runs the polygon pipeline, ``"formula"`` applies
    (f(a), f(b)) on R u {inf}, and ``"auto"`` uses the pipeline when H(a, b)
    is a genuine hexagon and the formula otherwise.
    """
    if method == "formula":
        return AxisAlignedHexagon(f_map(h.a), f_map(h.b))
    if method == "geometric":
        return renormalized_step_geometric(h)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if h.degenerate:
        return AxisAlignedHexagon(f_map(h.a), f_map(h.b))
    try:
        return renormalized_step_geometric(h)
    except (DegenerateImage, ZeroDivisionError):
        return AxisAlignedHexagon(f_map(h.a), f_map(h.b))


# -- orbit experiments -----------------------------------------------------------


@dataclass
class OrbitRecord:
    step: int
    moduli: HexagonModuli
    A: object
    B: object
    C: object
    D: object
    quadric_residual: object
    d_residual: object

    def as_row(self) -> dict:
        m = self.moduli
        return {"step": self.step, "x5": m.x5, "y5": m.y5, "x6": m.x6, "y6": m.y6,
                "A": self.A, "B": self.B, "C": self.C, "D": self.D,
                "quadric_residual": self.quadric_residual, "d_residual": self.d_residual}


@dataclass
class HexagonOrbit:
    records: list = field(default_factory=list)
    stopped: str | None = None

    def final_residual(self) -> float:
        q, d = self.records[-1].quadric_residual, self.records[-1].d_residual
        return float(max(q, d))

    def min_residual(self) -> float:
        return min(float(max(r.quadric_residual, r.d_residual)) for r in self.records)


def _record(step: int, m: HexagonModuli) -> OrbitRecord:
    A, B, C, D = abcd(m)
    q, d = axis_aligned_residual(m)
    return OrbitRecord(step, m, A, B, C, D, q, d)


BALANCED = "balanced"
FIXED = "fixed"


def _size(m: HexagonModuli) -> float:
    return max(abs(float(v)) for v in m.as_tuple())


def _balanced_shift(image: Polygon) -> int:
    best, best_size = None, math.inf
    for shift in range(6):
        try:
            size = _size(moduli_from_hexagon(image.shifted(shift)))
        except (DegenerateInput, AtInfinity):
            continue
        if size < best_size:
            best, best_size = shift, size
    if best is None:
        raise DegenerateImage("no labeling of T(P) can be normalized")
    return best


def hexagon_step(m: HexagonModuli, labeling: str = BALANCED) -> HexagonModuli:
    """Apply T to the normalized hexagon and renormalize.

    With ``labeling="fixed"`` vertex 1 of T(P) becomes the new V1. With
    ``"balanced"`` the cyclic relabeling with the smallest coordinates is
    kept; T commutes with relabeling, so this only changes the chart, and it
    keeps float orbits away from huge coordinates.

    Float input is stepped with exact intermediates (a float converts to a
    Fraction without error) and rounded once at the end, so a single
    ill-conditioned renormalization cannot throw the orbit off the quadric.
    The labeling itself is chosen in floats, which is cheap and only affects
    the chart.
    """
    if labeling not in (FIXED, BALANCED):
        raise ValueError(f"unknown labeling {labeling!r}")
    shift = 0
    if labeling == BALANCED:
        shift = _balanced_shift(evolute(hexagon_from_moduli(m)))
    if m.exact:
        return moduli_from_hexagon(evolute(hexagon_from_moduli(m)).shifted(shift))
    exact = HexagonModuli(*(Fraction(float(v)) for v in m.as_tuple()))
    out = moduli_from_hexagon(evolute(hexagon_from_moduli(exact)).shifted(shift))
    return HexagonModuli(*(float(v) for v in out.as_tuple()))


def orbit_experiment(start: HexagonModuli, iters: int, labeling: str = BALANCED) -> HexagonOrbit:
    orbit = HexagonOrbit([_record(0, start)])
    m = start
    for step in range(1, iters + 1):
        try:
            m = hexagon_step(m, labeling)
        except (DegenerateImage, DegenerateInput, AtInfinity, ZeroDivisionError) as exc:
            orbit.stopped = f"step {step}: {type(exc).__name__}: {exc}"
            break
        orbit.records.append(_record(step, m))
    return orbit


def random_axis_aligned_start(rng: np.random.Generator, low: float = -3.0, high: float = 3.0,
                              margin: float = 0.05) -> HexagonModuli:
    """Moduli of H(a, b) for random (a, b) kept away from 0 and 1."""
    while True:
        a, b = rng.uniform(low, high, size=2)
        if min(abs(a), abs(a - 1), abs(b), abs(b - 1)) > margin:
            return AxisAlignedHexagon(float(a), float(b)).moduli()


def random_hexagon_start(rng: np.random.Generator, low: float = -3.0, high: float = 3.0,
                         margin: float = 1e-3) -> HexagonModuli:
    """Uniform draw from [low, high]^4, rejecting near-degenerate hexagons."""
    while True:
        m = HexagonModuli(*(float(v) for v in rng.uniform(low, high, size=4)))
        try:
            P = hexagon_from_moduli(m)
        except DegenerateInput:
            continue
        pts = np.array(P.affine_points(), dtype=float)
        ok = True
        for i in range(6):
            p, q, r = pts[i], pts[(i + 1) % 6], pts[(i + 2) % 6]
            area = abs((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))
            if area <= margin or np.linalg.norm(q - p) <= margin:
                ok = False
                break
        if ok:
            return m


@dataclass
class AttractorSummary:
    seed: int
    starts: int
    iters: int
    threshold: float
    orbits: list
    converged: int

    @property
    def fraction(self) -> float:
        return self.converged / self.starts if self.starts else float("nan")

    def as_dict(self) -> dict:
        return {
            "seed": self.seed, "starts": self.starts, "iters": self.iters,
            "threshold": self.threshold, "converged": self.converged, "fraction": self.fraction,
            "stopped": sum(1 for o in self.orbits if o.stopped),
        }


def _run_one(args) -> HexagonOrbit:
    seq, iters = args
    rng = np.random.default_rng(seq)
    return orbit_experiment(random_hexagon_start(rng), iters)


def attractor_experiment(seed: int = 0, starts: int = 100, iters: int = 50, threshold: float = 1e-6,
                         workers: int = 1) -> AttractorSummary:
    """Run independent random orbits in M6 and count those reaching the quadric.

    Each orbit draws from its own child stream of the master seed, so the
    result does not depend on ``workers``.
    """
    children = np.random.SeedSequence(seed).spawn(starts)
    jobs = [(c, iters) for c in children]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            orbits = list(pool.map(_run_one, jobs))
    else:
        orbits = [_run_one(j) for j in jobs]
    converged = sum(1 for o in orbits if o.min_residual() < threshold)
    return AttractorSummary(seed, starts, iters, threshold, orbits, converged)
