"""Projective normals of a polygon and the evolute map T.

Indexing (0-based in code): normal ``n[i]`` belongs to the edge
``V[i] V[i+1]`` and is built from ``V[i-1], V[i], V[i+1], V[i+2]``.
Vertex ``i`` of T(P) is ``n[i] x n[i+1]``, so the side of T(P) running from
vertex ``i-1`` to vertex ``i`` lies on ``n[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateImage, ZeroResult
from .projective import (
    POINT,
    HomTriple,
    ProjMap,
    affine_chart,
    apply_map,
    collinear,
    cross,
)


@dataclass(frozen=True)
class Polygon:
    """Cyclically ordered vertices (projective points)."""

    vertices: tuple

    __hash__ = None

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if any(v.kind != POINT for v in verts):
            raise ValueError("polygon vertices must be points")
        k = len(verts)
        for i in range(k):
            if verts[i].equivalent(verts[(i + 1) % k]):
                raise DegenerateImage(f"vertices {i + 1} and {(i + 1) % k + 1} coincide")

    @classmethod
    def from_affine(cls, pts) -> Polygon:
        return cls(tuple(HomTriple.affine(x, y) for x, y in pts))

    def __len__(self):
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i % len(self.vertices)]

    @property
    def exact(self) -> bool:
        return all(v.exact for v in self.vertices)

    def edges(self) -> list:
        return [cross(self[i], self[i + 1]) for i in range(len(self))]

    def degenerate_triples(self) -> list:
        """0-based starting indices i with V[i], V[i+1], V[i+2] collinear."""
        return [i for i in range(len(self)) if collinear(self[i], self[i + 1], self[i + 2])]

    @property
    def degenerate(self) -> bool:
        return bool(self.degenerate_triples())

    def shifted(self, offset: int) -> Polygon:
        """Relabel cyclically so that the new vertex 0 is the old vertex ``offset``."""
        k = len(self)
        return Polygon(tuple(self[(i + offset) % k] for i in range(k)))

    def reversed(self) -> Polygon:
        return Polygon(tuple(reversed(self.vertices)))

    def transformed(self, M: ProjMap) -> Polygon:
        return Polygon(tuple(apply_map(M, v) for v in self.vertices))

    def to_float(self) -> Polygon:
        return Polygon(tuple(v.to_float() for v in self.vertices))

    def affine_points(self) -> list:
        return [affine_chart(v) for v in self.vertices]


def projective_normal(v1: HomTriple, v2: HomTriple, v3: HomTriple, v4: HomTriple) -> HomTriple:
    """Projective normal line of the edge v2 v3."""
    d1 = cross(cross(v1, v3), cross(v2, v4))
    d2 = cross(cross(v1, v2), cross(v3, v4))
    return cross(d1, d2)


def normals(P: Polygon) -> list:
    k = len(P)
    out = []
    for i in range(k):
        try:
            out.append(projective_normal(P[i - 1], P[i], P[i + 1], P[i + 2]))
        except ZeroResult as exc:
            raise DegenerateImage(f"normal of edge {i + 1} is undefined: {exc}") from exc
    return out


def evolute(P: Polygon) -> Polygon:
    """T(P): the polygon whose vertices are intersections of consecutive normals."""
    if len(P) < 5:
        raise ValueError("the evolute map needs at least five vertices")
    n = normals(P)
    k = len(n)
    verts = []
    for i in range(k):
        try:
            verts.append(cross(n[i], n[(i + 1) % k]))
        except ZeroResult as exc:
            raise DegenerateImage(f"normals {i + 1} and {(i + 1) % k + 1} coincide") from exc
    # Polygon() rejects coincident consecutive vertices (e.g. all normals concurrent)
    return Polygon(tuple(verts))


@dataclass
class Orbit:
    polygons: list
    stopped: str | None = None  # reason the orbit was truncated, if any
    extra: dict = field(default_factory=dict)


def iterate_evolute(P: Polygon, n: int) -> Orbit:
    """P, T(P), ..., T^n(P); truncated with a record on the first degenerate image."""
    orbit = Orbit([P])
    for step in range(n):
        try:
            orbit.polygons.append(evolute(orbit.polygons[-1]))
        except DegenerateImage as exc:
            orbit.stopped = f"step {step + 1}: {exc}"
            break
    return orbit


