"""Exception types shared across the package."""


class EvoluteError(Exception):
    """Base class for every error raised by projevolute."""


class ZeroResult(EvoluteError, ValueError):
    """A cross product vanished (the two inputs are the same projective element)."""


class DegenerateInput(EvoluteError, ValueError):
    """Input configuration has a collinear triple or is otherwise not in general position."""


class AtInfinity(EvoluteError, ValueError):
    """A point has zero last coordinate where an affine value was required."""


class DegenerateImage(EvoluteError, ValueError):
    """The evolute of a polygon is not a polygon (undefined or coincident normals/vertices)."""


class DegenerateLift(EvoluteError, ValueError):
    """A consecutive determinant of a lift is zero."""


class InexactCubeRoot(EvoluteError, ValueError):
    """Exact arithmetic was asked for a cube root that is not rational."""


class DegenerateModuli(EvoluteError, ValueError):
    """Moduli coordinates lie on a degeneracy locus."""

    def __init__(self, loci, message=None):
        self.loci = frozenset(loci)
        super().__init__(message or f"degenerate moduli: {sorted(self.loci)}")


class MapUndefined(EvoluteError, ZeroDivisionError):
    """A closed-form map has a vanishing denominator factor."""

    def __init__(self, factors, message=None):
        self.factors = tuple(factors)
        super().__init__(message or f"map undefined; vanishing factors: {', '.join(self.factors)}")


class DivisionByZero(EvoluteError, ZeroDivisionError):
    """A coordinate that appears in a denominator is zero."""


class OnAxis(DivisionByZero):
    """The Hamiltonian field is undefined on the coordinate axes."""


class PoleAtInput(DivisionByZero):
    """A rational map was evaluated at one of its poles in strict affine mode."""


class SingularLevel(EvoluteError, ValueError):
    """The requested level of the invariant is a singular curve."""


class NotOnCurve(EvoluteError, ValueError):
    """A point is not on the level curve within tolerance."""


class WrongComponent(EvoluteError, ValueError):
    """A point lies on a different connected component than required."""
