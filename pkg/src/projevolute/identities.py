"""Exact identity suite over seeded random rational points of pentagon moduli."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EvoluteError
from .frieze import coefficients_from_moduli, frieze_lift, frieze_t_map, recurrence_coefficients
from .pentagon import (
    PentagonModuli,
    degeneracy_report,
    invariant_I,
    jacobian_ratio_residual,
    t_map,
    t_map_geometric,
)

CHECKS = ("geometric", "invariant", "monodromy", "coefficients", "frieze")


def random_rational(rng: random.Random, height: int = 30) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_moduli(rng: random.Random, height: int = 30) -> PentagonModuli:
    """A rational point where T and T^2 are defined and no image is degenerate."""
    while True:
        m = PentagonModuli(random_rational(rng, height), random_rational(rng, height))
        if degeneracy_report(m):
            continue
        try:
            image = t_map(m)
            if degeneracy_report(image):
                continue
            if degeneracy_report(t_map(image)):
                continue
        except (EvoluteError, ZeroDivisionError):
            continue
        return m


def sample_points(count: int, seed: int, height: int = 30) -> list:
    rng = random.Random(seed)
    return [random_moduli(rng, height) for _ in range(count)]


def check_point(m: PentagonModuli) -> dict:
    """Evaluate each exact identity at m; values are booleans."""
    x, y = m.x, m.y
    image = t_map(m)
    I = invariant_I(m)
    coeffs = coefficients_from_moduli(x, y)
    lifted = recurrence_coefficients(frieze_lift(x, y))
    return {
        "geometric": t_map_geometric(m) == image,
        "invariant": I * invariant_I(image) == -1,
        "monodromy": math.prod(coeffs.a) == I and sum(coeffs.a) + 3 == I,
        "coefficients": lifted == coeffs and all(r == 0 for r in lifted.relation_residuals()),
        "frieze": frieze_t_map(x, y) == image.as_tuple(),
    }


@dataclass
class IdentityReport:
    count: int
    seed: int
    seconds: float
    failures: dict = field(default_factory=dict)  # check name -> list of failing (x, y)

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "seconds": self.seconds,
            "passed": self.passed,
            "failures": {k: [[str(a), str(b)] for a, b in v] for k, v in self.failures.items()},
        }


def run_identity_suite(count: int = 1000, seed: int = 7, height: int = 30) -> IdentityReport:
    start = time.perf_counter()
    failures = {name: [] for name in CHECKS}
    for m in sample_points(count, seed, height):
        for name, ok in check_point(m).items():
            if not ok:
                failures[name].append((m.x, m.y))
    return IdentityReport(count, seed, time.perf_counter() - start, failures)


def run_jacobian_suite(count: int = 100, seed: int = 11, height: int = 30) -> list:
    """(x, y, residual) with residual = J/(x''y'') + 4/(xy) computed exactly."""
    return [(m.x, m.y, jacobian_ratio_residual(m)) for m in sample_points(count, seed, height)]
