"""Run configuration shared by the command-line tools."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass

from .levelset import DEFAULT_ODE_TOL
from .projective import COLLINEAR_TOL

TOL_ENV = "EVOLUTE_DEFAULT_TOL"


def default_ode_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_ODE_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"{TOL_ENV}={raw!r} is not a number") from exc
    if value <= 0:
        raise ValueError(f"{TOL_ENV} must be positive")
    return value


@dataclass(frozen=True)
class RunConfig:
    exact: bool = True
    ode_tol: float = DEFAULT_ODE_TOL
    collinear_tol: float = COLLINEAR_TOL
    seed: int = 0
    samples: int = 200
    points: int = 20
    iters: int = 50
    count: int = 1000
    csv: str | None = None
    svg: str | None = None
    json: str | None = None

    def __post_init__(self):
        if self.ode_tol <= 0 or self.collinear_tol <= 0:
            raise ValueError("tolerances must be positive")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = "exact" if self.exact else "approx"
        del d["exact"]
        return d

    def require_approx(self, what: str) -> None:
        """Refuse operations that cannot produce rational output."""
        if self.exact:
            raise ValueError(f"{what} produces irrational values; rerun with --approx")
