"""Level curves of the invariant I and the dynamics of T^2 on them.

The level curve I = r is the cubic

    F(x, y) = (x+1)(y+1)(x+y+1) - r x y = 0,

homogenized to Q(x, y, z). On the curve the Hamiltonian field of I is
``X_I = (-F_y, F_x)``, so flow time along X_I is the invariant differential
``dx / (-F_y)`` of the cubic. To integrate through the three points at
infinity without chart changes we flow on the unit sphere in homogeneous
coordinates with

    dp/dt = p x grad Q(p),

which preserves |p| and Q, projects to X_I in the affine chart z = 1, and
has bounded speed everywhere on a nonsingular curve. The projective
unbounded component lifts to a curve running from p to -p; a bounded oval
lifts to two closed curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq, least_squares

from .errors import MapUndefined, NotOnCurve, OnAxis, SingularLevel, WrongComponent
from .pentagon import PentagonModuli, t2_directional

BOUNDED = "bounded"
UNBOUNDED = "unbounded"

DEFAULT_ODE_TOL = 1e-10
SINGULAR_GAP = 1e-9


# -- the cubic -----------------------------------------------------------------


def homogeneous_Q(x, y, z, r):
    return (x * x * y + x * y * y + x * x * z + y * y * z + (3 - r) * x * y * z
            + 2 * x * z * z + 2 * y * z * z + z ** 3)


def grad_Q(p, r) -> np.ndarray:
    x, y, z = p
    return np.array([
        2 * x * y + y * y + 2 * x * z + (3 - r) * y * z + 2 * z * z,
        x * x + 2 * x * y + 2 * y * z + (3 - r) * x * z + 2 * z * z,
        x * x + y * y + (3 - r) * x * y + 4 * x * z + 4 * y * z + 3 * z * z,
    ])


def affine_F(x, y, r):
    return (x + 1) * (y + 1) * (x + y + 1) - r * x * y


def affine_grad_F(x, y, r):
    return ((y + 1) * (2 * x + y + 2) - r * y, (x + 1) * (x + 2 * y + 2) - r * x)


def invariant(x, y):
    return (x + 1) * (y + 1) * (x + y + 1) / (x * y)


def hamiltonian_field(x, y) -> tuple:
    """X_I = ((1+x)(1+x-y^2)/y, (1+y)(-1-y+x^2)/x)."""
    if x == 0 or y == 0:
        raise OnAxis("X_I is undefined on the coordinate axes")
    return ((1 + x) * (1 + x - y * y) / y, (1 + y) * (-1 - y + x * x) / x)


def gradient_I(x, y) -> tuple:
    return ((y + 1) * (x * x - y - 1) / (x * x * y), (x + 1) * (y * y - x - 1) / (x * y * y))


# -- singular levels -----------------------------------------------------------


def singular_levels() -> tuple:
    """(r_-, 0, r_+): the levels where the cubic is singular.

    r_+ and r_- are the roots of r^2 - 11 r - 1; r_- is taken as -1/r_+ to
    avoid cancellation.
    """
    r_plus = (11 + math.sqrt(11 * 11 + 4)) / 2
    return (-1 / r_plus, 0.0, r_plus)


def is_singular_level(r: float, gap: float = SINGULAR_GAP) -> bool:
    return any(abs(r - s) <= gap * max(1.0, abs(s)) for s in singular_levels())


def singular_point(r: float, starts=None) -> tuple:
    """Locate an affine point where F = F_x = F_y = 0; returns (x, y, max residual)."""
    def eqs(v):
        x, y = v
        fx, fy = affine_grad_F(x, y, r)
        return [affine_F(x, y, r), fx, fy]

    if starts is None:
        starts = [(a, b) for a in (-2.0, -0.7, -0.3, 0.5, 1.6, 3.0) for b in (-2.0, -0.7, -0.3, 0.5, 1.6, 3.0)]
    best = None
    for s in starts:
        sol = least_squares(eqs, s, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        res = max(abs(v) for v in eqs(sol.x))
        if best is None or res < best[2]:
            best = (float(sol.x[0]), float(sol.x[1]), res)
    return best


# -- sampling and topology -----------------------------------------------------


def _quadratic_in_y(x, r):
    """F as A y^2 + B y + C for fixed x."""
    A = x + 1
    B = (x + 1) * (x + 2) - r * x
    C = (x + 1) ** 2
    return A, B, C


def discriminant_poly(r) -> np.ndarray:
    """Coefficients (highest first) of B(x)^2 - 4 A(x) C(x)."""
    B = np.poly1d([1.0, 3.0 - r, 2.0])
    AC4 = 4 * np.poly1d([1.0, 1.0]) ** 3
    return (B * B - AC4).coeffs


def y_roots(x, r) -> list:
    A, B, C = _quadratic_in_y(x, r)
    if A == 0:
        return [-C / B] if B != 0 else []
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    s = math.sqrt(disc)
    # numerically stable pair
    q = -0.5 * (B + math.copysign(s, B)) if B != 0 else -0.5 * s
    roots = [q / A, C / q] if q != 0 else [0.0]
    return sorted(roots)


def oval_interval(r) -> tuple | None:
    """x-range (x_a, x_b) of the bounded component, or None.

    A bounded interval where the discriminant in y is positive and x + 1 does
    not vanish carries two branches joined at both ends: a closed oval.
    """
    roots = np.roots(discriminant_poly(r))
    real = sorted(float(z.real) for z in roots if abs(z.imag) <= 1e-9 * max(1.0, abs(z)))
    poly = np.poly1d(discriminant_poly(r))
    for xa, xb in zip(real, real[1:]):
        if xb - xa <= 1e-12:
            continue
        mid = 0.5 * (xa + xb)
        if poly(mid) > 0 and not (xa < -1 < xb):
            return (xa, xb)
    return None


@dataclass
class Component:
    kind: str
    points: np.ndarray  # (N, 2) affine samples
    basepoint: tuple
    period: float | None = None


@dataclass
class LevelCurve:
    r: float
    singular: bool
    components: list = field(default_factory=list)
    oval: tuple | None = None

    def component(self, kind: str) -> Component:
        for c in self.components:
            if c.kind == kind:
                return c
        raise WrongComponent(f"level {self.r} has no {kind} component")

    def classify(self, x, y) -> str:
        """Which component an affine point of the curve lies on."""
        if self.oval is not None and self.oval[0] <= x <= self.oval[1]:
            return BOUNDED
        return UNBOUNDED


def sample_level_curve(r: float, n: int = 2001, x_range=(-50.0, 50.0)) -> LevelCurve:
    """Sample the real affine points of I = r and split them into components."""
    if is_singular_level(r):
        raise SingularLevel(f"r = {r} is a singular level")
    oval = oval_interval(r)
    xs = np.linspace(x_range[0], x_range[1], n)
    unbounded, bounded = [], []
    for x in xs:
        for y in y_roots(float(x), r):
            (bounded if oval is not None and oval[0] < x < oval[1] else unbounded).append((float(x), y))
    unbounded.append((-1.0, 0.0))
    unbounded.append((0.0, -1.0))
    comps = [Component(UNBOUNDED, np.array(sorted(unbounded)), basepoint=(-1.0, 0.0))]
    if oval is not None:
        xa, xb = oval
        # the grid may be too coarse for a small oval; resample it on its own x-range
        ts = 0.5 - 0.5 * np.cos(np.linspace(0, math.pi, max(n // 4, 64)))
        upper, lower = [], []
        for t in ts:
            x = xa + (xb - xa) * t
            ys = y_roots(x, r)
            if not ys:
                ys = [-_quadratic_in_y(x, r)[1] / (2 * _quadratic_in_y(x, r)[0])] * 2
            lower.append((x, ys[0]))
            upper.append((x, ys[-1]))
        pts = upper + lower[::-1]
        A, B, _ = _quadratic_in_y(xa, r)
        base = (xa, -B / (2 * A))
        comps.append(Component(BOUNDED, np.array(pts), basepoint=base))
    return LevelCurve(r, False, comps, oval)


def axis_crossings(r: float) -> list:
    """Affine points of I = r on x = 0 or y = 0, solved from the restricted quadratics."""
    out = {(0.0, y) for y in y_roots(0.0, r)}
    # F is symmetric in x and y, so the y = 0 crossings mirror the x = 0 ones
    out |= {(x, 0.0) for x in y_roots(0.0, r)}
    return sorted(out)


# -- flow on the sphere --------------------------------------------------------


def to_sphere(point) -> np.ndarray:
    v = np.array([point[0], point[1], 1.0]) if len(point) == 2 else np.asarray(point, dtype=float)
    return v / np.linalg.norm(v)


def sphere_field(p, r) -> np.ndarray:
    return np.cross(p, grad_Q(p, r))


def project_to_curve(p, r, iters: int = 8) -> np.ndarray:
    """Newton steps along grad Q back onto Q = 0, staying on the unit sphere."""
    p = np.asarray(p, dtype=float)
    p = p / np.linalg.norm(p)
    for _ in range(iters):
        g = grad_Q(p, r)
        q = homogeneous_Q(*p, r)
        if abs(q) < 1e-16:
            break
        p = p - q * g / np.dot(g, g)
        p = p / np.linalg.norm(p)
    return p


def affine_of(p) -> tuple:
    return (p[0] / p[2], p[1] / p[2])


class ComponentFlow:
    """One full circuit of a component under the flow of X_I, with dense output.

    ``theta`` is flow time from the basepoint; the circuit has length
    ``period`` (lambda).
    """

    def __init__(self, r: float, basepoint, kind: str, tol: float = DEFAULT_ODE_TOL,
                 table_size: int = 4096, chunk: float = 2.0, max_chunks: int = 20000):
        if is_singular_level(r):
            raise SingularLevel(f"r = {r} is a singular level")
        self.r = r
        self.kind = kind
        self.tol = tol
        self.base = project_to_curve(to_sphere(basepoint), r)
        self.basepoint = affine_of(self.base) if abs(self.base[2]) > 1e-300 else None
        self._segments = []
        self.period = self._integrate(chunk, max_chunks)
        self._ts = np.linspace(0.0, self.period, table_size + 1)
        self._ps = self.point_at(self._ts)

    # integration ------------------------------------------------------------

    def _integrate(self, chunk, max_chunks) -> float:
        r = self.r
        # target: -base for the unbounded component (lift ends at the antipode), base for an oval
        sign = -1.0 if self.kind == UNBOUNDED else 1.0
        target = sign * self.base
        w = sphere_field(target, r)
        w = w / np.linalg.norm(w)

        def rhs(t, p):
            return np.cross(p, grad_Q(p, r))

        def event(t, p):
            return float(np.dot(p - target, w))

        event.direction = 1.0
        t0, y0 = 0.0, self.base.copy()
        for _ in range(max_chunks):
            sol = solve_ivp(rhs, (t0, t0 + chunk), y0, method="DOP853", rtol=self.tol,
                            atol=self.tol * 1e-2, dense_output=True, events=event)
            self._segments.append((t0, sol.t[-1], sol.sol))
            for te, ye in zip(sol.t_events[0], sol.y_events[0]):
                if te > 1e-9 and np.linalg.norm(ye - target) < 0.05:
                    return float(te)
            t0, y0 = float(sol.t[-1]), sol.y[:, -1]
        raise RuntimeError(f"flow did not close up at r = {r}")

    def _raw(self, t: float) -> np.ndarray:
        for a, b, dense in self._segments:
            if t <= b or (a, b, dense) is self._segments[-1]:
                return dense(t)
        return self._segments[-1][2](t)

    def point_at(self, t):
        """Unit homogeneous point at flow time t (any real t; periodic continuation)."""
        if np.ndim(t) > 0:
            return np.array([self.point_at(float(s)) for s in t])
        lam = self.period
        k, s = divmod(t, lam)
        # dense output drifts slightly off Q = 0; pull it back along the gradient
        p = project_to_curve(self._raw(s), self.r, iters=3)
        if self.kind == UNBOUNDED and int(k) % 2:
            p = -p
        return p

    def affine_at(self, t) -> tuple:
        return affine_of(self.point_at(t))

    # inverse: point -> time --------------------------------------------------

    def theta_of(self, point, far: float = 0.05, close: float = 1e-6) -> float:
        """Flow time in [0, period) from the basepoint to ``point``."""
        q = to_sphere(point)
        if abs(homogeneous_Q(*q, self.r)) > 1e-6 * max(1.0, abs(self.r)):
            raise NotOnCurve(f"{tuple(point)} is not on the level curve I = {self.r}")
        q = project_to_curve(q, self.r)
        d_plus = np.linalg.norm(self._ps - q, axis=1)
        d_minus = np.linalg.norm(self._ps + q, axis=1)
        k_plus, k_minus = int(np.argmin(d_plus)), int(np.argmin(d_minus))
        if d_plus[k_plus] <= d_minus[k_minus]:
            k, s, d = k_plus, 1.0, d_plus[k_plus]
        else:
            k, s, d = k_minus, -1.0, d_minus[k_minus]
        if d > far:
            raise WrongComponent(f"{tuple(point)} is not on this {self.kind} component")
        target = s * q
        w = sphere_field(target, self.r)

        def h(t):
            return float(np.dot(self.point_at(t) - target, w))

        t_k = self._ts[k]
        step = self._ts[1] - self._ts[0]
        for widen in range(8):
            lo, hi = t_k - step * 2 ** widen, t_k + step * 2 ** widen
            if h(lo) <= 0.0 <= h(hi):
                break
        else:
            raise NotOnCurve(f"could not bracket {tuple(point)} on the flow")
        t_star = brentq(h, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        if np.linalg.norm(self.point_at(t_star) - target) > close:
            raise WrongComponent(f"{tuple(point)} was not reached by the flow")
        return t_star % self.period


# -- public operations ---------------------------------------------------------


_FLOW_CACHE: dict = {}


def component_flow(r: float, kind: str = UNBOUNDED, tol: float = DEFAULT_ODE_TOL) -> ComponentFlow:
    """Cached flow for (r, component kind, tolerance) using the standard basepoints."""
    key = (float(r), kind, float(tol))
    if key not in _FLOW_CACHE:
        if kind == UNBOUNDED:
            base = (-1.0, 0.0)
        else:
            curve = sample_level_curve(r, n=401)
            base = curve.component(BOUNDED).basepoint
        _FLOW_CACHE[key] = ComponentFlow(r, base, kind, tol=tol)
    return _FLOW_CACHE[key]


def component_period(r: float, kind: str = UNBOUNDED, tol: float = DEFAULT_ODE_TOL) -> float:
    return component_flow(r, kind, tol).period


@dataclass(frozen=True)
class CircleCoordinate:
    theta: float
    period: float
    kind: str


def circle_coordinate(r: float, point, kind: str | None = None, tol: float = DEFAULT_ODE_TOL) -> CircleCoordinate:
    if kind is None:
        kind = sample_level_curve(r, n=11).classify(*point)
    flow = component_flow(r, kind, tol)
    return CircleCoordinate(flow.theta_of(point), flow.period, kind)


def flow_time(r: float, p, q, tol: float = DEFAULT_ODE_TOL) -> float:
    """Time in (0, lambda] to flow from p to q along X_I; p == q gives the full loop."""
    curve = sample_level_curve(r, n=11)
    kp, kq = curve.classify(*p), curve.classify(*q)
    if kp != kq:
        raise WrongComponent("p and q lie on different components")
    flow = component_flow(r, kp, tol)
    dt = (flow.theta_of(q) - flow.theta_of(p)) % flow.period
    return dt if dt > 0 else flow.period


def flow_point(r: float, p, s: float, tol: float = DEFAULT_ODE_TOL) -> tuple:
    """Affine image of p after flowing for time s."""
    curve = sample_level_curve(r, n=11)
    flow = component_flow(r, curve.classify(*p), tol)
    return flow.affine_at(flow.theta_of(p) + s)


def wrap(v: float, period: float) -> float:
    """Representative of v mod period in [-period/2, period/2)."""
    return (v + 0.5 * period) % period - 0.5 * period


def t_squared(point) -> tuple:
    m = PentagonModuli(float(point[0]), float(point[1]))
    image, _ = t2_directional(m, (0.0, 0.0))
    return (image.x, image.y)


@dataclass
class ConjugacyReport:
    r: float
    period: float
    tol: float
    offset: float  # c in theta(T^2 p) = -4 theta(p) + c, basepoint (-1, 0)
    fixed_theta: float  # c / 5, a fixed point of theta -> -4 theta + c
    samples: list
    skipped: list
    passed: bool
    max_residual: float
    max_differential: float

    @property
    def offset_fifths(self) -> float:
        """c in units of lambda/5; an integer when (-1, 0) maps to a completion point."""
        return 5 * self.offset / self.period

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "lambda": self.period,
            "tol": self.tol,
            "offset": self.offset,
            "offset_fifths": self.offset_fifths,
            "fixed_theta": self.fixed_theta,
            "samples": self.samples,
            "skipped": self.skipped,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "max_differential": self.max_differential,
        }


def _t2_sample(flow: ComponentFlow, theta: float):
    """(x, y, T^2(x, y), d(T^2) X_I, X_I at the image) or raise on undefined points."""
    p = flow.point_at(theta)
    if abs(p[2]) < 1e-6:
        raise MapUndefined(["point at infinity"])
    x, y = affine_of(p)
    X = hamiltonian_field(x, y)
    image, dT2X = t2_directional(PentagonModuli(x, y), X)
    X_img = hamiltonian_field(image.x, image.y)
    return x, y, image, dT2X, X_img


def verify_conjugacy(r: float, n: int = 20, tol: float = 1e-6, ode_tol: float = DEFAULT_ODE_TOL,
                     phase: float = 0.1234567, calibration: float = 0.0317) -> ConjugacyReport:
    """Check that T^2 acts on the unbounded component of I = r as theta -> -4 theta.

    With theta measured from the completion point (-1, 0), T^2 acts as
    theta -> -4 theta + c. The constant c is read off a single calibration
    point; the circle coordinate is then re-based at the fixed point c/5 so
    the action is exactly multiplication by -4. The n test samples sit at
    flow times (k + phase) * lambda / n and are checked against that law,
    together with d(T^2) X_I = -4 X_I.
    """
    flow = component_flow(r, UNBOUNDED, ode_tol)
    lam = flow.period

    theta_cal = calibration * lam
    _, _, image, _, _ = _t2_sample(flow, theta_cal)
    c = (flow.theta_of((image.x, image.y)) + 4 * theta_cal) % lam
    fixed = c / 5

    samples, skipped = [], []
    for k in range(n):
        theta = (k + phase) * lam / n
        try:
            x, y, image, dT2X, X_img = _t2_sample(flow, theta)
        except (MapUndefined, ZeroDivisionError) as exc:
            skipped.append({"theta": theta, "reason": str(exc)})
            continue
        theta_img = flow.theta_of((image.x, image.y))
        psi, psi_img = (theta - fixed) % lam, (theta_img - fixed) % lam
        residual = abs(wrap(psi_img + 4 * psi, lam))
        target = np.array([-4 * X_img[0], -4 * X_img[1]])
        diff = float(np.linalg.norm(np.array(dT2X) - target) / np.linalg.norm(target))
        samples.append({
            "x": x, "y": y, "theta": psi, "theta_image": psi_img,
            "image_x": image.x, "image_y": image.y,
            "residual": residual, "differential": diff,
        })
    max_res = max((s["residual"] for s in samples), default=float("nan"))
    max_diff = max((s["differential"] for s in samples), default=float("nan"))
    passed = bool(samples) and max_res <= tol * lam and max_diff <= tol
    return ConjugacyReport(r, lam, tol, c, fixed, samples, skipped, passed, max_res, max_diff)


def completion_points() -> dict:
    """The five points completing the unbounded component, as homogeneous triples."""
    return {
        "(-1,0)": (-1.0, 0.0, 1.0),
        "[1:0:0]": (1.0, 0.0, 0.0),
        "[1:-1:0]": (1.0, -1.0, 0.0),
        "[0:1:0]": (0.0, 1.0, 0.0),
        "(0,-1)": (0.0, -1.0, 1.0),
    }


def completion_thetas(r: float, ode_tol: float = DEFAULT_ODE_TOL) -> dict:
    flow = component_flow(r, UNBOUNDED, ode_tol)
    return {name: flow.theta_of(p) for name, p in completion_points().items()}


@dataclass
class BoundedImageReport:
    r: float
    samples: list
    skipped: list
    passed: bool


def verify_bounded_to_unbounded(r: float, n: int = 20, ode_tol: float = DEFAULT_ODE_TOL,
                                phase: float = 0.1234567) -> BoundedImageReport:
    """Check that T^2 sends samples of the bounded oval onto the unbounded component."""
    curve = sample_level_curve(r, n=401)
    flow = component_flow(r, BOUNDED, ode_tol)
    unbounded = component_flow(r, UNBOUNDED, ode_tol)
    samples, skipped = [], []
    for k in range(n):
        theta = (k + phase) * flow.period / n
        x, y = flow.affine_at(theta)
        try:
            X, Y = t_squared((x, y))
        except (MapUndefined, ZeroDivisionError) as exc:
            skipped.append({"x": x, "y": y, "reason": str(exc)})
            continue
        kind = curve.classify(X, Y)
        # the unbounded flow must actually reach the image point
        try:
            unbounded.theta_of((X, Y))
            reached = True
        except (WrongComponent, NotOnCurve):
            reached = False
        samples.append({"x": x, "y": y, "image_x": X, "image_y": Y, "component": kind,
                        "on_unbounded_flow": reached})
    passed = bool(samples) and all(s["component"] == UNBOUNDED and s["on_unbounded_flow"] for s in samples)
    return BoundedImageReport(r, samples, skipped, passed)


def period_convergence(r: float, kind: str = UNBOUNDED, tol: float = DEFAULT_ODE_TOL) -> tuple:
    """(lambda at tol, lambda at tol/2, relative difference)."""
    a = ComponentFlow(r, _basepoint(r, kind), kind, tol).period
    b = ComponentFlow(r, _basepoint(r, kind), kind, tol / 2).period
    return a, b, abs(a - b) / abs(b)


def _basepoint(r: float, kind: str) -> tuple:
    return sample_level_curve(r, n=401).component(kind).basepoint


@dataclass
class PeriodComparison:
    r: float
    bounded: float
    unbounded: float

    @property
    def relative_difference(self) -> float:
        return abs(self.bounded - self.unbounded) / abs(self.unbounded)

    def as_dict(self) -> dict:
        return {"r": self.r, "lambda_bounded": self.bounded, "lambda_unbounded": self.unbounded,
                "relative_difference": self.relative_difference}


def compare_periods(r: float, ode_tol: float = DEFAULT_ODE_TOL) -> PeriodComparison:
    """Flow-time lengths of both components of a two-component level curve."""
    return PeriodComparison(r, component_period(r, BOUNDED, ode_tol), component_period(r, UNBOUNDED, ode_tol))


def flow_samples(r: float, n: int, ode_tol: float = DEFAULT_ODE_TOL, far: float = 1e-3) -> list:
    """Points at flow times k * lambda / n on every component, skipping points near infinity.

    Rows are dicts with component_id, kind, x, y, theta.
    """
    curve = sample_level_curve(r, n=401)
    rows = []
    for cid, comp in enumerate(curve.components):
        flow = component_flow(r, comp.kind, ode_tol)
        for k in range(n):
            theta = k * flow.period / n
            p = flow.point_at(theta)
            if abs(p[2]) < far:
                continue
            x, y = affine_of(p)
            rows.append({"component_id": cid, "kind": comp.kind, "x": x, "y": y, "theta": theta})
    return rows
