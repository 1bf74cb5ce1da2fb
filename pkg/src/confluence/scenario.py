"""Scenario definition, file format, and validation.

A scenario fixes the domain, the small parameter, the coupling constant,
the extended front curves (cubic polynomials in t), the four slope traces
gamma_i^+- and the boundary condition.  The slope traces satisfy the flux
consistency

    gamma1_plus + gamma1_minus = 2 phi10_t
    gamma2_plus + gamma2_minus = -2 phi20_t

identically in t (the factor 2 is the order-function jump across a layer,
from -1 to +1).  The interface temperature trace is derived, never stored:
theta at phi_i is (-1)^(i+1) * (2 beta_inf / (3 kappa)) * phi_i0_t.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, ValidationError

BETA_INF = np.sqrt(0.5)  # layer-width factor of a solitary front
STEFAN_TOL = 1e-10


@dataclass(frozen=True)
class Cubic:
    """Polynomial c0 + c1 t + c2 t^2 + c3 t^3 with analytic derivatives."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        if len(c) != 4:
            raise ValidationError(f"cubic needs 4 coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    def __call__(self, t):
        c0, c1, c2, c3 = self.coeffs
        return c0 + t * (c1 + t * (c2 + t * c3))

    def deriv(self, t):
        _, c1, c2, c3 = self.coeffs
        return c1 + t * (2.0 * c2 + t * 3.0 * c3)

    def deriv2(self, t):
        _, _, c2, c3 = self.coeffs
        return 2.0 * c2 + 6.0 * c3 * t

    @staticmethod
    def fit(t, y) -> "Cubic":
        return Cubic(tuple(np.polynomial.polynomial.polyfit(t, y, 3)))


@dataclass(frozen=True)
class BoundaryCondition:
    """Dirichlet or Neumann data for the temperature at l1 and l2."""

    kind: str
    left: float
    right: float

    def __post_init__(self):
        if self.kind not in ("dirichlet", "neumann"):
            raise ValidationError(f"unknown bc kind {self.kind!r}")


@dataclass(frozen=True)
class Scenario:
    l1: float
    l2: float
    t_end: float
    t_star: float
    epsilon: float
    kappa: float
    phi10: Cubic
    phi20: Cubic
    gamma1_plus: Cubic
    gamma1_minus: Cubic
    gamma2_plus: Cubic
    gamma2_minus: Cubic
    bc: BoundaryCondition
    name: str = "scenario"

    # -- derived geometry -------------------------------------------------
    def psi0(self, t):
        return self.phi20(t) - self.phi10(t)

    def psi0_t(self, t):
        return self.phi20.deriv(t) - self.phi10.deriv(t)

    def x_star(self, t):
        return 0.5 * (self.phi10(t) + self.phi20(t))

    def velocity_sum(self, t):
        return self.phi10.deriv(t) + self.phi20.deriv(t)

    def undercooling_trace(self, t, front: int):
        """Derived interface temperature: (-1)^(i+1) (2 beta_inf / 3 kappa) phi_i0_t."""
        c = 2.0 * BETA_INF / (3.0 * self.kappa)
        if front == 1:
            return c * self.phi10.deriv(t)
        if front == 2:
            return -c * self.phi20.deriv(t)
        raise ValueError("front must be 1 or 2")

    def validate(self) -> "Scenario":
        if not (self.l1 < self.l2):
            raise ValidationError("domain must satisfy l1 < l2")
        if not (0.0 < self.t_star < self.t_end):
            raise ValidationError("contact time must lie inside (0, t_end)")
        if self.epsilon <= 0:
            raise ValidationError("epsilon must be positive")
        if self.kappa <= 0:
            raise ValidationError("kappa must be positive")
        # psi0 vanishes exactly once, at t_star, with negative slope
        if abs(self.psi0(self.t_star)) > 1e-9:
            raise ValidationError(
                f"psi0(t_star) = {self.psi0(self.t_star):.3e}, expected 0"
            )
        if self.psi0_t(self.t_star) >= 0:
            raise ValidationError("psi0 must cross zero with negative slope")
        ts = np.linspace(0.0, self.t_end, 2001)
        sign = np.sign(self.psi0(ts))
        crossings = np.nonzero(np.diff(sign) != 0)[0]
        if len(crossings) != 1:
            raise ValidationError(
                f"psi0 changes sign {len(crossings)} times on [0, t_end], expected 1"
            )
        # fronts stay inside the domain
        lo = np.minimum(self.phi10(ts), self.phi20(ts))
        hi = np.maximum(self.phi10(ts), self.phi20(ts))
        if lo.min() <= self.l1 or hi.max() >= self.l2:
            raise ValidationError("front curves leave the domain")
        # Stefan flux consistency with the order-function jump of 2
        for t in np.linspace(0.0, self.t_end, 101):
            r1 = self.gamma1_plus(t) + self.gamma1_minus(t) - 2.0 * self.phi10.deriv(t)
            r2 = self.gamma2_plus(t) + self.gamma2_minus(t) + 2.0 * self.phi20.deriv(t)
            if abs(r1) > STEFAN_TOL:
                raise ValidationError(
                    "Stefan consistency gamma1_plus + gamma1_minus = 2 phi10_t "
                    f"violated at t={t:.4f} by {r1:.3e}"
                )
            if abs(r2) > STEFAN_TOL:
                raise ValidationError(
                    "Stefan consistency gamma2_plus + gamma2_minus = -2 phi20_t "
                    f"violated at t={t:.4f} by {r2:.3e}"
                )
        return self


_CUBIC_KEYS = (
    "phi10",
    "phi20",
    "gamma1_plus",
    "gamma1_minus",
    "gamma2_plus",
    "gamma2_minus",
)
_SCALAR_KEYS = ("l1", "l2", "t_end", "t_star", "epsilon", "kappa")


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    """Parse the flat key-value scenario format (see data/*.scn)."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    if not values:
        raise ParseError("empty scenario file")

    missing = [k for k in _SCALAR_KEYS if k not in values]
    missing += [k for k in _CUBIC_KEYS if f"{k}.coeffs" not in values]
    if "bc" not in values:
        missing.append("bc")
    if missing:
        raise ParseError(f"missing keys: {', '.join(sorted(missing))}")

    kwargs: dict = {"name": name}
    for k in _SCALAR_KEYS:
        try:
            kwargs[k] = float(values[k])
        except ValueError as exc:
            raise ParseError(f"key {k}: {exc}") from exc
    for k in _CUBIC_KEYS:
        try:
            coeffs = ast.literal_eval(values[f"{k}.coeffs"])
        except (ValueError, SyntaxError) as exc:
            raise ParseError(f"key {k}.coeffs: {exc}") from exc
        if not isinstance(coeffs, (list, tuple)):
            raise ParseError(f"key {k}.coeffs must be a list")
        kwargs[k] = Cubic(tuple(coeffs))
    kind, _, data = values["bc"].partition(":")
    try:
        left, right = (float(v) for v in data.split(","))
    except ValueError as exc:
        raise ParseError(f"bc data: {exc}") from exc
    try:
        kwargs["bc"] = BoundaryCondition(kind.strip(), left, right)
        return Scenario(**kwargs).validate()
    except ValidationError:
        raise


def format_scenario(sc: Scenario) -> str:
    """Serialize a scenario in the flat key-value format, 17 significant digits."""
    def num(v):
        return format(float(v), ".17g")

    lines = [f"# scenario: {sc.name}"]
    for k in _SCALAR_KEYS:
        lines.append(f"{k} = {num(getattr(sc, k))}")
    for k in _CUBIC_KEYS:
        coeffs = ", ".join(num(c) for c in getattr(sc, k).coeffs)
        lines.append(f"{k}.coeffs = [{coeffs}]")
    lines.append(f"bc = {sc.bc.kind}:{num(sc.bc.left)},{num(sc.bc.right)}")
    return "\n".join(lines) + "\n"


def load_scenario(path, epsilon: float | None = None) -> Scenario:
    """Read, parse and validate a scenario file; optionally override epsilon."""
    import pathlib

    p = pathlib.Path(path)
    sc = parse_scenario(p.read_text(), name=p.stem)
    if epsilon is not None:
        sc = replace_epsilon(sc, epsilon)
    return sc


def replace_epsilon(sc: Scenario, epsilon: float) -> Scenario:
    import dataclasses

    return dataclasses.replace(sc, epsilon=float(epsilon)).validate()


def bundled_scenario_path(name: str):
    """Path of a scenario shipped with the package (symmetric, asymmetric)."""
    import importlib.resources

    res = importlib.resources.files("confluence").joinpath("data", f"{name}.scn")
    return res
