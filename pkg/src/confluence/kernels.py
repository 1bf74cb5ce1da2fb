"""Line quadrature of the interaction-profile convolutions and their tabulation.

All kernels are integrals over the real line of products of ``omega0`` /
``capital_omega`` factors.  Integrands decay like e^{-2|z|} outside the
two layers, so the line is truncated to [-40-eta, 40] (the second layer
sits near z = -eta) with truncation error far below the 1e-12 quadrature
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from .errors import NonConvergence
from .profiles import (
    capital_omega,
    double_well,
    omega0,
    omega0_dot,
    omega_alpha,
    omega_gamma,
)

HALF_WIDTH = 40.0
DEFAULT_TOL = 1e-12

# Limits of the kernels as eta -> +inf (two independent tanh layers).
# Frozen from the defining integrals: see tests for the quadrature oracles.
LIMITS_INF = {
    "c_hat": 2.0 / 3.0,
    "d_hat": 1.0 / 3.0,
    "b_omega": 4.0 / 3.0,
    "bz_omega": 0.0,
    "c_omega": 2.0,
    "b_dot00": -2.0,
    "bz_dot00": 0.0,
    "k_alpha_gamma": 0.0,
    "beta": np.sqrt(0.5),
}


def integrate_line(f, tol: float = DEFAULT_TOL, half_width: float = HALF_WIDTH,
                   points=None) -> float:
    """Adaptive quadrature of f over the real line, truncated to |z| <= half_width.

    ``points`` marks interior layer positions handed to the subdivision.
    Raises NonConvergence if the requested absolute tolerance cannot be
    certified; a failure here indicates a pathological integrand upstream.
    """
    pts = None
    if points is not None:
        pts = [p for p in points if -half_width < p < half_width]
    value, err = quad(f, -half_width, half_width, epsabs=tol, epsrel=tol,
                      limit=300, points=pts)
    if not np.isfinite(value) or err > max(100.0 * tol, 1e-10 * abs(value)):
        raise NonConvergence(
            f"line quadrature error {err:.3e} exceeds tolerance {tol:.3e}"
        )
    return value


def _window(eta: float) -> float:
    # second layer sits near z = -eta; keep both inside the window
    return HALF_WIDTH + abs(eta)


def c_hat(eta: float, tol: float = DEFAULT_TOL) -> float:
    """C-kernel: (1/4) integral of (Omega_z)^2; strictly positive."""
    w = _window(eta)
    return 0.25 * integrate_line(
        lambda z: capital_omega(z, eta).d_z ** 2, tol, w, points=(0.0, -eta)
    )


def d_hat(eta: float, tol: float = DEFAULT_TOL) -> float:
    """D-kernel: (1/2) integral of F(Omega); nonnegative."""
    w = _window(eta)
    return 0.5 * integrate_line(
        lambda z: double_well(capital_omega(z, eta).value), tol, w, points=(0.0, -eta)
    )


def b_omega(eta: float, tol: float = DEFAULT_TOL, form: str = "defining") -> float:
    """B-kernel: integral of Omega_z (Omega_z - Omega_eta).

    ``form='defining'`` integrates that product directly; ``form='half_square'``
    uses the change-of-variables identity (1/2) integral of (Omega_z)^2.
    Both agree to quadrature tolerance and equal 2 * c_hat.
    """
    w = _window(eta)
    if form == "defining":
        def f(z):
            om = capital_omega(z, eta)
            return om.d_z * (om.d_z - om.d_eta)
        return integrate_line(f, tol, w, points=(0.0, -eta))
    if form == "half_square":
        return 0.5 * integrate_line(lambda z: capital_omega(z, eta).d_z ** 2, tol, w,
                                    points=(0.0, -eta))
    raise ValueError(f"unknown form {form!r}")


def bz_omega(eta: float, tol: float = DEFAULT_TOL) -> float:
    """First-moment kernel weighting the layer-width drift in the front books.

    Equals integral of [z (Omega_z - Omega_eta) + (z + eta) Omega_eta] times
    (Omega_z - Omega_eta); in the alpha/gamma layer basis this is
    int z alpha^2 + (eta/2) int alpha gamma.  It enters the per-front
    delta coefficients with opposite signs at the two fronts, so it drops
    out of the summed front equation identically.
    """
    w = _window(eta)
    kzaa = integrate_line(lambda z: z * omega_alpha(z, eta) ** 2, tol, w,
                          points=(0.0, -eta))
    kag = k_alpha_gamma(eta, tol)
    return kzaa + 0.5 * eta * kag


def k_alpha_gamma(eta: float, tol: float = DEFAULT_TOL) -> float:
    """Overlap of the two layer bumps: integral of alpha * gamma."""
    w = _window(eta)
    return integrate_line(
        lambda z: omega_alpha(z, eta) * omega_gamma(z, eta), tol, w,
        points=(0.0, -eta, -eta / 2.0),
    )


def c_omega(eta: float, tol: float = DEFAULT_TOL) -> float:
    """Zero-moment kernel: integral of (Omega_z - Omega_eta) = int alpha >= 0."""
    w = _window(eta)
    return integrate_line(lambda z: omega_alpha(z, eta), tol, w, points=(0.0, -eta))


def b_tilde(eta: float, tol: float = DEFAULT_TOL) -> float:
    """Correlation kernel: integral of 1 - w0(z+eta) w0(z); even in eta.

    The quadrature-confirmed closed form is 2 eta coth(eta) (limit 2 at
    eta = 0); the defining integral stays normative.
    """
    w = _window(eta)
    return integrate_line(lambda z: 1.0 - omega0(z + eta) * omega0(z), tol, w,
                          points=(0.0, -eta))


def b_tilde_closed(eta: float) -> float:
    """Closed form of b_tilde, 2 eta coth(eta), continuous at 0."""
    if abs(eta) < 1e-8:
        return 2.0 + 2.0 * eta * eta / 3.0
    return 2.0 * eta / np.tanh(eta)


def b_dot00(eta: float, tol: float = DEFAULT_TOL) -> float:
    """Cross kernel: integral of w0'(z) w0(-eta-z); decreasing, odd in eta."""
    w = _window(eta)
    return integrate_line(lambda z: omega0_dot(z) * omega0(-eta - z), tol, w,
                          points=(0.0, -eta))


def bz_dot00(eta: float, tol: float = DEFAULT_TOL) -> float:
    """Moment cross kernel: integral of z w0'(z) w0(-eta-z); equals -1 at 0."""
    w = _window(eta)
    return integrate_line(lambda z: z * omega0_dot(z) * omega0(-eta - z), tol, w,
                          points=(0.0, -eta))


def beta_of_eta(eta: float, tol: float = DEFAULT_TOL) -> float:
    """Layer-width factor beta = sqrt(d_hat / c_hat) > 0."""
    return float(np.sqrt(d_hat(eta, tol) / c_hat(eta, tol)))


_COLUMNS = (
    "c_hat",
    "d_hat",
    "b_omega",
    "bz_omega",
    "c_omega",
    "b_tilde",
    "b_dot00",
    "bz_dot00",
    "beta",
)

_DIRECT = {
    "c_hat": c_hat,
    "d_hat": d_hat,
    "b_omega": b_omega,
    "bz_omega": bz_omega,
    "c_omega": c_omega,
    "b_tilde": b_tilde,
    "b_dot00": b_dot00,
    "bz_dot00": bz_dot00,
    "beta": beta_of_eta,
    "k_alpha_gamma": k_alpha_gamma,
}


@dataclass
class KernelTable:
    """Cubic-spline tabulation of every kernel over a clustered eta grid.

    Beyond ``eta_max`` the eta -> inf limits are used (all kernels reach
    them exponentially fast).  Negative eta is not tabulated; evaluate the
    defining integrals directly if ever needed there.
    """

    eta_grid: np.ndarray
    values: dict
    splines: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for name in self.values:
            self.splines[name] = CubicSpline(self.eta_grid, self.values[name])

    @property
    def eta_max(self) -> float:
        return float(self.eta_grid[-1])

    def __call__(self, name: str, eta):
        """Interpolated kernel value(s); limits beyond the grid."""
        eta = np.asarray(eta, dtype=float)
        out = np.where(
            eta >= self.eta_max,
            LIMITS_INF[name] if name != "b_tilde" else 2.0 * np.maximum(eta, 1.0),
            self.splines[name](np.minimum(eta, self.eta_max)),
        )
        return float(out) if out.ndim == 0 else out

    def derivative(self, name: str, eta):
        """d(kernel)/d eta, zero beyond the grid (exponential tails)."""
        eta = np.asarray(eta, dtype=float)
        out = np.where(
            eta >= self.eta_max,
            2.0 if name == "b_tilde" else 0.0,
            self.splines[name].derivative()(np.minimum(eta, self.eta_max)),
        )
        return float(out) if out.ndim == 0 else out

    def beta(self, eta):
        """beta from the tabulated ratio, exact beta^2 c_hat = d_hat."""
        return np.sqrt(self("d_hat", eta) / self("c_hat", eta))

    def interaction_drive(self, eta):
        """G(eta) = eta c_omega - bz_dot00, the front-interaction primitive.

        G' = c_omega exactly (the moment identity d(bz_dot00)/d eta =
        eta dc_omega/d eta), G(0) = 1, G ~ 2 eta at infinity.
        """
        eta = np.asarray(eta, dtype=float)
        return eta * self("c_omega", eta) - self("bz_dot00", eta)


def sinh_clustered_grid(eta_max: float, n_nodes: int, strength: float = 3.0) -> np.ndarray:
    """Strictly increasing grid on [0, eta_max], dense near 0."""
    s = np.linspace(0.0, 1.0, n_nodes)
    return eta_max * np.sinh(strength * s) / np.sinh(strength)


def build_table(eta_max: float = 30.0, n_nodes: int = 400, tol: float = DEFAULT_TOL) -> KernelTable:
    """Tabulate all kernels on a sinh-clustered grid (interpolation <= 1e-8)."""
    if eta_max < 20.0 or n_nodes < 200:
        raise ValueError("table needs eta_max >= 20 and n_nodes >= 200")
    grid = sinh_clustered_grid(eta_max, n_nodes)
    values = {name: np.empty(n_nodes) for name in _COLUMNS + ("k_alpha_gamma",)}
    for i, eta in enumerate(grid):
        ch = c_hat(eta, tol)
        dh = d_hat(eta, tol)
        values["c_hat"][i] = ch
        values["d_hat"][i] = dh
        values["b_omega"][i] = b_omega(eta, tol)
        values["bz_omega"][i] = bz_omega(eta, tol)
        values["c_omega"][i] = c_omega(eta, tol)
        values["b_tilde"][i] = b_tilde(eta, tol)
        values["b_dot00"][i] = b_dot00(eta, tol)
        values["bz_dot00"][i] = bz_dot00(eta, tol)
        values["k_alpha_gamma"][i] = k_alpha_gamma(eta, tol)
        values["beta"][i] = np.sqrt(dh / ch)
    return KernelTable(grid, values)


_shared_table: KernelTable | None = None


def shared_table() -> KernelTable:
    """Process-wide default table (built once; immutable afterwards)."""
    global _shared_table
    if _shared_table is None:
        _shared_table = build_table()
    return _shared_table


def direct(name: str, eta: float, tol: float = DEFAULT_TOL) -> float:
    """Un-tabulated kernel evaluation straight from the defining integral."""
    return _DIRECT[name](eta, tol)
