"""Order-function ansatz: values, exact analytic derivatives, weak expansion.

The field is

    u(x, t) = [1 + w0(xi1) + w0(xi2) - w0(xi1) w0(xi2)] / 2,
    xi1 = beta (phi1 - x) / eps,   xi2 = beta (x - phi2) / eps,

equal to Omega(beta (x - phi2)/eps, eta) in the layer coordinate.  The
time derivative includes the beta_t = beta_tau psi0_t / eps drift of the
layer width; both derivatives are transcribed once from the product form
and cross-checked against finite differences in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .front_dynamics import FrontState, FrontTrajectory
from .kernels import KernelTable
from .profiles import omega0, omega0_dot


@dataclass(frozen=True)
class FieldSample:
    """Order-function value and its exact partial derivatives."""

    u: np.ndarray
    u_t: np.ndarray
    u_x: np.ndarray


def evaluate(x, state: FrontState) -> FieldSample:
    """Ansatz value and exact derivatives at time ``state.t`` (vectorized in x)."""
    x = np.asarray(x, dtype=float)
    eps = state.epsilon
    b = state.beta
    xi1 = b * (state.phi1 - x) / eps
    xi2 = b * (x - state.phi2) / eps
    p, q = omega0(xi1), omega0(xi2)
    dp, dq = omega0_dot(xi1), omega0_dot(xi2)
    u = 0.5 * (1.0 + p + q - p * q)
    u_x = (b / (2.0 * eps)) * (-dp * (1.0 - q) + dq * (1.0 - p))
    beta_t = state.beta_t
    a1 = beta_t * (state.phi1 - x) + b * state.phi1_t
    a2 = beta_t * (x - state.phi2) - b * state.phi2_t
    u_t = (a1 * dp * (1.0 - q) + a2 * dq * (1.0 - p)) / (2.0 * eps)
    return FieldSample(u=u, u_t=u_t, u_x=u_x)


def u_check(x, t, trajectory: FrontTrajectory, table: KernelTable | None = None) -> FieldSample:
    """Field sample at (x, t); the kernel table is only needed off-grid."""
    return evaluate(x, trajectory.at(t))


def ut_delta_expansion(t, trajectory: FrontTrajectory, table: KernelTable):
    """Leading delta-coefficients of u_t: [(coeff1, phi1), (coeff2, phi2)].

    Pairing u_t with a test bump gives coeff1 * zeta(phi1) + coeff2 *
    zeta(phi2) + O(eps) with

        coeff_i = (-1)^(i+1) phi_it c_omega(eta)
                  - (beta_tau psi0_t / (2 beta^2)) bz_dot00(eta),

    the second term identical at both fronts.  Far-separated fronts give
    coeff1 -> 2 phi1_t, coeff2 -> -2 phi2_t.
    """
    st = trajectory.at(t)
    c_om = table("c_omega", st.eta)
    bz00 = table("bz_dot00", st.eta)
    drift = st.beta_tau * st.psi0_t / (2.0 * st.beta**2) * bz00
    c1 = st.phi1_t * c_om - drift
    c2 = -st.phi2_t * c_om - drift
    return [(c1, st.phi1), (c2, st.phi2)]


def gradient_energy(state: FrontState, x_grid) -> float:
    """eps * integral of u_x^2 on the grid (soliton scaling diagnostic)."""
    s = evaluate(x_grid, state)
    return state.epsilon * np.trapezoid(s.u_x**2, x_grid)
