"""Front interaction dynamics.

Solves the interaction variable eta(tau) from the cancellation of the
summed layer-jump books, assembles the dressed fronts

    phi_i(t, eps) = phi_i0(t) + psi0(t) phi_i1(tau, t),    tau = psi0 / eps,

their velocities, and the contact effects.

The eta equation integrates d/dtau [G(eta)/beta(eta)] = 2 B(tau) with
G(eta) = eta c_omega(eta) - bz_dot00(eta) (so G' = c_omega exactly) and
the constant fixed by eta -> 0 as tau -> -infinity:

    G(eta)/beta(eta) = G(0)/beta(0) + log(1 + e^{2 tau}).

G is monotone with G(0) = 1 and G ~ 2 eta at infinity, so the root is
unique and bracketed; it is found by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BracketFailure, NoContact
from .kernels import KernelTable
from .profiles import switch_B_cumulative, switch_V, switch_V_shifted_integral
from .scenario import Scenario

_BISECT_STEPS = 64  # |interval| / 2^64 is far below 1e-12 for any cap used


def _drive_paper(eta):
    # test-mode shape eta (1 + tanh eta); anchored at 0
    return eta * (1.0 + np.tanh(eta))


def solve_eta(tau, table: KernelTable, paper_form: bool = False,
              beta_override: float | None = None):
    """Interaction variable eta >= 0 at rescaled separation tau (vectorized).

    ``paper_form=True`` switches to the test-mode equation
    eta (1 + tanh eta) = beta * log(1 + e^{2 tau}); ``beta_override`` fixes
    beta to a constant there (the beta == 1 bisection oracle).
    """
    tau = np.asarray(tau, dtype=float)
    scalar = tau.ndim == 0
    tau = np.atleast_1d(tau)

    if paper_form:
        anchor = 0.0

        def lhs(eta):
            b = beta_override if beta_override is not None else table.beta(eta)
            return _drive_paper(eta) / b
    else:
        anchor = table.interaction_drive(0.0) / table.beta(0.0)

        def lhs(eta):
            return table.interaction_drive(eta) / table.beta(eta)

    rhs = anchor + switch_B_cumulative(tau)
    hi = 0.75 * np.max(rhs) + 8.0
    lo_v, hi_v = lhs(np.zeros_like(tau)), lhs(np.full_like(tau, hi))
    if np.any(lo_v > rhs + 1e-12) or np.any(hi_v < rhs):
        raise BracketFailure(
            "eta equation not bracketed on [0, cap]; kernel table corrupt?"
        )
    a = np.zeros_like(tau)
    b = np.full_like(tau, hi)
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (a + b)
        take_hi = lhs(mid) < rhs
        a = np.where(take_hi, mid, a)
        b = np.where(take_hi, b, mid)
    eta = 0.5 * (a + b)
    return float(eta[0]) if scalar else eta


def eta_state(tau, table: KernelTable):
    """eta, beta, rho and their tau-derivatives along the solved path.

    Derivatives are analytic: eta_tau = (1 + tanh tau) / (d/d eta)[G/beta].
    """
    tau = np.asarray(tau, dtype=float)
    eta = solve_eta(tau, table)
    beta = table.beta(eta)
    c_om = table("c_omega", eta)
    g = table.interaction_drive(eta)
    # beta' via the tabulated ratio: beta = sqrt(d/c)
    ch = table("c_hat", eta)
    dh = table("d_hat", eta)
    dch = table.derivative("c_hat", eta)
    ddh = table.derivative("d_hat", eta)
    dbeta_deta = 0.5 / beta * (ddh * ch - dh * dch) / ch**2
    slope = c_om / beta - g * dbeta_deta / beta**2
    eta_tau = (1.0 + np.tanh(tau)) / slope
    beta_tau = dbeta_deta * eta_tau
    rho = eta / beta
    rho_tau = eta_tau / beta - eta * beta_tau / beta**2
    return eta, beta, rho, eta_tau, beta_tau, rho_tau


def phi_sum_correction(tau, scenario: Scenario, table: KernelTable,
                       t: float | None = None, eq61_form: bool = False,
                       denominator: str = "b_omega"):
    """Correction sum S = phi_11 + phi_21.

    Production form: S = [a(t) / (psi0_t(t) tau)] * int_0^tau (V - 1),
    a = phi10_t + phi20_t.  This integrates the velocity balance
    (phi_1t + phi_2t) = V(tau) a(t) exactly; the first-moment kernel terms
    cancel between the two fronts and do not enter the sum.

    ``eq61_form=True`` adds the kernel quadrature
    (2 psi0_t / tau) int_0^tau (beta_tau / beta^2) bz/(den + c_omega)
    with ``denominator`` choosing b_omega (derivation form) or bz_omega
    (printed form); exposed for comparison only.
    """
    if t is None:
        t = scenario.t_star
    a = scenario.velocity_sum(t)
    psi0_t = scenario.psi0_t(t)
    tau = np.asarray(tau, dtype=float)
    intv = switch_V_shifted_integral(tau)
    small = np.abs(tau) < 1e-12
    # l'Hopital at tau = 0: integrand value V(0) - 1 = -1/2
    ratio = np.where(small, -0.5, intv / np.where(small, 1.0, tau))
    s = (a / psi0_t) * ratio
    if eq61_form:
        s = (a) * ratio / 1.0 + _bz_quadrature(tau, psi0_t, table, denominator)
    return float(s) if s.ndim == 0 else s


def _bz_quadrature(tau, psi0_t, table, denominator):
    """(2 psi0_t / tau) int_0^tau (beta_tau/beta^2) bz/(den + c_omega) d tau'."""
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    out = np.empty_like(tau)
    for i, tv in enumerate(tau):
        if abs(tv) < 1e-12:
            _, b, _, _, btau, _ = eta_state(0.0, table)
            eta0 = solve_eta(0.0, table)
            den = table(denominator, eta0) + table("c_omega", eta0)
            out[i] = 2.0 * psi0_t * (btau / b**2) * table("bz_omega", eta0) / den
            continue
        nodes, weights = np.polynomial.legendre.leggauss(48)
        tp = 0.5 * tv * (nodes + 1.0)
        w = 0.5 * tv * weights
        eta, b, _, _, btau, _ = eta_state(tp, table)
        den = table(denominator, eta) + table("c_omega", eta)
        integrand = (btau / b**2) * table("bz_omega", eta) / den
        out[i] = 2.0 * psi0_t * np.sum(w * integrand) / tv
    return out if out.size > 1 else float(out[0])


def phi_diff_correction(tau, rho):
    """Correction difference D = phi_21 - phi_11 = rho/tau - 1.

    Defined so the dressed separation phi_2 - phi_1 = eps * rho holds
    identically; singular at tau = 0 (the products psi0 * D stay regular).
    """
    tau = np.asarray(tau, dtype=float)
    if np.any(np.abs(tau) < 1e-300):
        raise ZeroDivisionError("phi_diff_correction undefined at tau = 0")
    out = np.asarray(rho) / tau - 1.0
    return float(out) if out.ndim == 0 else out


@dataclass
class FrontTrajectory:
    """Dressed front state sampled on a time grid."""

    scenario: Scenario
    t_grid: np.ndarray
    tau: np.ndarray
    eta: np.ndarray
    beta: np.ndarray
    rho: np.ndarray
    eta_tau: np.ndarray
    beta_tau: np.ndarray
    rho_tau: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    phi1_t: np.ndarray
    phi2_t: np.ndarray
    phi_sum_corr: np.ndarray
    phi_diff_corr: np.ndarray

    @property
    def epsilon(self):
        return self.scenario.epsilon

    def node(self, i: int) -> "FrontState":
        sc = self.scenario
        t = float(self.t_grid[i])
        return FrontState(
            t=t,
            epsilon=sc.epsilon,
            tau=float(self.tau[i]),
            eta=float(self.eta[i]),
            beta=float(self.beta[i]),
            rho=float(self.rho[i]),
            eta_tau=float(self.eta_tau[i]),
            beta_tau=float(self.beta_tau[i]),
            rho_tau=float(self.rho_tau[i]),
            phi1=float(self.phi1[i]),
            phi2=float(self.phi2[i]),
            phi1_t=float(self.phi1_t[i]),
            phi2_t=float(self.phi2_t[i]),
            psi0_t=float(sc.psi0_t(t)),
        )

    def at(self, t: float) -> "FrontState":
        """State at arbitrary t by direct evaluation (not interpolation)."""
        i = int(np.argmin(np.abs(self.t_grid - t)))
        if abs(self.t_grid[i] - t) < 1e-14:
            return self.node(i)
        single = assemble_fronts(self.scenario, self._table, t_grid=np.array([t]))
        return single.node(0)

    def interaction_window(self, eta_threshold: float = 1e-3):
        mask = self.eta < eta_threshold
        if not np.any(mask):
            raise NoContact(
                f"eta never drops below {eta_threshold}; no contact in the run"
            )
        return mask


@dataclass(frozen=True)
class FrontState:
    """Per-instant dressed front data (all scalars)."""

    t: float
    epsilon: float
    tau: float
    eta: float
    beta: float
    rho: float
    eta_tau: float
    beta_tau: float
    rho_tau: float
    phi1: float
    phi2: float
    phi1_t: float
    phi2_t: float
    psi0_t: float

    @property
    def beta_t(self):
        return self.beta_tau * self.psi0_t / self.epsilon


def assemble_fronts(scenario: Scenario, table: KernelTable,
                    n_t: int = 801, t_grid=None) -> FrontTrajectory:
    """Assemble the dressed fronts and velocities over a time grid.

    Positions use the regular products psi0 * phi_i1 (never the singular
    D alone):

        phi_i = phi_i0 + [eps tau S -+ eps (rho - tau)] / 2

    and velocities use the chain rule phi_it = phi_i0t + psi0_t
    d/dtau (tau phi_i1), which closes to

        phi_it = phi_i0t + [a (V - 1) -+ psi0_t (rho_tau - 1)] / 2.
    """
    sc = scenario
    eps = sc.epsilon
    if t_grid is None:
        t_grid = np.linspace(0.0, sc.t_end, n_t)
    else:
        t_grid = np.asarray(t_grid, dtype=float)
    tau = sc.psi0(t_grid) / eps
    # keep D = rho/tau - 1 finite at a node landing exactly on contact
    tau = np.where(np.abs(tau) < 1e-13, 1e-13, tau)

    eta, beta, rho, eta_tau, beta_tau, rho_tau = eta_state(tau, table)
    a = sc.velocity_sum(t_grid)
    psi0_t = sc.psi0_t(t_grid)

    intv = switch_V_shifted_integral(tau)
    tau_s = a / psi0_t * intv            # tau * S
    s_corr = tau_s / tau
    d_corr = rho / tau - 1.0

    half_sum = 0.5 * eps * tau_s          # psi0 (phi11 + phi21) / 2 * ... see below
    half_diff = 0.5 * eps * (rho - tau)   # psi0 (phi21 - phi11) / 2
    phi1 = sc.phi10(t_grid) + half_sum - half_diff
    phi2 = sc.phi20(t_grid) + half_sum + half_diff

    v = switch_V(tau)
    phi1_t = sc.phi10.deriv(t_grid) + 0.5 * (a * (v - 1.0) - psi0_t * (rho_tau - 1.0))
    phi2_t = sc.phi20.deriv(t_grid) + 0.5 * (a * (v - 1.0) + psi0_t * (rho_tau - 1.0))

    traj = FrontTrajectory(
        scenario=sc, t_grid=t_grid, tau=tau, eta=eta, beta=beta, rho=rho,
        eta_tau=eta_tau, beta_tau=beta_tau, rho_tau=rho_tau,
        phi1=phi1, phi2=phi2, phi1_t=phi1_t, phi2_t=phi2_t,
        phi_sum_corr=s_corr, phi_diff_corr=d_corr,
    )
    traj._table = table
    sep = phi2 - phi1 - eps * rho
    assert np.max(np.abs(sep)) < 1e-10, "separation invariant broken"
    return traj


def contact_effects(trajectory: FrontTrajectory, eta_threshold: float = 1e-3) -> dict:
    """Velocity sum at the node nearest eta's minimum and the predicted jump.

    The predicted temperature jump at contact is psi0_t(t*)/2, i.e. minus
    half the sum of the closing speeds |phi10_t| + |phi20_t| at t* (negative
    for approaching fronts).
    """
    traj = trajectory
    sc = traj.scenario
    if traj.eta.min() > eta_threshold:
        raise NoContact(
            f"minimum eta {traj.eta.min():.3e} above threshold {eta_threshold}"
        )
    i = int(np.argmin(traj.eta))
    jump = -0.5 * (abs(sc.phi10.deriv(sc.t_star)) + abs(sc.phi20.deriv(sc.t_star)))
    return {
        "t_contact_node": float(traj.t_grid[i]),
        "eta_min": float(traj.eta[i]),
        "velocity_sum_at_contact": float(traj.phi1_t[i] + traj.phi2_t[i]),
        "temperature_jump": jump,
    }
