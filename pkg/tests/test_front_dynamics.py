import numpy as np
import pytest

from confluence import front_dynamics as fd
from confluence.errors import NoContact
from confluence.profiles import switch_V
from conftest import make_asymmetric, make_symmetric


def test_solve_eta_deep_negative(table):
    assert fd.solve_eta(-30.0, table) <= 1e-10


def test_solve_eta_paper_test_mode(table):
    # bisection oracle on eta (1 + tanh eta) = log 2
    eta = fd.solve_eta(0.0, table, paper_form=True, beta_override=1.0)
    assert eta == pytest.approx(0.4795, abs=2e-4)
    assert eta * (1 + np.tanh(eta)) == pytest.approx(np.log(2.0), abs=1e-10)


def test_solve_eta_monotone(table):
    taus = np.linspace(-30, 30, 121)
    etas = fd.solve_eta(taus, table)
    assert np.all(np.diff(etas) >= 0)
    live = etas > 1e-15  # below that the bisection floor ties neighbours
    assert np.all(np.diff(etas[live]) > 0)


def test_solve_eta_satisfies_equation(table):
    for tau in (-3.0, 0.0, 1.7, 12.0):
        eta = fd.solve_eta(tau, table)
        lhs = table.interaction_drive(eta) / table.beta(eta)
        rhs = table.interaction_drive(0.0) / table.beta(0.0) + np.log1p(
            np.exp(2 * tau)
        )
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_eta_state_derivatives(table):
    h = 1e-5
    for tau in (-2.0, 0.0, 1.2, 4.0):
        eta, beta, rho, eta_tau, beta_tau, rho_tau = fd.eta_state(tau, table)
        ep, bp, rp = fd.eta_state(tau + h, table)[:3]
        em, bm, rm = fd.eta_state(tau - h, table)[:3]
        assert eta_tau == pytest.approx((ep - em) / (2 * h), abs=1e-6)
        assert beta_tau == pytest.approx((bp - bm) / (2 * h), abs=1e-6)
        assert rho_tau == pytest.approx((rp - rm) / (2 * h), abs=1e-6)
        assert rho == pytest.approx(eta / beta, abs=1e-13)


def test_beta_flat_tails(table):
    # d^alpha beta / d tau^alpha decays faster than any power
    b1 = fd.eta_state(-10.0, table)[1]
    b2 = fd.eta_state(-25.0, table)[1]
    assert abs(b2 - b1) < 1e-6
    f1 = fd.eta_state(14.0, table)[1]
    f2 = fd.eta_state(28.0, table)[1]
    assert abs(f2 - f1) < 1e-6


def test_eta_linear_growth(table):
    # eta / tau -> beta_inf and rho / tau -> 1 as tau -> +inf
    eta, beta, rho = fd.eta_state(40.0, table)[:3]
    assert eta / 40.0 == pytest.approx(np.sqrt(0.5), abs=0.02)
    assert rho / 40.0 == pytest.approx(1.0, abs=0.03)


def test_phi_sum_correction_limits(table):
    sc = make_asymmetric()
    a = sc.velocity_sum(sc.t_star)
    p = sc.psi0_t(sc.t_star)
    # tau -> +inf: S ~ -(a/p) log(2) / (2 tau)
    for tau in (20.0, 40.0):
        s = fd.phi_sum_correction(tau, sc, table)
        assert s == pytest.approx(-(a / p) * np.log(2.0) / (2 * tau), rel=1e-10)
    # tau -> -inf: S -> -(a/p), a constant
    s_m = fd.phi_sum_correction(-25.0, sc, table)
    s_m2 = fd.phi_sum_correction(-50.0, sc, table)
    assert s_m == pytest.approx(-a / p, rel=2e-2)
    assert abs(s_m2 + a / p) < abs(s_m + a / p)
    # regular value at tau = 0 by l'Hopital
    assert fd.phi_sum_correction(0.0, sc, table) == pytest.approx(
        -0.5 * a / p, abs=1e-12
    )


def test_phi_sum_correction_symmetric_vanishes(table):
    sc = make_symmetric()
    for tau in (-5.0, 0.0, 3.0):
        assert fd.phi_sum_correction(tau, sc, table) == 0.0


def test_phi_sum_correction_eq61_switch(table):
    sc = make_asymmetric()
    s_b = fd.phi_sum_correction(1.0, sc, table, eq61_form=True, denominator="b_omega")
    s_z = fd.phi_sum_correction(1.0, sc, table, eq61_form=True, denominator="bz_omega")
    assert np.isfinite(s_b) and np.isfinite(s_z)
    assert s_b != s_z


def test_phi_diff_correction(table):
    assert fd.phi_diff_correction(3.0, 3.0) == 0.0
    # tau -> +inf with rho ~ tau: D -> 0
    eta, beta, rho = fd.eta_state(35.0, table)[:3]
    assert abs(fd.phi_diff_correction(35.0, rho)) < 0.05
    # tau -> -inf: rho -> 0 so D -> -1
    eta, beta, rho = fd.eta_state(-25.0, table)[:3]
    assert fd.phi_diff_correction(-25.0, rho) == pytest.approx(-1.0, abs=1e-8)


def test_assemble_symmetric_mirror(table):
    sc = make_symmetric(epsilon=0.04)
    traj = fd.assemble_fronts(sc, table, n_t=301)
    # x -> 2 x_c - x symmetry: phi1 + phi2 = 2 x_c exactly at all nodes
    assert np.max(np.abs(traj.phi1 + traj.phi2 - 1.0)) < 1e-12
    assert np.max(np.abs(traj.phi1_t + traj.phi2_t)) < 1e-12
    sep = traj.phi2 - traj.phi1 - sc.epsilon * traj.rho
    assert np.max(np.abs(sep)) < 1e-10


def test_assemble_front_error_scales(table):
    # |phi_i(t, eps) - phi_i0(t)| <= C eps on t <= t_star - 10 eps
    errs = []
    ladder = [0.1, 0.05, 0.025, 0.0125]
    for eps in ladder:
        sc = make_asymmetric(epsilon=eps)
        traj = fd.assemble_fronts(sc, table, n_t=2001)
        mask = traj.t_grid <= sc.t_star - 10 * eps
        e1 = np.abs(traj.phi1 - sc.phi10(traj.t_grid))[mask].max()
        e2 = np.abs(traj.phi2 - sc.phi20(traj.t_grid))[mask].max()
        errs.append(max(e1, e2))
    slope = np.polyfit(np.log(ladder), np.log(errs), 1)[0]
    assert slope >= 0.9


def test_assemble_post_contact_separation(table):
    for eps in (0.05, 0.025):
        sc = make_asymmetric(epsilon=eps)
        traj = fd.assemble_fronts(sc, table, n_t=1501)
        mask = traj.t_grid >= sc.t_star + 10 * eps
        sep = np.abs(traj.phi2 - traj.phi1)[mask]
        assert sep.max() <= 2.0 * eps  # rho stays O(1) and shrinks post contact


def test_velocities_match_position_derivative(table):
    # chain-rule velocities against centered differences of the positions;
    # the dropped slow-time term is O(eps)
    for eps, tol in ((0.04, None), (0.02, None)):
        sc = make_asymmetric(epsilon=eps)
        traj = fd.assemble_fronts(sc, table, n_t=4001)
        t = traj.t_grid
        d1 = np.gradient(traj.phi1, t)
        d2 = np.gradient(traj.phi2, t)
        inner = slice(50, -50)
        err = max(
            np.abs(d1 - traj.phi1_t)[inner].max(),
            np.abs(d2 - traj.phi2_t)[inner].max(),
        )
        assert err < 6.0 * eps


def test_velocity_sum_tracks_switch(table):
    # the balance phi1_t + phi2_t = a V(tau) holds exactly by construction
    sc = make_asymmetric(epsilon=0.03)
    traj = fd.assemble_fronts(sc, table, n_t=501)
    a = sc.velocity_sum(traj.t_grid)
    expect = a * switch_V(traj.tau)
    assert np.max(np.abs(traj.phi1_t + traj.phi2_t - expect)) < 1e-12


def test_contact_effects_symmetric(table):
    sc = make_symmetric(epsilon=0.02)
    traj = fd.assemble_fronts(sc, table, n_t=1001)
    eff = fd.contact_effects(traj)
    assert eff["velocity_sum_at_contact"] == 0.0
    assert eff["temperature_jump"] == pytest.approx(-0.5, abs=1e-12)  # v = 0.5 each


def test_contact_effects_asymmetric_small_sum(table):
    errs = []
    for eps in (0.05, 0.025, 0.0125):
        sc = make_asymmetric(epsilon=eps)
        traj = fd.assemble_fronts(sc, table, n_t=2001)
        eff = fd.contact_effects(traj)
        errs.append(abs(eff["velocity_sum_at_contact"]))
    vmax = 0.7
    assert errs[-1] <= 0.05 * vmax
    assert errs[2] <= errs[0] + 1e-15


def test_contact_effects_requires_contact(table):
    sc = make_symmetric(epsilon=0.02)
    traj = fd.assemble_fronts(
        sc, table, t_grid=np.linspace(0.0, 0.5 * sc.t_star, 101)
    )
    with pytest.raises(NoContact):
        fd.contact_effects(traj)
