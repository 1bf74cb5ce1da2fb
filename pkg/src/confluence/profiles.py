"""Closed-form layer profiles and switch functions.

Everything downstream (kernel quadrature, front corrections, field
evaluation) is built from the hyperbolic-tangent profile ``omega0``, the
two-layer interaction profile ``capital_omega`` and the smooth switches
``switch_B`` / ``switch_V``.  All derivatives here are analytic; nothing
is differentiated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Arguments beyond this are saturated before exponentials are formed.
# tanh(40) differs from 1 by ~2e-35, far below every tolerance used.
SATURATION = 40.0


def _clip(z):
    return np.clip(z, -SATURATION, SATURATION)


def omega0(z):
    """Layer profile (e^z - e^-z)/(e^z + e^-z), saturated for |z| > 40."""
    return np.tanh(_clip(z))


def omega0_dot(z):
    """Derivative of omega0: 1 - omega0^2 = sech^2."""
    c = np.cosh(_clip(z))
    return 1.0 / (c * c)


def omega0_ddot(z):
    """Second derivative of omega0: -2 tanh sech^2."""
    return -2.0 * omega0(z) * omega0_dot(z)


@dataclass(frozen=True)
class ProfileEval:
    """Value and first partials of a two-argument profile."""

    value: float
    d_z: float
    d_eta: float


def capital_omega(z, eta):
    """Interaction profile Omega(z, eta) with analytic partials.

    Omega = (1 + w0(z) + w0(-z-eta) - w0(z) w0(-z-eta)) / 2.  It equals 1
    in both far fields and carries one transition layer at z = 0 and one
    at z = -eta.
    """
    p = omega0(-z - eta)
    q = omega0(z)
    dp = omega0_dot(-z - eta)
    dq = omega0_dot(z)
    value = 0.5 * (1.0 + q + p - q * p)
    # d/dz picks up -dp from the -z-eta argument
    d_z = 0.5 * (dq * (1.0 - p) - dp * (1.0 - q))
    d_eta = -0.5 * dp * (1.0 - q)
    if np.ndim(value) == 0:
        return ProfileEval(float(value), float(d_z), float(d_eta))
    return ProfileEval(value, d_z, d_eta)


def omega_alpha(z, eta):
    """alpha(z, eta) = Omega_z - Omega_eta = w0'(z) (1 - w0(-z-eta)) / 2.

    Single bump at z = 0; its mirror under z -> -z-eta is ``omega_gamma``.
    """
    return 0.5 * omega0_dot(z) * (1.0 - omega0(-z - eta))


def omega_gamma(z, eta):
    """gamma(z, eta) = -Omega_eta = w0'(z+eta) (1 - w0(z)) / 2; bump at z = -eta."""
    return 0.5 * omega0_dot(z + eta) * (1.0 - omega0(z))


def double_well(u):
    """Double-well density F(u) = u^4/4 - u^2/2 + 1/4 = (u^2-1)^2/4."""
    u = np.asarray(u, dtype=float) if np.ndim(u) else float(u)
    return u**4 / 4.0 - u**2 / 2.0 + 0.25


def switch_B(tau):
    """Interaction switch B(tau) = (1 + tanh tau)/2: 0 at -inf, 1 at +inf."""
    return 0.5 * (1.0 + omega0(tau))


def switch_B_dot(tau):
    """B'(tau) = sech^2(tau)/2."""
    return 0.5 * omega0_dot(tau)


# V is used for the velocity interpolation in the front corrections; the
# same functional form keeps its integral in closed form as well.
switch_V = switch_B
switch_V_dot = switch_B_dot


def switch_B_cumulative(tau):
    """2 * integral of B from -inf to tau = log(1 + e^{2 tau}), overflow-safe."""
    t = np.asarray(tau, dtype=float)
    out = np.where(t > 0, 2.0 * t + np.log1p(np.exp(-2.0 * _clip(t))),
                   np.log1p(np.exp(2.0 * _clip(t))))
    return float(out) if np.ndim(tau) == 0 else out


def switch_V_shifted_integral(tau):
    """Integral of (V - 1) from 0 to tau = -(tau - log cosh tau)/2.

    Tends to -log(2)/2 as tau -> +inf and behaves like -tau + O(1) as
    tau -> -inf.
    """
    t = np.asarray(tau, dtype=float)
    # log cosh t = |t| + log1p(e^{-2|t|}) - log 2, safe for large |t|
    logcosh = np.abs(t) + np.log1p(np.exp(-2.0 * np.abs(_clip(t)))) - np.log(2.0)
    out = -0.5 * (t - logcosh)
    return float(out) if np.ndim(tau) == 0 else out
