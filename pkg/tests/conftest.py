import numpy as np
import pytest

from confluence import kernels
from confluence.scenario import BoundaryCondition, Cubic, Scenario


@pytest.fixture(scope="session")
def table():
    return kernels.shared_table()


def make_symmetric(epsilon=0.05, v=0.5, delta0=0.6, x_c=0.5, t_end=None):
    """Linear symmetric collapse: fronts x_c -+ (delta0 - v t), contact at delta0/v."""
    t_star = delta0 / v
    if t_end is None:
        t_end = 1.6 * t_star
    return Scenario(
        l1=x_c - 6.0, l2=x_c + 6.0, t_end=t_end, t_star=t_star,
        epsilon=epsilon, kappa=2.0 * np.sqrt(0.5) / 3.0,
        phi10=Cubic((x_c - delta0, v, 0.0, 0.0)),
        phi20=Cubic((x_c + delta0, -v, 0.0, 0.0)),
        gamma1_plus=Cubic((2 * v, 0.0, 0.0, 0.0)),
        gamma1_minus=Cubic((0.0, 0.0, 0.0, 0.0)),
        gamma2_plus=Cubic((0.0, 0.0, 0.0, 0.0)),
        gamma2_minus=Cubic((2 * v, 0.0, 0.0, 0.0)),
        bc=BoundaryCondition("dirichlet", 0.0, 0.0),
        name="unit-symmetric",
    ).validate()


def make_asymmetric(epsilon=0.05, v1=0.7, v2=-0.4, delta0=0.6, x_c=0.5, t_end=None):
    """Linear asymmetric collapse with unequal closing speeds."""
    t_star = 2.0 * delta0 / (v1 - v2)
    if t_end is None:
        t_end = 1.6 * t_star
    return Scenario(
        l1=x_c - 6.0, l2=x_c + 6.0, t_end=t_end, t_star=t_star,
        epsilon=epsilon, kappa=2.0 * np.sqrt(0.5) / 3.0,
        phi10=Cubic((x_c - delta0, v1, 0.0, 0.0)),
        phi20=Cubic((x_c + delta0, v2, 0.0, 0.0)),
        gamma1_plus=Cubic((2 * v1, 0.0, 0.0, 0.0)),
        gamma1_minus=Cubic((0.0, 0.0, 0.0, 0.0)),
        gamma2_plus=Cubic((0.0, 0.0, 0.0, 0.0)),
        gamma2_minus=Cubic((-2 * v2, 0.0, 0.0, 0.0)),
        bc=BoundaryCondition("dirichlet", 0.0, 0.0),
        name="unit-asymmetric",
    ).validate()


@pytest.fixture()
def symmetric_scenario():
    return make_symmetric()


@pytest.fixture()
def asymmetric_scenario():
    return make_asymmetric()
