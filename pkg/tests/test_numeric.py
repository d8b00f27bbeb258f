import math
from fractions import Fraction

import numpy as np
import pytest

from liouvillian.errors import RhoCollapse, SingularityInInterval
from liouvillian.numeric import (
    Trajectory,
    block_coupling,
    convergence_ratio,
    linear_closed_form,
    poincare_section,
    second_order_transport_check,
    simulate,
    variational_integrate,
)
from liouvillian.wilberforce import DimensionlessParams, normal_modes

DEFAULT = DimensionlessParams(b=Fraction(1), c=Fraction(1), f=Fraction(1, 2))
LINEAR = DimensionlessParams(b=Fraction(1), c=Fraction(1), f=Fraction(0))
START = (1.1, 0.3, 0.2, 0.0, 0.0, 0.0)


def test_energy_drift_short_run():
    traj = simulate(DEFAULT, START, 10.0, 1e-3)
    assert traj.energy_drift() <= 1e-10
    assert len(traj.times) == len(traj.states) == len(traj.energy) == 10001
    assert np.all(np.diff(traj.times) > 0)


def test_invariant_plane_is_bitwise_preserved():
    traj = simulate(DEFAULT, (1.2, 0.0, 0.1, 0.05, 0.0, -0.1), 5.0, 1e-3)
    assert np.all(traj.states[:, 1] == 0.0) and np.all(traj.states[:, 4] == 0.0)
    assert not np.any(np.signbit(traj.states[:, [1, 4]]))


def test_linear_subsystem_closed_form():
    s0 = (1.2, 0.0, 0.1, 0.05, 0.0, -0.1)
    traj = simulate(LINEAR, s0, 10.0, 1e-3)
    exact = linear_closed_form(1, 1, s0, traj.times)
    assert np.max(np.abs(traj.states[:, [0, 2]] - exact)) <= 1e-6


def test_rk4_convergence_order():
    assert 12 <= convergence_ratio(DEFAULT, START, 10.0, 0.05) <= 20


def test_rho_collapse():
    with pytest.raises(RhoCollapse):
        simulate(DEFAULT, (0.01, 0, 0, -5, 0, 0), 1.0, 1e-3)
    with pytest.raises(RhoCollapse):
        simulate(DEFAULT, (-1, 0, 0, 0, 0, 0), 1.0, 1e-3)


def test_step_validation():
    with pytest.raises(ValueError):
        simulate(DEFAULT, START, 1.0, 0.3)
    with pytest.raises(ValueError):
        simulate(DEFAULT, START, 1.0, 0.0)


def test_fundamental_matrix_on_invariant_plane():
    base = simulate(DEFAULT, (1.1, 0.0, 0.2, 0.0, 0.0, 0.0), 10.0, 1e-3)
    ft = variational_integrate(base, DEFAULT)
    assert np.array_equal(ft.base, base.states)
    assert np.max(np.abs(ft.determinants() - 1)) <= 1e-6
    assert block_coupling(ft) <= 1e-10


def test_normal_block_with_f_zero_keeps_dP_theta():
    base = simulate(LINEAR, (1.1, 0.0, 0.2, 0.0, 0.0, 0.0), 2.0, 1e-3)
    ft = variational_integrate(base, LINEAR)
    # column of delta P_theta: delta P_theta stays 1, delta theta grows
    assert np.allclose(ft.matrices[:, 4, 4], 1.0)
    assert np.allclose(ft.matrices[:, 4, 1], 0.0)


def test_transport_check():
    res = second_order_transport_check(1, 1, (0.1, 1.0))
    assert res.max_error <= 1e-6
    zero = second_order_transport_check(1, 1, (0.1, 1.0), eta0=0.0, deta0=0.0)
    assert zero.max_error == 0.0 and not np.any(zero.eta_t)
    with pytest.raises(SingularityInInterval):
        second_order_transport_check(1, 1, (0.1, 2.0))


def test_transport_check_with_velocity():
    res = second_order_transport_check(Fraction(1, 3), Fraction(1, 2), (0.3, 2.0), eta0=0.5, deta0=-0.4)
    assert res.max_error <= 1e-6


def test_poincare_single_mode_period():
    """Pure omega1 mode at f = 0: phi = 0 upward crossings are 2 pi / omega1 apart."""
    m = normal_modes(1, 1)
    w1 = math.sqrt(float(m.omega1_sq))
    # eigenvector of K = [[1, 1/2], [1/2, 1]] for omega1^2 = 3/2 is (1, 1)/sqrt(2)
    s0 = (1.0, 0.0, 0.0, 0.1, 0.0, 0.1)
    traj = simulate(LINEAR, s0, 30.0, 1e-3)
    pts = poincare_section(traj, "phi", 0.0, direction=1)
    gaps = np.diff([p.t for p in pts])
    assert len(gaps) >= 3
    assert np.max(np.abs(gaps - 2 * math.pi / w1)) <= 1e-6
    assert all(abs(p.state[2]) <= 1e-9 for p in pts)


def test_poincare_directions_and_empty():
    traj = simulate(LINEAR, (1.0, 0.0, 0.0, 0.1, 0.0, 0.1), 30.0, 1e-3)
    up = poincare_section(traj, "phi", 0.0, 1)
    down = poincare_section(traj, "phi", 0.0, -1)
    both = poincare_section(traj, "phi", 0.0, 0)
    assert len(both) == len(up) + len(down)
    still = simulate(LINEAR, (1.0, 0.0, 0.0, 0.0, 0.0, 0.0), 1.0, 1e-3)
    assert poincare_section(still, "theta", 0.0, 1) == []


def test_poincare_quasiperiodic_crossing_count():
    """Two-mode orbit: upward crossings of the omega2 modal coordinate match t_end * omega2 / 2 pi."""
    m = normal_modes(1, 1)
    w2 = math.sqrt(float(m.omega2_sq))
    s0 = (1.0, 0.0, 0.0, 0.1, 0.0, 0.0)  # excites both modes
    t_end = 60.0
    traj = simulate(LINEAR, s0, t_end, 1e-3)
    # omega2 modal coordinate (rho - 1 - phi)/sqrt(2) as a one-column trajectory
    q = (traj.states[:, 0] - 1 - traj.states[:, 2]) / math.sqrt(2)
    dq = (traj.derivatives[:, 0] - traj.derivatives[:, 2]) / math.sqrt(2)
    proj = Trajectory(traj.times, q[:, None], traj.dt, traj.energy, dq[:, None])
    count = len(poincare_section(proj, 0, 0.0, 1))
    assert abs(count - t_end * w2 / (2 * math.pi)) <= 1
