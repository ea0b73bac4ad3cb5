import math

import numpy as np
import pytest

from rotormub.appendix_analysis import (
    CyclicTruncation,
    LambdaKet,
    OrderedShift,
    QGrid,
    ShiftKind,
    e_round_trip,
    generator_limit_diagnostic,
    lambda_eigenresidual,
    lambda_ket_phi,
    lambda_ket_q,
    lambda_overlap,
    nearest_integer,
    overcompleteness_check,
    p_from_EL,
    pathological_L,
    plane_wave_check,
    pole_weight,
    q_from_E,
    q_multiplication_check,
    qp_commutator_check,
    shift_eialphaL,
    shift_eiaP,
    shift_eiaP_closed_form,
    shift_trick_check,
    z_commutator_check,
)
from rotormub.errors import IllConditioned, InterpolationLoss
from rotormub.rotor_hilbert import AngularGrid, PhiWaveFunction


@pytest.fixture(scope="module")
def trunc():
    return CyclicTruncation(256)


@pytest.fixture(scope="module")
def qe(trunc):
    return q_from_E(trunc)


def bump(grid, center=0.0, width=0.3):
    return PhiWaveFunction(grid, np.exp(-0.5 * ((grid.points - center) / width) ** 2))


def test_cyclic_shift_is_unitary(trunc):
    E = trunc.shift()
    np.testing.assert_allclose(E.conj().T @ E, np.eye(trunc.size), atol=1e-15)
    with pytest.raises(ValueError):
        CyclicTruncation(7)


def test_bras_are_E_eigenbras(trunc):
    bras = trunc.bra_vectors()
    E = trunc.shift()
    phases = np.exp(1j * trunc.grid.points)[:, None]
    np.testing.assert_allclose(bras @ E, phases * bras, atol=1e-13)


def test_pseudo_inverse_drops_only_the_pole(qe):
    assert qe.affected.shape[1] == 1
    np.testing.assert_allclose(qe.affected_phi, [-math.pi])


def test_Q_acts_as_tan_half_angle(qe, trunc):
    phis = trunc.grid.points[1::17]
    assert np.max(q_multiplication_check(qe, phis)) < 1e-11


def test_Q_check_at_pole_raises(qe):
    with pytest.raises(IllConditioned):
        q_multiplication_check(qe, [math.pi])


def test_Q_hermitian_and_E_recovered(qe):
    np.testing.assert_allclose(qe.matrix, qe.matrix.conj().T, atol=0)
    assert e_round_trip(qe) < 1e-12


def test_P_hermitian(trunc):
    P = p_from_EL(trunc)
    assert np.max(np.abs(P - P.conj().T)) < 1e-10


@pytest.mark.parametrize("center", [0.0, 1.0, -0.8])
def test_heisenberg_on_states_away_from_pole(trunc, center):
    assert qp_commutator_check(trunc, center=center, width=0.3) < 1e-9


@pytest.mark.parametrize("p", [0.0, 1.3, -4.0])
def test_plane_waves(p):
    dev_q, dev_eig = plane_wave_check(p)
    assert dev_q < 1e-13
    assert dev_eig < 1e-9


def test_eiaP_forms_agree_and_move_bump():
    grid = AngularGrid(256)
    wf = bump(grid)
    a = shift_eiaP(1.0, wf)
    b = shift_eiaP_closed_form(1.0, wf)
    np.testing.assert_allclose(a.samples, b.samples, atol=1e-12)
    # the ket moves to phi' with tan(phi'/2) = -1
    assert grid.points[np.argmax(np.abs(b.samples))] == pytest.approx(-math.pi / 2)


def test_eiaP_is_unitary_on_grid():
    grid = AngularGrid(512)
    wf = bump(grid, 0.4, 0.25)
    out = shift_eiaP(0.6, wf)
    # <phi|psi> norms use dphi/2pi, so compare the grid sums directly
    assert np.sum(np.abs(out.samples) ** 2) == pytest.approx(np.sum(np.abs(wf.samples) ** 2), rel=1e-8)


def test_eiaP_group_law():
    grid = AngularGrid(512)
    wf = bump(grid, 0.0, 0.2)
    two_step = shift_eiaP(0.3, shift_eiaP(0.4, wf))
    one_step = OrderedShift(ShiftKind.EIAP_IN_EL, 0.3).compose(OrderedShift(ShiftKind.EIAP_IN_EL, 0.4))
    np.testing.assert_allclose(one_step.apply(wf).samples, two_step.samples, atol=1e-9)


def test_eiaP_refuses_weight_at_pole():
    grid = AngularGrid(128)
    wf = bump(grid, math.pi - 0.2, 0.3)
    assert pole_weight(wf) > 0.1
    with pytest.raises(InterpolationLoss):
        shift_eiaP(0.5, wf)
    with pytest.raises(InterpolationLoss):
        shift_eiaP_closed_form(0.5, wf)


def test_compose_kinds_must_match():
    with pytest.raises(ValueError):
        OrderedShift(ShiftKind.EIAP_IN_EL, 1.0).compose(OrderedShift(ShiftKind.EIALPHAL_IN_QP, 1.0))


def test_eialphaL_rotates_angle():
    # on q = tan(phi/2), exp(i alpha L) translates the angle: q' = tan(phi/2 + alpha/2)
    func = lambda q: np.exp(-q * q)
    shifted = shift_eialphaL(0.4, func)
    q = np.array([-0.7, 0.0, 1.1])
    qp = np.tan(np.arctan(q) + 0.2)
    ratio = np.abs(shifted(q) / func(qp))
    np.testing.assert_allclose(ratio, np.sqrt((1 + qp * qp) / (1 + q * q)), rtol=1e-13)


def test_generator_limit_diverges():
    rows = generator_limit_diagnostic()
    norms = [n for _, n in rows]
    assert all(b > 2.5 * a for a, b in zip(norms, norms[1:]))
    # slope close to -1/2 in log-log
    slope = np.polyfit(np.log([a for a, _ in rows]), np.log(norms), 1)[0]
    assert slope == pytest.approx(-0.5, abs=0.02)


def test_generator_limit_exists_for_smooth_state():
    f = lambda q: 1.0 / (1.0 + q * q)
    norms = [n for _, n in generator_limit_diagnostic(func=f)]
    assert abs(norms[-1] - norms[-2]) < 1e-3 * norms[-1]


def test_nearest_integer_rounds_half_away():
    np.testing.assert_array_equal(nearest_integer([0.5, -0.5, 1.49, -2.5]), [1, -1, 1, -3])
    assert nearest_integer(0.2) == 0.0


def test_lambda_ket_jumps_at_pi_unless_integer():
    eps = 1e-9
    left = lambda_ket_phi(0.3, math.pi - eps)
    right = lambda_ket_phi(0.3, -math.pi + eps)
    assert abs(left - right) > 1.0
    assert lambda_ket_phi(2.0, math.pi - eps) == pytest.approx(lambda_ket_phi(2.0, -math.pi + eps), abs=1e-8)


def test_lambda_ket_q_and_phi_agree():
    ket = LambdaKet(0.37)
    q = np.linspace(-4, 4, 9)
    phi = 2 * np.arctan(q)
    np.testing.assert_allclose(ket.q(q), ket.phi(phi) / np.sqrt(math.pi * (1 + q * q)), rtol=1e-14)
    assert lambda_ket_q(0.37, 0.0, 2.0) == pytest.approx(2.0)


@pytest.mark.parametrize("lam", [0.0, 0.3, -2.7, 3.0])
def test_every_real_is_an_eigenvalue(lam):
    assert lambda_eigenresidual(lam) < 1e-9


def test_pathological_L_is_symmetric_on_grid():
    g = QGrid()
    q = g.points
    f, h = np.exp(-q * q), (1 + q) * np.exp(-0.5 * (q - 0.3) ** 2)
    lhs = np.vdot(f, pathological_L(h, q, g.derivative))
    rhs = np.vdot(pathological_L(f, q, g.derivative), h)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_shift_trick_and_z_commutator():
    assert shift_trick_check(0.7) < 1e-10
    assert shift_trick_check(-1.9) < 1e-10
    assert z_commutator_check() < 1e-7


@pytest.mark.parametrize("lam,lam2", [(0.3, 0.8), (0.0, 0.5), (1.2, -0.4), (0.25, 3.1)])
def test_lambda_overlap_is_sinc(lam, lam2):
    d = math.pi * (lam2 - lam)
    assert lambda_overlap(lam, lam2) == pytest.approx(math.sin(d) / d, abs=1e-12)


def test_lambda_overlap_integers_orthogonal():
    assert lambda_overlap(0.3, 0.3) == pytest.approx(1.0)
    assert abs(lambda_overlap(0.3, 2.3)) < 1e-12


@pytest.mark.parametrize("lam0", [0.0, 0.3, 0.75])
def test_each_shifted_family_is_complete(lam0):
    rows = overcompleteness_check(lam0)
    assert rows[-1][1] < 1e-8


def test_overcompleteness_rejects_bad_offset():
    with pytest.raises(ValueError):
        overcompleteness_check(1.5)
