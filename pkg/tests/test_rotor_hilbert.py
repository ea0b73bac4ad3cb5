import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotormub.errors import AliasingError, TruncationMismatch
from rotormub.rotor_hilbert import (
    AngularGrid,
    LTruncation,
    OutOfBandWarning,
    PhiWaveFunction,
    RotorState,
    grid_inner_product,
    inner_product,
    l_to_phi,
    out_of_band_residual,
    phi_to_l,
    third_basis_divergence_demo,
)


def test_grid_is_anchored_at_minus_pi():
    g = AngularGrid(8)
    assert g.points[0] == -math.pi
    assert g.spacing == pytest.approx(math.pi / 4)


def test_basis_state_wave_function():
    grid = AngularGrid(64)
    wf = l_to_phi(RotorState.basis(3, 10), grid)
    np.testing.assert_allclose(wf.samples, np.exp(3j * grid.points), atol=1e-13)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=60), st.integers(min_value=0, max_value=2 ** 31))
def test_round_trip(l_max, seed):
    state = RotorState.random(l_max, seed)
    grid = AngularGrid(2 * l_max + 1 + seed % 7)
    back = phi_to_l(l_to_phi(state, grid), state.trunc)
    np.testing.assert_allclose(back.coeffs, state.coeffs, atol=1e-13)


def test_parseval():
    state = RotorState.random(20, 4)
    wf = l_to_phi(state, AngularGrid(64))
    assert grid_inner_product(wf, wf).real == pytest.approx(state.norm2, rel=1e-13)


def test_aliasing_detected():
    with pytest.raises(AliasingError):
        l_to_phi(RotorState.basis(0, 10), AngularGrid(20))


def test_out_of_band_warning():
    grid = AngularGrid(64)
    wf = l_to_phi(RotorState.basis(15, 20), grid)
    with pytest.warns(OutOfBandWarning):
        state = phi_to_l(wf, LTruncation(5))
    assert state.norm2 == pytest.approx(0.0, abs=1e-25)
    assert out_of_band_residual(wf, LTruncation(5)) == pytest.approx(1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        phi_to_l(wf, LTruncation(20))


def test_inner_product_requires_same_truncation():
    a = RotorState.basis(0, 3)
    b = RotorState.basis(0, 4)
    assert inner_product(a, a) == 1
    with pytest.raises(TruncationMismatch):
        inner_product(a, b)
    wa = l_to_phi(a, AngularGrid(16))
    wb = l_to_phi(a, AngularGrid(17))
    with pytest.raises(TruncationMismatch):
        grid_inner_product(wa, wb)


def test_state_validation():
    with pytest.raises(ValueError):
        RotorState(LTruncation(2), np.ones(4))
    with pytest.raises(ValueError):
        RotorState(LTruncation(1), [1, 1, 1], normalized=True)
    with pytest.raises(ValueError):
        RotorState(LTruncation(1), [np.nan, 0, 0])
    with pytest.raises(ValueError):
        RotorState.basis(5, 2)
    assert RotorState(LTruncation(1), [1, 1, 1]).normalize().norm2 == pytest.approx(1.0)


def test_from_function():
    g = AngularGrid(32)
    wf = PhiWaveFunction.from_function(np.cos, g)
    state = phi_to_l(wf, LTruncation(3))
    assert state.coeff(1) == pytest.approx(0.5)
    assert state.coeff(-1) == pytest.approx(0.5)


def test_third_basis_norm_diverges_linearly():
    rows = third_basis_divergence_demo([4, 8, 16, 32])
    assert [n for _, n in rows] == [9.0, 17.0, 33.0, 65.0]
