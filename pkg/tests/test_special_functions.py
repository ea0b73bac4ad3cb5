import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotormub.errors import DegenerateTheta
from rotormub.special_functions import (
    LineBasisLabel,
    hermite_fn,
    hermite_functions,
    mehler_kernel,
    phi_line,
    phi_line_conj,
    sinc,
)


def mp_hermite_fn(n, q):
    # independent oracle: Hermite polynomial at 50 digits
    with mp.workdps(50):
        q = mp.mpf(q)
        val = mp.hermite(n, q) * mp.exp(-q * q / 2) / mp.sqrt(2 ** n * mp.factorial(n) * mp.sqrt(mp.pi))
        return float(val)


def test_ground_state_at_origin():
    assert hermite_fn(0, 0.0) == pytest.approx(math.pi ** -0.25, rel=1e-15)


@pytest.mark.parametrize("n,q", [(1, 0.3), (7, 1.3), (20, -2.2), (55, 4.0), (120, 0.7), (200, 9.5)])
def test_hermite_matches_high_precision(n, q):
    assert hermite_fn(n, q) == pytest.approx(mp_hermite_fn(n, q), rel=1e-11, abs=1e-300)


def test_odd_orders_vanish_at_origin():
    f = hermite_functions(41, 0.0)
    assert np.all(f[1::2] == 0.0)


def test_table_agrees_with_single_evaluations():
    q = np.array([-3.0, 0.1, 2.5])
    table = hermite_functions(30, q)
    for n in (0, 5, 30):
        np.testing.assert_allclose(table[n], hermite_fn(n, q), rtol=1e-13, atol=1e-300)


def test_large_order_and_argument_stay_finite():
    assert np.isfinite(hermite_fn(10000, 50.0))
    big = hermite_functions(200, np.array([60.0]))
    assert np.all(np.isfinite(big))
    # far outside the classical region f_n is tiny but representable or zero
    assert abs(big[0, 0]) < 1e-300


def test_scaled_path_matches_plain_path():
    q = np.array([36.0])
    plain = hermite_functions(300, q)
    scaled = hermite_functions(300, np.array([36.0, 40.0]))[:, :1]
    np.testing.assert_allclose(scaled, plain, rtol=1e-12, atol=1e-300)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=40), st.integers(min_value=0, max_value=40))
def test_orthonormality(m, n):
    x, w = np.polynomial.hermite.hermgauss(80)
    fm = hermite_functions(40, x)[m] * np.exp(0.5 * x * x)
    fn = hermite_functions(40, x)[n] * np.exp(0.5 * x * x)
    assert np.sum(w * fm * fn) == pytest.approx(float(m == n), abs=1e-12)


@pytest.mark.parametrize("w", [0.5, -0.3 + 0.4j, 0.8j, 0.95 * np.exp(2.0j)])
def test_mehler_matches_series(w):
    x, y = 0.7, -1.2
    n = np.arange(800)
    series = np.sum(w ** n * hermite_functions(799, x) * hermite_functions(799, y))
    assert mehler_kernel(w, x, y) == pytest.approx(series, rel=1e-12)


def test_mehler_on_unit_circle_is_unbiased():
    for delta in (0.2, 1.0, math.pi / 2, 2.9):
        k = mehler_kernel(np.exp(1j * delta), 0.4, -1.7)
        assert abs(k) ** 2 == pytest.approx(1 / (2 * math.pi * abs(math.sin(delta))), rel=1e-13)


def test_mehler_rejects_singular_points():
    with pytest.raises(ValueError):
        mehler_kernel(1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        mehler_kernel(-1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        mehler_kernel(1.1, 0.0, 0.0)


def test_sinc():
    assert sinc(0.0) == 1.0
    assert sinc(math.pi / 2) == pytest.approx(2 / math.pi, rel=1e-15)
    x = np.array([1e-5, 5e-4, 2e-3])
    np.testing.assert_allclose(sinc(x), np.sin(x) / x, rtol=1e-15)


def test_label_invariants():
    LineBasisLabel(0.0, 1.0)
    with pytest.raises(ValueError):
        LineBasisLabel(math.pi, 0.0)
    with pytest.raises(ValueError):
        LineBasisLabel(-0.1, 0.0)


def test_phi_line_is_mehler_kernel():
    label = LineBasisLabel(1.1, 0.6)
    q = np.linspace(-3, 3, 7)
    np.testing.assert_allclose(phi_line(label, q), mehler_kernel(np.exp(1.1j), q, 0.6), rtol=1e-13)


def test_phi_line_quarter_turn_is_plane_wave():
    label = LineBasisLabel(math.pi / 2, 0.8)
    q = 1.3
    # exp(i pi/2 N)|q=y> has wave function exp(i q y) / sqrt(2 pi) up to a global phase
    assert abs(phi_line(label, q)) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-14)
    ratio = phi_line(label, q) / phi_line(label, 0.0)
    assert ratio == pytest.approx(np.exp(1j * q * 0.8), rel=1e-14)


def test_phi_line_conj_is_continuation():
    label = LineBasisLabel(0.9, -0.4)
    q = np.array([-1.0, 0.2, 2.0])
    np.testing.assert_allclose(phi_line_conj(label, q), np.conj(phi_line(label, q)), rtol=1e-14)
    z = 0.3 + 0.7j
    assert phi_line_conj(label, z) == pytest.approx(np.conj(phi_line(label, np.conj(z))), rel=1e-14)


def test_phi_line_theta_zero_raises():
    with pytest.raises(DegenerateTheta):
        phi_line(LineBasisLabel(0.0, 1.0), 0.5)
