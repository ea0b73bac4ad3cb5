import math

import numpy as np
import pytest

from rotormub.errors import DegenerateAngles, PoleAtPi
from rotormub.mub_stereographic import (
    PoleWindow,
    StereoMubLabel,
    gamma_wavefunction,
    overlap_stereo,
    overlap_stereo_phi,
    smeared_overlap,
    stereo_map,
    stereo_unmap,
    theta0_element,
    unbiased_value,
    windowed_q_overlap,
)
from rotormub.special_functions import mehler_kernel, phi_line


def test_stereo_map_round_trip():
    q = np.linspace(-50, 50, 101)
    np.testing.assert_allclose(stereo_unmap(stereo_map(q)), q, rtol=1e-12, atol=1e-14)
    assert stereo_map(1.0) == pytest.approx(math.pi / 2)


def test_unmap_pole():
    with pytest.raises(PoleAtPi):
        stereo_unmap(math.pi)
    with pytest.raises(PoleAtPi):
        stereo_unmap(-math.pi)
    assert stereo_unmap(3 * math.pi / 2 - 2 * math.pi) == pytest.approx(-1.0)


def test_pole_window():
    w = PoleWindow(0.05)
    assert w.excludes(math.pi - 0.01)
    assert not w.excludes(0.0)
    assert w.q_cut == pytest.approx(math.tan((math.pi - 0.05) / 2))
    with pytest.raises(ValueError):
        PoleWindow(1.0)


def test_theta0_element():
    phi0, amp = theta0_element(1.0)
    assert phi0 == pytest.approx(math.pi / 2)
    assert amp == pytest.approx(1 / math.sqrt(2 * math.pi))


def test_gamma_modulus():
    label = StereoMubLabel(0.7, 0.3)
    phi = np.linspace(-3, 3, 9)
    # |Phi|^2 = 1/(2 pi sin theta); the Jacobian contributes 2 pi / (1 + cos phi)
    expected = 1.0 / (math.sin(0.7) * (1 + np.cos(phi)))
    np.testing.assert_allclose(np.abs(gamma_wavefunction(label, phi)) ** 2, expected, rtol=1e-13)


def test_gamma_is_line_wave_function_with_jacobian():
    label = StereoMubLabel(1.2, -0.5)
    phi = 0.4
    q = math.tan(phi / 2)
    assert gamma_wavefunction(label, phi) == pytest.approx(
        math.sqrt(2 * math.pi / (1 + math.cos(phi))) * phi_line(label, q), rel=1e-14)


def brute_force_overlap(a, b):
    # oracle: the same integral along the real axis with a Gaussian regulator
    # exp(-eta q^2), dense trapezoid rule, extrapolated linearly to eta = 0
    vals = []
    for eta in (2e-3, 1e-3):
        cut = math.sqrt(40.0 / eta)
        q = np.arange(-cut, cut, 5e-4)
        v = np.conj(phi_line(a, q)) * phi_line(b, q) * np.exp(-eta * q * q)
        vals.append(np.sum(v) * 5e-4)
    return 2 * vals[1] - vals[0]


def test_overlap_matches_regulated_real_axis_integral():
    a, b = StereoMubLabel(0.4, 0.3), StereoMubLabel(1.9, -0.8)
    assert overlap_stereo(a, b) == pytest.approx(brute_force_overlap(a, b), rel=1e-4)


def test_overlap_matches_mehler_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(10):
        t1, t2 = sorted(rng.uniform(0.05, math.pi - 0.05, 2))
        if t2 - t1 < 0.05:
            continue
        y1, y2 = rng.uniform(-3, 3, 2)
        val = overlap_stereo(StereoMubLabel(t1, y1), StereoMubLabel(t2, y2))
        assert val == pytest.approx(mehler_kernel(np.exp(1j * (t2 - t1)), y1, y2), rel=1e-10)


def test_unbiasedness_sweep():
    rng = np.random.default_rng(5)
    for _ in range(20):
        t1, t2 = rng.uniform(0, math.pi, 2)
        if abs(math.sin(t1 - t2)) < 0.05:
            continue
        a, b = StereoMubLabel(t1, rng.uniform(-3, 3)), StereoMubLabel(t2, rng.uniform(-3, 3))
        assert abs(overlap_stereo(a, b)) ** 2 == pytest.approx(unbiased_value(t1, t2), rel=1e-6)


def test_same_basis_is_degenerate():
    with pytest.raises(DegenerateAngles):
        overlap_stereo(StereoMubLabel(1.0, 0.0), StereoMubLabel(1.0, 2.0))


def test_phi_form_with_and_without_tail():
    a, b = StereoMubLabel(0.5, 0.2), StereoMubLabel(2.0, -0.4)
    exact = overlap_stereo(a, b)
    corrected = overlap_stereo_phi(a, b, 0.1)
    raw = overlap_stereo_phi(a, b, 0.1, tail_correction=False)
    assert corrected == pytest.approx(exact, rel=1e-10)
    # the window alone leaves an error set by the tail, far above the corrected one
    assert abs(raw - exact) > 1e3 * abs(corrected - exact)


def test_windowed_q_overlap_equals_phi_integral_without_tail():
    a, b = StereoMubLabel(0.8, 0.1), StereoMubLabel(2.2, 0.5)
    w = PoleWindow(0.2)
    assert windowed_q_overlap(a, b, w.q_cut) == pytest.approx(
        overlap_stereo_phi(a, b, w, tail_correction=False), rel=1e-10)


@pytest.mark.parametrize("theta,y1,center,width", [
    (math.pi / 2, 0.3, 0.0, 0.5),
    (0.3, -0.2, 0.4, 0.7),
    (2.8, 1.0, 0.8, 0.4),
])
def test_smeared_orthogonality(theta, y1, center, width):
    g = math.exp(-0.5 * ((y1 - center) / width) ** 2) / (math.sqrt(2 * math.pi) * width)
    assert smeared_overlap(theta, y1, center, width) == pytest.approx(g, rel=1e-9)


def test_phi_form_with_fast_chirp_near_window():
    # bases close to theta = 0 and pi: the chirp next to the window is far too fast
    # for panels uniform in phi
    a, b = StereoMubLabel(2.963, 0.5), StereoMubLabel(0.324, -0.3)
    assert overlap_stereo_phi(a, b, 0.1) == pytest.approx(overlap_stereo(a, b), rel=1e-10)
