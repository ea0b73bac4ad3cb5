"""First continuous MUB set for the rotor, via the substitution q = tan(phi/2).

The overlap of two rotated-position basis elements is a chirp integral,

    int dq exp(i a q^2 + i b q) * const,

whose integrand has constant modulus on the real line.  :func:`overlap_stereo`
integrates it along the steepest-descent line through the saddle point, where
the integrand is a Gaussian, using adaptive quadrature cut where the Gaussian
envelope has dropped to 1e-12.  :func:`overlap_stereo_phi` integrates the same
overlap over the angle, with a window around the pole and asymptotic tail
corrections for the part of the q-line the window removes.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .errors import DegenerateAngles, PoleAtPi, QuadratureNoConvergence
from .special_functions import LineBasisLabel, phi_line, phi_line_conj

__all__ = [
    "StereoMubLabel",
    "PoleWindow",
    "stereo_map",
    "stereo_unmap",
    "gamma_wavefunction",
    "overlap_stereo",
    "overlap_stereo_phi",
    "windowed_q_overlap",
    "smeared_overlap",
    "theta0_element",
    "unbiased_value",
]

StereoMubLabel = LineBasisLabel

_ENVELOPE_CUT = math.log(1e12)


class PoleWindow:
    """Excluded neighborhood |phi - pi| < epsilon of the stereographic pole."""

    __slots__ = ("epsilon",)

    def __init__(self, epsilon: float = 0.05):
        if not 0.0 < epsilon < math.pi / 4:
            raise ValueError("pole window half-width must lie in (0, pi/4)")
        self.epsilon = float(epsilon)

    def __repr__(self):
        return f"PoleWindow(epsilon={self.epsilon})"

    def excludes(self, phi) -> np.ndarray:
        return distance_to_pole(phi) < self.epsilon

    @property
    def q_cut(self) -> float:
        """|q| beyond which the window removes the line: tan((pi - eps)/2)."""
        return 1.0 / math.tan(self.epsilon / 2.0)


def distance_to_pole(phi):
    """Distance of phi from pi on the circle."""
    return np.abs(np.remainder(np.asarray(phi, dtype=float), 2.0 * math.pi) - math.pi)


def unbiased_value(theta1: float, theta2: float) -> float:
    """1 / (2 pi |sin(theta1 - theta2)|)."""
    return 1.0 / (2.0 * math.pi * abs(math.sin(theta1 - theta2)))


def stereo_map(q):
    """Point on the circle, phi = 2 arctan(q), in (-pi, pi)."""
    return 2.0 * np.arctan(q)


def stereo_unmap(phi):
    """q = tan(phi/2); undefined at phi = pi (mod 2 pi)."""
    phi = np.asarray(phi, dtype=float)
    if np.any(distance_to_pole(phi) < 1e-14):
        raise PoleAtPi("stereographic projection is undefined at phi = pi")
    out = np.tan(0.5 * _wrap(phi))
    return out if out.ndim else float(out)


def _wrap(phi):
    return np.remainder(phi + math.pi, 2.0 * math.pi) - math.pi


def gamma_wavefunction(label: StereoMubLabel, phi):
    """Gamma_y^(theta)(phi) = sqrt(2 pi / (1 + cos phi)) Phi_y^(theta)(tan(phi/2)).

    Raises :class:`PoleAtPi` at phi = pi and ``DegenerateTheta`` at theta = 0
    (use :func:`theta0_element` there).
    """
    phi = _wrap(np.asarray(phi, dtype=float))
    q = stereo_unmap(phi)
    out = np.sqrt(2.0 * math.pi / (1.0 + np.cos(phi))) * phi_line(label, q)
    return out if np.ndim(out) else complex(out)


def theta0_element(y: float):
    """theta = 0 element: the phi-basis ket at 2 arctan(y) with weight 1/sqrt(pi (1 + y^2))."""
    return float(2.0 * math.atan(y)), 1.0 / math.sqrt(math.pi * (1.0 + y * y))


def _chirp_coefficients(a: StereoMubLabel, b: StereoMubLabel):
    # exponent of conj(Phi_a) Phi_b is i*quad*q^2 + i*lin*q + const
    if a.theta == b.theta:
        raise DegenerateAngles("overlap within one basis is a delta function")
    sa, sb = math.sin(a.theta), math.sin(b.theta)
    quad = 0.5 * (math.cos(a.theta) / sa - math.cos(b.theta) / sb)
    lin = b.y / sb - a.y / sa
    return quad, lin


def overlap_stereo(a: StereoMubLabel, b: StereoMubLabel, epsrel: float = 1e-13) -> complex:
    """int dq conj(Phi_a(q)) Phi_b(q) by adaptive quadrature on the steepest-descent line."""
    quad, lin = _chirp_coefficients(a, b)
    saddle = -lin / (2.0 * quad)
    direction = np.exp(1j * math.copysign(math.pi / 4.0, quad))
    half = math.sqrt(_ENVELOPE_CUT / abs(quad))

    def integrand(t):
        q = saddle + t * direction
        return phi_line_conj(a, q) * phi_line(b, q) * direction

    val, err = integrate.quad(integrand, -half, half, complex_func=True,
                              epsabs=0.0, epsrel=epsrel, limit=200)
    if not abs(err) <= max(1e-10 * abs(val), 1e-300):
        raise QuadratureNoConvergence(f"error estimate {err:.2e} for value {abs(val):.3e}")
    return complex(val)


def _gl_panels(f, lo, hi, order=32, tol=1e-12, max_panels=1 << 16, edge_map=None):
    """Composite Gauss-Legendre with panel doubling until the estimate settles.

    Panel edges are uniform in [lo, hi], or ``edge_map`` of uniform points when
    given (the integration variable is still the one ``f`` takes).
    """
    x, w = np.polynomial.legendre.leggauss(order)
    panels = 16
    prev = None
    while panels <= max_panels:
        edges = np.linspace(lo, hi, panels + 1)
        if edge_map is not None:
            edges = edge_map(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        val = np.sum(weights * f(nodes))
        if prev is not None and abs(val - prev) <= tol * max(abs(val), 1e-300):
            return complex(val)
        prev = val
        panels *= 2
    raise QuadratureNoConvergence("composite Gauss-Legendre did not settle")


def windowed_q_overlap(a: StereoMubLabel, b: StereoMubLabel, q_cut: float) -> complex:
    """int_{-q_cut}^{q_cut} dq conj(Phi_a) Phi_b on the real axis."""
    return _gl_panels(lambda q: phi_line_conj(a, q) * phi_line(b, q), -q_cut, q_cut)


def _tail_series(h, s1, s2, terms=8):
    # asymptotic series of int e^S beyond a point: h * sum (2k-1)!! s2^k / s1^(2k+1)
    total = 0.0
    coef = 1.0
    prev_mag = math.inf
    for k in range(terms):
        term = coef * s2 ** k / s1 ** (2 * k + 1)
        if abs(term) > prev_mag:
            break
        total += term
        prev_mag = abs(term)
        coef *= 2 * k + 1
    return h * total


def overlap_stereo_phi(a: StereoMubLabel, b: StereoMubLabel, window: PoleWindow | float = 0.05,
                       tail_correction: bool = True) -> complex:
    """(1/2pi) int dphi conj(Gamma_a) Gamma_b over the circle minus the pole window.

    With ``tail_correction`` the contribution of |q| > tan((pi - eps)/2), which the
    window removes, is restored from the asymptotic expansion of the chirp tails.
    """
    if not isinstance(window, PoleWindow):
        window = PoleWindow(window)
    eps = window.epsilon

    def integrand(phi):
        return np.conj(gamma_wavefunction(a, phi)) * gamma_wavefunction(b, phi) / (2.0 * math.pi)

    # the chirp runs fastest in phi next to the window; panels uniform in q = tan(phi/2)
    # follow it, since its frequency in q grows only linearly
    Q = window.q_cut
    val = _gl_panels(integrand, -Q, Q, edge_map=lambda u: 2.0 * np.arctan(u))
    if not tail_correction:
        return val
    quad, lin = _chirp_coefficients(a, b)
    s2 = 2j * quad
    upper = phi_line_conj(a, Q) * phi_line(b, Q)
    lower = phi_line_conj(a, -Q) * phi_line(b, -Q)
    val += -_tail_series(upper, 1j * (2.0 * quad * Q + lin), s2)
    val += _tail_series(lower, 1j * (-2.0 * quad * Q + lin), s2)
    return complex(val)


def smeared_overlap(theta: float, y1: float, center: float, width: float) -> complex:
    """int dy2 g(y2) <theta;y1|theta;y2> for a normalized Gaussian g(center, width).

    Orthogonality within one basis is a delta function, so the result must
    reproduce g(y1).  Both the inner y2-integral and the outer q-integral use
    composite Gauss-Legendre; the q-range follows the Gaussian envelope of the
    smeared state.
    """
    s = abs(math.sin(theta))
    # q^2 terms cancel within one basis; the integrand envelope is the Fourier
    # transform of a chirped Gaussian, of width s * sqrt(1/width^2 + width^2 cot^2)
    spread = s * math.sqrt(1.0 / width ** 2 + (width * math.cos(theta) / s) ** 2)
    q_half = abs(center * math.cos(theta)) + 8.0 * spread

    # inner rule: y2 in center +- 9 width, resolving exp(i q y2 / sin(theta)) up to q_half
    oscillations = q_half / s * 18.0 * width / (2.0 * math.pi)
    panels = max(32, int(math.ceil(2.0 * oscillations)))
    x, w = np.polynomial.legendre.leggauss(16)
    edges = np.linspace(center - 9.0 * width, center + 9.0 * width, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    y2 = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    gw = (half[:, None] * w[None, :]).ravel()
    gw = gw * np.exp(-0.5 * ((y2 - center) / width) ** 2) / (math.sqrt(2.0 * math.pi) * width)

    sn, cn = math.sin(theta), math.cos(theta)
    norm2 = 1.0 / (math.pi * abs(1.0 - np.exp(2j * theta)))

    def integrand(q):
        q = np.asarray(q)
        # conj(Phi_{y1}) Phi_{y2}: the q^2 phases cancel exactly within one basis
        phase = np.exp(1j * np.outer(q, y2 - y1) / sn - 0.5j * (y2 ** 2 - y1 ** 2) * cn / sn)
        return norm2 * (phase @ gw)

    return _gl_panels(integrand, -q_half, q_half, tol=1e-11)
