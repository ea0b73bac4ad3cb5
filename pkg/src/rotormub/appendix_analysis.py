"""Line-from-rotor and rotor-from-line constructions through q = tan(phi/2).

The first direction works: Q and P assembled from the Weyl pair (E, L) are a
valid Heisenberg pair on states that avoid phi = pi.  The reverse direction does
not: the operator

    L = (1/2) sqrt(1 + Q^2) P sqrt(1 + Q^2)

is hermitian but has every real number as an eigenvalue, its eigenvectors are
not orthogonal, and the shift it should generate has no uniform alpha -> 0
limit.  The functions below exhibit each of these facts numerically.

Conventions: <phi|l> = exp(i l phi); bras obey <phi|E = exp(i phi) <phi| and
<phi|Q = tan(phi/2) <phi|.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev
from scipy import fft, special

from .errors import IllConditioned, InterpolationLoss
from .rotor_hilbert import AngularGrid, PhiWaveFunction

__all__ = [
    "CyclicTruncation",
    "QFromE",
    "q_from_E",
    "q_multiplication_check",
    "e_round_trip",
    "p_from_EL",
    "qp_commutator_check",
    "plane_wave_check",
    "ShiftKind",
    "OrderedShift",
    "shift_eiaP",
    "shift_eiaP_closed_form",
    "pole_weight",
    "LambdaKet",
    "nearest_integer",
    "lambda_ket_phi",
    "lambda_ket_q",
    "pathological_L",
    "lambda_eigenresidual",
    "shift_trick_check",
    "lambda_overlap",
    "overcompleteness_check",
    "shift_eialphaL",
    "generator_limit_diagnostic",
    "z_commutator_check",
    "QGrid",
]


# ---------------------------------------------------------------- (E, L) -> (Q, P)

@dataclass(frozen=True)
class CyclicTruncation:
    """l = -G/2 ... G/2 - 1 with E closed cyclically, so that E is exactly unitary.

    The eigenbras of E are then the grid angles phi_k = -pi + 2 pi k / G.
    """

    size: int

    def __post_init__(self):
        if self.size < 4 or self.size % 2:
            raise ValueError("cyclic truncation needs an even size >= 4")

    @property
    def l_values(self) -> np.ndarray:
        return np.arange(-self.size // 2, self.size // 2)

    @property
    def grid(self) -> AngularGrid:
        return AngularGrid(self.size)

    def shift(self) -> np.ndarray:
        """E|l> = |l+1>, with the top l wrapping to the bottom."""
        return np.roll(np.eye(self.size), 1, axis=0).astype(complex)

    def angular_momentum(self) -> np.ndarray:
        return np.diag(self.l_values.astype(complex))

    def bra_vectors(self) -> np.ndarray:
        """Row k holds <phi_k|l> / sqrt(G), an orthonormal set of E eigenbras."""
        phi = self.grid.points
        return np.exp(1j * np.outer(phi, self.l_values)) / math.sqrt(self.size)

    def coefficients(self, func) -> np.ndarray:
        """<l|psi> for psi(phi) sampled on the grid (exact for band-limited psi)."""
        phi = self.grid.points
        return np.exp(-1j * np.outer(self.l_values, phi)) @ func(phi) / self.size


@dataclass(frozen=True, eq=False)
class QFromE:
    """Q = i (1 - E)(1 + E)^+ and the directions dropped by the pseudo-inverse."""

    trunc: CyclicTruncation
    matrix: np.ndarray
    cutoff: float
    affected: np.ndarray  # columns span the regularized subspace
    affected_phi: np.ndarray


def q_from_E(trunc: CyclicTruncation, cutoff: float = 1e-8) -> QFromE:
    """Position operator from the shift, with (1 + E)^{-1} replaced by a pseudo-inverse.

    Singular values of 1 + E at or below ``cutoff`` (the grid angle phi = pi) are
    dropped; the corresponding subspace is returned so callers can see it.
    """
    E = trunc.shift()
    one = np.eye(trunc.size)
    M = one + E
    u, s, vh = np.linalg.svd(M)
    keep = s > cutoff
    inv = (vh[keep].conj().T / s[keep]) @ u[:, keep].conj().T
    Q = 1j * (one - E) @ inv
    Q = 0.5 * (Q + Q.conj().T)
    affected = vh[~keep].conj().T
    bras = trunc.bra_vectors()
    weight = np.sum(np.abs(bras.conj() @ affected) ** 2, axis=1) if affected.size else np.zeros(trunc.size)
    return QFromE(trunc, Q, cutoff, affected, trunc.grid.points[weight > 0.5])


def q_multiplication_check(qe: QFromE, phis) -> np.ndarray:
    """|<phi|Q - tan(phi/2)<phi|| for grid angles ``phis``.

    Raises :class:`IllConditioned` for an angle inside the regularized subspace.
    """
    grid = qe.trunc.grid
    bras = qe.trunc.bra_vectors()
    out = []
    for phi in np.atleast_1d(phis):
        k = int(round((phi + math.pi) / grid.spacing)) % grid.size
        if np.any(np.isclose(qe.affected_phi, grid.points[k], atol=1e-12)):
            raise IllConditioned(f"phi = {grid.points[k]:.6g} lies on the pole of (1 + E)^-1")
        bra = bras[k]
        out.append(np.linalg.norm(bra @ qe.matrix - math.tan(0.5 * grid.points[k]) * bra))
    return np.asarray(out)


def e_round_trip(qe: QFromE) -> float:
    """max |E - (1 + iQ)(1 - iQ)^{-1}| on the subspace kept by the pseudo-inverse."""
    one = np.eye(qe.trunc.size)
    E = qe.trunc.shift()
    back = (one + 1j * qe.matrix) @ np.linalg.inv(one - 1j * qe.matrix)
    proj = one - qe.affected @ qe.affected.conj().T
    return float(np.max(np.abs(proj @ (back - E) @ proj)))


def _abs_op(A: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(A.conj().T @ A)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def p_from_EL(trunc: CyclicTruncation) -> np.ndarray:
    """P = (1/2) |1 + E| L |1 + E| with |A| = sqrt(A^dag A)."""
    mod = _abs_op(np.eye(trunc.size) + trunc.shift())
    return 0.5 * mod @ trunc.angular_momentum() @ mod


def qp_commutator_check(trunc: CyclicTruncation, center: float = 0.0, width: float = 0.4) -> float:
    """||([Q, P] - i) v|| / ||v|| for a Gaussian angle profile v that avoids phi = pi."""
    Q = q_from_E(trunc).matrix
    P = p_from_EL(trunc)
    v = trunc.coefficients(lambda phi: np.exp(-0.5 * ((phi - center) / width) ** 2))
    r = Q @ (P @ v) - P @ (Q @ v) - 1j * v
    return float(np.linalg.norm(r) / np.linalg.norm(v))


def plane_wave_check(p: float, q=None, nodes: int = 96) -> tuple[float, float]:
    """Momentum eigenfunctions in the angle representation.

    With sqrt(1 + cos phi) <phi|p> = exp(i p tan(phi/2)), returns the deviations of

    * <q|p> = <phi = 2 arctan q|p> / sqrt(pi (1 + q^2)) from exp(i p q)/sqrt(2 pi), and
    * P <phi|p> from p <phi|p>, P acting as 2 c (-i d/dphi) c with c = cos(phi/2),
      differentiated spectrally on phi in [-2, 2].
    """
    q = np.linspace(-5.0, 5.0, 41) if q is None else np.asarray(q, dtype=float)

    def wave(phi):
        return np.exp(1j * p * np.tan(0.5 * phi)) / np.sqrt(1.0 + np.cos(phi))

    phi = 2.0 * np.arctan(q)
    from_phi = wave(phi) / np.sqrt(math.pi * (1.0 + q * q))
    dev_q = float(np.max(np.abs(from_phi - np.exp(1j * p * q) / math.sqrt(2.0 * math.pi))))

    x = chebyshev.chebpts2(nodes) * 2.0
    c = np.cos(0.5 * x)
    d = _cheb_derivative(c * wave(x), x, 2.0)
    dev_eig = float(np.max(np.abs(2.0 * c * (-1j) * d - p * wave(x))))
    return dev_q, dev_eig


# ---------------------------------------------------------------- ordered shifts

class ShiftKind(enum.Enum):
    EIAP_IN_EL = "exp(iaP), E;L-ordered"
    EIALPHAL_IN_QP = "exp(i alpha L), Q;P-ordered"


def pole_weight(wf: PhiWaveFunction, window: float = 0.5) -> float:
    """Fraction of the grid norm within ``window`` of phi = pi."""
    phi = wf.grid.points
    near = np.abs(np.remainder(phi, 2.0 * math.pi) - math.pi) < window
    total = np.sum(np.abs(wf.samples) ** 2)
    return float(np.sum(np.abs(wf.samples[near]) ** 2) / total) if total else 0.0


def _grid_coeffs(wf: PhiWaveFunction):
    G = wf.grid.size
    l = np.arange(-(G // 2), G - G // 2)
    c = np.exp(-1j * np.outer(l, wf.grid.points)) @ wf.samples / G
    return l, c


def _check_pole(wf, window, loss_tol):
    w = pole_weight(wf, window)
    if w > loss_tol:
        raise InterpolationLoss(f"{w:.2e} of the norm lies within {window} of phi = pi")


def shift_eiaP(a: float, wf: PhiWaveFunction, window: float = 0.5,
               loss_tol: float = 1e-10) -> PhiWaveFunction:
    """<phi|exp(iaP)|psi> = sqrt(dphi'/dphi) psi(phi'), phi' = 2 arctan(tan(phi/2) + a).

    psi is resampled at phi' by trigonometric interpolation from its grid
    coefficients.  Raises :class:`InterpolationLoss` when more than ``loss_tol``
    of the norm sits within ``window`` of the pole, where the map compresses the
    wave function beyond the grid resolution.
    """
    _check_pole(wf, window, loss_tol)
    phi = wf.grid.points
    half = 0.5 * phi
    phi_new = 2.0 * np.arctan2(np.sin(half) + a * np.cos(half), np.cos(half))
    jac = 1.0 / (1.0 + a * np.sin(phi) + a * a * np.cos(half) ** 2)
    l, c = _grid_coeffs(wf)
    resampled = np.exp(1j * np.outer(phi_new, l)) @ c
    return PhiWaveFunction(wf.grid, np.sqrt(jac) * resampled)


def shift_eiaP_closed_form(a: float, wf: PhiWaveFunction, window: float = 0.5,
                           loss_tol: float = 1e-10) -> PhiWaveFunction:
    """E;L-ordered form |1 - i(a/2)(1+E)|^{-1} ((1 + i(a/2)(1+E^dag)) / (1 - i(a/2)(1+E)))^L.

    With E to the left, each <phi| sees E -> exp(i phi) and L acts on the
    coefficients, so <phi|...|psi> = |den|^{-1} sum_l c_l (exp(i phi) z)^l.
    """
    _check_pole(wf, window, loss_tol)
    e = np.exp(1j * wf.grid.points)
    den = 1.0 - 0.5j * a * (1.0 + e)
    z = (1.0 + 0.5j * a * (1.0 + e.conj())) / den
    l, c = _grid_coeffs(wf)
    vals = np.power.outer(e * z, l) @ c
    return PhiWaveFunction(wf.grid, vals / np.abs(den))


def shift_eialphaL(alpha: float, func):
    """<q|exp(i alpha L)|psi> = psi(q') / |cos(alpha/2) - q sin(alpha/2)|, q' the Moebius image.

    ``func`` is a callable psi(q); a callable is returned.
    """
    ca, sa = math.cos(0.5 * alpha), math.sin(0.5 * alpha)

    def shifted(q):
        q = np.asarray(q, dtype=float)
        den = ca - q * sa
        with np.errstate(divide="ignore", invalid="ignore"):
            qp = (q * ca + sa) / den
            out = func(qp) / np.abs(den)
        return out

    return shifted


@dataclass(frozen=True)
class OrderedShift:
    """One of the two ordered unitary shifts with its parameter."""

    kind: ShiftKind
    parameter: float

    def apply(self, state):
        if self.kind is ShiftKind.EIAP_IN_EL:
            return shift_eiaP_closed_form(self.parameter, state)
        return shift_eialphaL(self.parameter, state)

    def compose(self, other: "OrderedShift") -> "OrderedShift":
        if other.kind is not self.kind:
            raise ValueError("cannot compose shifts of different kinds")
        return OrderedShift(self.kind, self.parameter + other.parameter)


@functools.lru_cache(maxsize=8)
def _leggauss(nodes: int):
    # scipy's asymptotic roots are much faster than numpy's companion matrix at large orders
    return special.roots_legendre(nodes)


def _q_norm(func, nodes: int = 4000) -> float:
    # int dq |psi|^2 via q = tan(phi/2), which maps the line onto (-pi, pi)
    x, w = _leggauss(nodes)
    phi = math.pi * x
    q = np.tan(0.5 * phi)
    jac = 0.5 / np.cos(0.5 * phi) ** 2
    return float(math.sqrt(math.pi * np.sum(w * jac * np.abs(func(q)) ** 2)))


def generator_limit_diagnostic(alphas=(1e-1, 1e-2, 1e-3, 1e-4), func=None):
    """Norms of (exp(i alpha L) - 1) psi / (i alpha) for a state with 1/q decay.

    The default psi(q) = q / (1 + q^2) has opposite limits at q -> +-inf, i.e.
    a jump at phi = pi, so the quotient grows like alpha^{-1/2} instead of
    settling: no generator acts on it.  Returns rows (alpha, norm).
    """
    func = func or (lambda q: q / (1.0 + q * q))
    rows = []
    for a in alphas:
        shifted = shift_eialphaL(a, func)
        rows.append((float(a), _q_norm(lambda q: (shifted(q) - func(q)) / (1j * a))))
    return rows


# ---------------------------------------------------------------- the pathological L

@dataclass(frozen=True)
class LambdaKet:
    """Eigenket of the line-built L with real eigenvalue ``lam``; c' = 1/sqrt(pi) by default."""

    lam: float
    norm_const: float = 1.0 / math.sqrt(math.pi)

    def q(self, q):
        return lambda_ket_q(self.lam, q, self.norm_const)

    def phi(self, phi):
        return lambda_ket_phi(self.lam, phi)


def nearest_integer(x):
    """Nearest integer, halves rounded away from zero."""
    x = np.asarray(x, dtype=float)
    out = np.sign(x) * np.floor(np.abs(x) + 0.5)
    return out if out.ndim else float(out)


def lambda_ket_phi(lam: float, phi):
    """<phi|lambda> = exp(i lambda (phi - 2 pi [phi / 2 pi])) with [.] the nearest integer."""
    phi = np.asarray(phi, dtype=float)
    return np.exp(1j * lam * (phi - 2.0 * math.pi * nearest_integer(phi / (2.0 * math.pi))))


def lambda_ket_q(lam: float, q, norm_const: float = 1.0 / math.sqrt(math.pi)):
    """<q|lambda> = c' (1 + q^2)^{-1/2} ((1 + iq)/(1 - iq))^lambda, on the principal branch."""
    q = np.asarray(q, dtype=float)
    # (1 + iq)/(1 - iq) = exp(2 i arctan q) with 2 arctan q in (-pi, pi)
    return norm_const * np.exp(2j * lam * np.arctan(q)) / np.sqrt(1.0 + q * q)


def _cheb_derivative(values, x, half_width):
    """Derivative of the Chebyshev interpolant through ``values`` at x = chebpts2 * half_width."""
    # chebpts2 is ascending; the type-I DCT wants cos(pi j / (n-1)), i.e. descending
    f = np.asarray(values)[::-1]
    n = f.size
    coef = fft.dct(f.real, type=1) + 1j * fft.dct(f.imag, type=1)
    coef /= n - 1
    coef[0] *= 0.5
    coef[-1] *= 0.5
    return chebyshev.chebval(x / half_width, chebyshev.chebder(coef)) / half_width


@dataclass(frozen=True)
class QGrid:
    """Periodic q-grid on [-width/2, width/2) for Fourier spectral differentiation."""

    width: float = 40.0
    size: int = 4096

    @property
    def points(self) -> np.ndarray:
        return -0.5 * self.width + self.width * np.arange(self.size) / self.size

    def derivative(self, values, order: int = 1) -> np.ndarray:
        k = 2.0 * math.pi * np.fft.fftfreq(self.size, d=self.width / self.size)
        return np.fft.ifft((1j * k) ** order * np.fft.fft(values))

    def momentum(self, values) -> np.ndarray:
        return -1j * self.derivative(values)


def pathological_L(values, q, derivative):
    """L psi = (1/2) s (-i d/dq)(s psi) with s = sqrt(1 + q^2).

    ``derivative(f)`` must differentiate samples of f on the points ``q``.
    """
    s = np.sqrt(1.0 + np.asarray(q) ** 2)
    return 0.5 * s * (-1j) * derivative(s * values)


def lambda_eigenresidual(lam: float, half_width: float = 20.0, nodes: int = 769) -> float:
    """||(L - lambda) <q|lambda>|| / ||<q|lambda>|| at Chebyshev points on [-20, 20].

    The eigenfunctions do not decay faster than 1/q, so a periodic Fourier grid
    would see a jump at its boundary; Chebyshev differentiation does not.  The
    branch points of sqrt(1 + q^2) at q = +-i sit close to the interval, hence
    the large node count.
    """
    q = chebyshev.chebpts2(nodes) * half_width
    psi = lambda_ket_q(lam, q)
    Lpsi = pathological_L(psi, q, lambda f: _cheb_derivative(f, q, half_width))
    return float(np.linalg.norm(Lpsi - lam * psi) / np.linalg.norm(psi))


def _test_functions():
    return [
        lambda q: np.exp(-0.5 * q * q),
        lambda q: q * np.exp(-0.5 * q * q),
        lambda q: np.exp(-(q - 1.0) ** 2),
        lambda q: (1.0 + q * q) * np.exp(-0.5 * q * q),
        lambda q: np.exp(-0.25 * (q + 0.5) ** 2 + 0.7j * q),
    ]


def shift_trick_check(x: float = 0.7, grid: QGrid | None = None) -> float:
    """With U = exp(2ix arctan Q), U^dag P U = P + 2x/(1+Q^2), so the conjugated L equals L + x.

    Returns the max relative deviation over Gaussian-type test vectors.
    """
    grid = grid or QGrid()
    q = grid.points
    U = np.exp(2j * x * np.arctan(q))
    s = np.sqrt(1.0 + q * q)
    worst = 0.0
    for f in _test_functions():
        psi = f(q)
        # 1/2 s U^dag P U s psi
        lhs = 0.5 * s * U.conj() * grid.momentum(U * s * psi)
        rhs = pathological_L(psi, q, grid.derivative) + x * psi
        worst = max(worst, float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs)))
    return worst


def lambda_overlap(lam: float, lam2: float, nodes: int = 96) -> float:
    """<lambda|lambda'> = (1/2pi) int_{-pi}^{pi} conj(<phi|lambda>) <phi|lambda'> dphi by Gauss-Legendre.

    The imaginary part integrates to zero, so the real value is returned.
    """
    x, w = _leggauss(nodes)
    phi = math.pi * x
    val = 0.5 * np.sum(w * np.conj(lambda_ket_phi(lam, phi)) * lambda_ket_phi(lam2, phi))
    return float(val.real)


def overcompleteness_check(lam0: float, l_max_list=(16, 32, 64), width: float = 0.5,
                           nodes: int = 1024):
    """Residual of sum_{|l| <= l_max} |l + lam0><l + lam0| applied to a Gaussian angle state.

    Returns rows (l_max, ||(Pi - 1) psi|| / ||psi||) evaluated with Gauss-Legendre on (-pi, pi).
    """
    if not 0.0 <= lam0 < 1.0:
        raise ValueError("lam0 must lie in [0, 1)")
    x, w = _leggauss(nodes)
    phi = math.pi * x
    wt = 0.5 * w  # (1/2pi) dphi
    psi = np.exp(-0.5 * (phi / width) ** 2)
    norm = math.sqrt(np.sum(wt * np.abs(psi) ** 2))
    rows = []
    for l_max in l_max_list:
        lam = np.arange(-l_max, l_max + 1) + lam0
        kets = lambda_ket_phi_matrix(lam, phi)
        amps = kets.conj().T @ (wt * psi)
        resid = kets @ amps - psi
        rows.append((int(l_max), float(math.sqrt(np.sum(wt * np.abs(resid) ** 2)) / norm)))
    return rows


def lambda_ket_phi_matrix(lams, phi) -> np.ndarray:
    """Columns <phi|lambda> for each lambda in ``lams``."""
    return np.column_stack([lambda_ket_phi(l, phi) for l in lams])


def z_commutator_check(grid: QGrid | None = None, funcs=None) -> float:
    """Max relative deviation between L psi and -i [Q/2 + Q^3/6, P^2/2] psi.

    Both sides are applied with Fourier spectral differentiation on ``grid``.
    """
    grid = grid or QGrid()
    q = grid.points
    z = 0.5 * q + q ** 3 / 6.0
    worst = 0.0
    for f in funcs or _test_functions():
        psi = f(q)
        lhs = pathological_L(psi, q, grid.derivative)

        def half_p2(v):
            return -0.5 * grid.derivative(v, 2)

        rhs = -1j * (z * half_p2(psi) - half_p2(z * psi))
        worst = max(worst, float(np.linalg.norm(lhs - rhs) / np.linalg.norm(lhs)))
    return worst
