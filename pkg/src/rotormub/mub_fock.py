"""Second continuous MUB set for the rotor, built on the Fock-mapped Heisenberg pair.

The basis element |theta;y> = exp(i theta N)|q=y> has l-basis amplitudes
exp(i n theta) f_n(y) with n = n_of_l(l).  Its angle wave function is a
Fourier series that converges only conditionally, so every series here is
evaluated as an Abel limit: terms are damped by r^n, summed for a schedule of
radii r < 1, and extrapolated polynomially in (1 - r) to r = 1.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAngles, NoConvergence
from .fock_rotor_map import (
    FockTruncation,
    TruncatedOperator,
    build_QP_from_EL,
    build_number,
    interior_deviation,
    l_of_n,
    n_of_l,
)
from .rotor_hilbert import AngularGrid
from .special_functions import LineBasisLabel, hermite_functions, mehler_kernel

__all__ = [
    "FockMubLabel",
    "AbelParams",
    "richardson",
    "coeff_l",
    "psi_series",
    "psi_from_coefficients",
    "reduce_to_theta0",
    "chi_decompose",
    "chi_on_grid",
    "psi_on_grid",
    "overlap_fock",
    "overlap_series",
    "y_theta_matrix",
    "y_theta_conjugation_deviation",
    "eigenvector_residual",
    "fit_pole_exponent",
    "windowed_grid",
    "figure_dataset",
    "FIGURES",
]

FockMubLabel = LineBasisLabel


@dataclass(frozen=True)
class AbelParams:
    """Radius schedule for Abel summation.

    ``n_terms`` of ``None`` picks ceil(30 / (1 - r)) terms per radius, which puts
    the geometric tail r^n below e^-30.  ``tol`` bounds the disagreement between
    the full extrapolation and the one that drops the outermost radius.  That
    spread overstates the actual error by orders of magnitude away from the pole
    (about 1e-7 against a true 1e-11 at phi = 0, and up to 1e-3 at the edge of
    the default pole window), hence the loose default.
    """

    radii: tuple = (0.99, 0.999, 0.9999)
    n_terms: int | None = None
    extrapolate: bool = True
    tol: float = 1e-2

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii or any(not 0.0 < r < 1.0 for r in radii):
            raise ValueError("Abel radii must lie in (0, 1)")
        if list(radii) != sorted(radii):
            raise ValueError("Abel radii must be ascending")
        object.__setattr__(self, "radii", radii)

    def terms(self, r: float) -> int:
        if self.n_terms is not None:
            return int(self.n_terms)
        return int(math.ceil(30.0 / (1.0 - r)))

    @property
    def max_terms(self) -> int:
        return max(self.terms(r) for r in self.radii)


def richardson(rhos, values):
    """Polynomial extrapolation of values(rho) to rho = 0 through all points.

    Returns ``(estimate, error)`` where ``error`` compares against the
    extrapolation without the point farthest from 0.
    """
    rhos = np.asarray(rhos, dtype=float)
    values = np.asarray(values)
    order = np.argsort(rhos)
    rhos, values = rhos[order], values[order]

    def lagrange_at_zero(rs, vs):
        total = 0.0
        for i, ri in enumerate(rs):
            wgt = 1.0
            for j, rj in enumerate(rs):
                if j != i:
                    wgt *= rj / (rj - ri)
            total = total + wgt * vs[i]
        return total

    full = lagrange_at_zero(rhos, values)
    if len(rhos) == 1:
        return full, np.full(np.shape(full), np.inf)
    reduced = lagrange_at_zero(rhos[:-1], values[:-1])
    return full, np.abs(full - reduced)


@functools.lru_cache(maxsize=32)
def _hermite_sequence(y: float, n_max: int) -> np.ndarray:
    seq = hermite_functions(n_max, y)
    seq.flags.writeable = False
    return seq


def _hermite_upto(y: float, n_max: int) -> np.ndarray:
    # round the cache key up so nearby requests share one sequence
    size = 4096 * (n_max // 4096 + 1)
    return _hermite_sequence(float(y), size)[: n_max + 1]


def coeff_l(label: FockMubLabel, l) -> complex:
    """<l|theta;y> = exp(i n theta) f_n(y) with n = |4l+1|/2 - 1/2."""
    n = np.asarray(n_of_l(l))
    f = _hermite_upto(label.y, int(np.max(n)))[n]
    out = np.exp(1j * n * label.theta) * f
    return complex(out) if out.ndim == 0 else out


def _abel_combine(values, abel: AbelParams, what: str):
    values = np.asarray(values)
    if not abel.extrapolate:
        return values[-1]
    rhos = [1.0 - r for r in abel.radii]
    est, err = richardson(rhos, values)
    scale = np.maximum(1.0, np.abs(est))
    if np.any(err > abel.tol * scale):
        worst = float(np.max(err / scale))
        raise NoConvergence(f"{what}: Abel extrapolation spread {worst:.2e} > tol {abel.tol:.1e}")
    return est


def _fourier_eval(coeffs, lvals, phi):
    """sum_k coeffs[k] exp(i lvals[k] phi) for each phi (1-D array)."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    out = np.empty(phi.shape, dtype=complex)
    for i, p in enumerate(phi):
        out[i] = np.sum(coeffs * np.exp(1j * lvals * p))
    return out


def _fourier_grid(coeffs, lvals, grid: AngularGrid):
    """Same sum on phi_k = -pi + 2 pi k / G by folding l mod G and one FFT."""
    G = grid.size
    idx = np.mod(lvals, G)
    signed = coeffs * np.where(lvals % 2 == 0, 1.0, -1.0)
    folded = np.bincount(idx, weights=signed.real, minlength=G) + 1j * np.bincount(
        idx, weights=signed.imag, minlength=G)
    return np.fft.ifft(folded) * G


def _mub6_terms(label: FockMubLabel, r: float, n_terms: int):
    """Damped bracket terms of the angle series, split as (even-l part, odd part)."""
    m = n_terms // 2 + 1
    f = _hermite_upto(label.y, 2 * m + 1)
    l = np.arange(m)
    even = f[0:2 * m:2] * r ** (2 * l) * np.exp(2j * l * label.theta)
    odd = (np.exp(-1j * label.theta) * f[1:2 * m:2] * r ** (2 * l + 1)
           * np.exp(2j * (l + 1) * label.theta))
    return l, even, odd


def psi_series(label: FockMubLabel, phi, abel: AbelParams | None = None):
    """psi_y^(theta)(phi) = <phi|theta;y> as an Abel-regularized Fourier series.

        sum_{l>=0} [ e^{il(phi+2theta)} f_{2l}(y)
                     + e^{-i theta} e^{-i(l+1)(phi-2theta)} f_{2l+1}(y) ]
    """
    abel = abel or AbelParams()
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    vals = []
    for r in abel.radii:
        l, even, odd = _mub6_terms(label, r, abel.terms(r))
        lvals = np.concatenate([l, -(l + 1)])
        vals.append(_fourier_eval(np.concatenate([even, odd]), lvals, phi_arr))
    out = _abel_combine(vals, abel, "psi_series")
    return complex(out[0]) if np.ndim(phi) == 0 else out


def psi_from_coefficients(label: FockMubLabel, phi, abel: AbelParams | None = None):
    """The same wave function summed as sum_n <phi|l(n)> <l(n)|theta;y> r^n."""
    abel = abel or AbelParams()
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    vals = []
    for r in abel.radii:
        n = np.arange(abel.terms(r) + 1)
        c = np.exp(1j * n * label.theta) * _hermite_upto(label.y, n[-1]) * r ** n
        vals.append(_fourier_eval(c, l_of_n(n), phi_arr))
    out = _abel_combine(vals, abel, "psi_from_coefficients")
    return complex(out[0]) if np.ndim(phi) == 0 else out


def reduce_to_theta0(label: FockMubLabel, phi, abel: AbelParams | None = None):
    """psi^(theta)_y(phi) from theta = 0 wave functions at shifted angles:

        (1/2)[psi^0_y(phi+2t) + psi^0_{-y}(phi+2t)
              + e^{-it}(psi^0_y(phi-2t) - psi^0_{-y}(phi-2t))]
    """
    abel = abel or AbelParams()
    t = label.theta
    phi = np.asarray(phi, dtype=float)
    plus, minus = FockMubLabel(0.0, label.y), FockMubLabel(0.0, -label.y)
    fwd = phi + 2.0 * t
    bwd = phi - 2.0 * t
    return 0.5 * (psi_series(plus, fwd, abel) + psi_series(minus, fwd, abel)
                  + np.exp(-1j * t) * (psi_series(plus, bwd, abel) - psi_series(minus, bwd, abel)))


def _pole_factors(y, phi):
    phi = np.asarray(phi, dtype=float)
    root = np.sqrt(1.0 + np.cos(phi))
    chirp = np.exp(0.5j * y * y * np.tan(0.5 * phi))
    return root, chirp


def chi_decompose(y: float, phi, abel: AbelParams | None = None):
    """Smooth factors (chi_plus, chi_minus) of the even/odd-in-y parts of psi^(0)_y.

        sum_l e^{il phi} f_{2l}(y)         = e^{+(i/2) y^2 tan(phi/2)} chi_plus  / sqrt(1 + cos phi)
        sum_l e^{-i(l+1) phi} f_{2l+1}(y)  = e^{-(i/2) y^2 tan(phi/2)} chi_minus / sqrt(1 + cos phi)
    """
    abel = abel or AbelParams()
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    ev, od = [], []
    label = FockMubLabel(0.0, y)
    for r in abel.radii:
        l, even, odd = _mub6_terms(label, r, abel.terms(r))
        ev.append(_fourier_eval(even, l, phi_arr))
        od.append(_fourier_eval(odd, -(l + 1), phi_arr))
    even_sum = _abel_combine(ev, abel, "chi_plus")
    odd_sum = _abel_combine(od, abel, "chi_minus")
    root, chirp = _pole_factors(y, phi_arr)
    chi_p = even_sum * root / chirp
    chi_m = odd_sum * root * chirp
    if np.ndim(phi) == 0:
        return complex(chi_p[0]), complex(chi_m[0])
    return chi_p, chi_m


def _grid_parts(y, grid, abel):
    label = FockMubLabel(0.0, y)
    ev, od = [], []
    for r in abel.radii:
        l, even, odd = _mub6_terms(label, r, abel.terms(r))
        ev.append(_fourier_grid(even, l, grid))
        od.append(_fourier_grid(odd, -(l + 1), grid))
    return ev, od


def psi_on_grid(y: float, grid: AngularGrid, abel: AbelParams | None = None,
                mask=None) -> np.ndarray:
    """psi^(0)_y on the full grid; extrapolation is only checked where ``mask`` is True."""
    abel = abel or AbelParams()
    ev, od = _grid_parts(y, grid, abel)
    vals = np.asarray(ev) + np.asarray(od)
    sel = np.ones(grid.size, bool) if mask is None else np.asarray(mask)
    out = np.full(grid.size, np.nan, dtype=complex)
    out[sel] = _abel_combine(vals[:, sel], abel, "psi_on_grid")
    return out


def chi_on_grid(y: float, grid: AngularGrid, abel: AbelParams | None = None, mask=None):
    abel = abel or AbelParams()
    ev, od = _grid_parts(y, grid, abel)
    sel = np.ones(grid.size, bool) if mask is None else np.asarray(mask)
    phi = grid.points[sel]
    root, chirp = _pole_factors(y, phi)
    chi_p = np.full(grid.size, np.nan, dtype=complex)
    chi_m = np.full(grid.size, np.nan, dtype=complex)
    chi_p[sel] = _abel_combine(np.asarray(ev)[:, sel], abel, "chi_plus") * root / chirp
    chi_m[sel] = _abel_combine(np.asarray(od)[:, sel], abel, "chi_minus") * root * chirp
    return chi_p, chi_m


def _delta(a: FockMubLabel, b: FockMubLabel) -> float:
    d = b.theta - a.theta
    if abs(math.sin(d)) < 1e-12:
        raise DegenerateAngles("overlap within one basis is a delta function")
    return d


def overlap_fock(a: FockMubLabel, b: FockMubLabel) -> complex:
    """<theta1;y1|theta2;y2> = sum_n e^{in(theta2-theta1)} f_n(y1) f_n(y2), Mehler-summed."""
    return mehler_kernel(np.exp(1j * _delta(a, b)), a.y, b.y)


def overlap_series(a: FockMubLabel, b: FockMubLabel, abel: AbelParams | None = None,
                   extrapolated: bool = True):
    """The overlap as an Abel-damped truncated series, independent of the closed form.

    With ``extrapolated=False`` the per-radius partial sums are returned.
    """
    abel = abel or AbelParams()
    w = np.exp(1j * _delta(a, b))
    n_top = abel.max_terms
    fa = _hermite_upto(a.y, n_top)
    fb = _hermite_upto(b.y, n_top)
    vals = []
    for r in abel.radii:
        n = np.arange(abel.terms(r) + 1)
        vals.append(np.sum((r * w) ** n * fa[n] * fb[n]))
    if not extrapolated:
        return np.asarray(vals)
    return complex(_abel_combine(vals, abel, "overlap_series"))


def y_theta_matrix(theta: float, trunc: FockTruncation) -> TruncatedOperator:
    """Y_theta = Q cos(theta) + P sin(theta) from the (E, L)-built Heisenberg pair."""
    Q, P = build_QP_from_EL(trunc)
    return Q * math.cos(theta) + P * math.sin(theta)


def y_theta_conjugation_deviation(theta: float, trunc: FockTruncation, margin: int = 2) -> float:
    """Interior deviation of Y_theta from exp(i theta N) Q exp(-i theta N)."""
    Q, _ = build_QP_from_EL(trunc)
    n = build_number(trunc).matrix.diagonal().real
    U = np.exp(1j * theta * n)
    conj = TruncatedOperator(Q.basis, trunc, (U[:, None] * Q.matrix) * U.conj()[None, :])
    return interior_deviation(y_theta_matrix(theta, trunc), conj, margin)


def eigenvector_residual(label: FockMubLabel, trunc: FockTruncation, margin: int = 2) -> float:
    """||(Y_theta - y) v|| / ||v|| on interior rows, v_n = <n|theta;y> truncated."""
    Y = y_theta_matrix(label.theta, trunc)
    n = trunc.n_values
    v = np.exp(1j * n * label.theta) * _hermite_upto(label.y, trunc.n_max)
    resid = Y.apply(v) - label.y * v
    mask = Y.interior_mask(margin)
    return float(np.linalg.norm(resid[mask]) / np.linalg.norm(v))


def fit_pole_exponent(y: float = 0.0, distances=None, abel: AbelParams | None = None) -> float:
    """Slope of log|psi^(0)_y(phi)| against log(1 + cos phi) as phi -> pi.

    ``distances`` are the values of pi - phi used in the fit; by default ten
    log-spaced points in [0.05, 0.3].
    """
    dist = np.geomspace(0.05, 0.3, 10) if distances is None else np.asarray(distances, dtype=float)
    phi = math.pi - dist
    vals = np.abs(psi_series(FockMubLabel(0.0, y), phi, abel))
    return float(np.polyfit(np.log(1.0 + np.cos(phi)), np.log(vals), 1)[0])


def windowed_grid(grid_size: int = 2048, pole_eps: float = 0.05):
    """Grid points and the mask of those at least ``pole_eps`` away from phi = pi."""
    grid = AngularGrid(grid_size)
    phi = grid.points
    mask = np.abs(np.remainder(phi, 2.0 * math.pi) - math.pi) >= pole_eps
    return grid, mask


# figure -> (quantity, y)
FIGURES = {
    "fig3a": ("psi", 0.0),
    "fig3b": ("chi_plus", 0.0),
    "fig4a": ("psi", 0.5),
    "fig4b": ("chi_plus", 0.5),
    "fig4c": ("chi_minus", 0.5),
}


def figure_dataset(which: str, grid_size: int = 2048, pole_eps: float = 0.05,
                   abel: AbelParams | None = None) -> np.ndarray:
    """Columns (phi, Re, Im, |.|) of the requested wave function over the windowed grid."""
    if which not in FIGURES:
        raise ValueError(f"unknown figure {which!r}; choose from {sorted(FIGURES)}")
    quantity, y = FIGURES[which]
    grid, mask = windowed_grid(grid_size, pole_eps)
    if quantity == "psi":
        vals = psi_on_grid(y, grid, abel, mask)
    else:
        chi_p, chi_m = chi_on_grid(y, grid, abel, mask)
        vals = chi_p if quantity == "chi_plus" else chi_m
    phi = grid.points[mask]
    v = vals[mask]
    return np.column_stack([phi, v.real, v.imag, np.abs(v)])
