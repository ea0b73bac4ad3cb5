"""Rotor states in the truncated angular-momentum basis and on a periodic angle grid.

Conventions: <phi|l> = exp(i l phi), angles live in [-pi, pi) and the grid is
anchored at -pi, so the stereographic pole phi = pi sits on the grid boundary.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, TruncationMismatch

__all__ = [
    "LTruncation",
    "RotorState",
    "AngularGrid",
    "PhiWaveFunction",
    "OutOfBandWarning",
    "l_to_phi",
    "phi_to_l",
    "out_of_band_residual",
    "inner_product",
    "grid_inner_product",
    "third_basis_divergence_demo",
]


class OutOfBandWarning(UserWarning):
    """Discarded Fourier coefficients exceed the band-limit tolerance."""


@dataclass(frozen=True)
class LTruncation:
    l_max: int

    def __post_init__(self):
        if self.l_max < 1:
            raise ValueError("l_max must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.l_max + 1

    @property
    def l_values(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)


@dataclass(frozen=True, eq=False)
class RotorState:
    """Amplitudes <l|psi> for l = -l_max ... l_max."""

    trunc: LTruncation
    coeffs: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.trunc.dim,):
            raise ValueError(f"expected {self.trunc.dim} coefficients, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if self.normalized and abs(np.vdot(c, c).real - 1.0) >= 1e-12:
            raise ValueError("state marked normalized has norm^2 != 1")
        object.__setattr__(self, "coeffs", c)

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def coeff(self, l: int) -> complex:
        return complex(self.coeffs[l + self.trunc.l_max])

    @classmethod
    def basis(cls, l: int, l_max: int) -> "RotorState":
        trunc = LTruncation(l_max)
        if abs(l) > l_max:
            raise ValueError(f"|l| = {abs(l)} outside truncation {l_max}")
        c = np.zeros(trunc.dim, dtype=complex)
        c[l + l_max] = 1.0
        return cls(trunc, c, normalized=True)

    @classmethod
    def random(cls, l_max: int, rng=None) -> "RotorState":
        rng = np.random.default_rng(rng)
        trunc = LTruncation(l_max)
        c = rng.normal(size=trunc.dim) + 1j * rng.normal(size=trunc.dim)
        c /= np.linalg.norm(c)
        return cls(trunc, c, normalized=True)

    def normalize(self) -> "RotorState":
        return RotorState(self.trunc, self.coeffs / math.sqrt(self.norm2), normalized=True)


@dataclass(frozen=True)
class AngularGrid:
    """Uniform grid phi_k = -pi + 2 pi k / size."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("grid size must be positive")

    @property
    def points(self) -> np.ndarray:
        return -math.pi + 2.0 * math.pi * np.arange(self.size) / self.size

    @property
    def spacing(self) -> float:
        return 2.0 * math.pi / self.size

    def check_band(self, l_max: int):
        if self.size < 2 * l_max + 1:
            raise AliasingError(
                f"grid of {self.size} points aliases |l| <= {l_max}; need >= {2 * l_max + 1}"
            )


@dataclass(frozen=True, eq=False)
class PhiWaveFunction:
    grid: AngularGrid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != (self.grid.size,):
            raise ValueError("sample count must equal grid size")
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_function(cls, func, grid: AngularGrid) -> "PhiWaveFunction":
        return cls(grid, func(grid.points))


def _sign_alternation(l):
    # exp(i l phi_k) = (-1)^l exp(2 pi i l k / G) for the grid anchored at -pi
    return np.where(np.asarray(l) % 2 == 0, 1.0, -1.0)


def l_to_phi(state: RotorState, grid: AngularGrid) -> PhiWaveFunction:
    """psi(phi_k) = sum_l c_l exp(i l phi_k), by FFT."""
    l_max = state.trunc.l_max
    grid.check_band(l_max)
    l = state.trunc.l_values
    buf = np.zeros(grid.size, dtype=complex)
    buf[l % grid.size] = state.coeffs * _sign_alternation(l)
    return PhiWaveFunction(grid, np.fft.ifft(buf) * grid.size)


def _all_coeffs(wf: PhiWaveFunction):
    G = wf.grid.size
    spectrum = np.fft.fft(wf.samples) / G
    m = np.arange(G)
    l_all = np.where(m < (G + 1) // 2, m, m - G)
    return l_all, spectrum * _sign_alternation(l_all)


def out_of_band_residual(wf: PhiWaveFunction, trunc: LTruncation) -> float:
    """Norm of the coefficients with |l| > l_max relative to the total norm."""
    l_all, c_all = _all_coeffs(wf)
    total = np.linalg.norm(c_all)
    if total == 0.0:
        return 0.0
    return float(np.linalg.norm(c_all[np.abs(l_all) > trunc.l_max]) / total)


def phi_to_l(wf: PhiWaveFunction, trunc: LTruncation, band_tol: float = 1e-10) -> RotorState:
    """c_l = (1/G) sum_k psi(phi_k) exp(-i l phi_k) for |l| <= l_max.

    Emits :class:`OutOfBandWarning` when the discarded coefficients exceed
    ``band_tol`` of the norm; the truncated state is returned regardless.
    """
    G = wf.grid.size
    wf.grid.check_band(trunc.l_max)
    spectrum = np.fft.fft(wf.samples) / G
    l = trunc.l_values
    coeffs = spectrum[l % G] * _sign_alternation(l)
    resid = out_of_band_residual(wf, trunc)
    if resid > band_tol:
        warnings.warn(f"out-of-band residual {resid:.3e} exceeds {band_tol:.1e}", OutOfBandWarning,
                      stacklevel=2)
    return RotorState(trunc, coeffs)


def inner_product(a: RotorState, b: RotorState) -> complex:
    """<a|b> = sum_l conj(a_l) b_l."""
    if a.trunc != b.trunc:
        raise TruncationMismatch(f"{a.trunc} vs {b.trunc}")
    return complex(np.vdot(a.coeffs, b.coeffs))


def grid_inner_product(a: PhiWaveFunction, b: PhiWaveFunction) -> complex:
    """(1/G) sum_k conj(psi_a) psi_b, the discretized (1/2pi) integral over phi."""
    if a.grid != b.grid:
        raise TruncationMismatch("wave functions sampled on different grids")
    return complex(np.vdot(a.samples, b.samples) / a.grid.size)


def third_basis_divergence_demo(l_max_list, mu: float = 1.0):
    """<x|x> = sum_{|l| <= l_max} mu for a ket with constant |<l|x>|^2 = mu.

    Returns a list of ``(l_max, norm2)`` rows; the sum grows linearly without bound.
    """
    rows = []
    for l_max in l_max_list:
        l_max = int(l_max)
        rows.append((l_max, float(np.sum(np.full(2 * l_max + 1, mu)))))
    return rows
