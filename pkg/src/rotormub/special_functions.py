"""Hermite functions, the Mehler kernel and the complex Gaussian basis of linear motion.

All functions broadcast over array arguments. Hermite functions are produced by
the three-term recurrence on the normalized functions

    f_{n+1}(q) = sqrt(2/(n+1)) q f_n(q) - sqrt(n/(n+1)) f_{n-1}(q),

seeded with f_0(q) = pi^{-1/4} exp(-q^2/2).  The Gaussian factor is carried
as a separate logarithmic scale, so the recurrence neither underflows for
large |q| nor overflows for large n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTheta

__all__ = [
    "LineBasisLabel",
    "hermite_fn",
    "hermite_functions",
    "mehler_kernel",
    "sinc",
    "phi_line",
    "phi_line_conj",
]

PI_QUARTER = math.pi ** -0.25

# rescale the unnormalized recurrence whenever it leaves [2^-600, 2^600]
_BIG = 2.0 ** 600
_LOG_BIG = 600 * math.log(2.0)


@dataclass(frozen=True)
class LineBasisLabel:
    """Label of one element of a rotated position basis: basis angle and element."""

    theta: float
    y: float

    def __post_init__(self):
        if not 0.0 <= self.theta < math.pi:
            raise ValueError(f"theta must lie in [0, pi), got {self.theta!r}")


def hermite_fn(n: int, q):
    """Normalized Hermite function f_n(q).

    Parameters
    ----------
    n : int
        Nonnegative order.
    q : float or array_like
        Position(s).

    Returns
    -------
    float or ndarray
        pi^{-1/4} (2^n n!)^{-1/2} exp(-q^2/2) H_n(q), same shape as ``q``.
    """
    n = int(n)
    if n < 0:
        raise ValueError("Hermite order must be nonnegative")
    q_arr = np.asarray(q, dtype=float)
    g_prev = np.zeros_like(q_arr)
    g = np.full_like(q_arr, PI_QUARTER)
    log_scale = -0.5 * q_arr ** 2
    for k in range(n):
        g_next = math.sqrt(2.0 / (k + 1)) * q_arr * g - math.sqrt(k / (k + 1)) * g_prev
        g_prev, g = g, g_next
        big = np.abs(g) > _BIG
        if np.any(big):
            g = np.where(big, g / _BIG, g)
            g_prev = np.where(big, g_prev / _BIG, g_prev)
            log_scale = np.where(big, log_scale + _LOG_BIG, log_scale)
    out = _combine(g, log_scale)
    return out if out.ndim else float(out)


def hermite_functions(n_max: int, q) -> np.ndarray:
    """Table of f_0 ... f_{n_max} at the points ``q``.

    Returns an array of shape ``(n_max + 1,) + np.shape(q)``.
    """
    q_arr = np.atleast_1d(np.asarray(q, dtype=float))
    out = np.empty((n_max + 1,) + q_arr.shape)
    # f_0 is representable everywhere in |q| < 37; then no rescaling is needed
    if np.all(np.abs(q_arr) < 37.0):
        _table_plain(n_max, q_arr, out)
    else:
        _table_scaled(n_max, q_arr, out)
    return out.reshape((n_max + 1,) + np.shape(q))


def _table_plain(n_max, q, out):
    out[0] = PI_QUARTER * np.exp(-0.5 * q ** 2)
    if n_max == 0:
        return
    out[1] = math.sqrt(2.0) * q * out[0]
    k = np.arange(1, n_max, dtype=float)
    a = np.sqrt(2.0 / (k + 1))
    b = np.sqrt(k / (k + 1))
    if q.size == 1:
        # scalar recurrence in plain floats is several times faster than numpy
        qs = float(q[0])
        col = out[:, 0]
        f0, f1 = float(col[0]), float(col[1])
        al, bl = a.tolist(), b.tolist()
        vals = [f0, f1]
        append = vals.append
        for j in range(n_max - 1):
            f0, f1 = f1, al[j] * qs * f1 - bl[j] * f0
            append(f1)
        col[:] = vals
        return
    for j in range(n_max - 1):
        out[j + 2] = a[j] * q * out[j + 1] - b[j] * out[j]


def _table_scaled(n_max, q, out):
    g_prev = np.zeros_like(q)
    g = np.full_like(q, PI_QUARTER)
    log_scale = -0.5 * q ** 2
    out[0] = _combine(g, log_scale)
    for k in range(n_max):
        g_next = math.sqrt(2.0 / (k + 1)) * q * g - math.sqrt(k / (k + 1)) * g_prev
        g_prev, g = g, g_next
        big = np.abs(g) > _BIG
        if np.any(big):
            g = np.where(big, g / _BIG, g)
            g_prev = np.where(big, g_prev / _BIG, g_prev)
            log_scale = np.where(big, log_scale + _LOG_BIG, log_scale)
        out[k + 1] = _combine(g, log_scale)


def _combine(g, log_scale):
    with np.errstate(divide="ignore", under="ignore"):
        mag = np.abs(g)
        val = np.exp(np.log(np.where(mag > 0, mag, 1.0)) + log_scale)
    return np.where(mag > 0, np.sign(g) * val, 0.0)


def mehler_kernel(w, x, y):
    """Closed form of sum_n w^n f_n(x) f_n(y) for |w| <= 1, w != +-1.

        K(w; x, y) = exp[(4xyw - (x^2 + y^2)(1 + w^2)) / (2(1 - w^2))] / sqrt(pi (1 - w^2))

    The principal square root is the analytic continuation from w = 0, since
    Re(1 - w^2) >= 0 on the closed unit disk.
    """
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) > 1.0 + 1e-12):
        raise ValueError("Mehler kernel requires |w| <= 1")
    one_minus = 1.0 - w * w
    if np.any(np.abs(one_minus) < 1e-300):
        raise ValueError("Mehler kernel is singular at w = +1 and w = -1")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    expo = (4.0 * x * y * w - (x * x + y * y) * (1.0 + w * w)) / (2.0 * one_minus)
    out = np.exp(expo) / np.sqrt(math.pi * one_minus)
    return out if out.ndim else complex(out)


def sinc(x):
    """sin(x)/x with sinc(0) = 1 (unnormalized)."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-3
    x2 = x * x
    series = 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(x) / x
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def _gaussian_parts(theta):
    if theta == 0.0:
        raise DegenerateTheta("phi_line is undefined at theta = 0; use the position basis")
    s, c = math.sin(theta), math.cos(theta)
    norm = 1.0 / np.sqrt(math.pi * (1.0 - np.exp(2j * theta)))
    return s, c, norm


def phi_line(label: LineBasisLabel, q):
    """Complex Gaussian wave function of the rotated basis element ``label`` at q.

        Phi_y^(theta)(q) = exp(i q y / sin(theta) - (i/2)(q^2 + y^2) cot(theta))
                           / sqrt(pi (1 - e^{2 i theta}))

    ``q`` may be complex, in which case the analytic continuation is returned.
    """
    s, c, norm = _gaussian_parts(label.theta)
    q = np.asarray(q)
    y = label.y
    out = norm * np.exp(1j * q * y / s - 0.5j * (q * q + y * y) * c / s)
    return out if out.ndim else complex(out)


def phi_line_conj(label: LineBasisLabel, q):
    """Analytic continuation of conj(Phi(q)) off the real axis, i.e. conj(Phi(conj(q)))."""
    s, c, norm = _gaussian_parts(label.theta)
    q = np.asarray(q)
    y = label.y
    out = np.conj(norm) * np.exp(-1j * q * y / s + 0.5j * (q * q + y * y) * c / s)
    return out if out.ndim else complex(out)
