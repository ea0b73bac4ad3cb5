"""Identification of the Fock basis with the angular-momentum basis.

Kets are identified by ``|n> = |l>`` when ``2n + 1 = |4l + 1|``: nonnegative l
land on even n, negative l on odd n.  With an even Fock cutoff n_max the
retained l values are exactly -n_max/2 ... n_max/2.

Every builder returns a Fock-indexed :class:`TruncatedOperator`; call
:meth:`TruncatedOperator.relabel` to obtain the l-indexed matrix.  Identities
that involve products of ladder operators are only exact away from the cutoff,
so the checks here take an ``edge_margin`` and compare interior blocks.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import sparse

__all__ = [
    "Basis",
    "FockTruncation",
    "TruncatedOperator",
    "n_of_l",
    "l_of_n",
    "build_number",
    "build_ladder",
    "build_E_fock",
    "build_E_direct",
    "build_L_from_N",
    "build_projectors_reflection",
    "reflection_from_powers",
    "build_QP_from_EL",
    "build_QP_ladder",
    "commutator",
    "interior_deviation",
    "projector_integral",
    "projector_integral_check",
]


class Basis(enum.Enum):
    FOCK = "n"
    L = "l"


def n_of_l(l):
    """Fock index of the angular-momentum ket l: n = (|4l + 1| - 1) / 2."""
    l = np.asarray(l, dtype=np.int64)
    out = (np.abs(4 * l + 1) - 1) // 2
    return int(out) if out.ndim == 0 else out


def l_of_n(n):
    """Inverse of :func:`n_of_l`: l = n/2 for even n, -(n+1)/2 for odd n."""
    n = np.asarray(n, dtype=np.int64)
    if np.any(n < 0):
        raise ValueError("Fock index must be nonnegative")
    out = np.where(n % 2 == 0, n // 2, -(n + 1) // 2)
    return int(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FockTruncation:
    n_max: int

    def __post_init__(self):
        if self.n_max < 2 or self.n_max % 2:
            raise ValueError(f"n_max must be a positive even integer, got {self.n_max!r}")

    @property
    def dim(self) -> int:
        return self.n_max + 1

    @property
    def l_max(self) -> int:
        return self.n_max // 2

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(self.dim)

    @property
    def l_values(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)

    def permutation(self) -> np.ndarray:
        """perm[i] = Fock index of the i-th l value (ascending l)."""
        return n_of_l(self.l_values)


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """Dense matrix on the truncated space, tagged with its index labeling."""

    basis: Basis
    trunc: FockTruncation
    matrix: np.ndarray = field(repr=False)
    edge_margin: int = 2

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.trunc.dim, self.trunc.dim):
            raise ValueError("matrix shape does not match truncation")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.trunc.dim

    def relabel(self) -> "TruncatedOperator":
        perm = self.trunc.permutation()
        if self.basis is Basis.FOCK:
            m = self.matrix[np.ix_(perm, perm)]
            return replace(self, basis=Basis.L, matrix=m)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(perm.size)
        return replace(self, basis=Basis.FOCK, matrix=self.matrix[np.ix_(inv, inv)])

    def to(self, basis: Basis) -> "TruncatedOperator":
        return self if basis is self.basis else self.relabel()

    def interior_mask(self, margin: int | None = None) -> np.ndarray:
        """Boolean mask of indices whose Fock number is <= n_max - margin."""
        margin = self.edge_margin if margin is None else margin
        n = self.trunc.n_values if self.basis is Basis.FOCK else self.trunc.permutation()
        return n <= self.trunc.n_max - margin

    def interior(self, margin: int | None = None) -> np.ndarray:
        mask = self.interior_mask(margin)
        return self.matrix[np.ix_(mask, mask)]

    def dagger(self) -> "TruncatedOperator":
        return replace(self, matrix=self.matrix.conj().T)

    def _coerce(self, other):
        if isinstance(other, TruncatedOperator):
            if other.trunc != self.trunc:
                raise ValueError("operators on different truncations")
            return other.to(self.basis).matrix
        return other

    def __matmul__(self, other):
        return replace(self, matrix=self.matrix @ self._coerce(other))

    def __add__(self, other):
        return replace(self, matrix=self.matrix + self._coerce(other))

    def __sub__(self, other):
        return replace(self, matrix=self.matrix - self._coerce(other))

    def __mul__(self, scalar):
        return replace(self, matrix=self.matrix * scalar)

    __rmul__ = __mul__

    def apply(self, vec) -> np.ndarray:
        return self.matrix @ np.asarray(vec)


def _fock(trunc, m, margin=2):
    return TruncatedOperator(Basis.FOCK, trunc, m, margin)


def build_number(trunc: FockTruncation) -> TruncatedOperator:
    return _fock(trunc, np.diag(trunc.n_values.astype(float)))


def build_ladder(trunc: FockTruncation) -> TruncatedOperator:
    """Isometric ladder A = sum_{n < n_max} |n><n+1| (no sqrt(n) weights)."""
    return _fock(trunc, np.eye(trunc.dim, k=1))


def _parity(trunc):
    return np.where(trunc.n_values % 2 == 0, 1.0, -1.0)


def build_E_fock(trunc: FockTruncation) -> TruncatedOperator:
    """Unitary l-shift assembled from the isometric ladder:

        E = A^dag^2 (1 + (-1)^N)/2 + (1 - (-1)^N)/2 A^2 + A - A^dag A^2
    """
    A = build_ladder(trunc).matrix
    Ad = A.conj().T
    par = _parity(trunc)
    even = np.diag((1.0 + par) / 2.0)
    odd = np.diag((1.0 - par) / 2.0)
    A2 = A @ A
    E = Ad @ Ad @ even + odd @ A2 + A - Ad @ A2
    return _fock(trunc, E)


def build_E_direct(trunc: FockTruncation) -> TruncatedOperator:
    """E = sum_l |l+1><l| built in the l labeling, returned Fock-indexed."""
    E_l = TruncatedOperator(Basis.L, trunc, np.eye(trunc.dim, k=-1))
    return E_l.relabel()


def build_L_from_N(trunc: FockTruncation) -> TruncatedOperator:
    """L = (2N+1)/4 (-1)^N - 1/4, diagonal and integer valued."""
    return _fock(trunc, np.diag(l_of_n(trunc.n_values).astype(float)))


def build_projectors_reflection(trunc: FockTruncation):
    """Return (Pi_plus, Pi_minus, R): projectors on l >= 0, l < 0 and R|l> = |-l>."""
    l = trunc.l_values
    Pp = TruncatedOperator(Basis.L, trunc, np.diag((l >= 0).astype(float)))
    Pm = TruncatedOperator(Basis.L, trunc, np.diag((l < 0).astype(float)))
    R = TruncatedOperator(Basis.L, trunc, np.fliplr(np.eye(trunc.dim)))
    return Pp.relabel(), Pm.relabel(), R.relabel()


def reflection_from_powers(trunc: FockTruncation, form: str = "left") -> TruncatedOperator:
    """R from powers of E.

    ``form="left"``: R = sum_l |l><l| E^{2l};  ``form="right"``: R = sum_l E^{-2l} |l><l|.
    Negative powers are realized with E^dagger.  Rows (columns) are obtained by
    propagating unit vectors through the sparse shift, one factor at a time.
    """
    E = sparse.csr_matrix(build_E_direct(trunc).relabel().matrix)
    Ed = E.conj().T.tocsr()
    dim = trunc.dim
    R = np.zeros((dim, dim), dtype=complex)
    for i, l in enumerate(trunc.l_values):
        v = np.zeros(dim, dtype=complex)
        v[i] = 1.0
        if form == "left":
            # row vector <l| E^{2l}: v <- v E, i.e. v <- E^T v
            step = E.T if l >= 0 else Ed.T
            for _ in range(abs(2 * l)):
                v = step @ v
            R[i, :] = v
        elif form == "right":
            step = Ed if l >= 0 else E
            for _ in range(abs(2 * l)):
                v = step @ v
            R[:, i] = v
        else:
            raise ValueError("form must be 'left' or 'right'")
    return TruncatedOperator(Basis.L, trunc, R).relabel()


def _sqrt_on_support(values, support):
    out = np.zeros_like(values, dtype=float)
    out[support] = np.sqrt(values[support])
    return out


def build_QP_from_EL(trunc: FockTruncation):
    """Hermitian (Q, P) from Q + iP = sqrt(4L+2) Pi_+ R E + sqrt(-4L) Pi_- R.

    The radicands are evaluated only where the adjacent projector is nonzero.
    """
    L = build_L_from_N(trunc).matrix.diagonal().real
    Pp, Pm, R = build_projectors_reflection(trunc)
    E = build_E_fock(trunc).matrix
    plus = _sqrt_on_support(4.0 * L + 2.0, L >= 0)
    minus = _sqrt_on_support(-4.0 * L, L < 0)
    X = np.diag(plus) @ Pp.matrix @ R.matrix @ E + np.diag(minus) @ Pm.matrix @ R.matrix
    Q = 0.5 * (X + X.conj().T)
    P = (X - X.conj().T) / 2j
    return _fock(trunc, Q), _fock(trunc, P)


def build_QP_ladder(trunc: FockTruncation) -> TruncatedOperator:
    """sqrt(2N + 2) A, the standard Q + iP in the Fock labeling."""
    n = trunc.n_values.astype(float)
    return _fock(trunc, np.diag(np.sqrt(2.0 * n + 2.0)) @ build_ladder(trunc).matrix)


def commutator(a: TruncatedOperator, b: TruncatedOperator) -> TruncatedOperator:
    return a @ b - b @ a


def interior_deviation(op: TruncatedOperator, target, margin: int | None = None) -> float:
    """Max entrywise |op - target| over the interior block."""
    if isinstance(target, TruncatedOperator):
        target = target.to(op.basis).matrix
    target = np.broadcast_to(np.asarray(target, dtype=complex), op.matrix.shape)
    mask = op.interior_mask(margin)
    diff = (op.matrix - target)[np.ix_(mask, mask)]
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def projector_integral(l: int, trunc: FockTruncation, nodes: int = 512) -> np.ndarray:
    """(1/2pi) int dalpha exp(i(L - l) alpha) as a Fock-indexed matrix.

    The periodic trapezoid rule is exact for |L - l| < nodes; the node count is
    raised when the spectrum of L - l would alias.
    """
    Ldiag = build_L_from_N(trunc).matrix.diagonal().real
    nodes = max(int(nodes), int(np.max(np.abs(Ldiag - l))) + 1)
    alpha = 2.0 * math.pi * np.arange(nodes) / nodes
    phases = np.exp(1j * np.outer(alpha, Ldiag - l))
    return np.diag(phases.mean(axis=0))


def projector_integral_check(l: int, trunc: FockTruncation, nodes: int = 512) -> float:
    """Max entrywise deviation of the alpha-integral from |l><l|."""
    Ldiag = build_L_from_N(trunc).matrix.diagonal().real
    target = np.diag((Ldiag == l).astype(float))
    return float(np.max(np.abs(projector_integral(l, trunc, nodes) - target)))
