"""Deterministic dense linear algebra over an exact field.

Matrices are 2-D numpy arrays whose entries live in a :class:`Field`
(``object`` arrays of ``mpq`` over Q, ``int64`` residues over F_p).
Every routine pivots on the first nonzero entry in column order, so the
reduced row echelon form, and everything derived from it, is canonical.

Over Q two elimination paths are available and produce identical output:
``"gauss"`` (Gauss-Jordan on rationals) and ``"bareiss"`` (fraction-free
forward elimination on integers followed by a rational back pass).
"""

from __future__ import annotations

from math import lcm

import gmpy2
import numpy as np

from .errors import InputError, PreconditionError
from .fields import Field, PrimeField, QQ

DEFAULT_METHOD = "gauss"


def _as_matrix(field: Field, M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2:
        raise InputError(f"expected a 2-D matrix, got shape {M.shape}")
    if isinstance(field, PrimeField):
        return field.reduce(np.array(M, dtype=np.int64))
    if M.dtype != object:
        M = field.array(M)
    return M


def _rref_gauss(field: Field, M: np.ndarray):
    M = M.copy()
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        piv = M[r, c]
        if piv != 1:
            M[r] = field.reduce(M[r] * field.inv(piv))
        others = np.flatnonzero(M[:, c] != 0)
        others = others[others != r]
        if others.size:
            M[others] = field.reduce(M[others] - np.multiply.outer(M[others, c], M[r]))
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _rref_bareiss(M: np.ndarray):
    """Fraction-free forward pass over Z, rational back substitution."""
    rows, cols = M.shape
    A = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        den = lcm(*[int(x.denominator) for x in M[i]]) if cols else 1
        A[i] = [gmpy2.mpz(x * den) for x in M[i]]
    pivots = []
    prev = gmpy2.mpz(1)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        piv = A[r, c]
        if r + 1 < rows:
            below = A[r + 1:]
            num = piv * below - np.multiply.outer(below[:, c], A[r])
            # Bareiss: every entry is a minor of the input, so division is exact
            A[r + 1:] = np.array([[gmpy2.divexact(x, prev) for x in row] for row in num],
                                 dtype=object).reshape(num.shape)
        prev = piv
        pivots.append(c)
        r += 1
    R = np.empty((r, cols), dtype=object)
    for i in range(r):
        piv = A[i, pivots[i]]
        R[i] = [gmpy2.mpq(x, piv) for x in A[i]]
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        above = np.flatnonzero(R[:i, c] != 0)
        if above.size:
            R[above] = R[above] - np.multiply.outer(R[above, c], R[i])
    return R, pivots


def rref(field: Field, M, method: str | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots`` lists their pivot columns.
    """
    M = _as_matrix(field, M)
    method = method or DEFAULT_METHOD
    if method == "bareiss":
        if isinstance(field, PrimeField):
            raise InputError("bareiss elimination is only available over Q")
        if M.shape[0] == 0:
            return M[:0], []
        return _rref_bareiss(M)
    if method != "gauss":
        raise InputError(f"unknown elimination method {method!r}")
    return _rref_gauss(field, M)


def rank(field: Field, M, method: str | None = None) -> int:
    return len(rref(field, M, method)[1])


class Subspace:
    """A subspace of ``field**ambient_dim`` stored by its canonical RREF basis."""

    def __init__(self, field: Field, ambient_dim: int, vectors=None, *, _rref=None):
        self.field = field
        self.ambient_dim = int(ambient_dim)
        if _rref is not None:
            self.basis, self.pivots = _rref
        else:
            if vectors is None or len(vectors) == 0:
                self.basis, self.pivots = field.zeros((0, self.ambient_dim)), []
            else:
                V = _as_matrix(field, np.asarray(vectors).reshape(len(vectors), -1))
                if V.shape[1] != self.ambient_dim:
                    raise InputError("vector length differs from ambient dimension")
                self.basis, self.pivots = rref(field, V)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, _rref=(field.eye(n), list(range(n))))

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and self.field.equal(self.basis, other.basis))

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the basis; raises if ``v`` is not in the span."""
        v = np.asarray(v).reshape(-1)
        c = v[self.pivots]
        if self.dim:
            rec = self.field.matmul(c, self.basis)
        else:
            rec = self.field.zeros(self.ambient_dim)
        if not self.field.equal(rec, v):
            raise PreconditionError("vector is not in the subspace")
        return c

    def contains(self, v) -> bool:
        v = np.asarray(v).reshape(-1)
        if len(v) != self.ambient_dim:
            raise InputError("vector length differs from ambient dimension")
        if self.dim == 0:
            return self.field.is_zero(v)
        rec = self.field.matmul(v[self.pivots], self.basis)
        return self.field.equal(rec, v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def lift(self, coords) -> np.ndarray:
        """Vector with the given coordinates; ``coords`` may be a k x r matrix of columns."""
        coords = np.asarray(coords)
        if self.dim == 0:
            shape = (self.ambient_dim,) + coords.shape[1:]
            return self.field.zeros(shape)
        return self.field.tensordot(self.basis, coords, axes=([0], [0]))

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient_dim,
                        np.concatenate([self.basis, other.basis]) if self.dim + other.dim else None)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # u in self, w in other with u - w = 0
        stacked = np.concatenate([self.basis, self.field.reduce(-other.basis)]).T
        ker = kernel(self.field, stacked)
        if ker.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        vecs = self.field.matmul(ker.basis[:, :self.dim], self.basis)
        return Subspace(self.field, self.ambient_dim, vecs)

    def complement_in(self, bigger: "Subspace") -> np.ndarray:
        """Vectors of ``bigger``'s basis which, added in order, extend this basis.

        They represent a canonical basis of ``bigger / self``.
        """
        if not self.is_subspace_of(bigger):
            raise PreconditionError("subspace is not contained in the larger space")
        current = self
        reps = []
        for b in bigger.basis:
            if not current.contains(b):
                reps.append(b)
                current = Subspace(self.field, self.ambient_dim,
                                   np.concatenate([current.basis, b[None, :]]))
        if not reps:
            return self.field.zeros((0, self.ambient_dim))
        return np.array(reps, dtype=self.basis.dtype).reshape(len(reps), self.ambient_dim)


def kernel(field: Field, M, method: str | None = None) -> Subspace:
    """Canonical basis of ``{v : M v = 0}``."""
    M = _as_matrix(field, M)
    cols = M.shape[1]
    if field.is_zero(M):
        return Subspace.full(field, cols)
    R, pivots = rref(field, M, method)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    if not free:
        return Subspace.zero(field, cols)
    K = field.zeros((len(free), cols))
    for t, f in enumerate(free):
        K[t, f] = field.scalar(1)
        for i, pc in enumerate(pivots):
            K[t, pc] = field.reduce(-R[i, f])
    return Subspace(field, cols, K)


def image(field: Field, M, method: str | None = None) -> Subspace:
    """Column space of ``M``."""
    M = _as_matrix(field, M)
    if M.shape[1] == 0:
        return Subspace.zero(field, M.shape[0])
    return Subspace(field, M.shape[0], _rref=rref(field, M.T, method))


def solve(field: Field, M, b, method: str | None = None):
    """Some ``x`` with ``M x = b`` (free variables zero), or ``None``."""
    M = _as_matrix(field, M)
    b = np.asarray(b).reshape(-1)
    if len(b) != M.shape[0]:
        raise InputError(f"right-hand side has length {len(b)}, matrix has {M.shape[0]} rows")
    if isinstance(field, PrimeField):
        b = field.reduce(np.array(b, dtype=np.int64))
    elif b.dtype != object:
        b = field.array(b)
    aug = np.concatenate([M, b.reshape(-1, 1)], axis=1)
    R, pivots = rref(field, aug, method)
    cols = M.shape[1]
    if pivots and pivots[-1] == cols:
        return None
    x = field.zeros(cols)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return x


def quotient_dim(Z: Subspace, B: Subspace) -> int:
    """``dim Z - dim B`` after checking ``B ⊆ Z``."""
    if Z.ambient_dim != B.ambient_dim:
        raise InputError("subspaces live in different ambient spaces")
    if not B.is_subspace_of(Z):
        raise PreconditionError("B is not contained in Z")
    return Z.dim - B.dim


def block_diag(field: Field, *blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = field.zeros((n, n))
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def kron(field: Field, *mats) -> np.ndarray:
    out = field.array([[1]])
    for m in mats:
        out = field.reduce(np.kron(out, m))
    return out


def matrix_power(field: Field, M, k: int) -> np.ndarray:
    out = field.eye(M.shape[0])
    for _ in range(k):
        out = field.matmul(out, M)
    return out


def is_identity(field: Field, M) -> bool:
    return field.equal(M, field.eye(M.shape[0]))


def is_diagonal(field: Field, M) -> bool:
    off = M.copy()
    np.fill_diagonal(off, 0)
    return field.is_zero(off)


__all__ = [
    "QQ", "Subspace", "block_diag", "image", "is_diagonal", "is_identity", "kernel", "kron",
    "matrix_power", "quotient_dim", "rank", "rref", "solve",
]
