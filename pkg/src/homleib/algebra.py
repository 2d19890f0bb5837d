"""n-Hom-Leibniz algebras given by structure constants.

The bracket of a ``d``-dimensional algebra of arity ``n`` is a dense array
``bracket[k, i_1, ..., i_n]`` holding the coefficient of ``e_k`` in
``[e_{i_1}, ..., e_{i_n}]``.  Matrices act on column vectors:
``alpha[i, j]`` is the coefficient of ``e_i`` in ``alpha(e_j)``.
All indices are 0-based in the library.

The defining identity checked by :func:`check_n_hom_leibniz` is::

    [[x_1..x_n], a_1(y_1) .. a_{n-1}(y_{n-1})]
        = sum_i [a_1(x_1) .. a_{i-1}(x_{i-1}), [x_i, y_1..y_{n-1}], a_i(x_{i+1}) .. a_{n-1}(x_n)]
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InputError, PreconditionError, UnsupportedError
from .fields import Field, QQ
from .tensors import arrange, call, outer_product, permute


@dataclass(frozen=True)
class CheckReport:
    holds: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


class NHomLeibnizAlgebra:
    """Structure constants, arity and twist maps of an n-ary algebra.

    Values are immutable after construction; derived data (twist powers,
    the bracket on ``L^{⊗(n-1)}``) is cached on the instance.
    """

    def __init__(self, field: Field, dim: int, arity: int, bracket, twists, name: str | None = None):
        if dim < 1:
            raise InputError("dimension must be at least 1")
        if arity < 2:
            raise InputError("arity must be at least 2")
        self.field = field
        self.dim = int(dim)
        self.arity = int(arity)
        self.name = name
        bracket = np.asarray(bracket)
        if bracket.shape != (dim,) * (arity + 1):
            raise InputError(f"bracket must have shape {(dim,) * (arity + 1)}, got {bracket.shape}")
        self.bracket = field.array(bracket) if bracket.dtype == object or field.dtype == object \
            else field.reduce(bracket.astype(np.int64))
        if isinstance(twists, np.ndarray) and twists.ndim == 2:
            twists = [twists] * (arity - 1)
        twists = [field.array(np.asarray(t)) for t in twists]
        if len(twists) != arity - 1:
            raise InputError(f"expected {arity - 1} twist maps, got {len(twists)}")
        for t in twists:
            if t.shape != (dim, dim):
                raise InputError(f"twist maps must be {dim}x{dim}")
        self.twists = tuple(twists)
        self._cache = {}

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_entries(cls, field: Field, dim: int, arity: int, entries, alpha=None,
                     name: str | None = None) -> "NHomLeibnizAlgebra":
        """Build from sparse ``(indices, target, coeff)`` triples (0-based).

        ``alpha`` is one matrix (uniform twist), a list of ``arity - 1``
        matrices, or None for identity twists.
        """
        br = field.zeros((dim,) * (arity + 1))
        seen = set()
        for idx, target, coeff in entries:
            idx = tuple(int(i) for i in idx)
            if len(idx) != arity:
                raise InputError(f"bracket entry {idx} does not have {arity} indices")
            if not all(0 <= i < dim for i in idx + (target,)):
                raise InputError(f"bracket entry {idx} -> {target} out of range")
            if (idx, target) in seen:
                raise InputError(f"duplicate bracket entry {idx} -> {target}")
            seen.add((idx, target))
            br[(target,) + idx] = field.scalar(coeff)
        if alpha is None:
            alpha = field.eye(dim)
        if isinstance(alpha, (list, tuple)) and len(alpha) and np.asarray(alpha[0]).ndim == 2:
            twists = [field.array(a) for a in alpha]
        else:
            twists = field.array(alpha)
        return cls(field, dim, arity, br, twists, name=name)

    @classmethod
    def abelian(cls, field: Field, dim: int, arity: int, alpha=None, name=None):
        return cls.from_entries(field, dim, arity, [], alpha, name=name)

    def with_bracket(self, bracket, name=None) -> "NHomLeibnizAlgebra":
        return NHomLeibnizAlgebra(self.field, self.dim, self.arity, bracket, list(self.twists), name)

    def entries(self):
        """Nonzero structure constants ``(indices, target, coeff)`` in lexicographic order."""
        out = []
        for idx in itertools.product(range(self.dim), repeat=self.arity):
            for k in range(self.dim):
                c = self.bracket[(k,) + idx]
                if c != 0:
                    out.append((idx, k, c))
        return out

    @property
    def structure_constants(self) -> dict:
        return {(idx, k): c for idx, k, c in self.entries()}

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<NHomLeibnizAlgebra{label} dim={self.dim} arity={self.arity}>"

    # -- twists -----------------------------------------------------------------

    @property
    def uniform_twist(self) -> bool:
        return all(self.field.equal(t, self.twists[0]) for t in self.twists[1:])

    @property
    def alpha(self) -> np.ndarray:
        if not self.uniform_twist:
            raise UnsupportedError("algebra has non-uniform twist maps")
        return self.twists[0]

    @property
    def block_dim(self) -> int:
        """Dimension of ``L^{⊗(n-1)}``."""
        return self.dim ** (self.arity - 1)

    def alpha_power(self, k: int):
        """``alpha**k``, or ``None`` when it is the identity (callers skip the contraction)."""
        key = ("alpha", k)
        if key not in self._cache:
            a = linalg.matrix_power(self.field, self.alpha, k)
            self._cache[key] = None if linalg.is_identity(self.field, a) else a
        return self._cache[key]

    def block_alpha_power(self, k: int):
        """``(alpha**k)^{⊗(n-1)}`` acting on blocks, or ``None`` for the identity."""
        key = ("block_alpha", k)
        if key not in self._cache:
            a = self.alpha_power(k)
            self._cache[key] = None if a is None else linalg.kron(self.field, *([a] * (self.arity - 1)))
        return self._cache[key]

    def alpha_power_dense(self, k: int) -> np.ndarray:
        a = self.alpha_power(k)
        return self.field.eye(self.dim) if a is None else a

    def alpha_is_identity(self) -> bool:
        return self.uniform_twist and self.alpha_power(1) is None

    # -- bracket views ----------------------------------------------------------

    @property
    def bracket_blocked(self) -> np.ndarray:
        """The bracket as a map ``L x D -> L`` with ``D = L^{⊗(n-1)}``: shape ``(d, d, D)``."""
        return self.bracket.reshape(self.dim, self.dim, self.block_dim)

    @property
    def block_bracket(self) -> np.ndarray:
        """The induced binary bracket on ``D = L^{⊗(n-1)}``: shape ``(D, D, D)``."""
        if "block_bracket" not in self._cache:
            self._cache["block_bracket"] = _block_bracket(self)
        return self._cache["block_bracket"]

    def ad(self, Y) -> np.ndarray:
        return ad(self, Y)


def hom_leibniz_algebra(field: Field, bracket, twist, name=None) -> NHomLeibnizAlgebra:
    """A binary Hom-Leibniz algebra ``(L, [.,.], alpha)``."""
    bracket = np.asarray(bracket)
    return NHomLeibnizAlgebra(field, bracket.shape[0], 2, bracket, np.asarray(twist), name=name)


def _block_bracket(A: NHomLeibnizAlgebra) -> np.ndarray:
    F = A.field
    n1 = A.arity - 1
    a = A.alpha_power_dense(1)
    D = A.block_dim
    total = F.zeros((D, D, D))
    bs = [f"b{t}" for t in range(n1)]
    order = (tuple(f"o{t}" for t in range(n1)), tuple(f"a{t}" for t in range(n1)), tuple(bs))
    for s in range(n1):
        pieces = [(A.bracket, [f"o{s}", f"a{s}"] + bs)]
        pieces += [(a, [f"o{t}", f"a{t}"]) for t in range(n1) if t != s]
        arr, labels = outer_product(F, pieces)
        total = F.reduce(total + permute(arr, labels, order))
    return total


# -- identities -----------------------------------------------------------------

def identity_residual(A: NHomLeibnizAlgebra) -> np.ndarray:
    """LHS - RHS of the defining identity; axes ``(out, x_1..x_n, y_1..y_{n-1})``."""
    F = A.field
    n = A.arity
    xs = [f"x{i}" for i in range(n)]
    ys = [f"y{j}" for j in range(n - 1)]
    tw = [None if linalg.is_identity(F, t) else t for t in A.twists]
    inner = call(F, A.bracket, xs)
    res = arrange(call(F, A.bracket, [inner] + [(ys[j], tw[j]) for j in range(n - 1)]), xs + ys)
    for i in range(n):
        ops = []
        for t in range(n):
            if t < i:
                ops.append((xs[t], tw[t]))
            elif t == i:
                ops.append(call(F, A.bracket, [xs[i]] + ys))
            else:
                ops.append((xs[t], tw[t - 1]))
        res = F.reduce(res - arrange(call(F, A.bracket, ops), xs + ys))
    return res


def first_violation(field: Field, residual: np.ndarray):
    """Lexicographically first input tuple where ``residual`` (output axis 0) is nonzero."""
    bad = np.any(np.moveaxis(residual, 0, -1) != 0, axis=-1)
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def check_n_hom_leibniz(A: NHomLeibnizAlgebra) -> CheckReport:
    """Exhaustive basis check of the defining identity."""
    w = first_violation(A.field, identity_residual(A))
    return CheckReport(w is None, w)


def _require_uniform(A: NHomLeibnizAlgebra):
    if not A.uniform_twist:
        raise UnsupportedError("operation requires a single twist map alpha")


def multiplicativity_residual(A: NHomLeibnizAlgebra, phi=None) -> np.ndarray:
    """``phi[x..] - [phi x, .., phi x]`` on basis tuples (``phi`` defaults to alpha)."""
    F = A.field
    if phi is None:
        _require_uniform(A)
        phi = A.alpha
    xs = [f"x{i}" for i in range(A.arity)]
    lhs = F.tensordot(phi, A.bracket, axes=([1], [0]))
    rhs = arrange(call(F, A.bracket, [(x, phi) for x in xs]), xs)
    return F.reduce(lhs - rhs)


def check_multiplicative(A: NHomLeibnizAlgebra) -> bool:
    _require_uniform(A)
    return A.field.is_zero(multiplicativity_residual(A))


def morphism_violation(A: NHomLeibnizAlgebra, phi):
    """First basis tuple where ``phi`` fails to preserve the bracket, else None."""
    return first_violation(A.field, multiplicativity_residual(A, A.field.array(phi)))


def require_multiplicative(A: NHomLeibnizAlgebra, what: str = "operation"):
    _require_uniform(A)
    if not check_multiplicative(A):
        raise UnsupportedError(f"{what} requires a multiplicative algebra")


def require_valid(A: NHomLeibnizAlgebra, what: str = "operation"):
    require_multiplicative(A, what)
    rep = check_n_hom_leibniz(A)
    if not rep.holds:
        raise PreconditionError(f"{what} requires a valid n-Hom-Leibniz algebra", rep.witness)


# -- constructions ------------------------------------------------------------------

def yau_twist(A: NHomLeibnizAlgebra, alpha) -> NHomLeibnizAlgebra:
    """Twist an n-Leibniz algebra along a morphism: bracket ``alpha∘[..]``, twists ``alpha``."""
    F = A.field
    alpha = F.array(alpha)
    if not all(linalg.is_identity(F, t) for t in A.twists):
        raise PreconditionError("Yau twist needs an algebra with identity twists")
    rep = check_n_hom_leibniz(A)
    if not rep.holds:
        raise PreconditionError("input is not an n-Leibniz algebra", rep.witness)
    w = morphism_violation(A, alpha)
    if w is not None:
        raise PreconditionError("alpha is not an algebra morphism", w)
    out = NHomLeibnizAlgebra(F, A.dim, A.arity, F.tensordot(alpha, A.bracket, axes=([1], [0])),
                             alpha, name=f"yau({A.name})" if A.name else None)
    assert check_n_hom_leibniz(out).holds, "Yau twist produced an invalid algebra"
    return out


def d_n_minus_one(A: NHomLeibnizAlgebra) -> NHomLeibnizAlgebra:
    """The binary Hom-Leibniz algebra on ``L^{⊗(n-1)}`` with twist ``alpha^{⊗(n-1)}``."""
    require_multiplicative(A, "D_{n-1}(L)")
    F = A.field
    abar = linalg.kron(F, *([A.alpha] * (A.arity - 1)))
    name = f"D({A.name})" if A.name else None
    return NHomLeibnizAlgebra(F, A.block_dim, 2, A.block_bracket, abar, name=name)


def ad(A: NHomLeibnizAlgebra, Y) -> np.ndarray:
    """Matrix of ``x -> [x, y_1, .., y_{n-1}]``."""
    F = A.field
    Y = [F.array(y) for y in Y]
    if len(Y) != A.arity - 1 or any(y.shape != (A.dim,) for y in Y):
        raise InputError(f"ad needs {A.arity - 1} vectors of length {A.dim}")
    M = A.bracket
    for y in reversed(Y):
        M = F.tensordot(M, y, axes=([M.ndim - 1], [0]))
    return M


__all__ = [
    "CheckReport", "NHomLeibnizAlgebra", "ad", "check_multiplicative", "check_n_hom_leibniz",
    "d_n_minus_one", "first_violation", "hom_leibniz_algebra", "identity_residual",
    "morphism_violation", "multiplicativity_residual", "require_multiplicative", "require_valid",
    "yau_twist", "QQ",
]
