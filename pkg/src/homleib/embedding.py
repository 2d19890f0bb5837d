"""The cochain map Δ from ``C^*(L, L)`` into the complex of ``D_{n-1}(L)``.

For a ``p``-cochain ``f`` the image is the map of ``p`` block arguments::

    Δf(X_1, .., X_p) = Σ_i α^{p-1}X_1^1 ⊗ .. ⊗ f(X_1^i, X_2, .., X_p) ⊗ .. ⊗ α^{p-1}X_1^{n-1}

It is stored as a ``p``-cochain of the binary algebra ``D_{n-1}(L)`` with
adjoint coefficients, i.e. an array of shape ``(D, D, .., D)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import NHomLeibnizAlgebra, d_n_minus_one, require_multiplicative
from .cochains import Cochain, CochainSpace, ce_differential, coboundary_array
from .errors import PreconditionError
from .representations import adjoint_representation
from .tensors import arrange, call, outer_product, permute


def delta_embed_array(A: NHomLeibnizAlgebra, f: np.ndarray, p: int) -> np.ndarray:
    """Δ on a block-form self-coefficient ``p``-cochain array (trailing batch axes allowed)."""
    F = A.field
    n1 = A.arity - 1
    D = A.block_dim
    batch = f.shape[p + 1:]
    ap = A.alpha_power_dense(p - 1)
    blocks = [f"X{i}" for i in range(2, p + 1)]
    bl = [f"b{j}" for j in range(len(batch))]
    outs = [f"o{t}" for t in range(n1)]
    ins = [f"a{t}" for t in range(n1)]
    total = None
    for s in range(n1):
        pieces = [(f, [outs[s], ins[s]] + blocks + bl)]
        pieces += [(ap, [outs[t], ins[t]]) for t in range(n1) if t != s]
        arr, labels = outer_product(F, pieces)
        term = permute(arr, labels, [tuple(outs), tuple(ins)] + blocks + bl)
        total = term if total is None else total + term
    out = F.reduce(total)
    return out.reshape((D,) * (p + 1) + batch)


@dataclass
class EmbeddedCochain:
    """A ``p``-cochain of ``D_{n-1}(L)`` with values in itself."""

    algebra: NHomLeibnizAlgebra  # the binary algebra D_{n-1}(L)
    degree: int
    coefficients: np.ndarray

    def is_compatible(self) -> bool:
        G = self.algebra
        return _ce_compatible(G, self.coefficients, self.degree)


def _ce_compatible(G, arr, q) -> bool:
    F = G.field
    names = [f"x{i}" for i in range(q)]
    rhs = arrange(call(F, arr, [(nm, G.alpha) for nm in names]), names)
    return F.equal(F.tensordot(G.alpha, arr, axes=([1], [0])), rhs)


def delta_embed(A: NHomLeibnizAlgebra, f: Cochain) -> EmbeddedCochain:
    require_multiplicative(A, "Δ")
    if f.rep.module_dim != A.dim or not A.field.equal(f.rep.alpha_m, A.alpha):
        raise PreconditionError("Δ is defined for cochains with values in the algebra itself")
    out = EmbeddedCochain(d_n_minus_one(A), f.degree, delta_embed_array(A, f.coefficients, f.degree))
    assert out.is_compatible(), "Δf is not compatible with the twist of D_{n-1}(L)"
    return out


@dataclass(frozen=True)
class SquareReport:
    holds: bool
    max_degree_checked: int
    failed_degree: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def square_sides(A: NHomLeibnizAlgebra, p: int, space: CochainSpace | None = None):
    """``(d^p ∘ Δ, Δ ∘ δ^p)`` on the compatible basis, as ambient matrices (columns = basis)."""
    require_multiplicative(A, "Δ")
    R = adjoint_representation(A)
    G = d_n_minus_one(A)
    V = adjoint_representation(G)
    space = space or CochainSpace(A, R, p)
    F = A.field
    D = A.block_dim
    if space.dim == 0:
        z = F.zeros((D ** (p + 2), 0))
        return z, z
    basis = space.basis_batch()
    emb = delta_embed_array(A, basis, p)
    left = ce_differential(G, V, emb, degree=p, check=False)
    right = delta_embed_array(A, coboundary_array(A, R, basis, p), p + 1)
    return left.reshape(-1, space.dim), right.reshape(-1, space.dim)


def check_commuting_square(A: NHomLeibnizAlgebra, p: int) -> SquareReport:
    """``d^q ∘ Δ = Δ ∘ δ^q`` as exact matrices for every ``q <= p``."""
    for q in range(1, p + 1):
        left, right = square_sides(A, q)
        if not A.field.equal(left, right):
            return SquareReport(False, q, q)
    return SquareReport(True, p)


def delta_matrix(A: NHomLeibnizAlgebra, p: int, space: CochainSpace | None = None) -> np.ndarray:
    R = adjoint_representation(A)
    space = space or CochainSpace(A, R, p)
    if space.dim == 0:
        return A.field.zeros((A.block_dim ** (p + 1), 0))
    return delta_embed_array(A, space.basis_batch(), p).reshape(-1, space.dim)


def check_injectivity(A: NHomLeibnizAlgebra, p: int) -> bool:
    """Whether Δ is injective on compatible ``p``-cochains; needs an injective alpha."""
    require_multiplicative(A, "Δ")
    F = A.field
    if linalg.rank(F, A.alpha) < A.dim:
        raise PreconditionError("Δ is only claimed injective for injective alpha")
    M = delta_matrix(A, p)
    return M.shape[1] == 0 or linalg.kernel(F, M).dim == 0


__all__ = [
    "EmbeddedCochain", "SquareReport", "check_commuting_square", "check_injectivity", "delta_embed",
    "delta_embed_array", "delta_matrix", "square_sides",
]
