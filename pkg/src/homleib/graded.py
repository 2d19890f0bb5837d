"""Shuffle compositions, the insertion operator and the graded brackets on cochains.

Grades follow ``Γ^p(L) = C^{p+1}(L, L)``: a grade-``p`` element is a cochain
of degree ``p + 1`` with arguments ``z, X_1, .., X_p``.

A ``(q, r)``-shuffle acting on positions ``k+1 .. k+q+r`` is stored as the
tuple of images ``(σ(k+1), .., σ(k+q+r))``: its first ``q`` entries and its
last ``r`` entries are increasing.  Shuffles are enumerated in
lexicographic order of that tuple and carry the parity of the permutation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import NHomLeibnizAlgebra
from .cochains import Cochain
from .errors import InputError
from .representations import adjoint_representation
from .tensors import arrange, call, split_axis


@dataclass(frozen=True)
class Shuffle:
    q: int
    r: int
    images: tuple  # 1-based positions relative to the shuffled range
    sign: int


def _parity(seq) -> int:
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def shuffles(q: int, r: int) -> list:
    if q < 0 or r < 0:
        raise InputError("shuffle sizes must be non-negative")
    out = []
    for first in itertools.combinations(range(1, q + r + 1), q):
        rest = tuple(i for i in range(1, q + r + 1) if i not in first)
        imgs = tuple(first) + rest
        out.append(Shuffle(q, r, imgs, _parity(imgs)))
    return out


def _grade(A: NHomLeibnizAlgebra, arr: np.ndarray) -> int:
    if arr.shape[:2] != (A.dim, A.dim) or any(s != A.block_dim for s in arr.shape[2:]):
        raise InputError(f"array of shape {arr.shape} is not a self-coefficient cochain")
    return arr.ndim - 2


def compose_N_array(A: NHomLeibnizAlgebra, f: np.ndarray, g: np.ndarray, k: int, sigma) -> np.ndarray:
    """``f ∘_k^σ g`` on block-form arrays of grades ``p`` and ``q``."""
    F = A.field
    p, q = _grade(A, f), _grade(A, g)
    if not 0 <= k <= p:
        raise InputError(f"composition index k={k} outside 0..{p}")
    imgs = sigma.images if isinstance(sigma, Shuffle) else tuple(sigma)
    if sorted(imgs) != list(range(1, p + q - k + 1)):
        raise InputError(f"{imgs} is not a permutation of the positions after {k}")
    pos = [k + i for i in imgs]  # σ(k+1), .., σ(p+q) as absolute positions
    X = [f"X{i}" for i in range(1, p + q + 1)]
    order = ["z"] + X
    abar_q = A.block_alpha_power(q)
    alpha_q = A.alpha_power(q)
    if k == 0:
        inner = call(F, g, ["z"] + [X[j - 1] for j in pos[:q]])
        ops = [inner] + [(X[j - 1], abar_q) for j in pos[q:]]
        return arrange(call(F, f, ops), order)
    n1 = A.arity - 1
    fs = split_axis(f, 1 + k, n1, A.dim)
    coords = [f"X{k}_{t}" for t in range(n1)]
    total = None
    for s in range(n1):
        ops = [("z", alpha_q)] + [(X[j], abar_q) for j in range(k - 1)]
        for t in range(n1):
            if t == s:
                ops.append(call(F, g, [coords[t]] + [X[j - 1] for j in pos[:q]]))
            else:
                ops.append((coords[t], alpha_q))
        ops += [(X[j - 1], abar_q) for j in pos[q:]]
        arr = arrange(call(F, fs, ops), ["z"] + X[:k - 1] + [tuple(coords)] + X[k:])
        total = arr if total is None else total + arr
    return F.reduce(total)


def insertion_array(A: NHomLeibnizAlgebra, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``i_f(g) = Σ_k (-1)^{kq} Σ_σ ε(σ) f ∘_k^σ g``."""
    F = A.field
    p, q = _grade(A, f), _grade(A, g)
    total = F.zeros((A.dim, A.dim) + (A.block_dim,) * (p + q))
    for k in range(p + 1):
        for sh in shuffles(q, p - k):
            term = compose_N_array(A, f, g, k, sh)
            if (sh.sign * (-1) ** (k * q)) > 0:
                total = total + term
            else:
                total = total - term
    return F.reduce(total)


def bracket_N_array(A: NHomLeibnizAlgebra, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``[f, g]_N = i_f(g) + (-1)^{pq+1} i_g(f)``."""
    F = A.field
    p, q = _grade(A, f), _grade(A, g)
    a = insertion_array(A, f, g)
    b = insertion_array(A, g, f)
    return F.reduce(a - b if (p * q) % 2 == 0 else a + b)


def _as_array(A, c):
    return c.coefficients if isinstance(c, Cochain) else c


def _wrap(A, arr):
    R = adjoint_representation(A)
    return Cochain(A, R, arr.ndim - 1, arr, check=False)


def compose_N(A: NHomLeibnizAlgebra, f, g, k: int, sigma) -> Cochain:
    return _wrap(A, compose_N_array(A, _as_array(A, f), _as_array(A, g), k, sigma))


def insertion(A: NHomLeibnizAlgebra, f, g) -> Cochain:
    return _wrap(A, insertion_array(A, _as_array(A, f), _as_array(A, g)))


def bracket_N(A: NHomLeibnizAlgebra, f, g) -> Cochain:
    return _wrap(A, bracket_N_array(A, _as_array(A, f), _as_array(A, g)))


def bracket_L(G: NHomLeibnizAlgebra, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """The bracket on ``Hom(g^{⊗(p+1)}, g)`` of a binary Hom-Leibniz algebra ``g``.

    ``f`` and ``g`` have shapes ``(g, g, .., g)``.  For a binary algebra the
    block space is ``g`` itself and every block is a single argument, so the
    compositions reduce to the binary ones; only the twist of ``G`` enters.
    """
    if G.arity != 2:
        raise InputError("bracket_L needs a binary Hom-Leibniz algebra")
    return bracket_N_array(G, f, g)


def pi_cochain(A: NHomLeibnizAlgebra) -> Cochain:
    """The bracket as a grade-1 cochain ``π(z, X) = [z, X^1, .., X^{n-1}]``."""
    return Cochain(A, adjoint_representation(A), 2, A.bracket_blocked.copy())


__all__ = [
    "Shuffle", "bracket_L", "bracket_N", "bracket_N_array", "compose_N", "compose_N_array",
    "insertion", "insertion_array", "pi_cochain", "shuffles",
]
