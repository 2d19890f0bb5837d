"""Curated example algebras and random generators used by tests and the CLI."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .algebra import NHomLeibnizAlgebra, check_n_hom_leibniz, morphism_violation, yau_twist
from .fields import Field, QQ
from .representations import (Representation, adjoint_representation, character_representation,
                              direct_sum, trivial_representation)


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    build: Callable[[Field], NHomLeibnizAlgebra]
    extra_rep: Callable[[NHomLeibnizAlgebra], Representation]


def abelian_d1_n2(F: Field = QQ):
    return NHomLeibnizAlgebra.abelian(F, 1, 2, name="abelian_d1_n2")


def abelian_d2_n3(F: Field = QQ):
    return NHomLeibnizAlgebra.abelian(F, 2, 3, alpha=[[1, 0], [0, 2]], name="abelian_d2_n3")


def lie_d2(F: Field = QQ):
    """The non-abelian 2-dimensional Lie algebra ``[e1, e2] = e1``."""
    return NHomLeibnizAlgebra.from_entries(F, 2, 2, [((0, 1), 0, 1), ((1, 0), 0, -1)], name="lie_d2")


def e22_d2(F: Field = QQ):
    """The Leibniz algebra ``[e2, e2] = e1``."""
    return NHomLeibnizAlgebra.from_entries(F, 2, 2, [((1, 1), 0, 1)], name="e22_d2")


def ternary_d2(F: Field = QQ):
    """The 3-Leibniz algebra ``[e1, e2, e2] = e1``."""
    return NHomLeibnizAlgebra.from_entries(F, 2, 3, [((0, 1, 1), 0, 1)], name="ternary_d2")


def yau_lie(F: Field = QQ):
    A = yau_twist(lie_d2(F), F.array([[2, 1], [0, 1]]))
    A.name = "yau_lie"
    return A


def yau_e22(F: Field = QQ):
    A = yau_twist(e22_d2(F), F.array([[9, 0], [0, 3]]))
    A.name = "yau_e22"
    return A


def yau_ternary(F: Field = QQ):
    A = yau_twist(ternary_d2(F), F.array([[2, 0], [0, -1]]))
    A.name = "yau_ternary"
    return A


def _character(weight, alpha_m=1, slots=None):
    return lambda A: character_representation(A, weight, alpha_m, slots)


def _adjoint_plus_trivial(A):
    # alpha_M = 27 is the weight of e1 ⊗ e2, so the trivial summand has non-cocycle 2-cochains
    return direct_sum(A, adjoint_representation(A), trivial_representation(A, 1, [[27]]))


SUITE = [
    SuiteEntry("abelian_d1_n2", abelian_d1_n2, _character([1], 1, [1, -1])),
    SuiteEntry("abelian_d2_n3", abelian_d2_n3, _character([1, 0], 2, [-1, 0, 1])),
    SuiteEntry("lie_d2", lie_d2, _character([0, 1])),
    SuiteEntry("e22_d2", e22_d2, _character([0, 1])),
    SuiteEntry("yau_lie", yau_lie, _character([0, 1])),
    SuiteEntry("yau_e22", yau_e22, _adjoint_plus_trivial),
    SuiteEntry("ternary_d2", ternary_d2, _character([0, 1])),
    SuiteEntry("yau_ternary", yau_ternary, _character([0, 1], -1)),
]

SUITE_BY_NAME = {e.name: e for e in SUITE}


def suite_algebra(name: str, F: Field = QQ) -> NHomLeibnizAlgebra:
    return SUITE_BY_NAME[name].build(F)


def suite_representations(name: str, F: Field = QQ):
    """``[("adjoint", R), (<extra name>, R')]`` for a suite algebra."""
    A = suite_algebra(name, F)
    extra = SUITE_BY_NAME[name].extra_rep(A)
    return A, [("adjoint", adjoint_representation(A)), (extra.name, extra)]


# -- random generation ---------------------------------------------------------------------

def random_invertible(F: Field, rng: random.Random, d: int, lo: int = -2, hi: int = 2) -> np.ndarray:
    while True:
        P = F.random_array(rng, (d, d), lo, hi)
        if linalg.rank(F, P) == d:
            return P


def inverse(F: Field, P: np.ndarray) -> np.ndarray:
    d = P.shape[0]
    cols = [linalg.solve(F, P, F.eye(d)[:, j]) for j in range(d)]
    return np.array(cols, dtype=P.dtype).T


def conjugate(A: NHomLeibnizAlgebra, P: np.ndarray) -> NHomLeibnizAlgebra:
    """Transport the structure along ``x -> P x``: ``[x..]' = P[P^{-1}x, ..]``."""
    F = A.field
    Pi = inverse(F, P)
    br = F.tensordot(P, A.bracket, axes=([1], [0]))
    for axis in range(1, A.arity + 1):
        br = np.moveaxis(F.tensordot(br, Pi, axes=([axis], [0])), -1, axis)
    twists = [F.matmul(F.matmul(P, t), Pi) for t in A.twists]
    return NHomLeibnizAlgebra(F, A.dim, A.arity, br, twists, name=A.name)


def random_graded_leibniz(F: Field, rng: random.Random, d: int, n: int, base: int = 2,
                          tries: int = 200):
    """A random n-Leibniz algebra with a diagonal morphism ``diag(base**w_i)``.

    Weights ``w_i`` are sampled, structure constants are placed only on
    entries with ``w_target = Σ w_inputs``, and samples failing the identity
    are rejected.  Returns ``(algebra, morphism)``.
    """
    for _ in range(tries):
        w = [rng.randint(0, 2) for _ in range(d)]
        cands = []
        for idx in np.ndindex(*(d,) * n):
            for k in range(d):
                if w[k] == sum(w[i] for i in idx):
                    cands.append((idx, k))
        if not cands:
            continue
        chosen = rng.sample(cands, min(len(cands), rng.randint(0, 3)))
        entries = [(idx, k, rng.choice([-2, -1, 1, 2])) for idx, k in chosen]
        A = NHomLeibnizAlgebra.from_entries(F, d, n, entries)
        if check_n_hom_leibniz(A).holds:
            alpha = F.array(np.diag([base ** wi for wi in w]).astype(object))
            assert morphism_violation(A, alpha) is None
            return A, alpha
    raise RuntimeError("no valid random algebra found")


_SEED_PAIRS = [
    (lie_d2, [[2, 1], [0, 1]]),
    (e22_d2, [[9, 0], [0, 3]]),
    (ternary_d2, [[2, 0], [0, -1]]),
]


def random_morphism_pair(F: Field, rng: random.Random, max_dim: int = 3):
    """A random (n-Leibniz algebra, morphism) pair with ``d <= max_dim``, conjugated by a random basis change."""
    if rng.random() < 0.3:
        build, alpha = rng.choice(_SEED_PAIRS)
        A, a = build(F), F.array(alpha)
    else:
        d = rng.randint(1, max_dim)
        n = rng.choice([2, 3])
        A, a = random_graded_leibniz(F, rng, d, n)
    P = random_invertible(F, rng, A.dim)
    At = conjugate(A, P)
    at = F.matmul(F.matmul(P, a), inverse(F, P))
    return At, at


def random_algebra(F: Field, rng: random.Random, d: int, n: int, alpha=None, density: int = 2,
                   tries: int = 500) -> NHomLeibnizAlgebra | None:
    """Rejection sampling of sparse structure constants for a fixed twist."""
    alpha = F.eye(d) if alpha is None else F.array(alpha)
    for _ in range(tries):
        entries = {}
        for _ in range(rng.randint(1, density)):
            idx = tuple(rng.randrange(d) for _ in range(n))
            entries[(idx, rng.randrange(d))] = rng.choice([-1, 1, 2])
        A = NHomLeibnizAlgebra.from_entries(F, d, n, [(i, k, c) for (i, k), c in entries.items()], alpha)
        if check_n_hom_leibniz(A).holds:
            return A
    return None


def perturb(A: NHomLeibnizAlgebra, rng: random.Random, tries: int = 100) -> NHomLeibnizAlgebra:
    """Change one structure constant so that the defining identity fails."""
    F = A.field
    for _ in range(tries):
        br = A.bracket.copy()
        idx = tuple(rng.randrange(A.dim) for _ in range(A.arity + 1))
        br[idx] = F.reduce(br[idx] + F.scalar(rng.choice([1, 2, -1])))
        B = A.with_bracket(br, name=f"{A.name}_perturbed" if A.name else None)
        if not check_n_hom_leibniz(B).holds:
            return B
    raise RuntimeError("could not break the identity by one perturbation")


def random_cochain_coefficients(F: Field, rng: random.Random, space, lo: int = -3, hi: int = 3):
    """Random element of a :class:`~homleib.cochains.CochainSpace`."""
    if space.dim == 0:
        return F.zeros(space.shape)
    c = F.random_array(rng, (space.dim, 1), lo, hi)
    return space.lift(c)[..., 0]


__all__ = [
    "SUITE", "SUITE_BY_NAME", "SuiteEntry", "abelian_d1_n2", "abelian_d2_n3", "conjugate", "e22_d2",
    "inverse", "lie_d2", "perturb", "random_algebra", "random_cochain_coefficients",
    "random_graded_leibniz", "random_invertible", "random_morphism_pair", "suite_algebra",
    "suite_representations", "ternary_d2", "yau_e22", "yau_lie", "yau_ternary",
]
