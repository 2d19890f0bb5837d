"""Truncated one-parameter deformations of the bracket.

``f_t = F_0 + t F_1 + .. + t^s F_s`` with ``F_0`` the bracket of the base
algebra and every ``F_i`` a compatible 2-cochain (block form ``(d, d, D)``).
The twist alpha is never deformed.

Sign conventions, all machine checked in the test suite:

* the order-``s`` residual (left minus right side of the deformation
  equation, as a 3-cochain in ``z, X, Y``) equals ``Σ_{j+k=s} i_{F_j}(F_k)``;
* hence the order-1 residual is ``-δ^2 F_1`` and, for ``s >= 2``, the
  order-``s`` equation is ``δ^2 F_s = Σ_{i+j=s, i,j>0} i_{F_i}(F_j) = G_s / 2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .algebra import NHomLeibnizAlgebra, identity_residual, require_valid
from .cochains import Cochain, CochainSpace, CohomologyReport, coboundary_array, coboundary_matrix, cohomology
from .errors import InputError, PreconditionError
from .graded import bracket_N_array, insertion_array
from .representations import adjoint_representation
from .tensors import arrange, call

DEFAULT_ORDER = 3


@dataclass
class TruncatedDeformation:
    algebra: NHomLeibnizAlgebra
    terms: list  # F_1..F_s as block-form arrays

    def __post_init__(self):
        A = self.algebra
        shape = (A.dim, A.dim, A.block_dim)
        R = adjoint_representation(A)
        out = []
        for i, t in enumerate(self.terms, 1):
            t = t.coefficients if isinstance(t, Cochain) else A.field.array(np.asarray(t))
            if t.size != int(np.prod(shape)):
                raise InputError(f"F_{i} must have shape {shape}")
            t = t.reshape(shape)
            Cochain(A, R, 2, t)  # raises if incompatible
            out.append(t)
        self.terms = out

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, i: int) -> np.ndarray:
        """``F_i`` in block form; ``F_0`` is the bracket, and ``F_i = 0`` beyond the order."""
        A = self.algebra
        if i == 0:
            return A.bracket_blocked
        if i <= self.order:
            return self.terms[i - 1]
        return A.field.zeros((A.dim, A.dim, A.block_dim))

    def extended(self, F_next) -> "TruncatedDeformation":
        return TruncatedDeformation(self.algebra, self.terms + [F_next])

    def is_valid(self) -> bool:
        return all(self.algebra.field.is_zero(deformation_residual(self, s)) for s in range(self.order + 1))


def _unblock(A, arr):
    return arr.reshape((A.dim,) * (A.arity + 1))


def _pair_residual(A: NHomLeibnizAlgebra, Fj, Fk) -> np.ndarray:
    """``F_j(F_k(X), αY) - Σ_i F_j(.., α x_{i-1}, F_k(x_i, Y), α x_{i+1}, ..)`` over basis tuples."""
    F = A.field
    n = A.arity
    fj, fk = _unblock(A, Fj), _unblock(A, Fk)
    xs = [f"x{i}" for i in range(n)]
    ys = [f"y{i}" for i in range(n - 1)]
    a = A.alpha_power(1)
    res = arrange(call(F, fj, [call(F, fk, xs)] + [(y, a) for y in ys]), xs + ys)
    for i in range(n):
        ops = [call(F, fk, [xs[i]] + ys) if t == i else (xs[t], a) for t in range(n)]
        res = res - arrange(call(F, fj, ops), xs + ys)
    return F.reduce(res)


def deformation_residual(D: TruncatedDeformation, s: int) -> np.ndarray:
    """Left minus right side of the order-``s`` equation as a 3-cochain array ``(d, d, D, D)``.

    Arguments are ``z = x_1``, ``X = (x_2, .., x_n)`` and ``Y``.
    """
    A = D.algebra
    if s < 0:
        raise InputError("order must be non-negative")
    if s > D.order:
        raise InputError(f"order {s} exceeds the deformation order {D.order}")
    F = A.field
    if s == 0:
        res = identity_residual(A)
    else:
        res = None
        for j in range(s + 1):
            r = _pair_residual(A, D.term(j), D.term(s - j))
            res = r if res is None else res + r
        res = F.reduce(res)
    return res.reshape(A.dim, A.dim, A.block_dim, A.block_dim)


def check_first_order(D: TruncatedDeformation) -> bool:
    """Whether ``F_1`` is a 2-cocycle; agrees with the vanishing of the order-1 residual."""
    if D.order < 1:
        raise InputError("deformation has no first-order term")
    A = D.algebra
    F = A.field
    R = adjoint_representation(A)
    d2 = coboundary_array(A, R, D.term(1), 2)
    res = deformation_residual(D, 1)
    assert F.equal(res, F.reduce(-d2)), "order-1 residual differs from -δ^2 F_1"
    return F.is_zero(d2)


def half_sum_insertions(D: TruncatedDeformation, s: int) -> np.ndarray:
    """``Σ_{i+j=s, i,j>0} i_{F_i}(F_j)`` (equal to ``G_s / 2``)."""
    A = D.algebra
    F = A.field
    total = F.zeros((A.dim, A.dim, A.block_dim, A.block_dim))
    for i in range(1, s):
        total = total + insertion_array(A, D.term(i), D.term(s - i))
    return F.reduce(total)


def obstruction(D: TruncatedDeformation, s: int) -> Cochain:
    """``G_s = Σ_{i+j=s, i,j>0} [F_i, F_j]_N``, asserted to be a 3-cocycle."""
    A = D.algebra
    F = A.field
    if s < 2:
        raise InputError("obstructions start at order 2")
    if D.order < s - 1:
        raise InputError(f"G_{s} needs F_1..F_{s - 1}; deformation has order {D.order}")
    for r in range(s):
        if not F.is_zero(deformation_residual(D, r)):
            raise PreconditionError(f"deformation equation fails at order {r}", r)
    G = F.zeros((A.dim, A.dim, A.block_dim, A.block_dim))
    for i in range(1, s):
        G = G + bracket_N_array(A, D.term(i), D.term(s - i))
    G = F.reduce(G)
    R = adjoint_representation(A)
    assert F.is_zero(coboundary_array(A, R, G, 3)), "obstruction is not a 3-cocycle"
    return Cochain(A, R, 3, G, check=False)


@dataclass
class ExtensionResult:
    """Outcome of :func:`extend_one_order`.

    On obstruction ``deformation`` is None and ``class_coordinates`` holds the
    coordinates of the class of ``G_{s+1}`` in the computed ``H^3`` basis.
    """

    deformation: TruncatedDeformation | None
    obstruction: Cochain
    class_coordinates: list = dc_field(default_factory=list)
    h3: CohomologyReport | None = None

    @property
    def obstructed(self) -> bool:
        return self.deformation is None


def extend_one_order(D: TruncatedDeformation, spaces: dict | None = None) -> ExtensionResult:
    """Solve ``δ^2 F_{s+1} = G_{s+1} / 2`` on compatible 2-cochains."""
    A = D.algebra
    F = A.field
    require_valid(A, "deformation")
    R = adjoint_representation(A)
    s = D.order + 1
    spaces = {} if spaces is None else spaces
    if s == 1:
        if not D.is_valid():
            raise PreconditionError("base algebra fails the defining identity")
        G = Cochain(A, R, 3, F.zeros((A.dim, A.dim, A.block_dim, A.block_dim)), check=False)
        target = G.coefficients
    else:
        G = obstruction(D, s)
        target = half_sum_insertions(D, s)
        assert F.equal(F.reduce(target + target), G.coefficients), "Σ i_{F_i}F_j differs from G_s / 2"
    C2 = spaces.setdefault(2, CochainSpace(A, R, 2))
    C3 = spaces.setdefault(3, CochainSpace(A, R, 3))
    M = coboundary_matrix(A, R, 2, spaces)
    rhs = C3.coordinates(target)
    if C2.dim == 0:
        x = np.zeros(0, dtype=object) if F.is_zero(rhs) else None
    else:
        x = linalg.solve(F, M, rhs)
    if x is None:
        h3 = cohomology(A, R, 3, spaces, check=False)
        coords = h3.class_coordinates(G)
        return ExtensionResult(None, G, coords, h3)
    Fn = C2.lift(np.asarray(x).reshape(-1, 1))[..., 0] if C2.dim else F.zeros(C2.shape)
    out = D.extended(Fn)
    assert F.is_zero(deformation_residual(out, s)), "extension fails the deformation equation"
    return ExtensionResult(out, G)


def extend_to_order(D: TruncatedDeformation, order: int = DEFAULT_ORDER):
    """Repeatedly extend; returns ``(deformation, steps)`` where steps lists each ExtensionResult."""
    steps = []
    spaces: dict = {}
    while D.order < order:
        res = extend_one_order(D, spaces)
        steps.append(res)
        if res.obstructed:
            break
        D = res.deformation
    return D, steps


# -- equivalences ---------------------------------------------------------------------------

@dataclass
class TruncatedAutomorphism:
    """``φ_t = id + t φ_1 + .. + t^s φ_s``."""

    field: object
    dim: int
    terms: list

    def __post_init__(self):
        F = self.field
        self.terms = [F.array(np.asarray(t)) for t in self.terms]
        for t in self.terms:
            if t.shape != (self.dim, self.dim):
                raise InputError(f"automorphism terms must be {self.dim}x{self.dim}")

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, i: int) -> np.ndarray:
        if i == 0:
            return self.field.eye(self.dim)
        if i <= self.order:
            return self.terms[i - 1]
        return self.field.zeros((self.dim, self.dim))

    def inverse(self, order: int) -> "TruncatedAutomorphism":
        """The power-series inverse truncated at ``order``."""
        F = self.field
        psi = [F.eye(self.dim)]
        for r in range(1, order + 1):
            acc = F.zeros((self.dim, self.dim))
            for a in range(1, r + 1):
                acc = acc - F.matmul(self.term(a), psi[r - a])
            psi.append(F.reduce(acc))
        return TruncatedAutomorphism(F, self.dim, psi[1:])


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def _apply_all(A: NHomLeibnizAlgebra, fb: np.ndarray, mats) -> np.ndarray:
    """``f(m_1 x_1, .., m_n x_n)`` on basis tuples, ``f`` unblocked."""
    F = A.field
    xs = [f"x{i}" for i in range(A.arity)]
    return arrange(call(F, fb, [(x, m) for x, m in zip(xs, mats)]), xs)


def _transported_coefficient(A, outer, inner_terms, maps, r):
    """Coefficient of ``t^r`` in ``outer_t(inner_t(maps_t x_1, .., maps_t x_n))``; outer acts on the left."""
    F = A.field
    total = F.zeros((A.dim,) * (A.arity + 1))
    for a in range(r + 1):
        for b in range(r - a + 1):
            inner = _unblock(A, inner_terms(b))
            for cs in _compositions(r - a - b, A.arity):
                val = _apply_all(A, inner, [maps(c) for c in cs])
                total = total + F.tensordot(outer(a), val, axes=([1], [0]))
    return F.reduce(total)


def check_equivalence(D: TruncatedDeformation, Dp: TruncatedDeformation, phi: TruncatedAutomorphism) -> bool:
    """Compare ``φ_t ∘ f_t`` with ``g_t ∘ φ_t^{⊗n}`` at orders ``0..s`` and check ``φ_i α = α φ_i``."""
    A = D.algebra
    F = A.field
    if Dp.algebra is not A and not F.equal(Dp.algebra.bracket, A.bracket):
        raise InputError("deformations have different base algebras")
    s = max(D.order, Dp.order, phi.order)
    for i in range(1, phi.order + 1):
        if not F.equal(F.matmul(phi.term(i), A.alpha), F.matmul(A.alpha, phi.term(i))):
            return False
    ident = lambda c: F.eye(A.dim) if c == 0 else F.zeros((A.dim, A.dim))  # noqa: E731
    for r in range(s + 1):
        lhs = _transported_coefficient(A, phi.term, D.term, ident, r)
        rhs = _transported_coefficient(A, ident, Dp.term, phi.term, r)
        if not F.equal(lhs, rhs):
            return False
    return True


def transport_deformation(D: TruncatedDeformation, phi: TruncatedAutomorphism) -> TruncatedDeformation:
    """``g_t = φ_t ∘ f_t ∘ (φ_t^{-1})^{⊗n}`` truncated at the order of ``D``.

    Requires ``φ_0 = id`` and ``φ_i`` commuting with alpha, so that ``g_0``
    is the bracket again and the transported terms stay compatible.
    """
    A = D.algebra
    s = max(D.order, phi.order)
    psi = phi.inverse(s)
    terms = []
    for r in range(1, s + 1):
        c = _transported_coefficient(A, phi.term, D.term, psi.term, r)
        terms.append(c.reshape(A.dim, A.dim, A.block_dim))
    return TruncatedDeformation(A, terms)


__all__ = [
    "DEFAULT_ORDER", "ExtensionResult", "TruncatedAutomorphism", "TruncatedDeformation",
    "check_equivalence", "check_first_order", "deformation_residual", "extend_one_order",
    "extend_to_order", "half_sum_insertions", "obstruction", "transport_deformation",
]
