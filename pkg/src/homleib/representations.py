"""Representations of multiplicative n-Hom-Leibniz algebras.

A representation ``(M, alpha_M)`` carries ``n`` action tensors.  Action
``i`` has the module variable in slot ``i`` (0-based): ``actions[i]`` has
shape ``(m, s_0, .., s_{n-1})`` with ``s_i = m`` and every other ``s_t = d``.

The defining relations are checked through the semidirect product
``K = M ⊕ L`` (module coordinates first): its bracket sums the actions,
and the relations are exactly the defining identity of ``K`` evaluated on
tuples with a single module argument.  Tuples with no module argument
give the algebra identity; tuples with two or more vanish identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import (NHomLeibnizAlgebra, identity_residual, require_multiplicative,
                      require_valid)
from .errors import InputError
from .fields import Field
from .tensors import arrange, call


class Representation:
    """Module space of dimension ``m`` with twist ``alpha_m`` and ``n`` actions."""

    def __init__(self, field: Field, dim: int, arity: int, module_dim: int, alpha_m, actions,
                 name: str | None = None):
        self.field = field
        self.dim = int(dim)
        self.arity = int(arity)
        self.module_dim = int(module_dim)
        self.name = name
        self.alpha_m = field.array(np.asarray(alpha_m))
        if self.alpha_m.shape != (module_dim, module_dim):
            raise InputError(f"alpha_M must be {module_dim}x{module_dim}")
        if len(actions) != arity:
            raise InputError(f"expected {arity} action tensors, got {len(actions)}")
        acts = []
        for i, a in enumerate(actions):
            a = field.array(np.asarray(a))
            if a.shape != self.action_shape(i):
                raise InputError(f"action {i} must have shape {self.action_shape(i)}, got {a.shape}")
            acts.append(a)
        self.actions = tuple(acts)

    def action_shape(self, i: int) -> tuple:
        slots = [self.dim] * self.arity
        slots[i] = self.module_dim
        return (self.module_dim, *slots)

    def action_blocked(self, i: int) -> np.ndarray:
        """Action ``i`` with all arguments after the first merged: ``(m, s_0, rest)``."""
        a = self.actions[i]
        return a.reshape(a.shape[0], a.shape[1], -1)

    @property
    def alpha_m_is_identity(self) -> bool:
        return linalg.is_identity(self.field, self.alpha_m)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Representation{label} module_dim={self.module_dim} arity={self.arity}>"


@dataclass(frozen=True)
class RepresentationReport:
    """``failed_relation`` is ``(slot, tuple)``.

    ``slot`` is the 0-based position of the module variable among
    ``x_1..x_n, y_1..y_{n-1}``, or ``("equivariance", i)`` for action ``i``.
    In ``tuple`` the module coordinate is an index into M, the rest into L.
    """

    holds: bool
    failed_relation: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _check_shapes(A: NHomLeibnizAlgebra, R: Representation):
    if (R.dim, R.arity) != (A.dim, A.arity) or R.field != A.field:
        raise InputError(f"representation is for dim={R.dim}, arity={R.arity}; "
                         f"algebra has dim={A.dim}, arity={A.arity}")


def semidirect_bracket(A: NHomLeibnizAlgebra, R: Representation, cocycle=None) -> np.ndarray:
    """Bracket of ``M ⊕ L`` built from the actions and an optional ``(m, d, .., d)`` map."""
    F = A.field
    m, d, n = R.module_dim, A.dim, A.arity
    K = F.zeros((m + d,) * (n + 1))
    L = slice(m, m + d)
    M = slice(0, m)
    K[(L,) + (L,) * n] = A.bracket
    for i in range(n):
        idx = [L] * n
        idx[i] = M
        K[(M,) + tuple(idx)] = R.actions[i]
    if cocycle is not None:
        K[(M,) + (L,) * n] = cocycle
    return K


def semidirect_product(A: NHomLeibnizAlgebra, R: Representation, cocycle=None) -> NHomLeibnizAlgebra:
    F = A.field
    alpha_k = linalg.block_diag(F, R.alpha_m, A.alpha)
    return NHomLeibnizAlgebra(F, R.module_dim + A.dim, A.arity,
                              semidirect_bracket(A, R, cocycle), alpha_k)


def equivariance_residual(A: NHomLeibnizAlgebra, R: Representation, i: int) -> np.ndarray:
    """``alpha_M ∘ action_i - action_i ∘ (alpha, .., alpha_M, .., alpha)``."""
    F = A.field
    names = [f"a{t}" for t in range(A.arity)]
    ops = [(nm, R.alpha_m if t == i else A.alpha) for t, nm in enumerate(names)]
    rhs = arrange(call(F, R.actions[i], ops), names)
    lhs = F.tensordot(R.alpha_m, R.actions[i], axes=([1], [0]))
    return F.reduce(lhs - rhs)


def check_representation(A: NHomLeibnizAlgebra, R: Representation) -> RepresentationReport:
    """Check the ``2n-1`` defining relations and twist-equivariance of the actions."""
    _check_shapes(A, R)
    require_multiplicative(A, "check_representation")
    m, d, n = R.module_dim, A.dim, A.arity
    res = identity_residual(semidirect_product(A, R))
    nvars = 2 * n - 1
    for slot in range(nvars):
        idx = [slice(m, m + d)] * nvars
        idx[slot] = slice(0, m)
        part = res[(slice(0, m),) + tuple(idx)]
        bad = np.argwhere(np.any(np.moveaxis(part, 0, -1) != 0, axis=-1))
        if len(bad):
            return RepresentationReport(False, (slot, tuple(int(v) for v in bad[0])))
    for i in range(n):
        part = equivariance_residual(A, R, i)
        bad = np.argwhere(np.any(np.moveaxis(part, 0, -1) != 0, axis=-1))
        if len(bad):
            return RepresentationReport(False, (("equivariance", i), tuple(int(v) for v in bad[0])))
    return RepresentationReport(True)


def adjoint_representation(A: NHomLeibnizAlgebra) -> Representation:
    require_valid(A, "adjoint representation")
    return Representation(A.field, A.dim, A.arity, A.dim, A.alpha, [A.bracket] * A.arity,
                          name="adjoint")


def trivial_representation(A: NHomLeibnizAlgebra, module_dim: int = 1, alpha_m=None) -> Representation:
    """Zero actions on ``K^m``."""
    F = A.field
    alpha_m = F.eye(module_dim) if alpha_m is None else alpha_m
    R = Representation(F, A.dim, A.arity, module_dim, alpha_m,
                       [F.zeros(_shape(A, module_dim, i)) for i in range(A.arity)], name="trivial")
    return R


def _shape(A, m, i):
    slots = [A.dim] * A.arity
    slots[i] = m
    return (m, *slots)


def character_representation(A: NHomLeibnizAlgebra, weight, alpha_m=1, slots=None) -> Representation:
    """One-dimensional module on which action ``i`` is ``c_i λ(x)..λ(x)`` times ``v``.

    ``slots`` lists the coefficients ``c_0, .., c_{n-1}`` (default ``1, 0, .., 0``,
    i.e. only ``[v, x_1, .., x_{n-1}]_0 = λ(x_1)..λ(x_{n-1}) v``), and
    ``alpha_M`` is multiplication by ``alpha_m``.  Whether the relations hold
    depends on ``λ``, the coefficients and the twist; :func:`check_representation`
    decides.  A typical valid case is ``λ`` killing the bracket image with
    ``λ ∘ alpha = λ``.
    """
    F = A.field
    lam = F.array(np.asarray(weight))
    if lam.shape != (A.dim,):
        raise InputError(f"weight must have length {A.dim}")
    slots = [1] + [0] * (A.arity - 1) if slots is None else list(slots)
    if len(slots) != A.arity:
        raise InputError(f"need {A.arity} slot coefficients")
    prod = F.array([1])
    for _ in range(A.arity - 1):
        prod = F.outer(prod, lam)
    prod = prod.reshape((1, 1) + (A.dim,) * (A.arity - 1))
    acts = []
    for i, c in enumerate(slots):
        a = np.moveaxis(prod, 1, 1 + i)  # module slot to position i
        acts.append(F.reduce(F.scale(F.scalar(c), a)))
    return Representation(F, A.dim, A.arity, 1, F.array([[alpha_m]]), acts, name="character")


def direct_sum(A: NHomLeibnizAlgebra, R1: Representation, R2: Representation) -> Representation:
    F = A.field
    m1, m2 = R1.module_dim, R2.module_dim
    acts = []
    for i in range(A.arity):
        a = F.zeros(_shape(A, m1 + m2, i))
        idx1 = [slice(None)] * A.arity
        idx2 = [slice(None)] * A.arity
        idx1[i] = slice(0, m1)
        idx2[i] = slice(m1, m1 + m2)
        a[(slice(0, m1),) + tuple(idx1)] = R1.actions[i]
        a[(slice(m1, m1 + m2),) + tuple(idx2)] = R2.actions[i]
        acts.append(a)
    alpha = linalg.block_diag(F, R1.alpha_m, R2.alpha_m)
    return Representation(F, A.dim, A.arity, m1 + m2, alpha, acts, name="sum")


# -- symbolic form of the relations ----------------------------------------------

def _render(expr, m_var, n, names):
    """Render a nested bracket expression; returns ``(text, is_module)``."""
    kind = expr[0]
    if kind == "var":
        v = expr[1]
        return names[v], v == m_var
    if kind == "tw":
        text, is_mod = _render(expr[1], m_var, n, names)
        return (f"α_M({text})" if is_mod else f"α({text})"), is_mod
    parts = [_render(e, m_var, n, names) for e in expr[1]]
    mods = [i for i, (_, mod) in enumerate(parts) if mod]
    inner = ", ".join(t for t, _ in parts)
    if not mods:
        return f"[{inner}]", False
    i = mods[0]
    if n == 2:
        return (f"mu_r({inner})" if i == 0 else f"mu_l({inner})"), True
    return f"act{i}({inner})", True


def symbolic_relations(n: int):
    """The ``2n-1`` representation relations as ``(lhs_terms, rhs_terms)`` strings.

    Relation ``t`` puts the module variable ``v`` in position ``t`` of
    ``x_1..x_n, y_1..y_{n-1}``.  At ``n = 2`` the remaining variables are
    renamed ``x, y`` in order of appearance and actions print as
    ``mu_r`` (module first) and ``mu_l`` (module second).
    """
    xs = list(range(n))
    ys = list(range(n, 2 * n - 1))
    lhs = ("br", [("br", [("var", x) for x in xs])] + [("tw", ("var", y)) for y in ys])
    rhs = []
    for i in range(n):
        args = []
        for t in xs:
            if t == i:
                args.append(("br", [("var", t)] + [("var", y) for y in ys]))
            else:
                args.append(("tw", ("var", t)))
        rhs.append(("br", args))
    out = []
    for t in range(2 * n - 1):
        if n == 2:
            letters = iter("xy")
            names = {v: ("v" if v == t else next(letters)) for v in range(3)}
        else:
            names = {v: ("v" if v == t else (f"x{v + 1}" if v < n else f"y{v - n + 1}"))
                     for v in range(2 * n - 1)}
        out.append(([_render(lhs, t, n, names)[0]], [_render(r, t, n, names)[0] for r in rhs]))
    return out


__all__ = [
    "Representation", "RepresentationReport", "adjoint_representation", "character_representation",
    "check_representation", "direct_sum", "equivariance_residual", "semidirect_bracket",
    "semidirect_product", "symbolic_relations", "trivial_representation",
]
