"""Cochains, the coboundary, cohomology, derivations and abelian extensions.

A ``p``-cochain with values in a representation ``M`` is stored in *block
form*: an array of shape ``(m, d, D, .., D)`` with ``p - 1`` block axes,
``D = d**(n-1)``, each block axis being the C-order flattening of ``n - 1``
basis indices.  Extra trailing axes are batch axes, so one call of
:func:`coboundary` can act on a whole basis of cochains.

Only *compatible* maps are cochains: ``alpha_M ∘ f = f ∘ (alpha ⊗ abar^{p-1})``
where ``abar = alpha^{⊗(n-1)}``.  :class:`CochainSpace` computes that
subspace, with fast paths when both twists are diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .algebra import NHomLeibnizAlgebra, check_n_hom_leibniz, require_multiplicative, require_valid
from .errors import InputError, PreconditionError
from .linalg import Subspace
from .representations import Representation, adjoint_representation, semidirect_product
from .tensors import arrange, call


# -- compatible cochain spaces --------------------------------------------------------

def _block_shape(A: NHomLeibnizAlgebra, R: Representation, p: int) -> tuple:
    return (R.module_dim, A.dim) + (A.block_dim,) * (p - 1)


class CochainSpace:
    """The space ``C^p(L, M)`` of compatible ``p``-cochains.

    ``subspace`` lives in the flattened ambient space of all multilinear
    maps; coordinates of a compatible cochain are its entries at the RREF
    pivot positions.
    """

    def __init__(self, A: NHomLeibnizAlgebra, R: Representation, p: int):
        if p < 1:
            raise InputError("cochain degree must be at least 1")
        require_multiplicative(A, "cochains")
        self.algebra = A
        self.rep = R
        self.degree = p
        self.shape = _block_shape(A, R, p)
        self.ambient_dim = int(np.prod(self.shape, dtype=int))
        self.subspace = self._compute()

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def pivots(self) -> list:
        return self.subspace.pivots

    def _weights(self):
        """Diagonal weights ``(out, in)`` if both twists are diagonal, else None."""
        F = self.algebra.field
        a, am = self.algebra.alpha, self.rep.alpha_m
        if not (linalg.is_diagonal(F, a) and linalg.is_diagonal(F, am)):
            return None
        da = np.array([a[i, i] for i in range(a.shape[0])], dtype=a.dtype)
        w = da
        for _ in range(self.ambient_inputs - 1):
            w = F.outer(w, da)
        dm = np.array([am[i, i] for i in range(am.shape[0])], dtype=am.dtype)
        return dm, w.reshape(-1)

    @property
    def ambient_inputs(self) -> int:
        return 1 + (self.algebra.arity - 1) * (self.degree - 1)

    def _compute(self) -> Subspace:
        F = self.algebra.field
        m = self.rep.module_dim
        N = self.ambient_dim // m
        weights = self._weights()
        if weights is not None:
            dm, w = weights
            mask = np.array([[dm[c] == w[j] for j in range(N)] for c in range(m)], dtype=bool)
            pos = np.flatnonzero(mask.reshape(-1))
            basis = F.zeros((len(pos), self.ambient_dim))
            if len(pos):
                basis[np.arange(len(pos)), pos] = F.scalar(1)
            return Subspace(F, self.ambient_dim, _rref=(basis, [int(q) for q in pos]))
        # dense path: kernel of vec(f) -> alpha_M f - f A, with A = alpha^{⊗k}
        big = linalg.kron(F, *([self.algebra.alpha] * self.ambient_inputs))
        M = F.reduce(linalg.kron(F, self.rep.alpha_m, F.eye(N)) - linalg.kron(F, F.eye(m), big.T))
        return linalg.kernel(F, M)

    # -- conversions ------------------------------------------------------------------

    def basis_batch(self) -> np.ndarray:
        """All basis cochains stacked on a trailing batch axis: ``shape + (dim,)``."""
        return np.moveaxis(self.subspace.basis, 0, -1).reshape(self.shape + (self.dim,))

    def coordinates(self, arr: np.ndarray) -> np.ndarray:
        """Coordinates of (a batch of) compatible cochains; raises if incompatible."""
        batch = arr.shape[len(self.shape):]
        if arr.shape[:len(self.shape)] != self.shape:
            raise InputError(f"cochain has shape {arr.shape[:len(self.shape)]}, expected {self.shape}")
        if not self.algebra.field.is_zero(compatibility_residual(self.algebra, self.rep, arr, self.degree)):
            raise PreconditionError(f"{self.degree}-cochain is not compatible with the twists")
        flat = arr.reshape((self.ambient_dim,) + batch)
        return flat[self.pivots]

    def lift(self, coords) -> np.ndarray:
        coords = np.asarray(coords)
        flat = self.subspace.lift(coords)
        return flat.reshape(self.shape + coords.shape[1:])


def compatibility_residual(A: NHomLeibnizAlgebra, R: Representation, arr: np.ndarray, p: int) -> np.ndarray:
    """``alpha_M ∘ f - f ∘ (alpha ⊗ abar^{p-1})`` for a (batched) block-form ``p``-cochain."""
    F = A.field
    if arr.shape[:p + 1] != _block_shape(A, R, p):
        raise InputError(f"cochain of shape {arr.shape} is not a {p}-cochain for this algebra")
    names = ["z"] + [f"X{i}" for i in range(1, p)]
    abar = A.block_alpha_power(1)
    ops = [("z", A.alpha_power(1))] + [(nm, abar) for nm in names[1:]]
    rhs = arrange(call(F, arr, ops), names)
    lhs = F.tensordot(R.alpha_m, arr, axes=([1], [0]))
    return F.reduce(lhs - rhs)


@dataclass
class Cochain:
    """A compatible ``p``-cochain in block form."""

    algebra: NHomLeibnizAlgebra
    rep: Representation
    degree: int
    coefficients: np.ndarray
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        shape = _block_shape(self.algebra, self.rep, self.degree)
        if self.coefficients.shape != shape:
            raise InputError(f"{self.degree}-cochain must have shape {shape}, got {self.coefficients.shape}")
        if self.check and not is_compatible(self.algebra, self.rep, self.coefficients, self.degree):
            raise PreconditionError(f"{self.degree}-cochain is not compatible with the twists")

    @property
    def grade(self) -> int:
        return self.degree - 1

    def unblocked(self) -> np.ndarray:
        """Coefficients with every argument on its own axis: ``(m, d, .., d)``."""
        A = self.algebra
        return self.coefficients.reshape((self.rep.module_dim,) + (A.dim,) * (1 + (A.arity - 1) * (self.degree - 1)))

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.algebra, self.rep, self.degree,
                       self.algebra.field.reduce(self.coefficients + other.coefficients), check=False)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.algebra, self.rep, self.degree,
                       self.algebra.field.reduce(self.coefficients - other.coefficients), check=False)

    def scale(self, c) -> "Cochain":
        F = self.algebra.field
        return Cochain(self.algebra, self.rep, self.degree, F.scale(c, self.coefficients), check=False)

    def is_zero(self) -> bool:
        return self.algebra.field.is_zero(self.coefficients)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.algebra.field.equal(self.coefficients, other.coefficients))


def is_compatible(A: NHomLeibnizAlgebra, R: Representation, arr: np.ndarray, p: int) -> bool:
    return A.field.is_zero(compatibility_residual(A, R, arr, p))


def zero_cochain(A, R, p) -> Cochain:
    return Cochain(A, R, p, A.field.zeros(_block_shape(A, R, p)), check=False)


def identity_cochain(A: NHomLeibnizAlgebra) -> Cochain:
    """The identity map as a 1-cochain with adjoint coefficients."""
    R = adjoint_representation(A)
    return Cochain(A, R, 1, A.field.eye(A.dim))


# -- the coboundary -------------------------------------------------------------------

def coboundary_array(A: NHomLeibnizAlgebra, R: Representation, f: np.ndarray, p: int) -> np.ndarray:
    """``δ^p`` on a block-form array ``f`` (trailing batch axes allowed)."""
    F = A.field
    n1 = A.arity - 1
    X = [f"X{i}" for i in range(1, p + 1)]
    order = ["z"] + X
    a1 = A.alpha_power(1)
    abar = A.block_alpha_power(1)
    DB = A.block_bracket
    pib = A.bracket_blocked
    total = None

    def add(term, sign):
        nonlocal total
        arr = arrange(term, order)
        if sign < 0:
            arr = -arr
        total = arr if total is None else total + arr

    # term 1: bracket of two blocks in slot i, X_j deleted
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            ops = [("z", a1)]
            for l in range(1, p + 1):
                if l == j:
                    continue
                ops.append(call(F, DB, [X[i - 1], X[j - 1]]) if l == i else (X[l - 1], abar))
            add(call(F, f, ops), (-1) ** j)
    # term 2: [z, X_i] in the first slot
    for i in range(1, p + 1):
        ops = [call(F, pib, ["z", X[i - 1]])] + [(X[l - 1], abar) for l in range(1, p + 1) if l != i]
        add(call(F, f, ops), (-1) ** i)
    # term 3: action 0 on f(z, .., X_i deleted, ..) and abar^{p-1} X_i
    rho0 = R.action_blocked(0)
    abar_p = A.block_alpha_power(p - 1)
    for i in range(1, p + 1):
        inner = call(F, f, ["z"] + [X[l - 1] for l in range(1, p + 1) if l != i])
        add(call(F, rho0, [inner, (X[i - 1], abar_p)]), (-1) ** (i + 1))
    # term 4: f(X_1^s, X_2, .., X_p) in slot s of action s
    ap = A.alpha_power(p - 1)
    coords = [f"X1_{t}" for t in range(n1)]
    order4 = ["z", tuple(coords)] + X[1:]
    for s in range(1, n1 + 1):
        ops = [("z", ap)]
        for t in range(1, n1 + 1):
            if t == s:
                ops.append(call(F, f, [coords[t - 1]] + X[1:]))
            else:
                ops.append((coords[t - 1], ap))
        arr = arrange(call(F, R.actions[s], ops), order4)
        total = arr if total is None else total + arr
    return F.reduce(total)


def coboundary(A: NHomLeibnizAlgebra, R: Representation, f: Cochain) -> Cochain:
    """``δ^p f``; the result is checked to be compatible."""
    out = coboundary_array(A, R, f.coefficients, f.degree)
    assert is_compatible(A, R, out, f.degree + 1), "coboundary left the compatible subspace"
    return Cochain(A, R, f.degree + 1, out, check=False)


def coboundary_matrix(A: NHomLeibnizAlgebra, R: Representation, p: int,
                      spaces: dict | None = None) -> np.ndarray:
    """Matrix of ``δ^p`` from compatible ``C^p`` coordinates to compatible ``C^{p+1}`` coordinates."""
    src = cochain_space(A, R, p, spaces)
    dst = cochain_space(A, R, p + 1, spaces)
    F = A.field
    if src.dim == 0:
        return F.zeros((dst.dim, 0))
    images = coboundary_array(A, R, src.basis_batch(), p)
    # coordinates() asserts compatibility of every image
    return dst.coordinates(images).reshape(dst.dim, src.dim)


def cochain_space(A, R, p, spaces: dict | None = None) -> CochainSpace:
    if spaces is None:
        return CochainSpace(A, R, p)
    if p not in spaces:
        spaces[p] = CochainSpace(A, R, p)
    return spaces[p]


# -- cohomology -----------------------------------------------------------------------

@dataclass
class CohomologyReport:
    degree: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_H: int
    basis_representatives: list
    cocycles: Subspace = dc_field(repr=False, default=None)
    coboundaries: Subspace = dc_field(repr=False, default=None)
    space: CochainSpace = dc_field(repr=False, default=None)

    def class_coordinates(self, f: Cochain) -> list:
        """Coordinates of the class of the cocycle ``f`` in the representative basis."""
        c = self.space.coordinates(f.coefficients)
        if not self.cocycles.contains(c):
            raise PreconditionError("cochain is not a cocycle")
        F = self.space.algebra.field
        reps = [self.space.coordinates(r.coefficients) for r in self.basis_representatives]
        cols = list(self.coboundaries.basis) + reps
        if not cols:
            return []
        x = linalg.solve(F, np.array(cols, dtype=self.coboundaries.basis.dtype).T, c)
        return list(x[len(cols) - len(reps):])


def _check_pair(A, R):
    require_valid(A, "cohomology")
    from .representations import check_representation

    rep = check_representation(A, R)
    if not rep.holds:
        raise PreconditionError("coefficients are not a representation", rep.failed_relation)


def cohomology(A: NHomLeibnizAlgebra, R: Representation, p: int, spaces: dict | None = None,
               check: bool = True) -> CohomologyReport:
    """``H^p(L, M)`` with ``B^1 = 0``."""
    if p < 1:
        raise InputError("cohomology degree must be at least 1")
    if check:
        _check_pair(A, R)
    spaces = {} if spaces is None else spaces
    F = A.field
    Cp = cochain_space(A, R, p, spaces)
    Z = linalg.kernel(F, coboundary_matrix(A, R, p, spaces))
    if p == 1:
        B = Subspace.zero(F, Cp.dim)
    else:
        B = linalg.image(F, coboundary_matrix(A, R, p - 1, spaces))
    h = linalg.quotient_dim(Z, B)
    reps = B.complement_in(Z)
    cochains = [Cochain(A, R, p, Cp.lift(np.asarray(r).reshape(-1, 1))[..., 0], check=False) for r in reps]
    return CohomologyReport(p, Cp.dim, Z.dim, B.dim, h, cochains, Z, B, Cp)


# -- derivations ----------------------------------------------------------------------

def derivation_space(A: NHomLeibnizAlgebra, R: Representation) -> Subspace:
    """Compatible maps ``f: L -> M`` with ``f[x_1..x_n] = Σ_i [x_1, .., f(x_i), .., x_n]_i``.

    Built directly from the defining identity (not through ``δ``); the
    result lives in the row-major flattening of ``m x d`` matrices.
    """
    F = A.field
    m, d, n = R.module_dim, A.dim, A.arity
    k = m * d
    basis = F.eye(k).reshape(m, d, k)  # batch of all elementary maps
    xs = [f"x{i}" for i in range(n)]
    lhs = arrange(call(F, basis, [call(F, A.bracket, xs)]), xs)
    rows = [lhs]
    for i in range(n):
        ops = [call(F, basis, [x]) if t == i else x for t, x in enumerate(xs)]
        rows.append(-arrange(call(F, R.actions[i], ops), xs))
    eq = F.reduce(sum(rows[1:], rows[0])).reshape(-1, k)
    compat = F.reduce(F.tensordot(R.alpha_m, basis, axes=([1], [0]))
                      - np.moveaxis(F.tensordot(basis, A.alpha, axes=([1], [0])), -1, 1))
    M = np.concatenate([eq, compat.reshape(-1, k)])
    return linalg.kernel(F, M)


# -- abelian extensions ---------------------------------------------------------------

@dataclass
class AbelianExtension:
    """``K = M ⊕ L`` with bracket twisted by a 2-cochain; M coordinates come first."""

    algebra: NHomLeibnizAlgebra
    module_dim: int
    base_dim: int

    @property
    def inclusion(self) -> list:
        return list(range(self.module_dim))

    @property
    def projection(self) -> list:
        return list(range(self.module_dim, self.module_dim + self.base_dim))

    def section(self, i: int) -> int:
        """Index in ``K`` of the coordinate lift of basis vector ``e_i`` of ``L``."""
        return self.module_dim + i


def build_extension(A: NHomLeibnizAlgebra, R: Representation, f: Cochain,
                    verify: bool = True) -> AbelianExtension:
    """The algebra ``K_f``; with ``verify`` asserts valid ⟺ ``δ^2 f = 0``."""
    if f.degree != 2:
        raise InputError("an extension needs a 2-cochain")
    K = semidirect_product(A, R, f.unblocked())
    ext = AbelianExtension(K, R.module_dim, A.dim)
    if verify:
        valid = check_n_hom_leibniz(K).holds
        cocycle = coboundary(A, R, f).is_zero()
        assert valid == cocycle, "extension validity disagrees with the cocycle condition"
    return ext


def extension_morphism(A, R, h: Cochain) -> np.ndarray:
    """Matrix of ``(m, x) -> (m + h(x), x)`` on ``M ⊕ L``."""
    F = A.field
    m, d = R.module_dim, A.dim
    phi = F.eye(m + d)
    phi[:m, m:] = h.coefficients
    return phi


def extensions_isomorphic(A: NHomLeibnizAlgebra, R: Representation, f: Cochain, g: Cochain):
    """``φ: K_f -> K_g`` from ``h`` with ``f - g = δ^1 h``, or None if not cohomologous."""
    for c, nm in ((f, "f"), (g, "g")):
        if not coboundary(A, R, c).is_zero():
            raise PreconditionError(f"{nm} is not a 2-cocycle")
    F = A.field
    spaces: dict = {}
    C1 = cochain_space(A, R, 1, spaces)
    C2 = cochain_space(A, R, 2, spaces)
    M = coboundary_matrix(A, R, 1, spaces)
    rhs = C2.coordinates((f - g).coefficients)
    x = linalg.solve(F, M, rhs) if C1.dim else (None if not F.is_zero(rhs) else np.zeros(0))
    if x is None:
        return None
    h = Cochain(A, R, 1, C1.lift(np.asarray(x).reshape(-1, 1))[..., 0] if C1.dim
                else F.zeros((R.module_dim, A.dim)), check=False)
    phi = extension_morphism(A, R, h)
    Kf = build_extension(A, R, f, verify=False).algebra
    Kg = build_extension(A, R, g, verify=False).algebra
    lhs = F.tensordot(phi, Kf.bracket, axes=([1], [0]))
    xs = [f"x{i}" for i in range(A.arity)]
    rhs_b = arrange(call(F, Kg.bracket, [(x, phi) for x in xs]), xs)
    assert F.equal(lhs, rhs_b), "φ is not a morphism K_f -> K_g"
    assert F.equal(F.matmul(phi, Kf.alpha), F.matmul(Kg.alpha, phi)), "φ does not commute with α_K"
    return phi


# -- Chevalley-Eilenberg complex of a Hom-Leibniz algebra ------------------------------

def ce_differential(G: NHomLeibnizAlgebra, V: Representation, f: np.ndarray, degree: int | None = None,
                    check: bool = True) -> np.ndarray:
    """``d_q f`` for a map ``f`` of shape ``(m, g, .., g)`` with ``q`` inputs.

    Trailing batch axes are allowed when ``degree`` is given.

    Left action ``[x, v]`` is ``V.actions[1]``, right action ``[v, x]`` is ``V.actions[0]``.
    """
    if G.arity != 2:
        raise InputError("the Chevalley-Eilenberg differential needs a binary algebra")
    F = G.field
    g = G.dim
    q = f.ndim - 1 if degree is None else degree
    if f.shape[:q + 1] != (V.module_dim,) + (g,) * q:
        raise InputError(f"map of shape {f.shape} is not a {q}-cochain for this algebra")
    if check:
        names = [f"x{i}" for i in range(q)]
        rhs = arrange(call(F, f, [(nm, G.alpha) for nm in names]), names)
        if not F.equal(F.tensordot(V.alpha_m, f, axes=([1], [0])), rhs):
            raise PreconditionError(f"{q}-cochain is not compatible with the twists")
    xs = [f"x{i}" for i in range(1, q + 2)]
    a_pow = linalg.matrix_power(F, G.alpha, q - 1)
    a_pow = None if linalg.is_identity(F, a_pow) else a_pow
    a1 = None if linalg.is_identity(F, G.alpha) else G.alpha
    total = arrange(call(F, V.actions[1], [(xs[0], a_pow), call(F, f, xs[1:])]), xs)
    for i in range(2, q + 2):
        inner = call(F, f, [x for t, x in enumerate(xs, 1) if t != i])
        term = arrange(call(F, V.actions[0], [inner, (xs[i - 1], a_pow)]), xs)
        total = total + term if i % 2 == 0 else total - term
    for i in range(1, q + 2):
        for j in range(i + 1, q + 2):
            ops = []
            for t in range(1, q + 2):
                if t == j:
                    continue
                ops.append(call(F, G.bracket, [xs[i - 1], xs[j - 1]]) if t == i else (xs[t - 1], a1))
            term = arrange(call(F, f, ops), xs)
            total = total + term if (j + 1) % 2 == 0 else total - term
    return F.reduce(total)


__all__ = [
    "AbelianExtension", "Cochain", "CochainSpace", "CohomologyReport", "build_extension",
    "ce_differential", "coboundary", "coboundary_array", "coboundary_matrix", "cochain_space",
    "cohomology", "compatibility_residual", "derivation_space", "extension_morphism",
    "extensions_isomorphic", "identity_cochain", "is_compatible", "zero_cochain",
]
