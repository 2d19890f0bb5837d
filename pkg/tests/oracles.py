"""Independent reference implementations used to freeze expected values.

Everything here works on plain dicts of ``fractions.Fraction`` and explicit
loops over basis tuples; nothing is imported from ``homleib`` so that a bug
in the package cannot hide itself.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy


def bracket_dict(entries):
    """``{(indices, target): coeff}`` from 0-based ``(indices, target, coeff)``."""
    return {(tuple(i), t): Fraction(c) for i, t, c in entries}


def _apply_bracket(br, d, args):
    """``[v_1, .., v_n]`` for coordinate vectors ``v_i`` (lists of Fractions)."""
    out = [Fraction(0)] * d
    for (idx, t), c in br.items():
        prod = c
        for v, i in zip(args, idx):
            prod *= v[i]
            if not prod:
                break
        out[t] += prod
    return out


def _mat_vec(M, v):
    return [sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M))]


def _unit(d, i):
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return v


def fundamental_identity_defect(d, n, br, alphas):
    """First basis tuple ``(x_1..x_n, y_1..y_{n-1})`` where the twisted identity fails, else None.

    ``alphas`` lists the ``n - 1`` twist matrices.
    """
    for tup in itertools.product(range(d), repeat=2 * n - 1):
        xs = [_unit(d, i) for i in tup[:n]]
        ys = [_unit(d, i) for i in tup[n:]]
        lhs = _apply_bracket(br, d, [_apply_bracket(br, d, xs)] + [_mat_vec(alphas[j], ys[j]) for j in range(n - 1)])
        rhs = [Fraction(0)] * d
        for i in range(n):
            args = []
            for t in range(n):
                if t < i:
                    args.append(_mat_vec(alphas[t], xs[t]))
                elif t == i:
                    args.append(_apply_bracket(br, d, [xs[i]] + ys))
                else:
                    args.append(_mat_vec(alphas[t - 1], xs[t]))
            rhs = [a + b for a, b in zip(rhs, _apply_bracket(br, d, args))]
        if lhs != rhs:
            return tup
    return None


def loday_coboundary_matrix(d, br, p):
    """Matrix of the classical Leibniz coboundary on all ``p``-cochains of a right Leibniz algebra.

    ``(δf)(x_1..x_{p+1}) = [x_1, f(x_2..)] + Σ_{i>=2} (-1)^i [f(..x̂_i..), x_i]
    + Σ_{i<j} (-1)^{j+1} f(x_1.., [x_i, x_j], .., x̂_j, ..)`` with adjoint coefficients.

    Columns are indexed by ``(out, x_1..x_p)`` and rows by ``(out, x_1..x_{p+1})``,
    both in row-major order.
    """
    cols = list(itertools.product(range(d), repeat=p + 1))
    rows = list(itertools.product(range(d), repeat=p + 2))
    col_index = {c: k for k, c in enumerate(cols)}
    row_index = {r: k for k, r in enumerate(rows)}
    M = [[Fraction(0)] * len(cols) for _ in rows]

    def mult(a, b):
        """``[e_a, e_b]`` as ``{target: coeff}``."""
        return {t: c for (idx, t), c in br.items() if idx == (a, b) and c}

    for xs in itertools.product(range(d), repeat=p + 1):
        # contribution of the elementary cochain f_{(o, ys)} to δf evaluated at xs
        # term A: [x_1, f(x_2..x_{p+1})]
        ys = xs[1:]
        for o in range(d):
            for t, c in mult(xs[0], o).items():
                M[row_index[(t,) + xs]][col_index[(o,) + ys]] += c
        # term B: Σ_{i>=2} (-1)^i [f(x_1..x̂_i..), x_i]
        for i in range(2, p + 2):
            ys = xs[:i - 1] + xs[i:]
            sign = (-1) ** i
            for o in range(d):
                for t, c in mult(o, xs[i - 1]).items():
                    M[row_index[(t,) + xs]][col_index[(o,) + ys]] += sign * c
        # term C: Σ_{i<j} (-1)^{j+1} f(x_1.., [x_i, x_j], .., x̂_j, ..)
        for i in range(1, p + 2):
            for j in range(i + 1, p + 2):
                sign = (-1) ** (j + 1)
                for t, c in mult(xs[i - 1], xs[j - 1]).items():
                    ys = list(xs)
                    ys[i - 1] = t
                    del ys[j - 1]
                    for o in range(d):
                        M[row_index[(o,) + xs]][col_index[(o,) + tuple(ys)]] += sign * c
    return M


def sympy_rank(rows) -> int:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                          for x in r] for r in rows]).rank()


def sympy_nullity(rows) -> int:
    m = sympy.Matrix(rows)
    return m.shape[1] - m.rank()


def binary_composition(d, f, g, alpha, p, q, k, images):
    """``f ∘_k^σ g`` for a binary twisted algebra, by explicit evaluation on basis tuples.

    ``f`` and ``g`` are dicts ``{(out, z, x_1..): coeff}`` of grades ``p`` and ``q``;
    ``images`` are the shuffle images relative to position ``k``.  Arguments that
    pass by the inserted cochain are hit by ``α^q``.
    """
    aq = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for _ in range(q):
        aq = [[sum(aq[i][t] * alpha[t][j] for t in range(d)) for j in range(d)] for i in range(d)]

    def ev(c, args):
        out = [Fraction(0)] * d
        for key, v in c.items():
            prod = v
            for vec, i in zip(args, key[1:]):
                prod *= vec[i]
                if not prod:
                    break
            out[key[0]] += prod
        return out

    res = {}
    for tup in itertools.product(range(d), repeat=p + q + 1):
        z, X = _unit(d, tup[0]), [_unit(d, i) for i in tup[1:]]
        pos = [k + i for i in images]  # absolute, 1-based
        if k == 0:
            args = [ev(g, [z] + [X[j - 1] for j in pos[:q]])] + [_mat_vec(aq, X[j - 1]) for j in pos[q:]]
        else:
            args = [_mat_vec(aq, z)] + [_mat_vec(aq, X[j]) for j in range(k - 1)]
            args.append(ev(g, [X[k - 1]] + [X[j - 1] for j in pos[:q]]))
            args += [_mat_vec(aq, X[j - 1]) for j in pos[q:]]
        for o, v in enumerate(ev(f, args)):
            if v:
                res[(o,) + tup] = v
    return res
