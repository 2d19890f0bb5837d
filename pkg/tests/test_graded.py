import random

import pytest

from homleib.algebra import d_n_minus_one
from homleib.catalog import perturb, random_cochain_coefficients, suite_algebra
from homleib.cochains import CochainSpace, coboundary_array, identity_cochain
from homleib.embedding import delta_embed_array
from homleib.errors import InputError
from homleib.fields import QQ
from homleib.graded import (bracket_L, bracket_N, bracket_N_array, compose_N_array, insertion_array, pi_cochain,
                            shuffles)
from homleib.representations import adjoint_representation

from conftest import SUITE_NAMES
from oracles import binary_composition


def _spaces(name, top=4):
    A = suite_algebra(name)
    R = adjoint_representation(A)
    return A, R, {p: CochainSpace(A, R, p) for p in range(1, top + 1)}


def _rand(rng, S):
    return random_cochain_coefficients(QQ, rng, S)


class TestShuffles:
    def test_one_one(self):
        assert [(s.images, s.sign) for s in shuffles(1, 1)] == [((1, 2), 1), ((2, 1), -1)]

    def test_two_one(self):
        assert [(s.images, s.sign) for s in shuffles(2, 1)] == [((1, 2, 3), 1), ((1, 3, 2), -1), ((2, 3, 1), 1)]

    @pytest.mark.parametrize("r", [0, 1, 3])
    def test_empty_block_is_identity(self, r):
        for sh in (shuffles(0, r), shuffles(r, 0)):
            assert [(s.images, s.sign) for s in sh] == [(tuple(range(1, r + 1)), 1)]

    def test_counts(self):
        assert [len(shuffles(q, 4 - q)) for q in range(5)] == [1, 4, 6, 4, 1]
        with pytest.raises(InputError):
            shuffles(-1, 2)


class TestComposition:
    def test_identity_examples(self):
        A = suite_algebra("ternary_d2")
        pi = A.bracket_blocked
        one = identity_cochain(A).coefficients
        (s0,) = shuffles(0, 1)
        assert QQ.equal(compose_N_array(A, pi, one, 0, s0), pi)
        # inserting the identity into the block argument hits each of its n - 1 coordinates
        assert QQ.equal(compose_N_array(A, pi, one, 1, ()), QQ.scale(2, pi))
        assert QQ.equal(compose_N_array(A, one, pi, 0, shuffles(1, 0)[0]), pi)

    def test_insertions_and_bracket_with_identity(self):
        for name in ("e22_d2", "ternary_d2"):
            A = suite_algebra(name)
            n = A.arity
            pi, one = A.bracket_blocked, identity_cochain(A).coefficients
            assert QQ.equal(insertion_array(A, pi, one), QQ.scale(n, pi))
            assert QQ.equal(insertion_array(A, one, pi), pi)
            assert QQ.equal(bracket_N_array(A, pi, one), QQ.scale(n - 1, pi))

    @pytest.mark.parametrize("name", ["yau_e22", "yau_lie", "lie_d2"])
    @pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (1, 2), (0, 2)])
    def test_binary_oracle(self, name, p, q, rng):
        A, _, sp = _spaces(name)
        f, g = _rand(rng, sp[p + 1]), _rand(rng, sp[q + 1])
        as_dict = lambda a: {k: QQ.to_fraction(v) for k, v in zip(_indices(a.shape), a.ravel()) if v}
        alpha = [[QQ.to_fraction(x) for x in row] for row in A.alpha]
        for k in range(p + 1):
            for sh in shuffles(q, p - k):
                got = as_dict(compose_N_array(A, f, g, k, sh))
                assert got == binary_composition(A.dim, as_dict(f), as_dict(g), alpha, p, q, k, sh.images)

    def test_bad_arguments(self):
        A = suite_algebra("e22_d2")
        pi = A.bracket_blocked
        with pytest.raises(InputError):
            compose_N_array(A, pi, pi, 2, (1, 2))
        with pytest.raises(InputError):
            compose_N_array(A, pi, pi, 0, (1, 1))
        with pytest.raises(InputError):
            insertion_array(A, pi, QQ.zeros((2, 3)))


def _indices(shape):
    import itertools
    return itertools.product(*(range(s) for s in shape))


class TestBracket:
    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_pi_squares_to_zero(self, name):
        A = suite_algebra(name)
        pi = pi_cochain(A)
        assert bracket_N(A, pi, pi).is_zero()
        assert QQ.is_zero(insertion_array(A, pi.coefficients, pi.coefficients))

    @pytest.mark.parametrize("name", ["e22_d2", "lie_d2", "ternary_d2"])
    def test_pi_square_detects_broken_identity(self, name):
        B = perturb(suite_algebra(name), random.Random(5))
        pi = B.bracket_blocked
        sq = bracket_N_array(B, pi, pi)
        assert not QQ.is_zero(sq)
        assert QQ.equal(sq, QQ.scale(2, insertion_array(B, pi, pi)))

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_coboundary_is_bracket_with_pi(self, name, rng):
        A, R, sp = _spaces(name)
        pi = A.bracket_blocked
        for p in (1, 2, 3):
            f = _rand(rng, sp[p])
            assert QQ.is_zero(coboundary_array(A, R, f, p) + bracket_N_array(A, f, pi))

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_graded_antisymmetry(self, name, rng):
        A, _, sp = _spaces(name)
        for p, q in [(0, 0), (0, 1), (1, 1), (1, 2)]:
            f, g = _rand(rng, sp[p + 1]), _rand(rng, sp[q + 1])
            sign = -1 if (p * q) % 2 == 0 else 1
            assert QQ.is_zero(bracket_N_array(A, f, g) - QQ.scale(sign, bracket_N_array(A, g, f)))

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_graded_jacobi(self, name, rng):
        A, _, sp = _spaces(name)
        B = lambda a, b: bracket_N_array(A, a, b)
        for p, q, r in [(0, 0, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1), (2, 0, 1)]:
            f, g, h = _rand(rng, sp[p + 1]), _rand(rng, sp[q + 1]), _rand(rng, sp[r + 1])
            J = (QQ.scale((-1) ** (p * r), B(f, B(g, h))) + QQ.scale((-1) ** (q * p), B(g, B(h, f)))
                 + QQ.scale((-1) ** (r * q), B(h, B(f, g))))
            assert QQ.is_zero(J)

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_embedding_is_a_bracket_morphism(self, name, rng):
        A, _, sp = _spaces(name)
        G = d_n_minus_one(A)
        for p, q in [(0, 0), (1, 1), (0, 2)]:
            f, g = _rand(rng, sp[p + 1]), _rand(rng, sp[q + 1])
            lhs = delta_embed_array(A, bracket_N_array(A, f, g), p + q + 1)
            rhs = bracket_L(G, delta_embed_array(A, f, p + 1), delta_embed_array(A, g, q + 1))
            assert QQ.equal(lhs, rhs)

    def test_bracket_L_needs_binary(self):
        A = suite_algebra("ternary_d2")
        with pytest.raises(InputError):
            bracket_L(A, A.bracket_blocked, A.bracket_blocked)


def _derivation_sides(name, rng, p, q):
    """``δ[f, g]``, ``[δf, g]`` and ``[f, δg]`` for random ``f`` of grade ``p`` and ``g`` of grade ``q``."""
    A, R, sp = _spaces(name)
    f, g = _rand(rng, sp[p + 1]), _rand(rng, sp[q + 1])
    lhs = coboundary_array(A, R, bracket_N_array(A, f, g), p + q + 1)
    a = bracket_N_array(A, coboundary_array(A, R, f, p + 1), g)
    b = bracket_N_array(A, f, coboundary_array(A, R, g, q + 1))
    return lhs, a, b


GRADES = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)]


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_coboundary_over_bracket(name, rng):
    # δ[f, g] = (-1)^{deg g + 1} [δf, g] + [f, δg] with deg g the cochain degree of g
    for p, q in GRADES:
        lhs, a, b = _derivation_sides(name, rng, p, q)
        assert QQ.is_zero(lhs - QQ.scale((-1) ** (q + 2), a) - b)


@pytest.mark.parametrize("name", ["lie_d2", "e22_d2", "ternary_d2"])
def test_coboundary_over_bracket_fails_with_grade_sign(name, rng):
    # the same formula with the grade of g in the exponent is wrong whenever [δf, g] is nonzero
    bad = 0
    for p, q in GRADES:
        lhs, a, b = _derivation_sides(name, rng, p, q)
        if not QQ.is_zero(a):
            bad += not QQ.is_zero(lhs - QQ.scale((-1) ** (q + 1), a) - b)
    assert bad > 0
