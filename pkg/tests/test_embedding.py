import pytest

from homleib.algebra import yau_twist
from homleib.catalog import SUITE, random_cochain_coefficients, suite_algebra, e22_d2
from homleib.cochains import CochainSpace, Cochain, zero_cochain
from homleib.embedding import (check_commuting_square, check_injectivity, delta_embed, delta_embed_array,
                               delta_matrix, square_sides)
from homleib.errors import PreconditionError
from homleib.fields import QQ, PrimeField
from homleib.representations import adjoint_representation, trivial_representation

from conftest import BINARY, TERNARY


@pytest.mark.parametrize("name", BINARY)
def test_binary_embedding_is_the_identity(name, rng):
    A = suite_algebra(name)
    R = adjoint_representation(A)
    for p in (1, 2, 3):
        f = random_cochain_coefficients(QQ, rng, CochainSpace(A, R, p))
        assert QQ.equal(delta_embed_array(A, f, p), f)


def test_ternary_degree_one_example():
    # Δf(x1 ⊗ x2) = f(x1) ⊗ x2 + x1 ⊗ f(x2) for α = id
    A = suite_algebra("ternary_d2")
    f = QQ.array([[0, 1], [0, 0]])  # e2 -> e1
    out = delta_embed_array(A, f, 1)
    # block basis e_a ⊗ e_b has index 2a + b: f(e2) ⊗ e_b and e_a ⊗ f(e2) are the only nonzero terms
    assert [(i, j) for i in range(4) for j in range(4) if out[i, j]] == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert all(QQ.format(out[i, j]) == "1" for i, j in [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.mark.parametrize("name", BINARY)
def test_square_binary(name):
    assert check_commuting_square(suite_algebra(name), 3).holds


@pytest.mark.parametrize("name", TERNARY)
def test_square_ternary(name):
    rep = check_commuting_square(suite_algebra(name), 2)
    assert rep.holds and rep.max_degree_checked == 2 and rep.failed_degree is None


def test_square_over_prime_field():
    assert check_commuting_square(suite_algebra("yau_ternary", PrimeField(101)), 2)


def test_square_sides_shapes():
    A = suite_algebra("yau_ternary")
    left, right = square_sides(A, 2)
    S = CochainSpace(A, adjoint_representation(A), 2)
    assert left.shape == right.shape == (A.block_dim ** 4, S.dim)


@pytest.mark.parametrize("name", [e.name for e in SUITE])
def test_injective_for_invertible_twist(name):
    A = suite_algebra(name)
    for p in (1, 2):
        assert check_injectivity(A, p)


def test_singular_twist_is_rejected():
    A = yau_twist(e22_d2(), QQ.zeros((2, 2)))
    with pytest.raises(PreconditionError):
        check_injectivity(A, 1)


def test_embedding_of_zero_and_rank():
    A = suite_algebra("ternary_d2")
    R = adjoint_representation(A)
    out = delta_embed(A, zero_cochain(A, R, 2))
    assert QQ.is_zero(out.coefficients) and out.is_compatible()
    M = delta_matrix(A, 1)
    assert M.shape == (16, 4)


def test_embedding_needs_adjoint_values():
    A = suite_algebra("ternary_d2")
    R = trivial_representation(A, 1)
    with pytest.raises(PreconditionError):
        delta_embed(A, Cochain(A, R, 1, QQ.zeros((1, 2))))
