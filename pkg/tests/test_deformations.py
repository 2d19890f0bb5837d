import numpy as np
import pytest

from homleib import linalg
from homleib.algebra import NHomLeibnizAlgebra, identity_residual
from homleib.catalog import random_cochain_coefficients, suite_algebra
from homleib.cochains import Cochain, CochainSpace, coboundary, coboundary_array, cohomology
from homleib.deformations import (TruncatedAutomorphism, TruncatedDeformation, check_equivalence,
                                  check_first_order, deformation_residual, extend_one_order, extend_to_order,
                                  half_sum_insertions, obstruction, transport_deformation)
from homleib.errors import InputError, PreconditionError
from homleib.fields import QQ
from homleib.representations import adjoint_representation

from conftest import SUITE_NAMES


def _setup(name):
    A = suite_algebra(name)
    R = adjoint_representation(A)
    return A, R, CochainSpace(A, R, 1), CochainSpace(A, R, 2)


def _non_cocycle(A, R, C2, rng):
    for _ in range(50):
        f = random_cochain_coefficients(QQ, rng, C2)
        if not QQ.is_zero(coboundary_array(A, R, f, 2)):
            return f
    raise AssertionError("no non-cocycle found")


def _residual_by_evaluation(D, t_values):
    """Coefficients of ``t^k`` in the defect of ``Σ t^i F_i``, by interpolating exact evaluations."""
    A = D.algebra
    s = D.order
    full = (A.dim,) * (A.arity + 1)
    samples = []
    for t in t_values:
        br = sum((QQ.scale(QQ.scalar(t) ** i, D.term(i)) for i in range(1, s + 1)), D.term(0))
        samples.append(identity_residual(A.with_bracket(QQ.reduce(br).reshape(full))).ravel())
    V = QQ.array([[QQ.scalar(t) ** k for k in range(len(t_values))] for t in t_values])
    Vinv = np.stack([linalg.solve(QQ, V, QQ.eye(len(t_values))[:, j]) for j in range(len(t_values))], axis=1)
    coeffs = QQ.matmul(Vinv, np.stack(samples))
    shape = (A.dim, A.dim, A.block_dim, A.block_dim)
    return [coeffs[k].reshape(shape) for k in range(s + 1)]


class TestResidual:
    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_order_zero_is_the_identity(self, name):
        A, _, _, C2 = _setup(name)
        D = TruncatedDeformation(A, [QQ.zeros(C2.shape)])
        assert QQ.is_zero(deformation_residual(D, 0)) and D.is_valid()

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_first_order_is_minus_coboundary(self, name, rng):
        A, R, _, C2 = _setup(name)
        f = random_cochain_coefficients(QQ, rng, C2)
        D = TruncatedDeformation(A, [f])
        assert QQ.equal(deformation_residual(D, 1), QQ.reduce(-coboundary_array(A, R, f, 2)))
        assert check_first_order(D) == QQ.is_zero(coboundary_array(A, R, f, 2))

    @pytest.mark.parametrize("name", ["e22_d2", "yau_ternary", "lie_d2"])
    def test_matches_evaluation(self, name, rng):
        A, _, _, C2 = _setup(name)
        D = TruncatedDeformation(A, [random_cochain_coefficients(QQ, rng, C2) for _ in range(2)])
        by_eval = _residual_by_evaluation(D, [0, 1, -1, 2, -2])
        for s in range(3):
            assert QQ.equal(deformation_residual(D, s), by_eval[s])

    def test_order_bounds(self):
        A, _, _, C2 = _setup("e22_d2")
        D = TruncatedDeformation(A, [QQ.zeros(C2.shape)])
        with pytest.raises(InputError):
            deformation_residual(D, 2)
        with pytest.raises(InputError):
            deformation_residual(D, -1)
        with pytest.raises(InputError):
            check_first_order(TruncatedDeformation(A, []))

    def test_rejects_incompatible_terms(self):
        A = suite_algebra("yau_e22")
        f = QQ.zeros((2, 2, 2))
        f[1, 0, 0] = QQ.scalar(1)
        with pytest.raises(PreconditionError):
            TruncatedDeformation(A, [f])
        with pytest.raises(InputError):
            TruncatedDeformation(A, [QQ.zeros((2, 2))])


class TestObstruction:
    def test_needs_solved_equations(self, rng):
        A, R, _, C2 = _setup("lie_d2")
        D = TruncatedDeformation(A, [_non_cocycle(A, R, C2, rng)])
        with pytest.raises(PreconditionError):
            obstruction(D, 2)
        with pytest.raises(InputError):
            obstruction(D, 1)
        with pytest.raises(InputError):
            obstruction(D, 3)

    @pytest.mark.parametrize("name", ["e22_d2", "abelian_d2_n3", "abelian_d1_n2"])
    def test_is_a_cocycle_at_orders_two_and_three(self, name, rng):
        A, R, _, _ = _setup(name)
        h2 = cohomology(A, R, 2)
        f = sum((r.scale(rng.randint(1, 3)) for r in h2.basis_representatives), Cochain(A, R, 2, QQ.zeros(h2.space.shape)))
        D = TruncatedDeformation(A, [f])
        G2 = obstruction(D, 2)
        assert coboundary(A, R, G2).is_zero()
        assert QQ.equal(QQ.scale(2, half_sum_insertions(D, 2)), G2.coefficients)
        res = extend_one_order(D)
        if not res.obstructed:
            G3 = obstruction(res.deformation, 3)
            assert coboundary(A, R, G3).is_zero()

    def test_abelian_line_is_obstructed(self):
        # F_1(e, e) = e on the abelian line: the order-two equation would force c^2 = 2 c^2
        A, R, _, _ = _setup("abelian_d1_n2")
        (r,) = cohomology(A, R, 2).basis_representatives
        res = extend_one_order(TruncatedDeformation(A, [r]))
        assert res.obstructed and res.deformation is None
        assert [QQ.format(c) for c in res.class_coordinates] == ["-2"]
        assert res.h3.dim_H == 1

    def test_abelian_cocycles_are_not_always_extendable(self, rng):
        A, R, _, C2 = _setup("abelian_d2_n3")
        outcomes = set()
        for _ in range(6):
            f = random_cochain_coefficients(QQ, rng, C2)  # every cochain is a cocycle here
            D = TruncatedDeformation(A, [f])
            assert check_first_order(D)
            outcomes.add(extend_one_order(D).obstructed)
        assert True in outcomes
        assert not extend_one_order(TruncatedDeformation(A, [QQ.zeros(C2.shape)])).obstructed


class TestExtension:
    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_coboundary_direction_extends(self, name, rng):
        A, R, C1, _ = _setup(name)
        h = random_cochain_coefficients(QQ, rng, C1)
        D, steps = extend_to_order(TruncatedDeformation(A, [coboundary_array(A, R, h, 1)]), 3)
        assert D.order == 3 and not any(s.obstructed for s in steps) and D.is_valid()

    def test_e22_class_extends(self):
        A, R, _, _ = _setup("e22_d2")
        (r,) = cohomology(A, R, 2).basis_representatives
        D, steps = extend_to_order(TruncatedDeformation(A, [r]), 4)
        assert D.order == 4 and len(steps) == 3
        assert all(QQ.is_zero(x) for x in _residual_by_evaluation(D, range(-4, 5)))

    def test_start_from_nothing(self):
        A, _, _, C2 = _setup("ternary_d2")
        res = extend_one_order(TruncatedDeformation(A, []))
        assert not res.obstructed and res.deformation.order == 1

    def test_invalid_base(self):
        A = NHomLeibnizAlgebra.from_entries(QQ, 2, 2, [((1, 0), 0, -1)])
        with pytest.raises(PreconditionError):
            extend_one_order(_bare(A))


def _bare(A):
    # TruncatedDeformation validates its terms through Cochain, which needs a valid algebra
    D = object.__new__(TruncatedDeformation)
    D.algebra, D.terms = A, []
    return D


class TestEquivalence:
    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_coboundary_is_trivial(self, name, rng):
        A, R, C1, C2 = _setup(name)
        h = random_cochain_coefficients(QQ, rng, C1)
        D1 = TruncatedDeformation(A, [coboundary_array(A, R, h, 1)])
        D0 = TruncatedDeformation(A, [QQ.zeros(C2.shape)])
        phi = TruncatedAutomorphism(QQ, A.dim, [h])
        assert check_equivalence(D1, D0, phi)

    @pytest.mark.parametrize("name", ["lie_d2", "e22_d2", "ternary_d2", "yau_ternary"])
    def test_direction_matters(self, name, rng):
        A, R, C1, C2 = _setup(name)
        while True:
            h = random_cochain_coefficients(QQ, rng, C1)
            dh = coboundary_array(A, R, h, 1)
            if not QQ.is_zero(dh):
                break
        D1 = TruncatedDeformation(A, [dh])
        D0 = TruncatedDeformation(A, [QQ.zeros(C2.shape)])
        assert not check_equivalence(D0, D1, TruncatedAutomorphism(QQ, A.dim, [h]))

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_transport(self, name, rng):
        A, R, C1, C2 = _setup(name)
        D = TruncatedDeformation(A, [QQ.zeros(C2.shape)])
        phi = TruncatedAutomorphism(QQ, A.dim, [random_cochain_coefficients(QQ, rng, C1) for _ in range(2)])
        T = transport_deformation(D, phi)
        assert T.order == 2 and T.is_valid() and check_equivalence(D, T, phi)

    def test_inverse(self, rng):
        phi = TruncatedAutomorphism(QQ, 2, [QQ.random_array(rng, (2, 2)), QQ.random_array(rng, (2, 2))])
        psi = phi.inverse(4)
        for r in range(1, 5):
            acc = sum((QQ.matmul(phi.term(a), psi.term(r - a)) for a in range(r + 1)), QQ.zeros((2, 2)))
            assert QQ.is_zero(acc)

    def test_non_commuting_term_is_not_equivalence(self):
        A, _, _, C2 = _setup("yau_e22")
        D = TruncatedDeformation(A, [QQ.zeros(C2.shape)])
        phi = TruncatedAutomorphism(QQ, 2, [QQ.array([[0, 1], [0, 0]])])
        assert not check_equivalence(D, D, phi)

    def test_shape_check(self):
        with pytest.raises(InputError):
            TruncatedAutomorphism(QQ, 2, [QQ.eye(3)])
