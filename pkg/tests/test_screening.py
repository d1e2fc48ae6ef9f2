from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import fock_vectors, ps
from wsinglet.errors import BudgetExceeded, OutOfRange, UnsupportedMode
from wsinglet.lattice_fock import FockVector, mode_act, momentum_weight
from wsinglet.screening import (A_op, Q, Qtilde, dyson_closed_form, dyson_constant,
                                kernel_basis, kernel_graded, lattice_mode,
                                operator_singular_vector, power_apply, product_formula_check,
                                vertex_mode)
from wsinglet.singlet import compute_H
from wsinglet.virasoro import L, VirasoroParams, h_n, is_singular


def _vec(p, j, terms):
    return FockVector(FockVector.vacuum(p, j).top, {(k, 0): Fraction(c) for k, c in terms.items()})


class TestVertexOperators:
    def test_Q_on_minus_alpha(self):
        H = _vec(2, 0, {(1, 1, 1): Fraction(1, 6), (2, 1): Fraction(1, 2), (3,): Fraction(1, 3)})
        assert Q(FockVector.vacuum(2, -4)) == H
        assert vertex_mode(4, 0, FockVector.vacuum(2, -4)) == H

    def test_Q_on_beta_minus_alpha(self):
        v = Q(FockVector.vacuum(2, -3))
        assert v == _vec(2, 1, {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)})
        assert L(0, v) == v * Fraction(15, 8)

    @pytest.mark.parametrize("j", [4, 5, 9])
    def test_high_modes_vanish(self, j):
        assert not vertex_mode(4, j, FockVector.vacuum(2, -4))

    def test_off_lattice_mode(self):
        with pytest.raises(UnsupportedMode):
            Qtilde(FockVector.vacuum(2, 1))

    def test_qtilde_vacuum_and_Q_beta(self):
        assert not Qtilde(FockVector.vacuum(2, 0))
        assert not Q(FockVector.vacuum(2, 1))

    @pytest.mark.parametrize("p", [2, 3])
    def test_A_top_index_is_Q(self, p):
        v = FockVector.monomial(p, -1, (2, 1))
        assert A_op(p - 1, v) == Q(v)

    def test_lattice_mode_of_alpha(self):
        u = FockVector.monomial(2, 0, (1,))
        v = FockVector.monomial(2, 1, (2, 1))
        for j in range(-2, 3):
            assert lattice_mode(u, j, v) == mode_act(j, v)

    def test_lattice_mode_of_vacuum_state(self):
        v = FockVector.monomial(2, 3, (2,))
        assert lattice_mode(FockVector.vacuum(2, 0), -1, v) == v
        assert not lattice_mode(FockVector.vacuum(2, 0), 0, v)

    def test_lattice_mode_of_exponential_matches_vertex_mode(self):
        v = FockVector.monomial(3, 1, (1, 1))
        for m in range(-3, 2):
            assert lattice_mode(FockVector.vacuum(3, 6), m, v) == vertex_mode(6, m, v)


class TestPowersAndSingularVectors:
    @pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2)])
    def test_odd_power_kills(self, p, n):
        assert not power_apply(Q, 2 * n + 1, FockVector.vacuum(p, -2 * p * n))
        assert power_apply(Q, 2 * n, FockVector.vacuum(p, -2 * p * n))

    def test_power_zero(self):
        v = FockVector.monomial(2, 3, (1,))
        assert power_apply(Q, 0, v) == v

    def test_Q_squared_on_gamma0(self):
        assert power_apply(Q, 2, FockVector.vacuum(2, -4))

    def test_u1_is_H(self):
        assert operator_singular_vector("u", 1, 2) == compute_H(2)

    def test_u0_is_vacuum(self):
        u = operator_singular_vector("u", 0, 3)
        assert u == FockVector.vacuum(3, 0) and not L(0, u)

    @pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
    def test_v_weights(self, p, n):
        v = operator_singular_vector("v", n, p)
        assert is_singular(v) and L(0, v) == v * h_n(p, n)

    @pytest.mark.parametrize("p,i,n", [(3, 0, 1), (3, 1, 1), (2, 0, 1)])
    def test_u_i(self, p, i, n):
        u = operator_singular_vector("u_i", n, p, i)
        (deg,) = u.degrees()
        assert deg == n * (n * p + p - i - 1)
        assert u.sector == i

    def test_u_i_index_check(self):
        with pytest.raises(OutOfRange):
            operator_singular_vector("u_i", 1, 2, 1)


class TestDyson:
    @pytest.mark.parametrize("n,p,value", [(1, 1, -2), (1, 2, 6), (1, 3, -20), (2, 2, 2520),
                                           (2, 1, 24), (3, 1, -720)])
    def test_values(self, n, p, value):
        r = dyson_constant(n, p)
        assert r.brute == r.closed == value

    def test_closed_form_sign(self):
        assert dyson_closed_form(2, 3) == 369600

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            dyson_constant(2, 2, budget=10)

    def test_precondition(self):
        with pytest.raises(OutOfRange):
            dyson_constant(0, 2)

    @pytest.mark.parametrize("p,i,n", [(2, 0, 1), (3, 0, 1), (3, 1, 1), (2, 1, 1)])
    def test_A_power_constant(self, p, i, n):
        # A^{2n} e^{gamma_i - n alpha} = C_n e^{gamma_i + n alpha}
        start = FockVector.vacuum(p, i - 2 * p * n)
        out = power_apply(lambda v: A_op(i, v), 2 * n, start)
        assert out.terms == {((), 0): Fraction(dyson_closed_form(n, p))}
        assert out.sector == i + 2 * p * n


class TestProductFormula:
    @pytest.mark.parametrize("n,p", [(1, 2), (1, 3)])
    def test_holds(self, n, p):
        assert product_formula_check(n, p)

    def test_trivial(self):
        assert product_formula_check(0, 2)


class TestKernels:
    def test_singlet_kernel_dims(self):
        assert kernel_graded("Qtilde", 1, 0, 4, 2).kernel_dims()[:3] == [1, 0, 1]

    def test_beta_kernel_degree0(self):
        assert kernel_graded("Q", 1, 1, 0, 2).kernel_dims() == [1]

    def test_rank_nullity(self):
        rep = kernel_graded("Q", 1, 1, 5, 3)
        assert all(r.rank + r.kernel == r.dim for r in rep.rows)

    def test_json_schema(self):
        js = kernel_graded("Qtilde", 1, 0, 2, 2).to_json()
        assert set(js) == {"op", "power", "sector", "rows"}
        assert js["rows"][2] == {"degree": 2, "dim": 2, "rank": 1, "kernel": 1}

    def test_kernel_basis_is_kernel(self):
        for v in kernel_basis("Qtilde", 1, 0, 4, 3):
            assert v and not Qtilde(v)

    def test_degree2_kernel_is_L_minus2_vacuum(self):
        (v,) = kernel_basis("Qtilde", 1, 0, 2, 2)
        w = L(-2, FockVector.vacuum(2, 0))
        assert v * (w.coeff((2,)) / v.coeff((2,))) == w


@given(ps, st.data())
def test_screenings_commute(p, data):
    v = data.draw(fock_vectors(p, data.draw(st.sampled_from([0, -p, p])), 4))
    assert Q(Qtilde(v)) == Qtilde(Q(v))


@given(ps, st.data())
def test_screenings_preserve_weight(p, data):
    j = data.draw(st.sampled_from([0, p, -2 * p]))
    d = data.draw(st.integers(0, 4))
    v = data.draw(fock_vectors(p, j, 4)).homogeneous_part(d)
    h = momentum_weight(j, p) + d
    params = VirasoroParams(p)
    for w in (Q(v), Qtilde(v)):
        assert L(0, w, params) == w * h


@given(ps, st.integers(-2, 4), st.data())
def test_qtilde_derivation(p, m, data):
    u = data.draw(fock_vectors(p, 0, 3))
    v = data.draw(fock_vectors(p, data.draw(st.sampled_from([0, p])), 2))
    lhs = Qtilde(lattice_mode(u, m, v))
    rhs = lattice_mode(Qtilde(u), m, v) + lattice_mode(u, m, Qtilde(v))
    assert lhs == rhs
