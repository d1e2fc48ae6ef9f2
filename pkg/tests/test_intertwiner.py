from __future__ import annotations

from fractions import Fraction

import pytest

from wsinglet.errors import OutOfRange
from wsinglet.intertwiner import (TransporterT, Window, Y_coefficient, check_L_minus1_derivative,
                                  check_commutator, E_minus_apply, E_plus_apply, eval_Y,
                                  int_h_apply, lambda_sq, log_witness, source_top, target_top)
from wsinglet.lattice_fock import FockVector
from wsinglet.scalars import ExactScalar
from wsinglet.screening import vertex_mode


def _w(p, k, part=(), nil=1):
    return FockVector(source_top(p, nil), {(part, k): Fraction(1)})


def _vs(p):
    return [FockVector.vacuum(p, p - 1), FockVector.monomial(p, p - 1, (1,)),
            FockVector.monomial(p, p - 1, (2,))]


class TestSetup:
    def test_lambda(self):
        assert lambda_sq(2) == Fraction(1, 4)
        assert lambda_sq(3) == Fraction(2, 3)

    def test_window(self):
        w = Window.around(2, 3)
        assert (w.min_exp, w.max_exp, w.depth) == (Fraction(-19, 4), Fraction(21, 4), 3)

    @pytest.mark.parametrize("p", [2, 3])
    def test_transporter(self, p):
        assert TransporterT(p).intertwines()
        assert TransporterT(p).intertwines(0)

    def test_tops(self):
        assert source_top(2).j == 1 and target_top(2).j == 2
        assert target_top(3).zero_mode_matrix() == [[4, 1], [0, 4]]

    def test_second_argument_must_be_beta(self):
        with pytest.raises(OutOfRange):
            Y_coefficient(_w(2, 0), FockVector.vacuum(2, 0), 0)

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            Y_coefficient(_w(2, 0), FockVector.vacuum(2, 1), 0, convention="other")


class TestSeriesPieces:
    def test_E_minus_on_vacuum(self):
        out = E_minus_apply(Window(Fraction(0), Fraction(2), 2), FockVector.vacuum(2, 1))
        # exp(sum alpha(-k) x^k / 4k) on e^beta
        assert out.coefficient(1) == FockVector.monomial(2, 1, (1,)) * Fraction(1, 4)
        assert out.coefficient(2).coeff((2,)) == Fraction(1, 8)
        assert out.coefficient(2).coeff((1, 1)) == Fraction(1, 32)

    def test_E_plus_kills_vacuum(self):
        v = FockVector.vacuum(2, 1)
        out = E_plus_apply(Window(Fraction(-3), Fraction(3), 3), v)
        assert out.nonzero_terms() == [((Fraction(0), 0), v)]

    def test_E_plus_on_descendant(self):
        v = FockVector.monomial(2, 1, (1,))
        out = E_plus_apply(Window(Fraction(-3), Fraction(3), 3), v)
        # alpha(1) alpha(-1) e^beta = 4 e^beta; the exponential factor contributes -1/4
        assert out.coefficient(-1) == FockVector.vacuum(2, 1) * -1

    def test_int_h_plus_has_log(self):
        v = FockVector.vacuum(2, 1)
        out = int_h_apply("+", v, Window(Fraction(-2), Fraction(2), 2))
        assert out.max_log_degree() == 1
        assert out.coefficient(0, 1) == v * ExactScalar(0, Fraction(1, 4), 2)

    def test_int_h_minus(self):
        v = FockVector.vacuum(2, 1)
        out = int_h_apply("-", v, Window(Fraction(-2), Fraction(2), 2))
        assert out.exponents() == {1, 2}
        assert out.max_log_degree() == 0

    def test_int_h_sign(self):
        with pytest.raises(ValueError):
            int_h_apply("*", FockVector.vacuum(2, 1), Window(Fraction(0), Fraction(1), 1))


class TestIntertwiner:
    @pytest.mark.parametrize("p", [2, 3])
    def test_derivative_property(self, p):
        window = Window.around(p, 2)
        for w in (_w(p, 0), _w(p, 1), _w(p, 1, (1,))):
            for v in _vs(p):
                r = check_L_minus1_derivative(w, v, window)
                assert r.ok and r.checked > 0, r.failure

    @pytest.mark.parametrize("m", [-1, 0, 1, 2])
    def test_commutators(self, m):
        window = Window.around(2, 2)
        for w in (_w(2, 0), _w(2, 1), _w(2, 1, (1,))):
            for v in _vs(2)[:2]:
                assert check_commutator(m, w, v, window).ok

    def test_commutator_precondition(self):
        with pytest.raises(OutOfRange):
            check_commutator(-2, _w(2, 0), FockVector.vacuum(2, 1), Window.around(2, 1))

    @pytest.mark.parametrize("p", [2, 3])
    def test_log_degree_at_most_one(self, p):
        for w in (_w(p, 0), _w(p, 1), _w(p, 1, (2,))):
            Y = eval_Y(w, FockVector.monomial(p, p - 1, (1,)), Window.around(p, 3))
            assert Y.max_log_degree() <= 1

    @pytest.mark.parametrize("p", [2, 3])
    def test_exponents_in_coset(self, p):
        Y = eval_Y(_w(p, 1), FockVector.vacuum(p, p - 1), Window.around(p, 3))
        assert Y.exponents()
        assert all((e - lambda_sq(p)).denominator == 1 for e in Y.exponents())

    def test_w1_has_no_log(self):
        Y = eval_Y(_w(2, 0), FockVector.vacuum(2, 1), Window.around(2, 3))
        assert Y.max_log_degree() == 0

    def test_log_witness(self):
        wit = log_witness(2)
        eb = FockVector.vacuum(2, 2)
        # (p-1)/2p times e^{2 beta} in the u1 slot
        assert wit == FockVector(target_top(2), {((), 0): Fraction(1, 4)})
        assert {part for (part, _) in wit.terms} == {part for (part, _) in eb.terms}

    def test_target_convention_breaks_derivative(self):
        r = check_L_minus1_derivative(_w(2, 1), FockVector.vacuum(2, 1), Window.around(2, 2),
                                      convention="target")
        assert not r.ok

    def test_degeneration(self):
        lam2 = lambda_sq(2)
        v = FockVector.monomial(2, 1, (1,))
        Y = eval_Y(_w(2, 1, nil=0), v, Window.around(2, 4), degenerate=True)
        assert Y.max_log_degree() == 0
        for kk in range(-1, 3):
            got = Y.coefficient(lam2 + kk)
            ref = vertex_mode(1, -(lam2 + kk) - 1, v)
            assert {part: c for (part, _), c in got.terms.items()} == \
                {part: c for (part, _), c in ref.terms.items()}

    def test_depth_zero_window(self):
        Y = eval_Y(_w(2, 0), FockVector.vacuum(2, 1), Window.around(2, 0))
        assert Y.exponents() == {lambda_sq(2)}

    def test_json(self):
        js = eval_Y(_w(2, 1), FockVector.vacuum(2, 1), Window.around(2, 0)).to_json()
        assert {t["log"] for t in js} == {0, 1}
        assert all(t["exponent"] == "1/4" for t in js)
