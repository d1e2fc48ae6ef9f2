from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import fock_vectors, ps
from wsinglet.errors import NonHomogeneous, OutOfRange
from wsinglet.lattice_fock import FockVector, graded_component, mode_act, weight
from wsinglet.screening import Q, Qtilde
from wsinglet.virasoro import (L, VirasoroParams, central_charge, descendant_span, h_n, h_weight,
                               is_singular, positive_orbit, span_dims, verma_chain)


def test_vacuum_and_beta_weights():
    assert not L(0, FockVector.vacuum(2, 0))
    eb = FockVector.vacuum(2, 1)
    assert L(0, eb) == eb * Fraction(-1, 8)


@pytest.mark.parametrize("p,c", [(2, -2), (3, -7)])
def test_central_charge(p, c):
    assert central_charge(VirasoroParams(p)) == c
    assert c == 1 - Fraction(6 * (p - 1) ** 2, p)


def test_free_boson_central_charge():
    assert central_charge(VirasoroParams(2, 0)) == 1


def test_first_singular_vector_in_beta_sector():
    v = FockVector(FockVector.vacuum(2, 1).top, {((1, 1), 0): Fraction(1, 2), ((2,), 0): Fraction(1, 2)})
    assert not L(1, v) and not L(2, v)
    assert is_singular(v)
    assert v == Q(FockVector.vacuum(2, -3))


def test_is_singular_examples():
    assert is_singular(FockVector.vacuum(3, 5))
    assert not is_singular(FockVector.monomial(2, 0, (1,)))


def test_is_singular_rejects_mixed_weights():
    v = FockVector.monomial(2, 0, (1,)) + FockVector.monomial(2, 0, (2,))
    with pytest.raises(NonHomogeneous):
        is_singular(v)


def test_h_formulas():
    assert h_n(2, 1) == Fraction(15, 8)
    assert h_weight(2, 6) == Fraction(15, 8)


@pytest.mark.parametrize("p,m,kind,weights", [
    (2, 2, "linear", [Fraction(-1, 8), Fraction(15, 8), Fraction(63, 8)]),
    (2, 1, "braided", [0, 1, 3, 6]),
    (3, 3, "linear", [Fraction(-1, 3)]),
])
def test_verma_chain(p, m, kind, weights):
    ch = verma_chain(p, m)
    assert ch.kind == kind
    assert list(ch.weights[:len(weights)]) == weights
    assert all(a < b for a, b in zip(ch.weights, ch.weights[1:]))


def test_verma_chain_rejects_nonpositive():
    with pytest.raises(OutOfRange):
        verma_chain(2, 0)


@given(ps, st.integers(-2, 2), st.integers(-2, 2), st.data())
def test_virasoro_bracket(p, m, n, data):
    v = data.draw(fock_vectors(p, data.draw(st.integers(-2, 3)), 3))
    params = VirasoroParams(p)
    c = central_charge(params)
    lhs = L(m, L(n, v, params), params) - L(n, L(m, v, params), params)
    rhs = L(m + n, v, params) * (m - n)
    if m + n == 0:
        rhs = rhs + v * (Fraction(m ** 3 - m, 12) * c)
    assert lhs == rhs


@given(ps, st.integers(-2, 2), st.integers(-3, 3), st.data())
def test_L_alpha_commutator(p, n, m, data):
    # [L(n), alpha(m)] = -m alpha(m+n), plus a constant from the linear term when m+n = 0
    v = data.draw(fock_vectors(p, 1, 3))
    params = VirasoroParams(p)
    lhs = L(n, mode_act(m, v), params) - mode_act(m, L(n, v, params))
    rhs = mode_act(m + n, v) * (-m)
    if m + n == 0:
        rhs = rhs + v * (-params.kappa * (n + 1) * 2 * p * n)
    assert lhs == rhs


@pytest.mark.parametrize("p,j", [(2, 1), (3, -2), (3, 4)])
def test_L0_diagonal_by_weight(p, j):
    for d in range(5):
        for b in graded_component(p, j, d).vectors():
            (key,) = b.terms
            assert L(0, b) == b * weight(key[0], j, p)


@given(ps, st.integers(-1, 2), st.data())
def test_screenings_commute_with_virasoro(p, n, data):
    params = VirasoroParams(p)
    v = data.draw(fock_vectors(p, data.draw(st.integers(-3, 3)), 4))
    assert L(n, Q(v), params) == Q(L(n, v, params))
    w = data.draw(fock_vectors(p, 0, 4))
    assert L(n, Qtilde(w), params) == Qtilde(L(n, w, params))


def test_descendant_span_of_vacuum():
    # the vacuum module of the singlet is generated by L(-2)1 etc.; L(-1)1 = 0
    spans = descendant_span([FockVector.vacuum(2, 0)], 4)
    assert span_dims(spans) == [1, 0, 1, 1, 2]


def test_positive_orbit_closes():
    v = FockVector.monomial(2, 0, (2, 1))
    orbit = positive_orbit(v)
    assert orbit[0] == v
    assert any(o.degrees() == {0} for o in orbit)
