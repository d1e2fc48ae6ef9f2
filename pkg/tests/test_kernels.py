from __future__ import annotations

import os
import subprocess
import sys
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from wsinglet import _kernels_py, kernels, linalg
from wsinglet.errors import BudgetExceeded
from wsinglet.scalars import ExactScalar

matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=0, max_size=6))


def _brute_vandermonde(nvars, power, targets):
    factors = [(i, j) for i in range(nvars) for j in range(i + 1, nvars) for _ in range(power)]
    total = 0
    for choice in product((0, 1), repeat=len(factors)):
        exps = [0] * nvars
        sign = 1
        for (i, j), c in zip(factors, choice):
            if c:
                exps[j] += 1
                sign = -sign
            else:
                exps[i] += 1
        if exps == list(targets):
            total += sign
    return total


@given(matrices)
def test_bareiss_matches_rref(rows):
    expected = len(linalg.rref(rows)[1]) if rows else 0
    assert _kernels_py.bareiss_rank(rows) == expected
    assert kernels.bareiss_rank(rows) == expected


@given(matrices)
def test_bareiss_does_not_mutate(rows):
    snapshot = [list(r) for r in rows]
    kernels.bareiss_rank(rows)
    assert rows == snapshot


def test_rank_examples():
    assert kernels.bareiss_rank([[1, 2], [2, 4]]) == 1
    assert kernels.bareiss_rank([[0, 0], [0, 3]]) == 1
    assert kernels.bareiss_rank([]) == 0


@pytest.mark.parametrize("nvars,power,targets", [(2, 2, (1, 1)), (3, 2, (2, 2, 2)),
                                                 (3, 1, (2, 1, 0)), (2, 3, (3, 0)),
                                                 (4, 1, (1, 1, 1, 3))])
def test_vandermonde_against_expansion(nvars, power, targets):
    expected = _brute_vandermonde(nvars, power, targets)
    assert _kernels_py.vandermonde_power_coeff(nvars, power, targets, 10 ** 6) == expected
    assert kernels.vandermonde_power_coeff(nvars, power, targets, 10 ** 6) == expected


@given(st.integers(2, 4), st.integers(1, 2), st.data())
def test_backends_agree(nvars, power, data):
    top = power * (nvars - 1)
    targets = data.draw(st.lists(st.integers(0, top), min_size=nvars, max_size=nvars))
    a = _kernels_py.vandermonde_power_coeff(nvars, power, targets, 10 ** 6)
    b = kernels.vandermonde_power_coeff(nvars, power, targets, 10 ** 6)
    assert a == b


def test_vandermonde_bad_targets():
    with pytest.raises(ValueError):
        kernels.vandermonde_power_coeff(3, 1, [1, 1], 100)


def test_vandermonde_budget():
    with pytest.raises(BudgetExceeded):
        _kernels_py.vandermonde_power_coeff(4, 4, [6, 6, 6, 6], 10)
    with pytest.raises(BudgetExceeded):
        kernels.vandermonde_power_coeff(4, 4, [6, 6, 6, 6], 10)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_fallback():
    env = dict(os.environ, WSINGLET_PURE_PYTHON="1")
    code = ("from wsinglet import kernels, _kernels_py; "
            "assert kernels.BACKEND == 'python'; "
            "assert kernels.bareiss_rank is _kernels_py.bareiss_rank; "
            "print(kernels.vandermonde_power_coeff(4, 4, [6, 6, 6, 6], 10**7))")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                          check=False)
    assert proc.returncode == 0, proc.stderr
    assert int(proc.stdout) == 2520


class TestLinalg:
    def test_surd_rank(self):
        r6 = ExactScalar.sqrt2p(3)
        assert r6.surd == 1
        assert linalg.rank([[r6, Fraction(1)], [r6 * r6, r6]]) == 1
        assert linalg.rank([[r6, Fraction(1)], [Fraction(1), r6]]) == 2

    def test_solve_and_nullspace(self):
        cols = [[1, 0, 1], [0, 1, 1]]
        assert linalg.solve(cols, [2, 3, 5]) == [2, 3]
        assert linalg.solve(cols, [1, 1, 0]) is None
        (ns,) = linalg.nullspace([[1, 1, 0], [0, 0, 1]])
        assert ns == [-1, 1, 0]

    def test_in_span(self):
        assert linalg.in_span([[1, 2]], [2, 4])
        assert not linalg.in_span([[1, 2]], [0, 1])
        assert linalg.in_span([], [0, 0])
