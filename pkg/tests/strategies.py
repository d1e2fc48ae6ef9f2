"""Hypothesis strategies for small exact vectors."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from wsinglet.lattice_fock import FockVector, sector

ps = st.sampled_from([2, 3])
small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def partitions_upto(max_degree: int):
    return st.lists(st.integers(1, max_degree), max_size=max_degree).map(
        lambda xs: tuple(sorted(xs, reverse=True))).filter(lambda t: sum(t) <= max_degree)


@st.composite
def fock_vectors(draw, p, j, max_degree: int = 4, max_terms: int = 3, top=None):
    top = top or sector(p, j)
    terms: dict = {}
    for _ in range(draw(st.integers(1, max_terms))):
        part = draw(partitions_upto(max_degree))
        k = draw(st.integers(0, top.dim - 1))
        terms[(part, k)] = terms.get((part, k), 0) + draw(small_fractions)
    return FockVector(top, terms)


@st.composite
def homogeneous_vectors(draw, p, j, degree: int, max_terms: int = 3):
    from wsinglet.lattice_fock import partitions
    parts = partitions(degree)
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        terms[(draw(st.sampled_from(parts)), 0)] = draw(small_fractions.filter(bool))
    return FockVector(sector(p, j), terms)


def frac(x) -> Fraction:
    return Fraction(x)
