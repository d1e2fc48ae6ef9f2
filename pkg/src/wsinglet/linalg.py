"""Exact dense linear algebra over Q and Q(sqrt(2p)).

Rank over Q goes through the fraction-free integer kernel; everything
else uses plain Gauss-Jordan elimination with deterministic pivoting
(first nonzero entry, scanning rows top-down, columns left-to-right).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .scalars import ExactScalar


def _is_rational(x) -> bool:
    return not isinstance(x, ExactScalar) or x.surd == 0


def _to_fraction(x) -> Fraction:
    if isinstance(x, ExactScalar):
        return x.rat
    return Fraction(x)


def integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        fr = [_to_fraction(x) for x in row]
        d = 1
        for x in fr:
            d = lcm(d, x.denominator)
        out.append([int(x * d) for x in fr])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    if all(_is_rational(x) for r in rows for x in r):
        return kernels.bareiss_rank(integer_rows(rows))
    return len(rref(rows)[1])


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[x if isinstance(x, ExactScalar) else Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve(columns: Sequence[Sequence], target: Sequence):
    """Particular solution x of sum_i x_i * columns[i] = target, or None.

    Free variables are set to zero.
    """
    n = len(columns)
    dim = len(target)
    aug = [[columns[i][k] for i in range(n)] + [target[k]] for k in range(dim)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return x


def nullspace(rows: Sequence[Sequence]) -> list[list]:
    """Basis of {x : rows @ x = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, pivots):
            x[c] = -row[f]
        basis.append(x)
    return basis


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    return rank(list(vectors) + [list(v)]) == rank(vectors)


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def is_zero_matrix(m) -> bool:
    return all(not x for row in m for x in row)


class EchelonBasis:
    """Incrementally maintained reduced basis of sparse vectors (dicts).

    Used to grow spans one vector at a time; ``add`` reports whether the
    vector was new.
    """

    def __init__(self):
        self.rows: list[tuple[object, dict]] = []  # (pivot key, row normalized at pivot)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        for piv, row in self.rows:
            c = v.get(piv)
            if c:
                for k, x in row.items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        return v

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v, key=_key_order)
        inv = 1 / v[piv]
        v = {k: x * inv for k, x in v.items()}
        # keep rows fully reduced against the new pivot
        for i, (p, row) in enumerate(self.rows):
            c = row.get(piv)
            if c:
                for k, x in v.items():
                    y = row.get(k, 0) - c * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows.append((piv, v))
        return True


def _key_order(key):
    return repr(key)
