"""Rank-one lattice Fock spaces M(1, gamma) in alpha-mode coordinates.

Conventions: <alpha, alpha> = 2p, a momentum is an integer ``j`` standing
for gamma = (j/2p) alpha, so alpha(0) acts on e^gamma by ``j``.  A vector
is a finite map ``(partition, k) -> coefficient`` where the partition
(n1 >= n2 >= ...) encodes alpha(-n1)...alpha(-nk) and ``k`` indexes a
basis vector of the top space.  Ordinary sectors have a one-dimensional
top; Jordan-type modules (see ``log_modules``) reuse the same machinery
with a two-dimensional top on which alpha(0) has a nilpotent part.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator

from .errors import SectorMismatch
from .scalars import ExactScalar, frac_str, parse_frac, scalar_pair

Partition = tuple  # weakly decreasing tuple of positive ints


# ---------------------------------------------------------------------------
# partitions

@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of ``n`` in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partition_count(n: int) -> int:
    return len(partitions(n)) if n >= 0 else 0


def insert_part(part: Partition, n: int) -> Partition:
    """alpha(-n) * monomial, keeping the tuple sorted decreasingly."""
    i = 0
    while i < len(part) and part[i] >= n:
        i += 1
    return part[:i] + (n,) + part[i:]


def remove_part(part: Partition, n: int) -> Partition:
    i = part.index(n)
    return part[:i] + part[i + 1:]


def merge_parts(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


def z_factor(part: Partition, p: int) -> int:
    """prod_k (2pk)^{m_k} m_k!, the norm of alpha(-part) under alpha(n)* = -alpha(-n)."""
    out = 1
    for k, m in Counter(part).items():
        out *= (2 * p * k) ** m * factorial(m)
    return out


# ---------------------------------------------------------------------------
# lattice data

@dataclass(frozen=True)
class LatticeData:
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be >= 2")

    @property
    def pairing_unit(self) -> int:
        return 2 * self.p

    def pair(self, j: int, k: int) -> Fraction:
        """<(j/2p) alpha, (k/2p) alpha>."""
        return Fraction(j * k, 2 * self.p)


def momentum_weight(j: int, p: int) -> Fraction:
    """Conformal weight of e^gamma, gamma = (j/2p) alpha, under omega_{lambda_p}."""
    return Fraction(j * j - 2 * j * (p - 1), 4 * p)


def weight(part: Partition, j: int, p: int) -> Fraction:
    return sum(part) + momentum_weight(j, p)


def beta_j(p: int) -> int:
    return p - 1


def gamma_j(p: int, i: int) -> int:
    return i


def alpha_multiple_j(p: int, n: int) -> int:
    """j-label of n*alpha."""
    return 2 * p * n


# ---------------------------------------------------------------------------
# top spaces

@dataclass(frozen=True)
class TopSpace:
    """Top level of a Fock-type module.

    ``j`` is the semisimple alpha(0) eigenvalue; ``nil`` lists the entries
    ``(row, col, value)`` of the nilpotent part of alpha(0) in the chosen
    basis of the top space (so alpha(0) w_col += value * w_row).
    """

    p: int
    j: int
    dim: int = 1
    nil: tuple = ()

    @property
    def is_semisimple(self) -> bool:
        return not self.nil

    def zero_mode_matrix(self):
        m = [[Fraction(self.j if r == c else 0) for c in range(self.dim)] for r in range(self.dim)]
        for r, c, val in self.nil:
            m[r][c] += val
        return m


@lru_cache(maxsize=None)
def sector(p: int, j: int) -> TopSpace:
    return TopSpace(p, j)


# ---------------------------------------------------------------------------
# dict-level mode actions (hot path; no object overhead)

def add_into(acc: dict, coeff, d: dict) -> None:
    """acc += coeff * d, dropping zeros."""
    if not coeff:
        return
    for key, c in d.items():
        v = acc.get(key, 0) + coeff * c
        if v:
            acc[key] = v
        elif key in acc:
            del acc[key]


def mode_dict(n: int, d: dict, top: TopSpace) -> dict:
    out: dict = {}
    if n < 0:
        m = -n
        for (part, k), c in d.items():
            key = (insert_part(part, m), k)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    elif n > 0:
        unit = 2 * top.p * n
        for (part, k), c in d.items():
            cnt = part.count(n)
            if cnt:
                key = (remove_part(part, n), k)
                v = out.get(key, 0) + c * unit * cnt
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    else:
        for (part, k), c in d.items():
            if top.j:
                key = (part, k)
                out[key] = out.get(key, 0) + c * top.j
            for r, col, val in top.nil:
                if col == k:
                    key = (part, r)
                    out[key] = out.get(key, 0) + c * val
        out = {key: c for key, c in out.items() if c}
    return out


# ---------------------------------------------------------------------------
# vectors

class FockVector:
    """Immutable finite linear combination of PBW monomials over a top space."""

    __slots__ = ("top", "terms")

    def __init__(self, top: TopSpace, terms: dict | None = None):
        self.top = top
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    # -- construction --------------------------------------------------
    @classmethod
    def monomial(cls, p: int, j: int, part: Iterable[int] = (), coeff=1, k: int = 0,
                 top: TopSpace | None = None) -> FockVector:
        top = top or sector(p, j)
        part = tuple(sorted(part, reverse=True))
        return cls(top, {(part, k): Fraction(coeff) if not isinstance(coeff, ExactScalar) else coeff})

    @classmethod
    def vacuum(cls, p: int, j: int = 0) -> FockVector:
        return cls.monomial(p, j)

    @classmethod
    def zero(cls, top: TopSpace) -> FockVector:
        return cls(top, {})

    # -- accessors -----------------------------------------------------
    @property
    def p(self) -> int:
        return self.top.p

    @property
    def sector(self) -> int:
        return self.top.j

    def coeff(self, part: Iterable[int] = (), k: int = 0):
        return self.terms.get((tuple(part), k), 0)

    def degrees(self) -> set[int]:
        return {sum(part) for part, _ in self.terms}

    def max_degree(self) -> int:
        return max((sum(part) for part, _ in self.terms), default=0)

    def weights(self) -> set[Fraction]:
        return {weight(part, self.top.j, self.top.p) for part, _ in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, degree: int) -> FockVector:
        return FockVector(self.top, {k: c for k, c in self.terms.items() if sum(k[0]) == degree})

    def top_component(self, k: int) -> FockVector:
        """Coefficients on the k-th top basis vector, as an ordinary sector vector."""
        return FockVector(sector(self.p, self.sector),
                          {(part, 0): c for (part, kk), c in self.terms.items() if kk == k})

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: FockVector):
        if other.top != self.top:
            raise SectorMismatch(f"cannot combine {self.top} with {other.top}")

    def __add__(self, other: FockVector) -> FockVector:
        self._check(other)
        acc = dict(self.terms)
        add_into(acc, 1, other.terms)
        return FockVector(self.top, acc)

    def __sub__(self, other: FockVector) -> FockVector:
        self._check(other)
        acc = dict(self.terms)
        add_into(acc, -1, other.terms)
        return FockVector(self.top, acc)

    def __neg__(self) -> FockVector:
        return FockVector(self.top, {k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar) -> FockVector:
        if isinstance(scalar, FockVector):
            return NotImplemented
        return FockVector(self.top, {k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> FockVector:
        inv = 1 / (scalar if isinstance(scalar, ExactScalar) else Fraction(scalar))
        return self * inv

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.top == other.top and self.terms == other.terms

    def __hash__(self):
        return hash((self.top, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=_term_order))

    def __repr__(self) -> str:
        if not self.terms:
            return f"0 [sector {self.sector}]"
        parts = []
        for (part, k), c in self:
            modes = "".join(f"a({-n})" for n in part)
            top = f"w{k + 1}" if self.top.dim > 1 else f"e^{self.sector}"
            parts.append(f"({c})*{modes}{top}")
        return " + ".join(parts)

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        out = {"sector": self.sector, "terms": []}
        for (part, k), c in self:
            term = {"partition": list(part), "coeff": scalar_pair(c)}
            if self.top.dim > 1:
                term["omega"] = k
            out["terms"].append(term)
        if self.top.dim > 1:
            out["top"] = {"dim": self.top.dim,
                          "nil": [[r, c, frac_str(v)] for r, c, v in self.top.nil]}
        return out

    @classmethod
    def from_json(cls, data: dict, p: int) -> FockVector:
        if "top" in data:
            top = TopSpace(p, data["sector"], data["top"]["dim"],
                           tuple((r, c, parse_frac(v)) for r, c, v in data["top"]["nil"]))
        else:
            top = sector(p, data["sector"])
        terms = {}
        for t in data["terms"]:
            a, b = (parse_frac(s) for s in t["coeff"])
            c = ExactScalar(a, b, p) if b else a
            terms[(tuple(t["partition"]), t.get("omega", 0))] = c
        return cls(top, terms)


def _term_order(item):
    (part, k), _ = item
    return (sum(part), tuple(-n for n in part), k)


# ---------------------------------------------------------------------------
# operations

def mode_act(n: int, v: FockVector) -> FockVector:
    """alpha(n) v with [alpha(m), alpha(n)] = 2pm delta_{m+n,0}."""
    return FockVector(v.top, mode_dict(n, v.terms, v.top))


def modes_act(ns: Iterable[int], v: FockVector) -> FockVector:
    """Apply alpha(n) for n in ``ns``, rightmost first."""
    d = v.terms
    for n in reversed(list(ns)):
        d = mode_dict(n, d, v.top)
    return FockVector(v.top, d)


def graded_dim(sector_j: int, degree: int) -> int:
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return partition_count(degree)


@dataclass(frozen=True)
class GradedComponent:
    top: TopSpace
    degree: int
    basis: tuple = field(init=False)

    def __post_init__(self):
        keys = tuple((part, k) for part in partitions(self.degree) for k in range(self.top.dim))
        object.__setattr__(self, "basis", keys)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[FockVector]:
        return [FockVector(self.top, {key: Fraction(1)}) for key in self.basis]

    def coordinates(self, v: FockVector) -> list:
        if v.top != self.top:
            raise SectorMismatch("vector lives in another module")
        return [v.terms.get(key, 0) for key in self.basis]

    def from_coordinates(self, coords) -> FockVector:
        return FockVector(self.top, dict(zip(self.basis, coords)))


def graded_component(p: int, j: int, degree: int, top: TopSpace | None = None) -> GradedComponent:
    return GradedComponent(top or sector(p, j), degree)


def twisted_shift(p: int, a=None) -> int:
    """j_u + j_w required by the a-twisted pairing (2a in j-units)."""
    if a is None:
        return 2 * (p - 1)
    a = a if isinstance(a, ExactScalar) else ExactScalar(a, 0, p)
    val = 2 * a * ExactScalar.sqrt2p(p)
    if not val.is_rational or val.rat.denominator != 1:
        raise SectorMismatch(f"2a*sqrt(2p) = {val} is not an integer momentum")
    return int(val.rat)


def default_top_form(top: TopSpace):
    """Bilinear form on a top space making alpha(0)* = -alpha(0) + shift hold.

    For the Jordan block alpha(0) w2 = j w2 + w1 the compatible form is
    antisymmetric off the diagonal: B(w1, w2) = 1, B(w2, w1) = -1.
    """
    if top.dim == 1:
        return [[Fraction(1)]]
    if top.dim == 2 and top.nil == ((0, 1, Fraction(1)),):
        return [[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]]
    if top.dim == 2 and not top.nil:
        return [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    raise ValueError(f"no default form for {top}")


def twisted_pairing(u: FockVector, w: FockVector, a=None, form=None):
    """The a-twisted contragredient pairing <u, w>.

    Normalized by <e^lambda, e^{2a-lambda}> = 1 with alpha(n)* = -alpha(-n)
    for n != 0 and alpha(0)* = -alpha(0) + 2a (in j-units), so that
    L(n)* = L(-n).
    """
    shift = twisted_shift(u.p, a)
    if u.sector + w.sector != shift:
        raise SectorMismatch(
            f"sectors {u.sector} + {w.sector} != {shift}: not contragredient partners")
    if u.top.dim != w.top.dim:
        raise SectorMismatch("top spaces of different dimension")
    B = form if form is not None else default_top_form(u.top)
    total = Fraction(0)
    for (part, k), c in u.terms.items():
        for l in range(w.top.dim):
            b = B[k][l]
            if not b:
                continue
            d = w.terms.get((part, l))
            if d:
                sign = -1 if len(part) % 2 else 1
                total = total + c * d * b * sign * z_factor(part, u.p)
    return total


def pairing_by_modes(u: FockVector, w: FockVector, a=None, form=None):
    """Same pairing evaluated by literally moving modes across (test oracle)."""
    shift = twisted_shift(u.p, a)
    if u.sector + w.sector != shift:
        raise SectorMismatch("sectors are not contragredient partners")
    B = form if form is not None else default_top_form(u.top)
    total = Fraction(0)
    for (part, k), c in u.terms.items():
        # <alpha(-n1)...alpha(-nr) x, w> = (-1)^r <x, alpha(nr)...alpha(n1) w>
        image = modes_act(list(reversed(part)), w) if part else w
        for l in range(w.top.dim):
            d = image.terms.get(((), l), 0)
            if d:
                total = total + c * d * B[k][l] * (-1) ** len(part)
    return total
