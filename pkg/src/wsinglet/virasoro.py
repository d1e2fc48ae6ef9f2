"""Feigin-Fuchs Virasoro action on Fock sectors and Verma embedding chains."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import NonHomogeneous, OutOfRange
from .lattice_fock import FockVector, TopSpace, add_into, mode_dict, partitions
from .linalg import EchelonBasis
from .scalars import ExactScalar


@dataclass(frozen=True)
class VirasoroParams:
    """Background charge ``a`` of omega_a; ``None`` means lambda_p."""

    p: int
    a: object = None

    @property
    def charge(self) -> ExactScalar:
        if self.a is None:
            return ExactScalar.lambda_p(self.p)
        return self.a if isinstance(self.a, ExactScalar) else ExactScalar(self.a, 0, self.p)

    @property
    def kappa(self):
        """Coefficient of alpha(n) in the linear term: a / sqrt(2p)."""
        k = self.charge * ExactScalar.sqrt2p(self.p) / (2 * self.p)
        return k.rat if k.is_rational else k


def central_charge(params: VirasoroParams):
    c = 1 - 12 * params.charge * params.charge
    return c.rat if c.is_rational else c


def h_weight(p: int, m: int, n: int = 1) -> Fraction:
    """h_{m,n} = ((m - np)^2 - (p-1)^2) / 4p."""
    return Fraction((m - n * p) ** 2 - (p - 1) ** 2, 4 * p)


def h_n(p: int, n: int) -> Fraction:
    """Lowest weights of the M(1, beta) summands, ((2pn)^2 - (p-1)^2)/4p."""
    return Fraction((2 * p * n) ** 2 - (p - 1) ** 2, 4 * p)


# ---------------------------------------------------------------------------
# L(n)

@lru_cache(maxsize=200_000)
def _L_monomial(n: int, part: tuple, k: int, top: TopSpace, kappa) -> dict:
    d = {(part, k): Fraction(1)}
    deg = sum(part)
    out: dict = {}
    quarter = Fraction(1, 4 * top.p)
    # a, b <= 0 with a + b = n
    if n <= 0:
        for a in range(n, 1):
            b = n - a
            add_into(out, quarter, mode_dict(a, mode_dict(b, d, top), top))
    # a, b > 0
    for b in range(1, min(n - 1, deg) + 1):
        add_into(out, quarter, mode_dict(n - b, mode_dict(b, d, top), top))
    # mixed, counted twice; positive mode acts first
    for b in range(max(1, n), deg + 1):
        add_into(out, 2 * quarter, mode_dict(n - b, mode_dict(b, d, top), top))
    if kappa:
        add_into(out, -(n + 1) * kappa, mode_dict(n, d, top))
    return out


def L_dict(n: int, d: dict, top: TopSpace, params: VirasoroParams) -> dict:
    kappa = params.kappa
    out: dict = {}
    for (part, k), c in d.items():
        add_into(out, c, _L_monomial(n, part, k, top, kappa))
    return out


def L(n: int, v: FockVector, params: VirasoroParams | None = None) -> FockVector:
    """L(n) v for omega_a = (1/4p) alpha(-1)^2 + kappa alpha(-2), kappa = a/sqrt(2p)."""
    params = params or VirasoroParams(v.p)
    return FockVector(v.top, L_dict(n, v.terms, v.top, params))


def L_word(ns, v: FockVector, params: VirasoroParams | None = None) -> FockVector:
    """L(n1) L(n2) ... v, rightmost first."""
    params = params or VirasoroParams(v.p)
    d = v.terms
    for n in reversed(list(ns)):
        d = L_dict(n, d, v.top, params)
    return FockVector(v.top, d)


def is_singular(v: FockVector, params: VirasoroParams | None = None) -> bool:
    """True iff L(1)v = L(2)v = 0 for a vector of a single L(0)-weight."""
    if len(v.degrees()) > 1:
        raise NonHomogeneous("vector mixes several weights")
    params = params or VirasoroParams(v.p)
    return not L(1, v, params) and not L(2, v, params)


# ---------------------------------------------------------------------------
# Virasoro-generated subspaces

def descendant_span(generators, max_degree: int, params: VirasoroParams | None = None) -> dict:
    """Degreewise echelon bases of U(Vir^-) applied to ``generators``.

    Generators must be homogeneous; the result maps each Heisenberg degree
    up to ``max_degree`` to an EchelonBasis.  For singular generators this
    is the full submodule they generate.
    """
    gens = [g for g in generators if g]
    if not gens:
        return {d: EchelonBasis() for d in range(max_degree + 1)}
    top = gens[0].top
    params = params or VirasoroParams(top.p)
    spans = {d: EchelonBasis() for d in range(max_degree + 1)}
    for g in gens:
        if g.top != top:
            raise ValueError("generators must live in one module")
        (deg,) = g.degrees()
        if deg <= max_degree:
            spans[deg].add(g.terms)
    # L(-1) and L(-2) generate the negative part
    for d in range(max_degree + 1):
        for k in (1, 2):
            if d - k >= 0:
                for _, row in list(spans[d - k].rows):
                    spans[d].add(L_dict(-k, row, top, params))
    return spans


def positive_orbit(v: FockVector, params: VirasoroParams | None = None) -> list[FockVector]:
    """Homogeneous generators of U(Vir^+) v (closure under L(1), L(2))."""
    params = params or VirasoroParams(v.p)
    spans: dict = {}
    frontier = [v]
    out = []
    while frontier:
        nxt = []
        for w in frontier:
            (deg,) = w.degrees()
            if spans.setdefault(deg, EchelonBasis()).add(w.terms):
                out.append(w)
                for k in (1, 2):
                    x = L(k, w, params)
                    if x:
                        nxt.append(x)
        frontier = nxt
    return out


def span_dims(spans: dict) -> list[int]:
    return [len(spans[d]) for d in sorted(spans)]


def pbw_descendants(v: FockVector, degree: int, params: VirasoroParams | None = None):
    """L(-n1)...L(-nk) v for all partitions (n1 >= ... >= nk) of ``degree``."""
    params = params or VirasoroParams(v.p)
    return [L_word(part, v, params) for part in partitions(degree)]


# ---------------------------------------------------------------------------
# Verma chains

@dataclass(frozen=True)
class ChainDescriptor:
    p: int
    m: int
    kind: str
    labels: tuple = field(default=())  # m' with h = h_{m',1}
    weights: tuple = field(default=())


def _chain_t_values(p: int, t0: int, length: int) -> list[int]:
    """t = |m' - p| values along the chain starting at t0."""
    r = t0 % p
    if r == 0:
        return [t0 + 2 * p * k for k in range(length)]
    q = t0 // p
    rr = r if q % 2 else p - r   # t0 = kp +- rr with k odd
    ts = []
    k = 1
    while len(ts) < length + 2:
        for t in (k * p - rr, k * p + rr):
            if t >= t0:
                ts.append(t)
        k += 2
    return sorted(ts)[:length]


def verma_chain(p: int, m: int, length: int = 6) -> ChainDescriptor:
    """Weights h_{m',1} along the embedding chain of the Verma module V(h_{m,1})."""
    if m <= 0:
        raise OutOfRange("m must be positive")
    t0 = abs(m - p)
    ts = _chain_t_values(p, t0, length)
    kind = "linear" if m % p == 0 else "braided"
    labels = []
    for i, t in enumerate(ts):
        # label m' = p + t for the first entry's orientation, else p + t
        labels.append(m if i == 0 else p + t)
    weights = tuple(Fraction(t * t - (p - 1) ** 2, 4 * p) for t in ts)
    return ChainDescriptor(p, m, kind, tuple(labels), weights)
