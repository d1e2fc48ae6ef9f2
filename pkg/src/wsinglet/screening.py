"""Lattice vertex operators, the screenings Q and Q~, and graded kernels.

Y(e^gamma, x) v = E^-(gamma, x) E^+(gamma, x) e^gamma x^{<gamma, mu>} v with
E^-(gamma, x) = exp(sum_k gamma(-k) x^k / k) and
E^+(gamma, x) = exp(-sum_k gamma(k) x^{-k} / k), trivial cocycle.
Modes are extracted by weight bookkeeping, never by storing series.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Callable

from . import kernels
from .errors import OutOfRange, UnsupportedMode
from .lattice_fock import (FockVector, TopSpace, add_into, merge_parts, mode_dict,
                           momentum_weight, partitions, sector)
from .linalg import nullspace, rank
from .virasoro import VirasoroParams, is_singular

DEFAULT_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# exponential factors

@lru_cache(maxsize=None)
def exp_component(c: Fraction, a: int) -> tuple:
    """Degree-a part of exp(c * sum_k alpha(-k) x^k / k) as (partition, coeff) pairs."""
    out = []
    for lam in partitions(a):
        z = 1
        for k, m in Counter(lam).items():
            z *= k ** m * factorial(m)
        out.append((lam, Fraction(c) ** len(lam) / z))
    return tuple(out)


def _sub_multisets(part: tuple):
    """Yield (removed, kept, multiplicity) over sub-multisets of ``part``."""
    counts = sorted(Counter(part).items(), reverse=True)
    for choice in product(*(range(m + 1) for _, m in counts)):
        removed, kept, mult = [], [], 1
        for (n, m), r in zip(counts, choice):
            removed += [n] * r
            kept += [n] * (m - r)
            mult *= comb(m, r)
        yield tuple(removed), tuple(kept), mult


def shifted_top(top: TopSpace, jg: int) -> TopSpace:
    if jg == 0:
        return top
    if top.nil:
        raise UnsupportedMode(
            "charged vertex operators on a non-semisimple top produce logarithms")
    if top.dim == 1:
        return sector(top.p, top.j + jg)
    return TopSpace(top.p, top.j + jg, top.dim, ())


@lru_cache(maxsize=None)
def _vertex_coeff_mono(jg: int, kk: int, part: tuple, p: int) -> tuple:
    """Coefficient of x^{<gamma,mu> + kk} in Y(e^gamma, x) alpha(-part) e^mu."""
    c = Fraction(jg, 2 * p)
    out: dict = {}
    for removed, kept, mult in _sub_multisets(part):
        a = kk + sum(removed)
        if a < 0:
            continue
        coeff = mult * (-jg) ** len(removed)
        if not coeff:
            continue
        for lam, e in exp_component(c, a):
            key = merge_parts(kept, lam)
            out[key] = out.get(key, 0) + coeff * e
    return tuple((k, v) for k, v in out.items() if v)


def vertex_coeff_dict(jg: int, kk: int, d: dict, top: TopSpace) -> dict:
    out: dict = {}
    for (part, k), c in d.items():
        for lam, e in _vertex_coeff_mono(jg, kk, part, top.p):
            key = (lam, k)
            v = out.get(key, 0) + c * e
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def vertex_coeff(jg: int, kk: int, v: FockVector) -> FockVector:
    """Coefficient of x^{<gamma, mu> + kk} in Y(e^gamma, x) v."""
    tgt = shifted_top(v.top, jg)
    if jg == 0:
        return v if kk == 0 else FockVector.zero(tgt)
    return FockVector(tgt, vertex_coeff_dict(jg, kk, v.terms, v.top))


def mode_offset(jg: int, m, j: int, p: int) -> int:
    """x-power offset kk for mode e^gamma_m on sector j; UnsupportedMode if off-lattice."""
    kk = -Fraction(m) - 1 - Fraction(jg * j, 2 * p)
    if kk.denominator != 1:
        raise UnsupportedMode(
            f"mode {m} of e^({jg}/2p alpha) is off the support lattice on sector {j}")
    return int(kk)


def vertex_mode(jg: int, m, v: FockVector) -> FockVector:
    """e^gamma_m v with gamma = (jg/2p) alpha."""
    kk = mode_offset(jg, m, v.sector, v.p)
    return vertex_coeff(jg, kk, v)


def Q(v: FockVector) -> FockVector:
    """Q = e^alpha_0."""
    return vertex_mode(2 * v.p, 0, v)


def Qtilde(v: FockVector) -> FockVector:
    """Q~ = e^{-alpha/p}_0; needs p | j on the source sector."""
    return vertex_mode(-2, 0, v)


def A_op(i: int, v: FockVector) -> FockVector:
    """A = e^alpha_{p-1-i}."""
    return vertex_mode(2 * v.p, v.p - 1 - i, v)


OPERATORS: dict[str, Callable] = {"Q": Q, "Qtilde": Qtilde}


def resolve_op(op) -> tuple[str, Callable]:
    if callable(op):
        return getattr(op, "__name__", "op"), op
    if op in OPERATORS:
        return op, OPERATORS[op]
    if isinstance(op, str) and op.startswith("A"):
        i = int(op[1:])
        return op, lambda v: A_op(i, v)
    raise ValueError(f"unknown operator {op!r}")


def power_apply(op, n: int, v: FockVector) -> FockVector:
    if n < 0:
        raise OutOfRange("power must be nonnegative")
    _, f = resolve_op(op)
    for _ in range(n):
        v = f(v)
    return v


# ---------------------------------------------------------------------------
# general lattice states

@lru_cache(maxsize=None)
def _state_mode_mono(ju: int, upart: tuple, m: Fraction, vtop: TopSpace,
                     vpart: tuple, vk: int) -> dict:
    p = vtop.p
    tgt = shifted_top(vtop, ju)
    lowest = momentum_weight(tgt.j, p)
    wt_v = sum(vpart) + momentum_weight(vtop.j, p)
    wt_u = sum(upart) + momentum_weight(ju, p)
    if wt_u + wt_v - m - 1 < lowest:
        return {}
    if not upart:
        if ju == 0:
            return {(vpart, vk): Fraction(1)} if m == -1 else {}
        kk = mode_offset(ju, m, vtop.j, p)
        return vertex_coeff_dict(ju, kk, {(vpart, vk): Fraction(1)}, vtop)
    # (alpha(-n) w)_m = sum_i C(n+i-1, i) [alpha(-n-i) w_{m+i} - (-1)^n w_{m-n-i} alpha(i)]
    n, w = upart[0], upart[1:]
    wt_w = wt_u - n
    out: dict = {}
    i = 0
    while wt_w + wt_v - (m + i) - 1 >= lowest:
        inner = _state_mode_mono(ju, w, m + i, vtop, vpart, vk)
        if inner:
            add_into(out, comb(n + i - 1, i), mode_dict(-n - i, inner, tgt))
        i += 1
    sign = -1 if n % 2 else 1
    for i in range(0, sum(vpart) + 1):
        av = mode_dict(i, {(vpart, vk): Fraction(1)}, vtop)
        if not av:
            continue
        f = -sign * comb(n + i - 1, i)
        for (vp2, vk2), c in av.items():
            add_into(out, f * c, _state_mode_mono(ju, w, m - n - i, vtop, vp2, vk2))
    return out


def state_mode_dict(u: FockVector, m, d: dict, vtop: TopSpace) -> dict:
    m = Fraction(m)
    out: dict = {}
    for (upart, uk), cu in u.terms.items():
        for (vpart, vk), cv in d.items():
            add_into(out, cu * cv, _state_mode_mono(u.sector, upart, m, vtop, vpart, vk))
    return out


def lattice_mode(u: FockVector, m, v: FockVector) -> FockVector:
    """u_m v for a lattice state u (any momentum) acting on a Fock-type vector v.

    Y(alpha(-n1)...alpha(-nk) e^gamma, x) is the normally ordered product of
    derivatives of alpha(x) with Y(e^gamma, x), expanded by the iterate formula.
    """
    if u.top.dim != 1:
        raise UnsupportedMode("the state must lie in an ordinary sector")
    tgt = shifted_top(v.top, u.sector)
    return FockVector(tgt, state_mode_dict(u, m, v.terms, v.top))


# ---------------------------------------------------------------------------
# Dyson constant

@dataclass(frozen=True)
class DysonResult:
    n: int
    p: int
    brute: int
    closed: int

    @property
    def match(self) -> bool:
        return self.brute == self.closed


def dyson_closed_form(n: int, p: int) -> int:
    return (-1) ** (n * p) * factorial(2 * n * p) // factorial(p) ** (2 * n)


def dyson_constant(n: int, p: int, budget: int = DEFAULT_BUDGET) -> DysonResult:
    """Constant term of Delta_{2n}^{2p} (x_1...x_{2n})^{-(2n-1)p} by convolution."""
    if n < 1 or p < 1:
        raise OutOfRange("need n >= 1 and p >= 1")
    nvars = 2 * n
    brute = kernels.vandermonde_power_coeff(nvars, 2 * p, [(nvars - 1) * p] * nvars, budget)
    return DysonResult(n, p, brute, dyson_closed_form(n, p))


# ---------------------------------------------------------------------------
# singular vectors

def operator_singular_vector(kind: str, n: int, p: int, i: int | None = None,
                             check: bool = True) -> FockVector:
    """u^(n) = Q^n e^{-n alpha}, v^(n) = Q^n e^{beta - n alpha}, u_i^(n) = Q^n e^{gamma_i - n alpha}."""
    if n < 0:
        raise OutOfRange("n must be nonnegative")
    if kind == "u":
        j = -2 * p * n
    elif kind == "v":
        j = p - 1 - 2 * p * n
    elif kind == "u_i":
        if i is None or not 0 <= i <= p - 2:
            raise OutOfRange("u_i needs 0 <= i <= p-2")
        j = i - 2 * p * n
    else:
        raise ValueError(f"unknown kind {kind!r}")
    vec = power_apply(Q, n, FockVector.vacuum(p, j))
    if check:
        if not vec:
            raise AssertionError(f"{kind}^({n}) vanished at p={p}")
        if not is_singular(vec, VirasoroParams(p)):
            raise AssertionError(f"{kind}^({n}) is not singular at p={p}")
    return vec


# ---------------------------------------------------------------------------
# graded kernels

@dataclass(frozen=True)
class KernelRow:
    degree: int
    dim: int
    rank: int

    @property
    def kernel(self) -> int:
        return self.dim - self.rank


@dataclass(frozen=True)
class KernelReport:
    op: str
    power: int
    sector: int
    p: int
    rows: tuple = field(default=())

    def kernel_dims(self) -> list[int]:
        return [r.kernel for r in self.rows]

    def image_dims(self) -> list[int]:
        return [r.rank for r in self.rows]

    def to_json(self) -> dict:
        return {"op": self.op, "power": self.power, "sector": self.sector,
                "rows": [{"degree": r.degree, "dim": r.dim, "rank": r.rank,
                          "kernel": r.kernel} for r in self.rows]}


def _image_matrix(f, power, top, degree):
    domain = [FockVector(top, {(lam, k): Fraction(1)})
              for lam in partitions(degree) for k in range(top.dim)]
    images = []
    for v in domain:
        for _ in range(power):
            v = f(v)
        images.append(v)
    keys = sorted({key for im in images for key in im.terms}, key=repr)
    # rows = target coordinates, columns = domain vectors
    return domain, [[im.terms.get(key, 0) for im in images] for key in keys]


def kernel_graded(op, power: int, sector_j: int, max_degree: int, p: int,
                  top: TopSpace | None = None) -> KernelReport:
    name, f = resolve_op(op)
    top = top or sector(p, sector_j)
    rows = []
    for d in range(max_degree + 1):
        domain, mat = _image_matrix(f, power, top, d)
        r = rank([list(col) for col in zip(*mat)]) if mat else 0
        rows.append(KernelRow(d, len(domain), r))
    return KernelReport(name, power, top.j, p, tuple(rows))


def kernel_basis(op, power: int, sector_j: int, degree: int, p: int) -> list[FockVector]:
    """Explicit basis of Ker op^power in one graded component."""
    _, f = resolve_op(op)
    top = sector(p, sector_j)
    domain, mat = _image_matrix(f, power, top, degree)
    if not mat:
        return domain
    out = []
    for x in nullspace(mat):
        acc: dict = {}
        for c, v in zip(x, domain):
            add_into(acc, c, v.terms)
        out.append(FockVector(top, acc))
    return out


# ---------------------------------------------------------------------------
# product formula

def product_formula_check(n: int, p: int, truncation: int = 4, i: int = 0,
                          budget: int = DEFAULT_BUDGET) -> bool:
    """Y(e^a,x_1)...Y(e^a,x_{2n}) e^mu = E^-(x) prod_{i<j}(x_i-x_j)^{2p} prod x_i^{<a,mu>} e^{mu+2n a}.

    Both sides are compared on every exponent tuple whose Heisenberg degree
    on the right is at most ``truncation``; mu = gamma_i - n alpha.
    """
    if n == 0:
        return True
    N = 2 * n
    j0 = i - 2 * p * n
    v = FockVector.vacuum(p, j0)
    top_out = sector(p, j0 + 2 * p * N)
    delta_deg = p * N * (N - 1)
    hi = 2 * p * (N - 1) + truncation
    for e in product(range(-1, hi + 1), repeat=N):
        D = sum(e) - delta_deg
        if D < 0 or D > truncation:
            continue
        # left side: operator i (1-based) sees sector j0 + 2p(N-i)
        w = v
        for idx in range(N, 0, -1):
            kk = e[idx - 1] - 2 * p * (N - idx)
            w = vertex_coeff(2 * p, kk, w)
            if not w:
                break
        lhs = w.terms if w else {}
        # right side: sum over splits e = d + s with d from the Vandermonde power
        rhs: dict = {}
        for s in _compositions_bounded(D, N, e):
            d = [a - b for a, b in zip(e, s)]
            if min(d) < 0:
                continue
            c = kernels.vandermonde_power_coeff(N, 2 * p, d, budget)
            if not c:
                continue
            acc = {((), 0): Fraction(c)}
            for sj in s:
                nxt: dict = {}
                for (lam, k), x in acc.items():
                    for mu, y in exp_component(Fraction(1), sj):
                        key = (merge_parts(lam, mu), k)
                        nxt[key] = nxt.get(key, 0) + x * y
                acc = nxt
            add_into(rhs, 1, acc)
        if FockVector(top_out, lhs) != FockVector(top_out, rhs):
            return False
    return True


def _compositions_bounded(total: int, parts: int, caps):
    if parts == 1:
        if 0 <= total <= caps[0]:
            yield (total,)
        return
    for first in range(0, min(total, caps[0]) + 1):
        for rest in _compositions_bounded(total - first, parts - 1, caps[1:]):
            yield (first,) + rest
