"""The hidden logarithmic intertwining operator.

Source: M(1)_p (x) Omega (top w1, w2), second argument v in M(1, beta), target
M(1)_p (x) Omega_1 (top u1, u2), all in normalized Jordan bases.  With
A(v) = Y(e^beta, x) v (exponents in (p-1)^2/2p + Z):

    Y(w1, x) v = A(v) (x) u1
    Y(w2, x) v = A(v) (x) u2 + (1/2p) [S^- A(v) + A(S^+ v) + (p-1) log(x) A(v)] (x) u1

where S^- = sum_k alpha(-k) x^k/k and S^+ = -sum_k alpha(k) x^{-k}/k are the
two halves of the antiderivative of h(x) in alpha-coordinates.  Descendants
w = alpha(-n) u follow from the iterate formula.  log(x) is a formal symbol.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import OutOfRange
from .lattice_fock import FockVector, TopSpace, add_into, mode_dict, sector
from .scalars import ExactScalar, frac_str
from .screening import exp_component, merge_parts, vertex_coeff_dict
from .virasoro import L, VirasoroParams

CONVENTIONS = ("source", "target")


def lambda_sq(p: int) -> Fraction:
    """lambda_p^2 = (p-1)^2 / 2p, the leading exponent of Y(w, x) e^beta."""
    return Fraction((p - 1) ** 2, 2 * p)


@dataclass(frozen=True)
class Window:
    """Exponents in [min_exp, max_exp] whose target Heisenberg degree is <= depth."""

    min_exp: Fraction
    max_exp: Fraction
    depth: int

    @classmethod
    def around(cls, p: int, depth: int, below: int | None = None) -> Window:
        lam2 = lambda_sq(p)
        below = depth if below is None else below
        return cls(lam2 - below - 2, lam2 + depth + 2, depth)


@dataclass
class LogLaurentSeries:
    """Finite map (exponent, log degree) -> vector."""

    top: TopSpace
    terms: dict = field(default_factory=dict)

    def coefficient(self, exponent, log: int = 0) -> FockVector:
        return self.terms.get((Fraction(exponent), log), FockVector.zero(self.top))

    def max_log_degree(self) -> int:
        return max((l for (_, l), v in self.terms.items() if v), default=0)

    def exponents(self) -> set:
        return {e for (e, _), v in self.terms.items() if v}

    def nonzero_terms(self):
        return sorted(((k, v) for k, v in self.terms.items() if v), key=lambda kv: kv[0])

    def to_json(self) -> list:
        return [{"exponent": frac_str(e), "log": l, "vector": v.to_json()}
                for (e, l), v in self.nonzero_terms()]


# ---------------------------------------------------------------------------
# tops

def source_top(p: int, nil=Fraction(1)) -> TopSpace:
    return TopSpace(p, p - 1, 2, ((0, 1, Fraction(nil)),) if nil else ())


def target_top(p: int, nil=Fraction(1)) -> TopSpace:
    return TopSpace(p, 2 * (p - 1), 2, ((0, 1, Fraction(nil)),) if nil else ())


@dataclass(frozen=True)
class TransporterT:
    """The top-level map Omega -> Omega_1 shifting alpha(0) by the beta-twist."""

    p: int
    matrix: tuple = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))

    def intertwines(self, nil=Fraction(1)) -> bool:
        src = source_top(self.p, nil).zero_mode_matrix()
        tgt = target_top(self.p, nil).zero_mode_matrix()
        T = [list(r) for r in self.matrix]
        shifted = [[src[r][c] + (self.p - 1 if r == c else 0) for c in range(2)] for r in range(2)]
        lhs = [[sum(tgt[r][k] * T[k][c] for k in range(2)) for c in range(2)] for r in range(2)]
        rhs = [[sum(T[r][k] * shifted[k][c] for k in range(2)) for c in range(2)] for r in range(2)]
        return lhs == rhs


# ---------------------------------------------------------------------------
# exponential factors and antiderivatives

def E_minus_apply(window: Window, v: FockVector) -> LogLaurentSeries:
    """exp(sum_k lambda_p h(-k) x^k / k) v, coefficients of x^0 .. x^depth."""
    c = Fraction(v.p - 1, 2 * v.p)
    out = LogLaurentSeries(v.top)
    for a in range(window.depth + 1):
        if not window.min_exp <= a <= window.max_exp:
            continue
        acc: dict = {}
        for (part, k), x in v.terms.items():
            for lam, e in exp_component(c, a):
                key = (merge_parts(part, lam), k)
                acc[key] = acc.get(key, 0) + x * e
        out.terms[(Fraction(a), 0)] = FockVector(v.top, acc)
    return out


def E_plus_apply(window: Window, v: FockVector) -> LogLaurentSeries:
    """exp(-sum_k lambda_p h(k) x^{-k} / k) v."""
    from .screening import _sub_multisets
    jb = v.p - 1
    out = LogLaurentSeries(v.top)
    for (part, k), x in v.terms.items():
        for removed, kept, mult in _sub_multisets(part):
            e = Fraction(-sum(removed))
            if not window.min_exp <= e <= window.max_exp:
                continue
            vec = FockVector(v.top, {(kept, k): x * mult * (-jb) ** len(removed)})
            prev = out.terms.get((e, 0), FockVector.zero(v.top))
            out.terms[(e, 0)] = prev + vec
    return out


def int_h_apply(sign: str, v: FockVector, window: Window) -> LogLaurentSeries:
    """The halves of the antiderivative of h(x) = alpha(x)/sqrt(2p) applied to v.

    sign '-' : sum_{m<0} h(m) x^{-m} / (-m);
    sign '+' : h(0) log(x) + sum_{m>0} h(m) x^{-m} / (-m).
    Coefficients carry 1/sqrt(2p) exactly.
    """
    p = v.p
    inv = ExactScalar(0, Fraction(1, 2 * p), p)  # 1/sqrt(2p)
    out = LogLaurentSeries(v.top)
    if sign == "-":
        for k in range(1, window.depth + 1):
            if window.min_exp <= k <= window.max_exp:
                out.terms[(Fraction(k), 0)] = FockVector(v.top, mode_dict(-k, v.terms, v.top)) * (inv / k)
    elif sign == "+":
        if window.min_exp <= 0 <= window.max_exp:
            out.terms[(Fraction(0), 1)] = FockVector(v.top, mode_dict(0, v.terms, v.top)) * inv
        for k in range(1, v.max_degree() + 1):
            if window.min_exp <= -k <= window.max_exp:
                out.terms[(Fraction(-k), 0)] = FockVector(v.top, mode_dict(k, v.terms, v.top)) * (-inv / k)
    else:
        raise ValueError("sign must be '+' or '-'")
    return out


# ---------------------------------------------------------------------------
# Y(w, x) v coefficients

def _retag(d: dict, k: int) -> dict:
    return {(lam, k): c for (lam, _), c in d.items()}


@lru_cache(maxsize=None)
def _A(p: int, kk: int, vpart: tuple) -> dict:
    """Coefficient of x^{lambda^2 + kk} in Y(e^beta, x) alpha(-vpart) e^beta."""
    if kk < -sum(vpart):
        return {}
    return vertex_coeff_dict(p - 1, kk, {(vpart, 0): Fraction(1)}, sector(p, p - 1))


@lru_cache(maxsize=None)
def _coef(p: int, wpart: tuple, wk: int, vpart: tuple, kk: int, conv: str, nil: Fraction) -> dict:
    """{log degree: target dict} for the x^{lambda^2 + kk} coefficient of Y(alpha(-wpart) w_{wk+1}, x) v."""
    if kk < -(sum(wpart) + sum(vpart)):
        return {}
    tgt = target_top(p, nil)
    vsec = sector(p, p - 1)
    if not wpart:
        if wk == 0:
            a = _A(p, kk, vpart)
            return {0: _retag(a, 0)} if a else {}
        out0 = _retag(_A(p, kk, vpart), 1)
        out1: dict = {}
        if nil:
            f = Fraction(nil, 2 * p)
            for a in range(1, kk + sum(vpart) + 1):
                inner = _retag(_A(p, kk - a, vpart), 0)
                add_into(out0, f / a, mode_dict(-a, inner, tgt))
            for a in range(1, sum(vpart) + 1):
                av = mode_dict(a, {(vpart, 0): Fraction(1)}, vsec)
                for (vp2, _), c in av.items():
                    add_into(out0, -f / a * c, _retag(_A(p, kk + a, vp2), 0))
            factor = 2 if conv == "target" else 1
            add_into(out1, f * (p - 1) * factor, _retag(_A(p, kk, vpart), 0))
        return {l: d for l, d in ((0, out0), (1, out1)) if d}
    # iterate formula for w = alpha(-n) u
    n, u = wpart[0], wpart[1:]
    out: dict = {}
    i = 0
    while kk - i >= -(sum(u) + sum(vpart)):
        inner = _coef(p, u, wk, vpart, kk - i, conv, nil)
        c = comb(n + i - 1, i)
        for l, d in inner.items():
            add_into(out.setdefault(l, {}), c, mode_dict(-n - i, d, tgt))
        i += 1
    sign = -1 if n % 2 else 1
    for i in range(0, sum(vpart) + 1):
        av = mode_dict(i, {(vpart, 0): Fraction(1)}, vsec)
        c = -sign * comb(n + i - 1, i)
        for (vp2, _), x in av.items():
            inner = _coef(p, u, wk, vp2, kk + n + i, conv, nil)
            for l, d in inner.items():
                add_into(out.setdefault(l, {}), c * x, d)
    return {l: d for l, d in out.items() if d}


def Y_coefficient(w: FockVector, v: FockVector, kk: int, convention: str = "source",
                  nil=Fraction(1)) -> dict:
    """{log degree: target vector} at x^{lambda_p^2 + kk}."""
    p = v.p
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    if v.sector != p - 1 or v.top.dim != 1:
        raise OutOfRange("second argument must lie in M(1, beta)")
    tgt = target_top(p, nil)
    out: dict = {}
    for (wpart, wk), cw in w.terms.items():
        for (vpart, _), cv in v.terms.items():
            for l, d in _coef(p, wpart, wk, vpart, kk, convention, Fraction(nil)).items():
                add_into(out.setdefault(l, {}), cw * cv, d)
    return {l: FockVector(tgt, d) for l, d in out.items() if d}


def _k_range(w: FockVector, v: FockVector, window: Window):
    lam2 = lambda_sq(v.p)
    lo = -(w.max_degree() + v.max_degree())
    lo = max(lo, int(-(-(window.min_exp - lam2) // 1)))
    hi = min(int((window.max_exp - lam2) // 1), window.depth - min(w.degrees() | v.degrees() or {0}))
    return range(lo, hi + 1)


def eval_Y(w: FockVector, v: FockVector, window: Window, convention: str = "source",
           degenerate: bool = False) -> LogLaurentSeries:
    """Y(w, x) v truncated to ``window``.

    ``degenerate`` drops the Jordan off-diagonal on both tops, which must
    reduce Y to the ordinary vertex operator of e^beta.
    """
    p = v.p
    nil = Fraction(0) if degenerate else Fraction(1)
    if degenerate and w.top.nil:
        w = FockVector(source_top(p, 0), w.terms)
    lam2 = lambda_sq(p)
    out = LogLaurentSeries(target_top(p, nil))
    for kk in _k_range(w, v, window):
        for l, vec in Y_coefficient(w, v, kk, convention, nil).items():
            if min(vec.degrees()) <= window.depth:
                out.terms[(lam2 + kk, l)] = vec
    return out


# ---------------------------------------------------------------------------
# correctness oracles

@dataclass(frozen=True)
class CheckResult:
    ok: bool
    checked: int
    failure: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _ks(w: FockVector, v: FockVector, depth: int):
    lo = -(w.max_degree() + v.max_degree()) - 2
    hi = depth - min(w.degrees() | v.degrees() or {0})
    return range(lo, hi + 1)


def check_L_minus1_derivative(w: FockVector, v: FockVector, window: Window,
                              convention: str = "source", nil=Fraction(1)) -> CheckResult:
    """d/dx Y(w, x) v = Y(L(-1) w, x) v, coefficientwise (d/dx log x = 1/x)."""
    if not w or not v:
        return CheckResult(True, 0)
    p = v.p
    lam2 = lambda_sq(p)
    Lw = L(-1, w, VirasoroParams(p))
    tgt = target_top(p, nil)
    checked = 0
    for kk in _ks(w, v, window.depth):
        cur = Y_coefficient(w, v, kk, convention, nil)
        rhs = Y_coefficient(Lw, v, kk - 1, convention, nil) if Lw else {}
        for l in (0, 1, 2):
            lhs = cur.get(l, FockVector.zero(tgt)) * (lam2 + kk) + \
                cur.get(l + 1, FockVector.zero(tgt)) * (l + 1)
            r = rhs.get(l, FockVector.zero(tgt))
            checked += 1
            if lhs != r:
                return CheckResult(False, checked, (lam2 + kk - 1, l))
    return CheckResult(True, checked)


def check_commutator(m: int, w: FockVector, v: FockVector, window: Window,
                     convention: str = "source", nil=Fraction(1)) -> CheckResult:
    """[L(m), Y(w, x)] v = sum_j C(m+1, j) x^{m+1-j} Y(L(j-1) w, x) v."""
    if m < -1:
        raise OutOfRange("m must be >= -1")
    if not w or not v:
        return CheckResult(True, 0)
    p = v.p
    params = VirasoroParams(p)
    tgt = target_top(p, nil)
    src_w = w
    Lv = L(m, v, params)
    Lws = [(comb(m + 1, j), m + 1 - j, L(j - 1, src_w, params)) for j in range(m + 2)]
    lam2 = lambda_sq(p)
    checked = 0
    for kk in _ks(w, v, window.depth):
        cur = Y_coefficient(w, v, kk, convention, nil)
        right = Y_coefficient(w, Lv, kk, convention, nil) if Lv else {}
        rhs: dict = {}
        for c, shift, Lw in Lws:
            if Lw:
                for l, vec in Y_coefficient(Lw, v, kk - shift, convention, nil).items():
                    rhs[l] = rhs.get(l, FockVector.zero(tgt)) + vec * c
        for l in (0, 1, 2):
            lhs = L(m, cur.get(l, FockVector.zero(tgt)), params) - right.get(l, FockVector.zero(tgt))
            checked += 1
            if lhs != rhs.get(l, FockVector.zero(tgt)):
                return CheckResult(False, checked, (lam2 + kk, l))
    return CheckResult(True, checked)


def log_witness(p: int, depth: int = 2) -> FockVector:
    """The log^1 coefficient of Y(w2, x) e^beta at the leading exponent."""
    w2 = FockVector(source_top(p), {((), 1): Fraction(1)})
    eb = FockVector.vacuum(p, p - 1)
    return eval_Y(w2, eb, Window.around(p, depth)).coefficient(lambda_sq(p), 1)
