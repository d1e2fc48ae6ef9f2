"""The singlet algebra Ker Q~: its generator H, momentum-zero vertex operators,
the Zhu polynomial, and finite witnesses for simplicity and irreducibility."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import NotFound, NotTopLevel, OutOfRange, UnsupportedMode
from .lattice_fock import FockVector, momentum_weight, twisted_pairing
from .linalg import EchelonBasis, identity, is_zero_matrix, matmul, solve
from .lattice_fock import partition_count
from .screening import Q, kernel_basis, lattice_mode, operator_singular_vector, power_apply
from .virasoro import L, VirasoroParams, h_n


@lru_cache(maxsize=None)
def compute_H(p: int) -> FockVector:
    """H = Q e^{-alpha}, the weight 2p-1 generator."""
    return Q(FockVector.vacuum(p, -2 * p))


def state_field_mode(u: FockVector, j, v: FockVector) -> FockVector:
    """u_j v for a momentum-zero state u; v may live in any sector or Jordan module."""
    if u.sector != 0:
        raise UnsupportedMode("state_field_mode needs a momentum-zero state")
    return lattice_mode(u, j, v)


def H_mode(n: int, v: FockVector) -> FockVector:
    """H(n) = H_{n+2p-2}, the weight-graded mode."""
    return state_field_mode(compute_H(v.p), n + 2 * v.p - 2, v)


def conformal_vector(p: int) -> FockVector:
    """omega = (1/4p) alpha(-1)^2 + ((p-1)/2p) alpha(-2) in alpha-coordinates."""
    return FockVector(FockVector.vacuum(p).top, {
        ((1, 1), 0): Fraction(1, 4 * p),
        ((2,), 0): Fraction(p - 1, 2 * p),
    })


def falling_factorial_H0(t, p: int):
    """t(t-1)...(t-2p+2)/(2p-1)!, the H(0)-eigenvalue on a top with alpha(0) = t."""
    out = Fraction(1)
    for k in range(2 * p - 1):
        out = out * (t - k)
    return out / factorial(2 * p - 1)


# ---------------------------------------------------------------------------
# Zhu polynomial

def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class ZhuPolynomial:
    """P(x, y) = y^2 - g(x); ``g`` holds the coefficients of g in increasing degree."""

    p: int
    g: tuple

    @property
    def coeffs(self) -> dict:
        out = {(0, 2): Fraction(1)}
        for i, c in enumerate(self.g):
            if c:
                out[(i, 0)] = -c
        return out

    @property
    def x_degree(self) -> int:
        return len(self.g) - 1

    @property
    def y_degree(self) -> int:
        return 2

    def g_at(self, x, order: int = 0):
        """order-th derivative of g at x."""
        total = Fraction(0)
        for i, c in enumerate(self.g):
            if i >= order:
                total += c * (factorial(i) // factorial(i - order)) * Fraction(x) ** (i - order)
        return total

    def __call__(self, x, y):
        return Fraction(y) ** 2 - self.g_at(x)

    def evaluate_matrix(self, X, Y):
        n = len(X)
        acc = matmul(Y, Y)
        power = identity(n)
        for c in self.g:
            if c:
                acc = [[a - c * b for a, b in zip(ra, rb)] for ra, rb in zip(acc, power)]
            power = matmul(power, X)
        return acc

    def roots_at_y0(self) -> dict:
        """Rational roots of g with multiplicities, from the known factorization."""
        p = self.p
        cands = {Fraction(-(p - 1) ** 2, 4 * p)}
        cands |= {Fraction(-i * (2 * p - 2 - i), 4 * p) for i in range(p - 1)}
        out = {}
        for r in sorted(cands):
            m = 0
            while m <= self.x_degree and self.g_at(r, m) == 0:
                m += 1
            if m:
                out[r] = m
        return out

    def to_json(self) -> list:
        return [[i, j, str(c)] for (i, j), c in sorted(self.coeffs.items())]

    def __str__(self) -> str:
        terms = ["y^2"]
        for i in reversed(range(len(self.g))):
            c = -self.g[i]
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"({c}){mono}")
        return " + ".join(terms)


@lru_cache(maxsize=None)
def zhu_polynomial(p: int) -> ZhuPolynomial:
    K = Fraction((4 * p) ** (2 * p - 1), factorial(2 * p - 1) ** 2)
    g = [K]
    g = _poly_mul(g, [Fraction((p - 1) ** 2, 4 * p), Fraction(1)])
    for i in range(p - 1):
        root = [Fraction(i * (2 * p - 2 - i), 4 * p), Fraction(1)]
        g = _poly_mul(_poly_mul(g, root), root)
    return ZhuPolynomial(p, tuple(g))


@dataclass(frozen=True)
class ZhuCheck:
    X: list
    Y: list
    value: list

    @property
    def holds(self) -> bool:
        return is_zero_matrix(self.value)


def _matrix_in_basis(vectors, images):
    keys = sorted({k for v in list(vectors) + list(images) for k in v.terms}, key=repr)
    cols = [[v.terms.get(k, 0) for k in keys] for v in vectors]
    mat = []
    for im in images:
        x = solve(cols, [im.terms.get(k, 0) for k in keys])
        if x is None:
            raise NotTopLevel("zero-mode image leaves the proposed top level")
        mat.append(x)
    # column j of the matrix = coordinates of image of vector j
    return [list(r) for r in zip(*mat)]


def top_level_matrices(vectors, params: VirasoroParams | None = None):
    """(X, Y) = matrices of L(0), H(0) on the span of ``vectors``, after checking
    that L(1), L(2) and every lowering H(m) annihilate it."""
    p = vectors[0].p
    params = params or VirasoroParams(p)
    for v in vectors:
        if L(1, v, params) or L(2, v, params):
            raise NotTopLevel("L(1) or L(2) does not annihilate the top level")
        for m in range(1, v.max_degree() + 2 * p):
            if H_mode(m, v):
                raise NotTopLevel(f"H({m}) does not annihilate the top level")
    X = _matrix_in_basis(vectors, [L(0, v, params) for v in vectors])
    Y = _matrix_in_basis(vectors, [H_mode(0, v) for v in vectors])
    return X, Y


def check_zhu_relation(p: int, top_level) -> ZhuCheck:
    """Evaluate P(X, Y) on a top level given by spanning vectors or by (X, Y) matrices."""
    if isinstance(top_level, tuple) and len(top_level) == 2 and isinstance(top_level[0], list) \
            and top_level[0] and isinstance(top_level[0][0], list):
        X, Y = top_level
    else:
        X, Y = top_level_matrices(list(top_level))
    return ZhuCheck(X, Y, zhu_polynomial(p).evaluate_matrix(X, Y))


# ---------------------------------------------------------------------------
# witnesses

@dataclass(frozen=True)
class SimplicityWitness:
    p: int
    n: int
    index: int
    vector: FockVector


def simplicity_witness(p: int, n: int) -> SimplicityWitness:
    """First i (searching down from the top) with H_i u^(n) != 0 and Q^n H_i u^(n) = 0."""
    if n < 1:
        raise OutOfRange("n must be >= 1")
    u = operator_singular_vector("u", n, p, check=False)
    wt_u = momentum_weight(-2 * p * n, p)
    top = int(2 * p - 2 + wt_u)
    for i in range(top, -1, -1):
        w = state_field_mode(compute_H(p), i, u)
        if w and not power_apply(Q, n, w):
            return SimplicityWitness(p, n, i, w)
    raise NotFound(f"no simplicity witness for p={p}, n={n}")


@dataclass(frozen=True)
class IrreducibilityWitness:
    p: int
    n: int
    j0: int
    C: Fraction
    image: FockVector
    weight_ok: bool
    escapes: bool
    remainder_ok: bool

    @property
    def ok(self) -> bool:
        return bool(self.C) and self.weight_ok and self.escapes and self.remainder_ok


def irreducibility_witness(p: int, n: int) -> IrreducibilityWitness:
    """H_{j0} v^(n) = C v^(n+1) + v' with v' in Ker Q^{n+1}, j0 = -2np + p - 2."""
    if n < 0:
        raise OutOfRange("n must be nonnegative")
    j0 = -2 * n * p + p - 2
    vn = operator_singular_vector("v", n, p, check=False)
    vn1 = operator_singular_vector("v", n + 1, p, check=False)
    x = state_field_mode(compute_H(p), j0, vn)
    params = VirasoroParams(p)
    weight_ok = bool(x) and L(0, x, params) == x * h_n(p, n + 1) and \
        (2 * p - 1) + h_n(p, n) - j0 - 1 == h_n(p, n + 1)
    escapes = bool(power_apply(Q, n + 1, x))
    C = twisted_pairing(vn1, x) / twisted_pairing(vn1, vn1)
    remainder = x - vn1 * C
    remainder_ok = not power_apply(Q, n + 1, remainder)
    return IrreducibilityWitness(p, n, j0, C, x, weight_ok, escapes, remainder_ok)


def cyclic_span_dims(p: int, D: int) -> list[tuple[int, int]]:
    """Per degree d <= D-2: (dim span{a_j e^beta : a singlet, wt a <= D}, dim M(1,beta)_d)."""
    ebeta = FockVector.vacuum(p, p - 1)
    spans = {d: EchelonBasis() for d in range(D - 1)}
    for deg in range(D + 1):
        for a in kernel_basis("Qtilde", 1, 0, deg, p):
            for d_out in range(D - 1):
                j = deg - 1 - d_out
                w = state_field_mode(a, j, ebeta)
                if w:
                    spans[d_out].add(w.terms)
    return [(len(spans[d]), partition_count(d)) for d in range(D - 1)]
