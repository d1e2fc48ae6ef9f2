"""Jordan-block modules M(1)_p (x) Omega and friends.

Normalized basis: alpha(0) w1 = j w1, alpha(0) w2 = j w2 + w1.  The h-basis
instead has h(0) = alpha(0)/sqrt(2p) with off-diagonal 1, i.e. alpha(0) with
off-diagonal sqrt(2p); ``h_basis_scale`` converts constants between them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import NoSolution, OutOfRange
from .lattice_fock import (FockVector, GradedComponent, TopSpace, mode_act,
                           momentum_weight, partition_count, partitions, twisted_pairing)
from .linalg import EchelonBasis, matmul, rank, solve
from .scalars import ExactScalar
from .screening import Qtilde, kernel_graded, operator_singular_vector
from .singlet import H_mode, zhu_polynomial
from .virasoro import L, VirasoroParams, descendant_span, positive_orbit


def h_basis_scale(p: int) -> ExactScalar:
    """w2 (h-basis) = sqrt(2p) * w2 (normalized)."""
    return ExactScalar.sqrt2p(p)


@dataclass(frozen=True)
class JordanModuleSpec:
    p: int
    eigen_j: int
    size: int = 2
    nil: Fraction = Fraction(1)

    def __post_init__(self):
        if self.size != 2:
            raise OutOfRange("only rank-two Jordan tops are implemented")

    @classmethod
    def omega(cls, p: int, nil=1) -> JordanModuleSpec:
        return cls(p, p - 1, 2, Fraction(nil))

    @classmethod
    def omega0(cls, p: int) -> JordanModuleSpec:
        return cls(p, 0)

    @classmethod
    def omega1(cls, p: int) -> JordanModuleSpec:
        return cls(p, 2 * (p - 1))

    @property
    def top(self) -> TopSpace:
        nil = ((0, 1, Fraction(self.nil)),) if self.nil else ()
        return TopSpace(self.p, self.eigen_j, 2, nil)

    def alpha0_matrix(self):
        return self.top.zero_mode_matrix()


@dataclass(frozen=True)
class JordanModule:
    spec: JordanModuleSpec
    params: VirasoroParams = field(default=None)

    def __post_init__(self):
        if self.params is None:
            object.__setattr__(self, "params", VirasoroParams(self.spec.p))

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def top(self) -> TopSpace:
        return self.spec.top

    def vector(self, part=(), k: int = 0, coeff=1) -> FockVector:
        return FockVector(self.top, {(tuple(sorted(part, reverse=True)), k): Fraction(coeff)})

    def w1(self) -> FockVector:
        return self.vector((), 0)

    def w2(self) -> FockVector:
        return self.vector((), 1)

    def tensor(self, v: FockVector, k: int) -> FockVector:
        """v (x) w_{k+1} for an ordinary-sector vector v."""
        return FockVector(self.top, {(part, k): c for (part, _), c in v.terms.items()})

    def component(self, degree: int) -> GradedComponent:
        return GradedComponent(self.top, degree)

    def alpha(self, n: int, v: FockVector) -> FockVector:
        return mode_act(n, v)

    def L(self, n: int, v: FockVector) -> FockVector:
        return L(n, v, self.params)

    def H(self, n: int, v: FockVector) -> FockVector:
        return H_mode(n, v)

    def lowest_weight(self) -> Fraction:
        return momentum_weight(self.spec.eigen_j, self.p)

    def top_matrix(self, op) -> list:
        """Matrix (columns = images of w1, w2) of a weight-preserving operator on the top."""
        imgs = [op(self.w1()), op(self.w2())]
        return [[imgs[c].terms.get(((), r), Fraction(0)) for c in range(2)] for r in range(2)]

    def L0_nilpotent_part(self) -> list:
        m = self.top_matrix(lambda v: self.L(0, v))
        h = self.lowest_weight()
        return [[m[r][c] - (h if r == c else 0) for c in range(2)] for r in range(2)]


def build_jordan_module(spec: JordanModuleSpec) -> JordanModule:
    return JordanModule(spec)


# ---------------------------------------------------------------------------
# H(0) on Omega and nu_p

@dataclass(frozen=True)
class H0Computation:
    via_modes: list
    via_formula: list

    @property
    def agree(self) -> bool:
        return self.via_modes == self.via_formula

    @property
    def nu(self) -> Fraction:
        return self.via_modes[0][1]


def H0_matrix(spec: JordanModuleSpec) -> H0Computation:
    """H(0) on the top of M(1)_p (x) Omega by mode algebra and by the falling factorial of alpha(0)."""
    mod = build_jordan_module(spec)
    via_modes = mod.top_matrix(lambda v: mod.H(0, v))
    A = spec.alpha0_matrix()
    acc = [[Fraction(int(r == c)) for c in range(2)] for r in range(2)]
    for k in range(2 * spec.p - 1):
        shifted = [[A[r][c] - (k if r == c else 0) for c in range(2)] for r in range(2)]
        acc = matmul(acc, shifted)
    scale = Fraction(1, factorial(2 * spec.p - 1))
    via_formula = [[x * scale for x in row] for row in acc]
    return H0Computation(via_modes, via_formula)


def nu_p(p: int) -> Fraction:
    """H(0) w2 = nu_p w1 on Omega, normalized basis."""
    return H0_matrix(JordanModuleSpec.omega(p)).nu


def nu_p_hbasis(p: int) -> ExactScalar:
    """nu_p in the basis where alpha(0) has off-diagonal sqrt(2p)."""
    return h_basis_scale(p) * nu_p(p)


def nu_p_derivative(p: int) -> Fraction:
    """f'(p-1) for the falling factorial f: the same constant by calculus."""
    t = p - 1
    total = Fraction(0)
    for skip in range(2 * p - 1):
        prod = Fraction(1)
        for k in range(2 * p - 1):
            if k != skip:
                prod *= t - k
        total += prod
    return total / factorial(2 * p - 1)


def _closure_dims(mod: JordanModule, start: FockVector, max_degree: int, cap: int) -> list[int]:
    """Dims per degree <= max_degree of the span reached from ``start`` by L(n), H(n).

    Intermediate vectors are kept up to degree ``cap``; everything found is a
    genuine element of the generated submodule, so full dims prove cyclicity.
    """
    spans = {d: EchelonBasis() for d in range(cap + 1)}
    frontier = [start]
    (d0,) = start.degrees()
    spans[d0].add(start.terms)
    ops = [lambda n, v: mod.L(n, v), lambda n, v: mod.H(n, v)]
    while frontier:
        nxt = []
        for v in frontier:
            (d,) = v.degrees()
            for op in ops:
                for n in range(-(cap - d), d + 1):
                    w = op(n, v)
                    if not w:
                        continue
                    (dw,) = w.degrees()
                    if dw <= cap and spans[dw].add(w.terms):
                        nxt.append(w)
        frontier = nxt
    return [len(spans[d]) for d in range(max_degree + 1)]


@dataclass(frozen=True)
class NonSplitReport:
    p: int
    nu: Fraction
    generated_dims: tuple
    full_dims: tuple

    @property
    def cyclic(self) -> bool:
        return self.generated_dims == self.full_dims

    @property
    def ok(self) -> bool:
        return self.nu != 0 and self.cyclic


def non_split_witness(p: int, max_degree: int = 3) -> NonSplitReport:
    """nu_p != 0 and w2 generates M(1)_p (x) Omega under the singlet modes up to max_degree."""
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    gen = _closure_dims(mod, mod.w2(), max_degree, max_degree + 1)
    full = [2 * partition_count(d) for d in range(max_degree + 1)]
    return NonSplitReport(p, nu_p(p), tuple(gen), tuple(full))


def zhu_jordan_obstruction(p: int, x0) -> Fraction:
    """If L(0) = x0 + N (N^2 = 0, N != 0) then P = 0 forces H(0)^2 = g'(x0) N."""
    return zhu_polynomial(p).g_at(Fraction(x0), 1)


def no_log_self_extension_obstruction(p: int) -> Fraction:
    """The constant a with H(0)^2 w2 = a w1 at the lowest weight of M(1, beta); nonzero."""
    return zhu_jordan_obstruction(p, Fraction(-(p - 1) ** 2, 4 * p))


# ---------------------------------------------------------------------------
# embedding diagram

@dataclass(frozen=True)
class DiagramVertex:
    kind: str
    n: int
    vector: FockVector
    weight: Fraction


@dataclass(frozen=True)
class Arrow:
    source: tuple
    target: tuple
    verified: bool


def singular_vertex(p: int, n: int) -> DiagramVertex:
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    v = operator_singular_vector("v", n, p)
    (w,) = v.weights()
    return DiagramVertex("singular", n, mod.tensor(v, 0), w)


def cosingular_vector(p: int, n: int) -> DiagramVertex:
    """Solve alpha(0) v = (p-1) v + v^(n) (x) w1 in the degree-pn^2 component."""
    if n < 0:
        raise OutOfRange("n must be nonnegative")
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    vn = operator_singular_vector("v", n, p)
    target = mod.tensor(vn, 0)
    comp = mod.component(p * n * n)
    cols = []
    for b in comp.vectors():
        img = mod.alpha(0, b) - b * (p - 1)
        cols.append(comp.coordinates(img))
    x = solve(cols, comp.coordinates(target))
    if x is None:
        raise NoSolution(f"no cosingular vector at p={p}, n={n}")
    v = comp.from_coordinates(x)
    (w,) = v.weights()
    return DiagramVertex("cosingular", n, v, w)


def _in_submodule(target: FockVector, generators, params) -> bool:
    (deg,) = target.degrees()
    spans = descendant_span(generators, deg, params)
    return spans[deg].contains(target.terms)


def upward_arrow(p: int, n: int) -> bool:
    """Some L(m) v^{2,n}, m in {1, 2}, is nonzero and every such image lies in U(Vir) v^(n-1)."""
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    cos = cosingular_vector(p, n).vector
    images = [mod.L(m, cos) for m in (1, 2)]
    if not any(images):
        return False
    if n == 0:
        return False
    gen = singular_vertex(p, n - 1).vector
    return all(_in_submodule(im, [gen], mod.params) for im in images if im)


def downward_arrow(p: int, n: int) -> bool:
    """v^(n+1) (x) w1 lies in U(Vir) v^{2,n}."""
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    cos = cosingular_vector(p, n).vector
    gens = positive_orbit(cos, mod.params)
    target = singular_vertex(p, n + 1).vector
    return _in_submodule(target, gens, mod.params)


def quotient_singular(p: int, n: int) -> bool:
    """The image of v^{2,n} modulo the w1-span (generated by the singular vectors) is singular."""
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    cos = cosingular_vector(p, n).vector
    return all(k == 0 for m in (1, 2) for (_, k) in mod.L(m, cos).terms)


def diagram_report(p: int, n_max: int, downward_max: int = 1) -> dict:
    """JSON adjacency list for the singular/cosingular diagram up to level n_max."""
    vertices, arrows = [], []
    for n in range(n_max + 1):
        s = singular_vertex(p, n)
        c = cosingular_vector(p, n)
        vertices.append({"kind": "singular", "n": n, "weight": str(s.weight)})
        vertices.append({"kind": "cosingular", "n": n, "weight": str(c.weight)})
    for n in range(n_max + 1):
        if n >= 1:
            arrows.append({"from": ["cosingular", n], "to": ["singular", n - 1],
                           "verified": upward_arrow(p, n)})
        if n <= downward_max:
            arrows.append({"from": ["cosingular", n], "to": ["singular", n + 1],
                           "verified": downward_arrow(p, n)})
    return {"p": p, "vertices": vertices, "arrows": arrows,
            "no_upward_from_0": not upward_arrow(p, 0)}


# ---------------------------------------------------------------------------
# W = Im Q~

def w_summand_weights(p: int, max_weight: int) -> list[int]:
    out, n = [], 1
    while n * n * p - n * p + n <= max_weight:
        out.append(n * n * p - n * p + n)
        n += 1
    return out


def w_expected_dims(p: int, max_degree: int) -> list[int]:
    """Graded dims of the direct sum of L(c_{p,1}, n^2p - np + n), n >= 1."""
    dims = [0] * (max_degree + 1)
    n = 1
    while n * n * p - n * p + n <= max_degree:
        h = n * n * p - n * p + n
        gap = 2 * n * (p - 1)
        for d in range(h, max_degree + 1):
            dims[d] += partition_count(d - h) - partition_count(d - h - gap)
        n += 1
    return dims


@dataclass(frozen=True)
class WProbe:
    p: int
    ranks: tuple
    expected: tuple
    lowest_L0: Fraction
    lowest_H0: Fraction
    dual_H0: Fraction
    adjoint_sign_ok: bool

    @property
    def dims_ok(self) -> bool:
        return self.ranks == self.expected

    @property
    def ok(self) -> bool:
        return (self.dims_ok and self.lowest_L0 == 1 and self.lowest_H0 == -2 * self.p
                and self.dual_H0 == 2 * self.p and self.adjoint_sign_ok)


def W_module_probe(p: int, max_degree: int) -> WProbe:
    rep = kernel_graded("Qtilde", 1, 0, max_degree, p)
    ranks = tuple(rep.image_dims())
    low = Qtilde(FockVector.monomial(p, 0, (1,)))
    params = VirasoroParams(p)
    lowest_L0 = L(0, low, params).terms[((), 0)] / low.terms[((), 0)]
    lowest_H0 = H_mode(0, low).terms[((), 0)] / low.terms[((), 0)]
    # the contragredient partner of sector -2 at weight 1 is e^alpha (sector 2p)
    ea = FockVector.vacuum(p, 2 * p)
    dual_H0 = H_mode(0, ea).terms[((), 0)]
    adjoint_sign_ok = twisted_pairing(H_mode(0, low), ea) == -twisted_pairing(low, H_mode(0, ea)) \
        and twisted_pairing(low, ea) != 0
    return WProbe(p, ranks, tuple(w_expected_dims(p, max_degree)), lowest_L0, lowest_H0,
                  dual_H0, adjoint_sign_ok)


# ---------------------------------------------------------------------------
# self-duality and exactness

def gram_adjointness(p: int, max_degree: int = 3, ns=(-2, -1, 0, 1, 2)) -> bool:
    """<L(n)u, w> = <u, L(-n)w> on M(1)_p (x) Omega with the Jordan-compatible top form."""
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    basis = [v for d in range(max_degree + 1) for v in mod.component(d).vectors()]
    for n in ns:
        for u in basis:
            Lu = mod.L(n, u)
            for w in basis:
                if twisted_pairing(Lu, w) != twisted_pairing(u, mod.L(-n, w)):
                    return False
    return True


def jordan_similarity(lam) -> tuple[list, bool]:
    """S with S J S^{-1} = J^T-negated form [[lam,0],[-1,lam]] for J = [[lam,1],[0,lam]]."""
    J = [[lam, 1], [0, lam]]
    target = [[lam, 0], [-1, lam]]
    S = [[0, 1], [-1, 0]]
    S_inv = [[0, -1], [1, 0]]
    ok = matmul(matmul(S, J), S_inv) == [[Fraction(x) for x in r] for r in target]
    return S, ok


def exactness_bookkeeping(p: int, max_degree: int = 3) -> bool:
    """dim doubles per degree and the w1-span is stable under L(n), H(n)."""
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    for d in range(max_degree + 1):
        if mod.component(d).dimension != 2 * partition_count(d):
            return False
        for lam in partitions(d):
            v = mod.vector(lam, 0)
            for n in range(-2, d + 1):
                for img in (mod.L(n, v), mod.H(n, v), mod.alpha(n, v)):
                    if any(k != 0 for (_, k) in img.terms):
                        return False
    return True


def graded_trace_parts(mod: JordanModule, max_degree: int):
    """Per degree: (dimension, trace of the nilpotent part of L(0), its rank)."""
    out = []
    for d in range(max_degree + 1):
        comp = mod.component(d)
        mat = []
        for b in comp.vectors():
            mat.append(comp.coordinates(mod.L(0, b)))
        M = [list(r) for r in zip(*mat)]
        h = mod.lowest_weight() + d
        nil = [[M[r][c] - (h if r == c else 0) for c in range(len(M))] for r in range(len(M))]
        out.append((comp.dimension, sum(nil[i][i] for i in range(len(nil))), rank(nil)))
    return out
