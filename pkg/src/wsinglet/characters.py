"""Exact truncated q-series and characters at c_{p,1}."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IndexOutOfRange
from .lattice_fock import GradedComponent, momentum_weight, partition_count, sector
from .linalg import rank
from .log_modules import JordanModule, graded_trace_parts
from .screening import kernel_graded, operator_singular_vector
from .virasoro import L, VirasoroParams, descendant_span, span_dims, verma_chain


@dataclass(frozen=True)
class QSeries:
    """sum_k coeffs[k] q^{offset + k}, known exactly for k <= len(coeffs) - 1."""

    offset: Fraction
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "offset", Fraction(self.offset))
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @property
    def top(self) -> Fraction:
        """Largest exponent that is known exactly."""
        return self.offset + self.N

    def coefficient(self, exponent) -> int:
        k = Fraction(exponent) - self.offset
        if k.denominator != 1 or k < 0:
            return 0
        if k > self.N:
            raise IndexOutOfRange(f"exponent {exponent} beyond truncation")
        return self.coeffs[int(k)]

    def exponents(self) -> list[Fraction]:
        return [self.offset + k for k in range(len(self.coeffs))]

    def leading_exponent(self) -> Fraction | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return self.offset + k
        return None

    # -- ring operations -------------------------------------------------
    def _align(self, other: QSeries):
        diff = other.offset - self.offset
        if diff.denominator != 1:
            raise ValueError("offsets differ by a non-integer")
        off = min(self.offset, other.offset)
        top = min(self.top, other.top)
        n = int(top - off)
        a = [self.coefficient(off + k) if off + k >= self.offset else 0 for k in range(n + 1)]
        b = [other.coefficient(off + k) if off + k >= other.offset else 0 for k in range(n + 1)]
        return off, a, b

    def __add__(self, other: QSeries) -> QSeries:
        off, a, b = self._align(other)
        return QSeries(off, [x + y for x, y in zip(a, b)])

    def __sub__(self, other: QSeries) -> QSeries:
        return self + other.scale(-1)

    def scale(self, c) -> QSeries:
        return QSeries(self.offset, [c * x for x in self.coeffs])

    def shift(self, r) -> QSeries:
        """Multiply by q^r."""
        return QSeries(self.offset + Fraction(r), self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        n = min(self.N, other.N)
        out = [0] * (n + 1)
        for i in range(n + 1):
            if self.coeffs[i]:
                for j in range(n + 1 - i):
                    out[i + j] += self.coeffs[i] * other.coeffs[j]
        return QSeries(self.offset + other.offset, out)

    __rmul__ = __mul__

    def truncate(self, N: int) -> QSeries:
        return QSeries(self.offset, self.coeffs[:N + 1])

    def same_as(self, other: QSeries) -> bool:
        """Coefficientwise equality on the common window."""
        try:
            _, a, b = self._align(other)
        except ValueError:
            return False
        return a == b and self.leading_exponent() == other.leading_exponent()

    # -- output ------------------------------------------------------------
    def to_rows(self) -> list[tuple[int, str, str]]:
        return [(k, str(self.offset + k), str(c)) for k, c in enumerate(self.coeffs)]

    def to_tsv(self) -> str:
        lines = ["k\texponent\tcoefficient"]
        lines += ["\t".join(map(str, r)) for r in self.to_rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"offset": str(self.offset), "coeffs": [str(c) for c in self.coeffs]}


@dataclass(frozen=True)
class LogCharacter:
    """Graded trace: ``diag`` counts dimensions; ``tau_part`` is the trace of
    the nilpotent part of L(0); ``nil_rank`` records its rank per degree."""

    diag: QSeries
    tau_part: QSeries
    nil_rank: QSeries

    @property
    def semisimple(self) -> bool:
        return not any(self.nil_rank.coeffs)

    def to_json(self) -> dict:
        return {"diag": self.diag.to_json(), "tau_part": self.tau_part.to_json(),
                "nil_rank": self.nil_rank.to_json()}


def central_shift(p: int) -> Fraction:
    """-c_{p,1}/24."""
    return Fraction(-1, 24) + Fraction((p - 1) ** 2, 4 * p)


def euler_product(N: int) -> QSeries:
    """prod_{n>=1} (1 - q^n) truncated, offset 0."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for n in range(1, N + 1):
        for k in range(N, n - 1, -1):
            coeffs[k] -= coeffs[k - n]
    return QSeries(0, coeffs)


def eta_inverse(p: int, N: int) -> QSeries:
    """q^{-1/24} prod (1-q^n)^{-1}; ``p`` is accepted for interface symmetry."""
    return QSeries(Fraction(-1, 24), [partition_count(k) for k in range(N + 1)])


def _monomial(exponent, N: int, base: Fraction) -> QSeries:
    """q^{exponent} written relative to ``base`` with N+1 slots."""
    k = Fraction(exponent) - base
    coeffs = [0] * (N + 1)
    if k.denominator != 1:
        raise ValueError("exponent off the lattice")
    if 0 <= k <= N:
        coeffs[int(k)] = 1
    return QSeries(base, coeffs)


def _check_i(p: int, i: int, hi: int):
    if not 0 <= i <= hi:
        raise IndexOutOfRange(f"i = {i} outside 0..{hi}")


def selfdual_numerator(p: int, i: int, N: int) -> QSeries:
    """sum_n sgn(n) q^{((2n+1)p - i - 1)^2/4p}, sgn(0) = 1, relative to its lowest power."""
    _check_i(p, i, p - 2)
    base = Fraction((p - i - 1) ** 2, 4 * p)
    coeffs = [0] * (N + 1)
    n = 0
    # exponents grow in |n|; stop once both branches pass the window
    while True:
        done = True
        for m in (n, -n - 1):
            e = Fraction(((2 * m + 1) * p - i - 1) ** 2, 4 * p) - base
            if e <= N:
                done = False
                coeffs[int(e)] += 1 if m >= 0 else -1
        if done:
            break
        n += 1
    return QSeries(base, coeffs)


def ch_selfdual(p: int, i: int, N: int) -> QSeries:
    return selfdual_numerator(p, i, N) * eta_inverse(p, N)


def ch_irreducible(p: int, i: int, n: int, N: int) -> QSeries:
    """(q^{a_n} - q^{b_n})/eta, a_n = ((2n+1)p-i-1)^2/4p, b_n = ((2n+1)p+i+1)^2/4p.

    The window is fixed at the i-th base (p-i-1)^2/4p so summands align.
    """
    _check_i(p, i, p - 1)
    if n < 0:
        raise IndexOutOfRange("n must be nonnegative")
    base = Fraction((p - i - 1) ** 2, 4 * p)
    a = Fraction(((2 * n + 1) * p - i - 1) ** 2, 4 * p)
    b = Fraction(((2 * n + 1) * p + i + 1) ** 2, 4 * p)
    num = _monomial(a, N, base) - _monomial(b, N, base)
    return num * eta_inverse(p, N)


def ch_partial_irreducible(p: int, i: int, n_max: int, N: int) -> QSeries:
    total = ch_irreducible(p, i, 0, N)
    for n in range(1, n_max + 1):
        total = total + ch_irreducible(p, i, n, N)
    return total


def verma_character(p: int, h, N: int) -> QSeries:
    """q^{h - c/24} / prod (1 - q^n)."""
    return eta_inverse(p, N).shift(Fraction(h) + Fraction((p - 1) ** 2, 4 * p))


def ch_from_chain(p: int, m: int, N: int) -> QSeries:
    """V(h_0) - V(h_1) along the Verma embedding chain starting at h_{m,1}."""
    chain = verma_chain(p, m, 2)
    h0, h1 = chain.weights[0], chain.weights[1]
    v0 = verma_character(p, h0, N)
    v1 = verma_character(p, h1, N)
    return v0 - QSeries(v0.offset, [v1.coefficient(v0.offset + k) if v0.offset + k >= v1.offset
                                   else 0 for k in range(N + 1)])


def fock_character(p: int, j: int, N: int) -> QSeries:
    """q^{wt(e^gamma) - c/24} / prod (1 - q^n)."""
    return eta_inverse(p, N).shift(momentum_weight(j, p) + Fraction((p - 1) ** 2, 4 * p))


def series_from_dims(dims, offset) -> QSeries:
    return QSeries(offset, list(dims))


# ---------------------------------------------------------------------------
# literal traces

@dataclass(frozen=True)
class FockModule:
    p: int
    j: int


@dataclass(frozen=True)
class KernelModule:
    """Ker op^power on a Fock sector."""
    op: str
    power: int
    p: int
    j: int


@dataclass(frozen=True)
class GeneratedModule:
    """The Virasoro submodule generated by singular vectors in one sector."""
    generators: tuple
    p: int
    j: int


def ch_trace(module, N: int) -> LogCharacter:
    """tr q^{L(0) - c/24} degree by degree, with the nilpotent part of L(0) tracked."""
    if isinstance(module, JordanModule):
        p = module.p
        parts = graded_trace_parts(module, N)
        offset = module.lowest_weight() + central_shift(p)
        dims = [d for d, _, _ in parts]
        taus = [t for _, t, _ in parts]
        ranks = [r for _, _, r in parts]
        return LogCharacter(QSeries(offset, dims), QSeries(offset, taus), QSeries(offset, ranks))
    if isinstance(module, FockModule):
        params = VirasoroParams(module.p)
        dims, taus, ranks = [], [], []
        for d in range(N + 1):
            comp = GradedComponent(sector(module.p, module.j), d)
            h = momentum_weight(module.j, module.p) + d
            cols = [comp.coordinates(L(0, b, params) - b * h) for b in comp.vectors()]
            dims.append(comp.dimension)
            taus.append(sum(cols[k][k] for k in range(len(cols))))
            ranks.append(rank(cols))
        offset = momentum_weight(module.j, module.p) + central_shift(module.p)
        return LogCharacter(QSeries(offset, dims), QSeries(offset, taus), QSeries(offset, ranks))
    if isinstance(module, KernelModule):
        rep = kernel_graded(module.op, module.power, module.j, N, module.p)
        offset = momentum_weight(module.j, module.p) + central_shift(module.p)
        zero = QSeries(offset, [0] * (N + 1))
        return LogCharacter(QSeries(offset, rep.kernel_dims()), zero, zero)
    if isinstance(module, GeneratedModule):
        dims = span_dims(descendant_span(list(module.generators), N))
        offset = momentum_weight(module.j, module.p) + central_shift(module.p)
        zero = QSeries(offset, [0] * (N + 1))
        return LogCharacter(QSeries(offset, dims), zero, zero)
    raise TypeError(f"cannot take the character of {module!r}")


def selfdual_module(p: int, i: int, max_degree: int) -> GeneratedModule:
    """Submodule of M(1, gamma_i) generated by the u_i^(n) of degree <= max_degree."""
    _check_i(p, i, p - 2)
    gens = []
    n = 0
    while u_i_degree(p, i, n) <= max_degree:
        gens.append(operator_singular_vector("u_i", n, p, i))
        n += 1
    return GeneratedModule(tuple(gens), p, i)


def u_i_degree(p: int, i: int, n: int) -> int:
    """Heisenberg degree of u_i^(n) inside M(1, gamma_i)."""
    return n * (n * p + p - i - 1)
