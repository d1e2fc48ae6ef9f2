"""Pure-Python kernels; reference implementation and fallback for ``_kernels``."""
from __future__ import annotations

from .errors import BudgetExceeded


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    ``rows`` is a list of equal-length lists of ints; it is not modified.
    Pivots are chosen as the first nonzero entry scanning rows top-down,
    so the elimination order is deterministic.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    if nrows == 0:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
        pr = m[rank]
        pv = pr[col]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f:
                for c in range(col + 1, ncols):
                    row[c] = (pv * row[c] - f * pr[c]) // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (pv * row[c]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def vandermonde_power_coeff(nvars, power, targets, budget):
    """Coefficient of prod x_i**targets[i] in prod_{i<j} (x_i - x_j)**power.

    Iterated convolution, one linear factor at a time; partial products
    whose exponents can no longer reach ``targets`` are dropped.
    """
    targets = list(targets)
    if len(targets) != nvars:
        raise ValueError("targets must have one entry per variable")
    base = max(targets) + 2
    weights = [base ** i for i in range(nvars)]
    remaining = [power * (nvars - 1)] * nvars
    if any(t < 0 or t > remaining[i] for i, t in enumerate(targets)):
        return 0
    poly = {0: 1}
    for i in range(nvars):
        for j in range(i + 1, nvars):
            for _ in range(power):
                remaining[i] -= 1
                remaining[j] -= 1
                wi, wj = weights[i], weights[j]
                ti, tj = targets[i], targets[j]
                ri, rj = remaining[i], remaining[j]
                new = {}
                for key, c in poly.items():
                    ei = (key // wi) % base
                    ej = (key // wj) % base
                    # x_i branch
                    if ei + 1 <= ti and ei + 1 + ri >= ti and ej + rj >= tj:
                        k2 = key + wi
                        new[k2] = new.get(k2, 0) + c
                    # -x_j branch
                    if ej + 1 <= tj and ej + 1 + rj >= tj and ei + ri >= ti:
                        k2 = key + wj
                        new[k2] = new.get(k2, 0) - c
                poly = {k: c for k, c in new.items() if c}
                if len(poly) > budget:
                    raise BudgetExceeded(
                        f"{len(poly)} live monomials exceed budget {budget}")
    key = sum(t * w for t, w in zip(targets, weights))
    return poly.get(key, 0)
