# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contract as ``_kernels_py``."""
from .errors import BudgetExceeded


def bareiss_rank(rows):
    cdef list m = [list(src_row) for src_row in rows]
    cdef Py_ssize_t nrows = len(m)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(m[0])
    cdef Py_ssize_t rank = 0, col, r, c, piv
    cdef list pr, row
    cdef object pv, f, tmp
    cdef object prev = 1
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if (<list>m[r])[col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            tmp = m[piv]
            m[piv] = m[rank]
            m[rank] = tmp
        pr = <list>m[rank]
        pv = pr[col]
        for r in range(rank + 1, nrows):
            row = <list>m[r]
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


def vandermonde_power_coeff(int nvars, int power, targets, long long budget):
    cdef list tl = list(targets)
    if len(tl) != nvars:
        raise ValueError("targets must have one entry per variable")
    cdef long long base = max(tl) + 2
    cdef long long[64] weights
    cdef long long[64] tgt
    cdef long long[64] remaining
    cdef int i, j, s
    if nvars > 64:
        raise ValueError("too many variables")
    cdef long long w = 1
    for i in range(nvars):
        weights[i] = w
        w *= base
        tgt[i] = tl[i]
        remaining[i] = power * (nvars - 1)
        if tgt[i] < 0 or tgt[i] > remaining[i]:
            return 0
    if w >= (1LL << 62):
        raise OverflowError("exponent key does not fit in 64 bits")
    cdef dict poly = {0: 1}
    cdef dict new
    cdef long long key, k2, ei, ej, wi, wj, ti, tj, ri, rj
    cdef object coef
    for i in range(nvars):
        for j in range(i + 1, nvars):
            for s in range(power):
                remaining[i] -= 1
                remaining[j] -= 1
                wi = weights[i]; wj = weights[j]
                ti = tgt[i]; tj = tgt[j]
                ri = remaining[i]; rj = remaining[j]
                new = {}
                for pykey, coef in poly.items():
                    key = pykey
                    ei = (key // wi) % base
                    ej = (key // wj) % base
                    if ei + 1 <= ti and ei + 1 + ri >= ti and ej + rj >= tj:
                        k2 = key + wi
                        new[k2] = new.get(k2, 0) + coef
                    if ej + 1 <= tj and ej + 1 + rj >= tj and ei + ri >= ti:
                        k2 = key + wj
                        new[k2] = new.get(k2, 0) - coef
                poly = {k: c for k, c in new.items() if c}
                if len(poly) > budget:
                    raise BudgetExceeded(
                        f"{len(poly)} live monomials exceed budget {budget}")
    key = 0
    for i in range(nvars):
        key += tgt[i] * weights[i]
    return poly.get(key, 0)
