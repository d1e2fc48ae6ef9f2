"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--format text|json]

Each case is run on both backends, the results are checked for equality
and the best-of-N wall time is reported.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import timeit

from wsinglet import _kernels_py

try:
    from wsinglet import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def _random_matrix(rng: random.Random, nrows: int, ncols: int, rank: int) -> list[list[int]]:
    left = [[rng.randint(-4, 4) for _ in range(rank)] for _ in range(nrows)]
    right = [[rng.randint(-4, 4) for _ in range(ncols)] for _ in range(rank)]
    return [[sum(left[i][k] * right[k][j] for k in range(rank)) for j in range(ncols)]
            for i in range(nrows)]


def cases(seed: int = 0):
    rng = random.Random(seed)
    for n, r in ((30, 20), (60, 45), (90, 70)):
        m = _random_matrix(rng, n, n, r)
        yield f"bareiss_rank {n}x{n} rank {r}", "bareiss_rank", (m,)
    for nvars, power in ((4, 2), (4, 4), (6, 2), (6, 4), (8, 2)):
        targets = [(nvars - 1) * power // 2] * nvars
        yield (f"vandermonde n={nvars} power={power}", "vandermonde_power_coeff",
               (nvars, power, targets, 10 ** 8))


def run(repeat: int) -> list[dict]:
    rows = []
    for label, fn, args in cases():
        row = {"case": label}
        results = {}
        for name, mod in (("python", _kernels_py), ("cython", _kernels_c)):
            if mod is None:
                continue
            f = getattr(mod, fn)
            results[name] = f(*args)
            row[name] = min(timeit.repeat(lambda: f(*args), number=1, repeat=repeat))
        row["agree"] = len(set(results.values())) == 1
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    args = ap.parse_args(argv)
    rows = run(args.repeat)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        if _kernels_c is None:
            print("compiled kernels not available; timing the fallback only")
        for r in rows:
            line = f"{r['case']:<36} python {r['python'] * 1e3:9.2f} ms"
            if "cython" in r:
                line += f"   cython {r['cython'] * 1e3:9.2f} ms   x{r['speedup']:.1f}"
            print(line + ("" if r["agree"] else "   MISMATCH"))
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
