"""Command-line entry point: ``wsinglet <command> [--p P] [--format json|tsv|text]``.

Exit codes: 0 when every check in the command passes, 1 when one fails,
3 when a computation exceeds --budget, 2 for usage errors (argparse).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import acceptance
from .characters import (FockModule, KernelModule, ch_partial_irreducible, ch_selfdual,
                         ch_trace, eta_inverse, selfdual_module)
from .errors import BudgetExceeded, WSingletError
from .intertwiner import (Window, check_L_minus1_derivative, check_commutator, eval_Y,
                          lambda_sq, log_witness, source_top)
from .lattice_fock import FockVector, momentum_weight
from .log_modules import (H0_matrix, JordanModuleSpec, W_module_probe, build_jordan_module,
                          diagram_report, no_log_self_extension_obstruction, non_split_witness,
                          nu_p_hbasis)
from .screening import DEFAULT_BUDGET, dyson_constant, operator_singular_vector
from .singlet import check_zhu_relation, compute_H, zhu_polynomial
from .virasoro import L, VirasoroParams, is_singular

EXIT_PASS, EXIT_FAIL, EXIT_BUDGET = 0, 1, 3


@dataclass(frozen=True)
class RunConfig:
    p: int
    max_degree: int
    budget: int
    output_format: str


def _row(name: str, ok: bool, **fields) -> dict:
    out = {"name": name, "pass": bool(ok)}
    out.update({k: v if isinstance(v, (bool, int, list, dict)) else str(v)
                for k, v in fields.items()})
    return out


def _mat(M) -> list:
    return [[str(x) for x in row] for row in M]


# ---------------------------------------------------------------------------
# commands

def cmd_dyson(cfg: RunConfig, n_max: int) -> list[dict]:
    rows = []
    for n in range(1, n_max + 1):
        r = dyson_constant(n, cfg.p, cfg.budget)
        rows.append(_row(f"C_{n}", r.match, n=n, p=cfg.p, brute=r.brute, closed=r.closed))
    return rows


def cmd_singular(cfg: RunConfig, n_max: int) -> list[dict]:
    p = cfg.p
    params = VirasoroParams(p)
    rows = []
    kinds = [("u", None), ("v", None)] + [("u_i", i) for i in range(p - 1)]
    for kind, i in kinds:
        for n in range(n_max + 1):
            vec = operator_singular_vector(kind, n, p, i, check=False)
            (deg,) = vec.degrees()
            h = momentum_weight(vec.sector, p) + deg
            ok = bool(vec) and is_singular(vec, params) and L(0, vec, params) == vec * h
            label = f"{kind}{'' if i is None else i}^({n})"
            extra = {}
            if kind == "u" and n == 1:
                extra["equals_H"] = vec == compute_H(p)
                ok = ok and extra["equals_H"]
            rows.append(_row(label, ok, weight=h, degree=deg, sector=vec.sector,
                             singular=ok, **extra))
    return rows


def _compare(name: str, got, ref) -> dict:
    _, a, b = got._align(ref)
    flags = [x == y for x, y in zip(a, b)]
    return _row(name, all(flags) and got.same_as(ref), trace=[str(c) for c in a],
                formula=[str(c) for c in b], match=flags)


def cmd_characters(cfg: RunConfig) -> list[dict]:
    p, N = cfg.p, cfg.max_degree
    rows = [
        _compare("M(1,beta) vs 1/eta", ch_trace(FockModule(p, p - 1), N).diag, eta_inverse(p, N)),
        _compare("Ker Qtilde vs ch_selfdual(p,0)",
                 ch_trace(KernelModule("Qtilde", 1, p, 0), N).diag, ch_selfdual(p, 0, N)),
        _compare("M(1)_p (x) Omega vs 2/eta",
                 ch_trace(build_jordan_module(JordanModuleSpec.omega(p)), N).diag,
                 eta_inverse(p, N).scale(2)),
    ]
    for n in range(3):
        rows.append(_compare(f"Ker Q^{n + 1} on M(1,beta) vs partial sum n<={n}",
                             ch_trace(KernelModule("Q", n + 1, p, p - 1), N).diag,
                             ch_partial_irreducible(p, p - 1, n, N)))
    for i in range(p - 1):
        rows.append(_compare(f"u_{i}-generated submodule vs ch_selfdual(p,{i})",
                             ch_trace(selfdual_module(p, i, N), N).diag, ch_selfdual(p, i, N)))
    return rows


def cmd_zhu(cfg: RunConfig) -> list[dict]:
    p = cfg.p
    P = zhu_polynomial(p)
    rows = [_row("polynomial", True, text=str(P), coefficients=P.to_json(),
                 roots={str(r): m for r, m in P.roots_at_y0().items()})]
    for name, vec in (("vacuum", FockVector.vacuum(p, 0)), ("M(1,beta)", FockVector.vacuum(p, p - 1))):
        chk = check_zhu_relation(p, [vec])
        rows.append(_row(f"top of {name}", chk.holds, X=_mat(chk.X), Y=_mat(chk.Y)))
    mod = build_jordan_module(JordanModuleSpec.omega(p))
    X = mod.top_matrix(lambda v: mod.L(0, v))
    Y = mod.top_matrix(lambda v: mod.H(0, v))
    rows.append(_row("top of M(1)_p (x) Omega", check_zhu_relation(p, (X, Y)).holds,
                     X=_mat(X), Y=_mat(Y)))
    return rows


def cmd_jordan(cfg: RunConfig) -> list[dict]:
    p = cfg.p
    comp = H0_matrix(JordanModuleSpec.omega(p))
    rows = [_row("H(0) on Omega", comp.agree and comp.nu != 0, via_modes=_mat(comp.via_modes),
                 via_formula=_mat(comp.via_formula), nu=comp.nu, nu_hbasis=nu_p_hbasis(p))]
    ns = non_split_witness(p)
    rows.append(_row("non-split", ns.ok, generated=list(ns.generated_dims),
                     full=list(ns.full_dims)))
    a = no_log_self_extension_obstruction(p)
    rows.append(_row("no log self-extension obstruction", a != 0, a=a))
    probe = W_module_probe(p, min(cfg.max_degree, 6))
    rows.append(_row("W = Im Qtilde", probe.ok, ranks=list(probe.ranks),
                     expected=list(probe.expected),
                     lowest=f"({probe.lowest_L0}, {probe.lowest_H0})"))
    rep = diagram_report(p, 2 if p == 2 else 1)
    ok = all(a["verified"] for a in rep["arrows"]) and rep["no_upward_from_0"]
    rows.append(_row("embedding diagram", ok, diagram=rep))
    return rows


def cmd_intertwine(cfg: RunConfig, depth: int) -> list[dict]:
    p = cfg.p
    S = source_top(p)
    ws = {"w1": FockVector(S, {((), 0): Fraction(1)}), "w2": FockVector(S, {((), 1): Fraction(1)})}
    vs = {"e^beta": FockVector.vacuum(p, p - 1), "a(-1)e^beta": FockVector.monomial(p, p - 1, (1,))}
    window = Window.around(p, depth)
    rows = []
    for wn, w in ws.items():
        for vn, v in vs.items():
            checks = {"L(-1)": check_L_minus1_derivative(w, v, window)}
            for m in (-1, 0, 1):
                checks[f"[L({m}),Y]"] = check_commutator(m, w, v, window)
            rows.append(_row(f"{wn} {vn}", all(c.ok for c in checks.values()),
                             **{k: c.ok for k, c in checks.items()}))
    wit = log_witness(p, depth)
    rows.append(_row("log^1 witness", bool(wit), vector=repr(wit)))
    series = eval_Y(ws["w2"], vs["e^beta"], Window(lambda_sq(p), lambda_sq(p) + depth, depth))
    rows.append(_row("Y(w2,x)e^beta", True, series=series.to_json()))
    return rows


def cmd_verify_all(cfg: RunConfig) -> list[dict]:
    rows = []
    for res in acceptance.run_all(cfg.budget):
        rows.append({"name": f"criterion {res.number}", "pass": res.passed, "title": res.title,
                     "checks": res.to_json()["checks"]})
    return rows


# ---------------------------------------------------------------------------
# output

def _render(command: str, cfg: RunConfig, rows: list[dict], fmt: str) -> str:
    passed = all(r["pass"] for r in rows)
    if fmt == "json":
        doc = {"command": command, "config": asdict(cfg), "results": rows, "pass": passed}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "tsv":
        keys = sorted({k for r in rows for k in r} - {"name", "pass"})
        lines = ["\t".join(["name", "pass"] + keys)]
        for r in rows:
            cells = [r["name"], str(r["pass"]).lower()]
            cells += [json.dumps(r[k], sort_keys=True) if isinstance(r.get(k), (list, dict))
                      else str(r.get(k, "")) for k in keys]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"
    lines = []
    for r in rows:
        lines.append(f"{'PASS' if r['pass'] else 'FAIL'}  {r['name']}")
        for k in sorted(r):
            if k in ("name", "pass", "checks"):
                continue
            lines.append(f"    {k}: {r[k]}")
        for c in r.get("checks", []):
            lines.append(f"    {'ok ' if c['pass'] else 'BAD'} {c['label']} {c['info']}".rstrip())
    lines.append(f"overall: {'PASS' if passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="the integer p >= 2 (dyson accepts 1)")
    common.add_argument("--max-degree", type=int, default=8)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="monomial budget for brute-force expansions")
    common.add_argument("--format", choices=("json", "tsv", "text"), default="text")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="wsinglet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    d = sub.add_parser("dyson", parents=[common], help="Dyson constant terms, brute force vs closed form")
    d.add_argument("--n-max", type=int, default=2)
    s = sub.add_parser("singular", parents=[common], help="screening singular vectors")
    s.add_argument("--n-max", type=int, default=1)
    sub.add_parser("characters", parents=[common], help="graded traces vs character formulas")
    sub.add_parser("zhu", parents=[common], help="Zhu polynomial and top-level checks")
    sub.add_parser("jordan", parents=[common], help="Jordan module, nu_p, W probe, diagram")
    i = sub.add_parser("intertwine", parents=[common], help="logarithmic intertwining operator")
    i.add_argument("--depth", type=int, default=2)
    sub.add_parser("verify-all", parents=[common], help="run the ten acceptance criteria")
    return parser


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    min_p = 1 if args.command == "dyson" else 2
    if args.p < min_p:
        raise SystemExit(f"wsinglet: --p must be >= {min_p}")
    cfg = RunConfig(args.p, args.max_degree, args.budget, args.format)
    handlers = {
        "dyson": lambda: cmd_dyson(cfg, args.n_max),
        "singular": lambda: cmd_singular(cfg, args.n_max),
        "characters": lambda: cmd_characters(cfg),
        "zhu": lambda: cmd_zhu(cfg),
        "jordan": lambda: cmd_jordan(cfg),
        "intertwine": lambda: cmd_intertwine(cfg, args.depth),
        "verify-all": lambda: cmd_verify_all(cfg),
    }
    try:
        rows = handlers[args.command]()
    except BudgetExceeded as exc:
        return EXIT_BUDGET, f"budget exceeded: {exc}\n"
    text = _render(args.command, cfg, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    code = EXIT_PASS if all(r["pass"] for r in rows) else EXIT_FAIL
    return code, ("" if args.out else text)


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except WSingletError as exc:
        sys.stderr.write(f"wsinglet: {exc}\n")
        return EXIT_FAIL
    if code == EXIT_BUDGET:
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
