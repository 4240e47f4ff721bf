"""Command-line frontend.

Subcommands mirror the library: per-object commands (``triangular``,
``cluster-var``, ``standard``, ``mstar``, ``region``, ``dom``, ``dims``,
``slice``, ``a-poly``, ``kl-poly``, ``bbdg-support``, ``chi``) plus the
batch drivers ``verify`` and ``golden``.  Output is deterministic for a
fixed argument vector; exit codes are 0 on success, 1 on verification
failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bbdg_kl as bk
from . import cluster_basis as cb
from . import golden as golden_mod
from . import quiver_geometry as qg
from . import support_region as sr
from .errors import Rank2Error
from .laurent import LaurentPoly
from .params import ExchangeParams
from .qtorus import TorusElement
from .sweeps import KNOWN_CHECKS, SweepConfig, verify_sweep


def _jdump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _params(args) -> ExchangeParams:
    return ExchangeParams(args.b, args.c)


def _emit_torus(elem: TorusElement, args, params: ExchangeParams | None = None,
                a=None) -> str:
    fmt = args.format
    if fmt == "json":
        return _jdump(elem.to_json())
    if fmt == "ascii":
        return elem.format()
    if fmt in ("csv", "latex") and a is not None and params is not None:
        table = _etable(elem, a, params)
        return _etable_csv(table) if fmt == "csv" else _etable_latex(table)
    if fmt == "csv":
        lines = ["e1,e2,coeff"]
        for (e1, e2) in elem.support():
            lines.append(f"{e1},{e2},{elem.coeff(e1, e2).format()}")
        return "\n".join(lines)
    if fmt == "latex":
        return " + ".join(
            f"\\left({elem.coeff(*k).format(descending=True)}\\right)"
            f" X^{{({k[0]},{k[1]})}}" for k in elem.support())
    raise ValueError(f"unsupported format {fmt}")


def _etable(elem: TorusElement, a, params: ExchangeParams):
    b, c = params.b, params.c
    out = {}
    for (e1, e2) in elem.support():
        out[((e1 + a[0]) // b, (e2 + a[1]) // c)] = elem.coeff(e1, e2)
    return out


def _etable_csv(table) -> str:
    pmax = max(p for p, _ in table)
    qmax = max(q for _, q in table)
    lines = ["q\\p," + ",".join(str(p) for p in range(pmax + 1))]
    for q in range(qmax, -1, -1):
        row = [str(q)]
        for p in range(pmax + 1):
            coeff = table.get((p, q))
            row.append(coeff.format(descending=True) if coeff else "")
        lines.append(",".join(row))
    return "\n".join(lines)


def _etable_latex(table) -> str:
    pmax = max(p for p, _ in table)
    qmax = max(q for _, q in table)
    lines = [
        "\\begin{tabular}{|c|" + "c" * (pmax + 1) + "|}",
        "\\hline",
        " & " + " & ".join(f"${p}$" for p in range(pmax + 1)) + "\\\\",
        "\\hline",
    ]
    for q in range(qmax, -1, -1):
        cells = [str(q)]
        for p in range(pmax + 1):
            coeff = table.get((p, q))
            cells.append("" if coeff is None else "$" + _latex_poly(coeff) + "$")
        lines.append(" & ".join(cells) + "\\\\")
    lines += ["\\hline", "\\end{tabular}"]
    return "\n".join(lines)


def _latex_poly(poly: LaurentPoly, var: str = "\\mathbf{v}") -> str:
    if not poly:
        return "0"
    parts = []
    for e, c in sorted(poly.terms(), reverse=True):
        if e == 0:
            body = str(abs(c))
        else:
            power = var if e == 1 else f"{var}^{{{e}}}"
            body = power if abs(c) == 1 else f"{abs(c)}{power}"
        if parts:
            parts.append("-" if c < 0 else "+")
        elif c < 0:
            parts.append("-")
        parts.append(body)
    return " ".join(parts)


def _region_ascii(a, params: ExchangeParams) -> str:
    desc = sr.region(a, params)
    if desc.kind == "curved":
        pmax, qmax = max(a[1], 1), max(a[0], 1)
    else:
        pmax = max([v[0] for v in desc.vertices] + [1])
        qmax = max([v[1] for v in desc.vertices] + [1])
    lines = []
    for q in range(qmax, -1, -1):
        row = [f"{q:>3} "]
        for p in range(pmax + 1):
            row.append("#" if sr.region_contains(a, p, q, params) else ".")
        lines.append(" ".join(row))
    lines.append("    " + " ".join(str(p % 10) for p in range(pmax + 1)))
    return "\n".join(lines)


def _region_svg(a, params: ExchangeParams) -> str:
    desc = sr.region(a, params)
    scale = 24
    if desc.kind == "curved":
        pmax, qmax = max(a[1], 1), max(a[0], 1)
    else:
        pmax = max([v[0] for v in desc.vertices] + [1])
        qmax = max([v[1] for v in desc.vertices] + [1])
    width, height = (pmax + 2) * scale, (qmax + 2) * scale
    xy = lambda p, q: (scale * (p + 1), height - scale * (q + 1))
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    if desc.kind != "curved" and len(desc.vertices) >= 3:
        pts = " ".join("{},{}".format(*xy(p, q)) for p, q in desc.vertices)
        parts.append(f'<polygon points="{pts}" fill="#cfe0ff" stroke="#335"/>')
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            inside = sr.region_contains(a, p, q, params)
            cx, cy = xy(p, q)
            fill = "#234" if inside else "#ccc"
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="{fill}"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def _add_bc(sub, skew_only: bool = False):
    if skew_only:
        sub.add_argument("--r", type=int, required=True)
    else:
        sub.add_argument("--b", type=int, required=True)
        sub.add_argument("--c", type=int, required=True)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="rank2", description=__doc__)
    subs = top.add_subparsers(dest="command", required=True)

    p = subs.add_parser("triangular", help="triangular basis element at a root")
    _add_bc(p)
    p.add_argument("--a", type=int, nargs=2, required=True)
    p.add_argument("--format", choices=("json", "csv", "latex", "ascii"), default="json")
    p.add_argument("--method", choices=("auto", "kl", "monomial"), default="auto")

    p = subs.add_parser("cluster-var", help="cluster variable in the initial torus")
    _add_bc(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv", "ascii"), default="json")

    p = subs.add_parser("standard", help="standard monomial at a root")
    _add_bc(p)
    p.add_argument("--a", type=int, nargs=2, required=True)
    p.add_argument("--format", choices=("json", "csv", "ascii"), default="json")

    p = subs.add_parser("mstar", help="weighted standard monomial for a 4-tuple")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--w", type=int, nargs=4, required=True)
    p.add_argument("--format", choices=("json", "csv", "ascii"), default="json")

    p = subs.add_parser("region", help="support region of a root")
    _add_bc(p)
    p.add_argument("--a", type=int, nargs=2, required=True)
    p.add_argument("--format", choices=("json", "ascii"), default="json")
    p.add_argument("--svg", help="also write an SVG rendering to this path")

    p = subs.add_parser("dom", help="dominant pairs for a weight")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--w", type=int, nargs=4, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="csv")

    p = subs.add_parser("dims", help="dimension record for (v, w)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--w", type=int, nargs=4, required=True)
    p.add_argument("--v", type=int, nargs=2, required=True)

    p = subs.add_parser("slice", help="slice bookkeeping at a dominant v0")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--w", type=int, nargs=4, required=True)
    p.add_argument("--v0", type=int, nargs=2, required=True)
    p.add_argument("--v", type=int, nargs=2)

    p = subs.add_parser("a-poly", help="multiplicity polynomial in t")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--w", type=int, nargs=4, required=True)
    p.add_argument("--v", type=int, nargs=2, required=True)
    p.add_argument("--vprime", type=int, nargs=2, default=[0, 0])
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = subs.add_parser("kl-poly", help="stalk series and its polynomial form")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--w", type=int, nargs=4, required=True)
    p.add_argument("--v", type=int, nargs=2, required=True)
    p.add_argument("--minus", action="store_true", help="print the shifted series instead")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = subs.add_parser("bbdg-support", help="support predicate for a summand")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--w", type=int, nargs=4, required=True)
    p.add_argument("--v", type=int, nargs=2, required=True)
    p.add_argument("--vprime", type=int, nargs=2, required=True)

    p = subs.add_parser("chi", help="torus character of the standard or simple object")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--w", type=int, nargs=4, required=True)
    p.add_argument("--which", choices=("M", "L"), default="L")
    p.add_argument("--format", choices=("json", "csv", "ascii"), default="json")

    p = subs.add_parser("verify", help="run property sweeps and write a report")
    p.add_argument("--b-range", type=int, nargs=2)
    p.add_argument("--c-range", type=int, nargs=2)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--r", type=int, nargs="*", default=[])
    p.add_argument("--norm-bound", type=int, default=6)
    p.add_argument("--checks", default="all",
                   help="comma list from " + ",".join(KNOWN_CHECKS) + " or 'all'")
    p.add_argument("--output", help="write the JSON report here")
    p.add_argument("--jobs", type=int, default=1)

    p = subs.add_parser("golden", help="re-derive every reference table and diff")
    p.add_argument("--only", choices=sorted(golden_mod.GOLDEN_CHECKS))

    return top


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        return _dispatch(args)
    except (Rank2Error, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "triangular":
        params = _params(args)
        a = tuple(args.a)
        elem = cb.triangular_basis(a, params, method=args.method)
        print(_emit_torus(elem, args, params, a))
        return 0
    if cmd == "cluster-var":
        print(_emit_torus(cb.cluster_variable(args.m, _params(args)), args))
        return 0
    if cmd == "standard":
        print(_emit_torus(cb.standard_monomial(tuple(args.a), _params(args)), args))
        return 0
    if cmd == "mstar":
        print(_emit_torus(cb.mstar(tuple(args.w), ExchangeParams.skew(args.r)), args))
        return 0
    if cmd == "region":
        params = _params(args)
        a = tuple(args.a)
        if args.format == "json":
            print(_jdump(sr.region(a, params).to_json()))
        else:
            print(_region_ascii(a, params))
        if args.svg:
            with open(args.svg, "w", encoding="utf-8") as fh:
                fh.write(_region_svg(a, params))
        return 0
    if cmd == "dom":
        w = tuple(args.w)
        rows = []
        for v in qg.dom_enumerate(w, args.r):
            dd = qg.dims(v, w, args.r)
            fg = qg.fg_values(v, w, args.r)
            rows.append({"v1": v.v1, "v2": v.v2, "d": dd.d, "dTilde": dd.d_tilde,
                         "f": fg.f, "fSwap": fg.f_swap, "g": fg.g})
        if args.format == "json":
            print(_jdump(rows))
        else:
            print("v1,v2,d,dTilde,f,fSwap,g")
            for row in rows:
                print("{v1},{v2},{d},{dTilde},{f},{fSwap},{g}".format(**row))
        return 0
    if cmd == "dims":
        dd = qg.dims(tuple(args.v), tuple(args.w), args.r)
        fg = qg.fg_values(tuple(args.v), tuple(args.w), args.r)
        print(_jdump({"d": dd.d, "dTilde": dd.d_tilde, "dimAffine": dd.dim_affine,
                      "dimG": dd.dim_g, "dimGTilde": dd.dim_g_tilde,
                      "f": fg.f, "fSwap": fg.f_swap, "g": fg.g}))
        return 0
    if cmd == "slice":
        w, v0 = tuple(args.w), tuple(args.v0)
        out = {"wperp": list(qg.wperp(w, v0, args.r))}
        if args.v:
            v = tuple(args.v)
            out["vperp"] = [v[0] - v0[0], v[1] - v0[1]]
            fd = qg.fiber_dims(v, w, args.r, v0)
            out["fibers"] = {
                "piBase": {"gr": list(fd.pi_base[0]), "dim": fd.pi_base[1]},
                "piFiber": {"gr": list(fd.pi_fiber[0]), "dim": fd.pi_fiber[1]},
                "piTotal": fd.pi_total,
                "p1": {"gr": list(fd.p1[0]), "dim": fd.p1[1]},
                "p2": {"gr": list(fd.p2[0]), "dim": fd.p2[1]},
                "p2Prime": {"gr": list(fd.p2_prime[0]), "dim": fd.p2_prime[1]},
            }
        print(_jdump(out))
        return 0
    if cmd == "a-poly":
        poly = bk.a_poly(tuple(args.v), tuple(args.vprime), tuple(args.w), args.r)
        print(poly.format("t") if args.format == "text" else _jdump(poly.to_json()))
        return 0
    if cmd == "kl-poly":
        v, w = tuple(args.v), tuple(args.w)
        poly = bk.p_minus(v, w, args.r) if args.minus else bk.p_kl(v, w, args.r)
        if args.format == "text":
            print(poly.format("t"))
        else:
            print(_jdump({"pMinus": bk.p_minus(v, w, args.r).to_json(),
                          "pKL": bk.p_kl(v, w, args.r).to_json()}))
        return 0
    if cmd == "bbdg-support":
        ok = bk.bbdg_support(tuple(args.v), tuple(args.w), tuple(args.vprime), args.r)
        print("true" if ok else "false")
        return 0
    if cmd == "chi":
        w = tuple(args.w)
        elem = bk.chi_M(w, args.r) if args.which == "M" else bk.chi_L(w, args.r)
        print(_emit_torus(elem, args))
        return 0
    if cmd == "verify":
        checks = tuple(KNOWN_CHECKS) if args.checks == "all" else tuple(args.checks.split(","))
        b_range = tuple(args.b_range) if args.b_range else (
            (args.b, args.b) if args.b else (0, 0))
        c_range = tuple(args.c_range) if args.c_range else (
            (args.c, args.c) if args.c else (0, 0))
        cfg = SweepConfig(b_range=b_range, c_range=c_range,
                          r_list=tuple(args.r), norm_bound=args.norm_bound,
                          checks=checks, output_path=args.output,
                          parallelism=args.jobs)
        report = verify_sweep(cfg)
        print(_jdump({"cases": report.cases, "failures": len(report.failures),
                      "timing": report.timing}))
        if report.failures:
            for rec in report.failures[:50]:
                print("FAIL " + json.dumps(rec, sort_keys=True))
        return 0 if report.ok else 1
    if cmd == "golden":
        results = golden_mod.run_golden(args.only)
        bad = 0
        for name, problems in results:
            if problems:
                bad += 1
                print(f"{name}: FAIL")
                for line in problems:
                    print(f"  {line}")
            else:
                print(f"{name}: PASS")
        return 1 if bad else 0
    raise ValueError(f"unhandled command {cmd}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
