"""Batch verification sweeps over roots and weights.

Each check function returns a list of failure records (empty means the
property held everywhere it was tested).  ``verify_sweep`` fans a
configuration out over parameter pairs, optionally in parallel worker
processes; work items are pure, so per-worker caches are simply merged
by discarding them.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import bbdg_kl as bk
from . import cluster_basis as cb
from . import quiver_geometry as qg
from .laurent import LaurentPoly
from .params import ExchangeParams
from .support_region import d_value, is_imaginary_root, region_contains

KNOWN_CHECKS = ("support", "symmetry", "unimodality", "sigma", "sumAP", "kl-tables")


@dataclass(frozen=True)
class SweepConfig:
    b_range: tuple[int, int] = (0, 0)
    c_range: tuple[int, int] = (0, 0)
    r_list: tuple[int, ...] = ()
    norm_bound: int = 6
    checks: tuple[str, ...] = KNOWN_CHECKS
    output_path: str | None = None
    parallelism: int = 1

    def __post_init__(self):
        if not self.checks:
            raise ValueError("checks must be nonempty")
        for chk in self.checks:
            if chk not in KNOWN_CHECKS:
                raise ValueError(f"unknown check {chk!r}")
        if self.norm_bound < 1 or self.parallelism < 1:
            raise ValueError("bounds must be positive")

    def pairs(self) -> list[tuple[int, int]]:
        out = []
        if self.b_range != (0, 0) or self.c_range != (0, 0):
            blo, bhi = self.b_range if self.b_range != (0, 0) else (1, 1)
            clo, chi = self.c_range if self.c_range != (0, 0) else (1, 1)
            for b in range(blo, bhi + 1):
                for c in range(clo, chi + 1):
                    out.append((b, c))
        for r in self.r_list:
            if (r, r) not in out:
                out.append((r, r))
        return sorted(set(out))


@dataclass
class SweepReport:
    cases: int = 0
    failures: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"cases": self.cases,
                "failures": self.failures,
                "timing": self.timing,
                "config": self.config}


def roots_in_norm(bound: int):
    for a1 in range(-bound, bound + 1):
        for a2 in range(-bound, bound + 1):
            if abs(a1) + abs(a2) <= bound:
                yield (a1, a2)


def support_violations(a, params: ExchangeParams) -> list[dict]:
    """Support and degree of every coefficient of C[a] against the region
    predicate and the quadratic bound."""
    out = []
    table = cb.e_coefficients(a, params)
    for p in range(max(a[1], 0) + 1):
        for q in range(max(a[0], 0) + 1):
            coeff = table.get((p, q))
            inside = region_contains(a, p, q, params)
            if (coeff is not None) != inside:
                out.append({"kind": "support", "root": list(a), "point": [p, q],
                            "expected": "nonzero" if inside else "zero",
                            "actual": "zero" if coeff is None else "nonzero"})
            elif coeff is not None:
                dv = d_value(p, q, a, params)
                if coeff.degree() != dv:
                    out.append({"kind": "degree", "root": list(a), "point": [p, q],
                                "expected": dv, "actual": coeff.degree()})
    return out


def symmetry_violations(a, params: ExchangeParams) -> list[dict]:
    """Bar-symmetry of every coefficient; for imaginary roots at b=c also
    the top coefficient 1 and the exact support step of twice r."""
    out = []
    table = cb.e_coefficients(a, params)
    imag_skew = params.skew_symmetric and is_imaginary_root(a, params)
    for (p, q), coeff in sorted(table.items()):
        if coeff.bar() != coeff:
            out.append({"kind": "bar-symmetry", "root": list(a), "point": [p, q],
                        "expected": "bar-invariant", "actual": coeff.format()})
            continue
        if imag_skew:
            dv = d_value(p, q, a, params)
            if coeff.coeff(dv) != 1:
                out.append({"kind": "top-coefficient", "root": list(a),
                            "point": [p, q], "expected": 1,
                            "actual": coeff.coeff(dv)})
            step = 2 * params.r
            expect = list(range(-dv, dv + 1, step))
            if coeff.exponents() != expect:
                out.append({"kind": "support-step", "root": list(a),
                            "point": [p, q], "expected": expect,
                            "actual": coeff.exponents()})
    return out


def unimodality_violations(a, params: ExchangeParams) -> list[dict]:
    """Unimodality of the coefficient sequences of an imaginary-root element
    at b=c: nondecreasing from the extreme up to the middle exponent."""
    out = []
    if not (params.skew_symmetric and is_imaginary_root(a, params)):
        return out
    r = params.r
    table = cb.e_coefficients(a, params)
    for (p, q), coeff in sorted(table.items()):
        dv = d_value(p, q, a, params)
        if dv < 0:
            continue
        mid = 0 if dv % (2 * r) == 0 else -r
        seq = [coeff.coeff(i) for i in range(-dv, mid + 1, 2 * r)]
        if any(x > y for x, y in zip(seq, seq[1:])):
            out.append({"kind": "unimodality", "root": list(a), "point": [p, q],
                        "expected": "nondecreasing to the middle", "actual": seq})
    return out


def sigma_violations(a, params: ExchangeParams) -> list[dict]:
    """Reflection identities for a real root, one per admissible column."""
    out = []
    if is_imaginary_root(a, params) or a[1] < 0:
        return out
    for p in range(a[1] + 1):
        if not cb.verify_sigma_relation(a, p, params):
            out.append({"kind": "sigma", "root": list(a), "point": [p, None],
                        "expected": "identity", "actual": "mismatch"})
    return out


def sum_ap_violations(r: int, w_bound: int) -> list[dict]:
    """Summation identity over every weight with entries <= w_bound and
    every v in the nonemptiness box, dominant or not."""
    out = []
    rng = range(w_bound + 1)
    for w1 in rng:
        for w1p in rng:
            for w2 in rng:
                for w2p in rng:
                    w = (w1, w1p, w2, w2p)
                    for v1 in range(w1p + 1):
                        for v2 in range(w2p + r * v1 + 1):
                            if not bk.sum_ap_check((v1, v2), w, r):
                                out.append({"kind": "sumAP", "root": list(w),
                                            "point": [v1, v2],
                                            "expected": "identity",
                                            "actual": "mismatch"})
    return out


def deg_bound_violations(r: int, w_bound: int) -> list[dict]:
    """Strict degree bound for every framed weight with an imaginary label
    and every v with a nonnegative bound value."""
    out = []
    params = ExchangeParams.skew(r)
    for w1p in range(1, w_bound + 1):
        for w2 in range(1, w_bound + 1):
            if not is_imaginary_root((w1p, w2), params):
                continue
            w = (0, w1p, w2, 0)
            for v1 in range(w1p + 1):
                for v2 in range(r * v1 + 1):
                    if qg.fg_values((v1, v2), w, r).f < 0:
                        continue
                    if not bk.deg_ap_bound_check((v1, v2), w, r):
                        out.append({"kind": "deg-bound", "root": list(w),
                                    "point": [v1, v2],
                                    "expected": "strict bound", "actual": "violated"})
    return out


def kl_table_violations(r: int) -> list[dict]:
    """Reference stalk-series rows for this r, if any are on file."""
    from .golden import load_fixture
    rows = load_fixture("kl_tables.json").get(f"r{r}", [])
    out = []
    for row in rows:
        v, w = tuple(row["v"]), tuple(row["w"])
        pm = LaurentPoly.from_json(row["p_minus"])
        pk = LaurentPoly.from_json(row["p"])
        got_pm = bk.p_minus(v, w, r)
        got_pk = bk.p_kl(v, w, r)
        if got_pm != pm or got_pk != pk:
            out.append({"kind": "kl-table", "root": list(w), "point": list(v),
                        "expected": [row["p_minus"], row["p"]],
                        "actual": [got_pm.to_json(), got_pk.to_json()]})
    return out


def _run_item(item) -> tuple[int, list[dict]]:
    kind, b, c, payload = item
    params = ExchangeParams(b, c)
    if kind == "support":
        roots = payload
        fails = []
        for a in roots:
            fails.extend(support_violations(a, params))
        return len(roots), fails
    if kind == "symmetry":
        roots = payload
        fails = []
        for a in roots:
            fails.extend(symmetry_violations(a, params))
        return len(roots), fails
    if kind == "unimodality":
        roots = payload
        fails = []
        for a in roots:
            fails.extend(unimodality_violations(a, params))
        return len(roots), fails
    if kind == "sigma":
        roots = payload
        fails = []
        for a in roots:
            fails.extend(sigma_violations(a, params))
        return len(roots), fails
    if kind == "sumAP":
        return 1, sum_ap_violations(b, payload)
    if kind == "kl-tables":
        return 1, kl_table_violations(b)
    raise ValueError(kind)


def _sort_key(rec: dict):
    return json.dumps(rec, sort_keys=True)


def verify_sweep(cfg: SweepConfig) -> SweepReport:
    t0 = time.monotonic()
    items = []
    for (b, c) in cfg.pairs():
        roots = sorted(roots_in_norm(cfg.norm_bound))
        for chk in cfg.checks:
            if chk in ("support", "symmetry", "unimodality", "sigma"):
                # chunk the root list so parallel workers get useful slices
                chunk = max(1, len(roots) // max(cfg.parallelism, 1) // 2)
                for i in range(0, len(roots), chunk):
                    items.append((chk, b, c, roots[i:i + chunk]))
            elif chk == "sumAP":
                if b == c:
                    items.append((chk, b, c, min(cfg.norm_bound, 4)))
            elif chk == "kl-tables":
                if b == c:
                    items.append((chk, b, c, None))
    report = SweepReport(config={
        "pairs": [list(p) for p in cfg.pairs()],
        "norm_bound": cfg.norm_bound,
        "checks": list(cfg.checks),
        "parallelism": cfg.parallelism,
    })
    per_check: dict[str, float] = {}
    if cfg.parallelism > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            results = list(pool.map(_run_item, items))
    else:
        results = []
        for item in items:
            t1 = time.monotonic()
            results.append(_run_item(item))
            per_check[item[0]] = per_check.get(item[0], 0.0) + time.monotonic() - t1
    for (cases, fails) in results:
        report.cases += cases
        report.failures.extend(fails)
    report.failures.sort(key=_sort_key)
    report.timing = {"wall_s": round(time.monotonic() - t0, 3),
                     "per_check_s": {k: round(v, 3) for k, v in sorted(per_check.items())}}
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return report
