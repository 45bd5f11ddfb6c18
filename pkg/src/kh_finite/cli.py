"""Command-line front end: ``kh homology|jones|cone|singular|invariants|verify|poincare``.

Exit codes: 0 success, 1 a verification mismatch, 2 bad input, 3 a violated
chain-complex contract.  Warnings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from . import __version__
from .algebra import ContractViolation
from .complex import euler_characteristic, homology
from .diagram import PDParseError, PlanarDiagram, load_table, parse_pd
from .invariants import (Q_PLUS_Q_INV, format_doubled, invariant_row,
                         jones_oracle, jones_polynomial, kunneth_check, poincare_polynomial,
                         rows_to_csv, rows_to_json, skein_check, skein_triple)
from .khovanov import khovanov_complex, khovanov_euler, khovanov_homology
from .singular import (DEFAULT_WINDOW, finiteness_check_G, finiteness_check_T, hopf_report,
                       model_complex, prop3_check, prop4_check, random_model_combination)

log = logging.getLogger("kh")

MAX_CROSSINGS = 12
SUITES = ("prop3", "prop4", "finiteness-g", "finiteness-t", "skein", "kunneth", "euler",
          "divisibility", "all")


@dataclass
class RunConfig:
    command: str
    knot: str | None = None
    pd: str | None = None
    table: str | None = None
    out: str | None = None
    max_crossings: int = 7
    reduced: bool = False
    basepoint: int | None = None
    codim: int | None = None
    doubled: tuple[int, ...] = ()
    suite: str = "all"
    shift_window: tuple[int, int] = DEFAULT_WINDOW
    jobs: int = 1
    seed: int = 0
    fmt: str = "text"

    def __post_init__(self):
        if not 0 <= self.max_crossings <= MAX_CROSSINGS:
            raise ValueError(f"--max-crossings must be between 0 and {MAX_CROSSINGS}")


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple[int, int]:
    try:
        h, q = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected H,Q") from None
    return h, q


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kh", description="Khovanov homology and wall-crossing cones.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--knot", help="name of a diagram in the knot table")
    src.add_argument("--pd", help="PD code, e.g. 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'")
    common.add_argument("--table", help="knot-table file (default: bundled, or $KH_TABLE_PATH)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--max-crossings", type=int, default=7)
    common.add_argument("--reduced", action="store_true")
    common.add_argument("--basepoint", type=int)
    common.add_argument("--codim", type=int)
    common.add_argument("--doubled", type=_int_list, default=())
    common.add_argument("--shift-window", type=_pair, default=DEFAULT_WINDOW)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("homology", parents=[common], help="Khovanov homology tables")
    sub.add_parser("jones", parents=[common], help="Jones polynomial, two ways")
    sub.add_parser("cone", parents=[common], help="cone of one wall-crossing map")
    sub.add_parser("singular", parents=[common], help="iterated cone over double points")
    sub.add_parser("invariants", parents=[common], help="invariant table")
    sub.add_parser("poincare", parents=[common], help="Poincare polynomials")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = {k: getattr(ns, k) for k in ("command", "knot", "pd", "table", "out", "max_crossings",
                                          "reduced", "basepoint", "codim", "doubled",
                                          "shift_window", "jobs", "seed", "fmt")}
    fields["suite"] = getattr(ns, "suite", "all")
    try:
        return RunConfig(**fields)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def select(cfg: RunConfig) -> dict[str, PlanarDiagram]:
    """Diagrams named by the config: one knot, one PD code, or the table."""
    if cfg.pd is not None:
        return {"pd": parse_pd(cfg.pd, name="pd")}
    table = load_table(cfg.table)
    if cfg.knot is not None:
        if cfg.knot not in table:
            raise UsageError(f"unknown diagram {cfg.knot!r}")
        return {cfg.knot: table[cfg.knot]}
    sel = {k: d for k, d in table.items() if d.n <= cfg.max_crossings}
    if not sel:
        log.warning("no diagrams selected (empty table or --max-crossings too small)")
    return sel


# ---------------------------------------------------------------------------
# commands; each returns (report text, ok flag)


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_homology(cfg: RunConfig):
    parts, data = [], {}
    for name, d in select(cfg).items():
        h = khovanov_homology(d, cfg.reduced, cfg.basepoint, jobs=cfg.jobs)
        data[name] = h.to_json()
        parts.append(f"{name}{' (reduced)' if cfg.reduced else ''}\n{h.render()}")
        if d.components == 2 and d.n == 2 and not cfg.reduced:
            rep = hopf_report(d)
            data[name]["hopf_claim"] = rep.to_json()
            parts.append(rep.render(with_table=False))
    return (_emit_json(data) if cfg.fmt == "json" else "\n\n".join(parts)), True


def cmd_jones(cfg: RunConfig):
    rows, ok = [], True
    for name, d in select(cfg).items():
        j = jones_oracle(d)
        agree = khovanov_euler(d) == j
        ok &= agree
        rows.append({"knot": name, "J(q)": j.to_string("q"),
                     "V(t)": format_doubled(jones_polynomial(d)),
                     "euler_agrees": agree})
    if cfg.fmt == "json":
        return _emit_json(rows), ok
    return "\n".join(f"{r['knot']}: J = {r['J(q)']}   V = {r['V(t)']}   "
                     f"[khovanov euler {'agrees' if r['euler_agrees'] else 'DIFFERS'}]"
                     for r in rows), ok


def _one(cfg: RunConfig) -> tuple[str, PlanarDiagram]:
    sel = select(cfg)
    if len(sel) != 1:
        raise UsageError("this command needs --knot or --pd")
    return next(iter(sel.items()))


def cmd_cone(cfg: RunConfig):
    _, d = _one(cfg)
    ks = cfg.doubled or tuple(range(d.n))
    reports = [prop3_check(d, k, cfg.shift_window, diagnostics=True) for k in ks]
    ok = all(r.verdict == "match" for r in reports)
    if cfg.fmt == "json":
        return _emit_json([r.to_json() for r in reports]), ok
    return "\n\n".join(r.render() for r in reports), ok


def cmd_singular(cfg: RunConfig):
    _, d = _one(cfg)
    ks = cfg.doubled or tuple(range(cfg.codim if cfg.codim is not None else d.n))
    rep = prop4_check(d, ks, cfg.shift_window)
    if cfg.fmt == "json":
        return _emit_json(rep.to_json()), rep.verdict == "match"
    return rep.render(), rep.verdict == "match"


def cmd_invariants(cfg: RunConfig):
    rows = [invariant_row(name, d) for name, d in select(cfg).items()]
    if cfg.fmt == "csv":
        return rows_to_csv(rows).rstrip("\n"), True
    if cfg.fmt == "json":
        return rows_to_json(rows), True
    return "\n".join("  ".join(f"{k}={v}" for k, v in r.items()) for r in rows), True


def cmd_poincare(cfg: RunConfig):
    data = {}
    if cfg.knot is None and cfg.pd is None:
        n = cfg.codim if cfg.codim is not None else 1
        c = model_complex(n)
        data[f"model({n})"] = {"chains": poincare_polynomial(c).to_string("t"),
                               "euler": euler_characteristic(c)}
    else:
        for name, d in select(cfg).items():
            c = khovanov_complex(d, cfg.reduced, cfg.basepoint)
            data[name] = {"chains": poincare_polynomial(c).to_string("t"),
                          "homology": poincare_polynomial(homology(c, cfg.jobs)).to_string("t")}
    if cfg.fmt == "json":
        return _emit_json(data), True
    return "\n".join(f"{k}: " + ", ".join(f"{a} = {b}" for a, b in v.items())
                     for k, v in data.items()), True


# ---------------------------------------------------------------------------
# verification suites


def _suite_diagrams(cfg, limit=None):
    sel = select(cfg)
    cap = cfg.max_crossings if limit is None else min(cfg.max_crossings, limit)
    if cfg.knot is None and cfg.pd is None:
        sel = {k: d for k, d in sel.items() if d.n <= cap}
    return sel


def _result(suite, item, match, **extra):
    return {"suite": suite, "item": item, "verdict": "match" if match else "mismatch", **extra}


def suite_euler(cfg):
    out = []
    for name, d in _suite_diagrams(cfg).items():
        out.append(_result("euler", name, khovanov_euler(d) == jones_oracle(d)))
        if d.components == 1:
            red = khovanov_euler(d, reduced=True) * Q_PLUS_Q_INV
            out.append(_result("euler", f"{name} reduced", red == jones_oracle(d)))
    return out


def suite_skein(cfg):
    out = []
    for name, d in _suite_diagrams(cfg, 6).items():
        for k in range(d.n):
            res = skein_check(skein_triple(d, k))
            out.append(_result("skein", f"{name}[{k}]", res.is_zero(), residual=str(res)))
    return out


def suite_kunneth(cfg):
    items = sorted(_suite_diagrams(cfg).items())
    out = []
    for (n1, d1), (n2, d2) in combinations(items + [("0_1*", parse_pd("O"))], 2):
        if d1.n + d2.n > 6:
            continue
        rep = kunneth_check(d1, d2)
        out.append(_result("kunneth", f"{n1} + {n2}", rep.match,
                           mismatched_bidegrees=[list(k) for k in rep.mismatches]))
    return out


def suite_prop3(cfg):
    out = []
    for name, d in _suite_diagrams(cfg, 5).items():
        for k in range(d.n):
            rep = prop3_check(d, k, cfg.shift_window, diagnostics=True)
            out.append(_result("prop3", f"{name}[{k}]", rep.verdict == "match", report=rep.to_json()))
    shifts = {tuple(r["report"]["shift"]) for r in out if r["report"]["shift"] is not None}
    if len(shifts) > 1:
        log.warning("prop3 shift witnesses are not constant: %s", sorted(shifts))
        for r in out:
            r["verdict"] = "mismatch"
    return out


def suite_prop4(cfg):
    out = []
    for name, d in _suite_diagrams(cfg, 5).items():
        m = cfg.codim if cfg.codim is not None else min(2, d.n)
        if m > d.n:
            continue
        subsets = [cfg.doubled] if cfg.doubled else list(combinations(range(d.n), m))
        for ks in subsets:
            rep = prop4_check(d, ks, cfg.shift_window)
            out.append(_result("prop4", f"{name}{list(ks)}", rep.verdict == "match",
                               report=rep.to_json()))
    return out


def _finiteness_orders(cfg, sel):
    if cfg.codim is not None:
        return [cfg.codim]
    return sorted({d.n for d in sel.values() if 1 <= d.n <= min(cfg.max_crossings, 4)})


def suite_finiteness(cfg, kind):
    sel = _suite_diagrams(cfg)
    out = []
    hopf = None
    if kind == "T":
        hopf = khovanov_homology(load_table(cfg.table)["hopf"]) if cfg.pd is None else None
    for n in _finiteness_orders(cfg, sel):
        if kind == "G":
            rep = finiteness_check_G(sel, n, cfg.shift_window, cfg.jobs)
        else:
            rep = finiteness_check_T(sel, n, hopf, cfg.jobs)
        for r in rep.strata:
            out.append(_result(f"finiteness-{kind.lower()}", r.stratum.base.name,
                               r.verdict == "match", report=r.to_json()))
    return out


def suite_divisibility(cfg, trials=1000):
    rng = random.Random(cfg.seed)
    bad = 0
    for _ in range(trials):
        n = rng.randint(0, 6)
        chi = euler_characteristic(random_model_combination(rng, n))
        if chi % 2 ** n or (n and chi % 2 ** (n - 1)):
            bad += 1
    return [_result("divisibility", f"{trials} random combinations (seed {cfg.seed})", bad == 0,
                    failures=bad)]


def run_suite(cfg: RunConfig) -> list[dict]:
    runners = {
        "euler": suite_euler, "skein": suite_skein, "kunneth": suite_kunneth,
        "prop3": suite_prop3, "prop4": suite_prop4,
        "finiteness-g": lambda c: suite_finiteness(c, "G"),
        "finiteness-t": lambda c: suite_finiteness(c, "T"),
        "divisibility": suite_divisibility,
    }
    names = list(runners) if cfg.suite == "all" else [cfg.suite]
    results = []
    for name in names:
        results.extend(runners[name](cfg))
    return results


def cmd_verify(cfg: RunConfig):
    results = run_suite(cfg)
    if not results:
        log.warning("suite %s ran zero checks", cfg.suite)
    bad = [r for r in results if r["verdict"] != "match"]
    summary = {"suite": cfg.suite, "checks": len(results), "mismatches": len(bad),
               "results": results}
    if cfg.fmt == "json":
        return _emit_json(summary), not bad
    lines = []
    for r in results:
        line = f"{r['suite']:14s} {r['item']:28s} {r['verdict']}"
        column = r.get("report", {}).get("notes", {}).get("rank_column")
        if column is not None:
            line += "  rank column (" + ",".join(map(str, column)) + ")"
        lines.append(line)
    lines.append(f"{len(results)} checks, {len(bad)} mismatches")
    return "\n".join(lines), not bad


COMMANDS = {"homology": cmd_homology, "jones": cmd_jones, "cone": cmd_cone,
            "singular": cmd_singular, "invariants": cmd_invariants, "poincare": cmd_poincare,
            "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="kh: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg = config_from_args(ns)
        text, ok = COMMANDS[cfg.command](cfg)
    except (PDParseError, UsageError, KeyError, IndexError, OSError) as exc:
        print(f"kh: error: {exc}", file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print(f"kh: contract violation: {exc}", file=sys.stderr)
        return 3
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    else:
        print(text)
    return 0 if ok or cfg.command not in ("verify", "jones") else 1


if __name__ == "__main__":
    sys.exit(main())
