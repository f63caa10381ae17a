"""Command-line front end: ``bimatch <verb> [options]``.

Exit codes: 0 success, 1 malformed input or exceeded budget, 2 a bound
violation (or an engine disagreement in ``count``).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import bounds as B
from .bounds import applicable_bounds
from .constructions import REGISTRY, construct
from .ears import odd_ear_decomposition, validate_ear_decomposition
from .graph import Bigraph, parse_graph, to_json
from .matching import ORACLE_MAX, count_max_matchings, count_max_matchings_oracle
from .normalize import normalize_lemma22
from .search import (
    ALL_THEOREMS,
    CRITERION_THEOREMS,
    BudgetExceeded,
    ClassConstraint,
    VerifyReport,
    find_min_phi,
    markdown_table,
    verify_all,
)
from .structure import analyze, is_elementary

BOTH_ENGINES_MAX = 7


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _graph_dict(G: Bigraph) -> dict:
    return json.loads(to_json(G))


def _read_graph(path: Optional[str]) -> Bigraph:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        text = Path(path).read_text()
    if not text.strip():
        raise UsageError("empty graph input")
    return parse_graph(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_params(text: Optional[str]) -> dict:
    params: dict = {}
    if not text:
        return params
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form name=value")
        name, value = (s.strip() for s in item.split("=", 1))
        try:
            params[name] = tuple(int(v) for v in value.split(":")) if ":" in value else int(value)
        except ValueError:
            raise UsageError(f"parameter {name} must be an integer or a colon-separated list") from None
    return params


# --- verbs ------------------------------------------------------------------


def cmd_construct(args) -> int:
    if args.family not in REGISTRY:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(sorted(REGISTRY))}")
    try:
        spec = construct(args.family, check=not args.no_check, **_parse_params(args.params))
    except TypeError as exc:
        raise UsageError(f"bad parameters for {args.family}: {exc}") from None
    side = _dump(spec.to_dict())
    _emit(to_json(spec.graph), args.out)
    if args.out:
        p = Path(args.out)
        p.with_name(p.stem + ".predicted.json").write_text(side + "\n")
    else:
        sys.stderr.write(side + "\n")
    return 0


def cmd_analyze(args) -> int:
    G = _read_graph(args.input)
    rep = analyze(G, with_diagnostics=args.diagnostics)
    _emit(_dump(rep.to_dict()), args.out)
    return 0


def cmd_count(args) -> int:
    G = _read_graph(args.input)
    primary = count_max_matchings(G)
    out = {"alpha": primary.size, "phi": str(primary.count), "engine": "permanent", "agreement": True}
    code = 0
    if G.nx <= BOTH_ENGINES_MAX and G.ny <= BOTH_ENGINES_MAX and min(G.nx, G.ny) <= ORACLE_MAX:
        oracle = count_max_matchings_oracle(G)
        if oracle != primary:
            out["agreement"] = False
            out["oracle_alpha"] = oracle.size
            out["oracle_phi"] = str(oracle.count)
            code = 2
    else:
        out["agreement"] = None
    _emit(_dump(out), args.out)
    return code


def cmd_bounds(args) -> int:
    G = _read_graph(args.input)
    rep = applicable_bounds(G)
    fmt = args.format or "md"
    text = {"md": rep.to_markdown, "csv": rep.to_csv, "json": rep.to_json}[fmt]()
    _emit(text, args.out)
    return 2 if rep.violations else 0


def cmd_decompose(args) -> int:
    G = _read_graph(args.input)
    if G.nx != G.ny:
        raise UsageError("ear decompositions need |X| = |Y|")
    try:
        elementary = is_elementary(G)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not elementary:
        raise UsageError("graph is not elementary")
    D = odd_ear_decomposition(G)
    ok, reasons = validate_ear_decomposition(G, D)
    d = D.to_dict()
    d["valid"] = ok
    if reasons:
        d["reasons"] = reasons
    _emit(_dump(d), args.out)
    return 0 if ok else 2


def cmd_normalize(args) -> int:
    G = _read_graph(args.input)
    H, steps = normalize_lemma22(G, k=args.k, r=args.r)
    before, after = count_max_matchings(G).count, count_max_matchings(H).count
    out = {
        "graph": _graph_dict(H),
        "steps": [s.to_dict() for s in steps],
        "phi_before": str(before),
        "phi_after": str(after),
    }
    _emit(_dump(out), args.out)
    return 2 if after > before else 0


def _constraint(args, defaults: dict) -> ClassConstraint:
    def rng(lo, hi, name):
        lo = defaults[name][0] if lo is None else lo
        hi = defaults[name][1] if hi is None else hi
        return (lo, hi)

    return ClassConstraint(
        nx=rng(args.nx_min, args.nx_max, "nx"),
        ny=rng(args.ny_min, args.ny_max, "ny"),
        max_mult=args.mult_max if args.mult_max is not None else defaults["mult"],
        hall=args.hall,
        x_surplus=args.x_surplus,
        leafless=args.leafless,
        elementary=args.elementary,
        k_min=args.k_min,
        deltaY_min=args.deltaY_min,
        r_min=args.r_min,
        rY_min=args.rY_min,
        t=args.t,
        b=args.b,
        budget=args.budget,
    )


def cmd_verify(args) -> int:
    if args.theorem == "all":
        theorems = list(ALL_THEOREMS)
    elif args.theorem == "criterion":
        theorems = list(CRITERION_THEOREMS)
    else:
        theorems = [t.strip() for t in args.theorem.split(",") if t.strip()]
        unknown = [t for t in theorems if t not in B.THEOREMS]
        if unknown:
            raise UsageError(f"unknown theorem id(s) {unknown}; choose from {', '.join(B.THEOREMS)}")
    c = _constraint(args, {"nx": (1, 3), "ny": (1, 4), "mult": 3})
    t0 = time.perf_counter()
    reports = verify_all(theorems, c, dedup=not args.no_dedup, jobs=args.jobs)
    sys.stderr.write(f"swept in {time.perf_counter() - t0:.1f}s\n")
    if (args.format or "md") == "json":
        text = _dump([_report_dict(r) for r in reports])
    else:
        text = _verify_markdown(reports)
    _emit(text, None if args.format != "json" else args.out)
    if args.out and args.format != "json":
        Path(args.out).write_text(_dump([_report_dict(r) for r in reports]) + "\n")
    return 2 if any(r.violations for r in reports) else 0


def _report_dict(r: VerifyReport) -> dict:
    d = r.to_dict()
    d.pop("runtime_s", None)
    return d


def _verify_markdown(reports: list[VerifyReport]) -> str:
    lines = [markdown_table(reports, runtime=False)]
    for r in reports:
        for v in r.violations:
            lines.append(f"\nviolation of {r.theorem_id}: {v}")
        for f in r.structure_failures:
            lines.append(f"\nequality characterization fails for {r.theorem_id}: {f}")
    return "\n".join(lines)


def cmd_search(args) -> int:
    c = _constraint(args, {"nx": (1, 3), "ny": (1, 3), "mult": 2})
    best, witnesses = find_min_phi(c, dedup=not args.no_dedup, jobs=args.jobs)
    if (args.format or "md") == "json":
        out = {
            "constraint": c.to_dict(),
            "min_phi": None if best is None else str(best),
            "witnesses": [G.tolist() for G in witnesses],
        }
        _emit(_dump(out), args.out)
    else:
        lines = ["| min phi | witnesses |", "|---|---|"]
        lines.append(f"| {'' if best is None else best} | {len(witnesses)} |")
        lines += [f"\n- `{G.tolist()}`" for G in witnesses]
        _emit("\n".join(lines), args.out)
    return 0


# --- parser -----------------------------------------------------------------


def _add_io(p: argparse.ArgumentParser, graph_input: bool = True) -> None:
    if graph_input:
        p.add_argument("--input", help="graph file, JSON or terse text (default: stdin)")
    p.add_argument("--out", help="write the artifact here instead of stdout")


def _add_class(p: argparse.ArgumentParser) -> None:
    for name in ("nx", "ny"):
        p.add_argument(f"--{name}-min", type=int)
        p.add_argument(f"--{name}-max", type=int)
    p.add_argument("--mult-max", type=int)
    for flag in ("hall", "x-surplus", "leafless", "elementary"):
        p.add_argument(f"--{flag}", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--k-min", type=int, default=0, help="minimum X-degree")
    p.add_argument("--deltaY-min", type=int, default=0, help="minimum Y-degree")
    p.add_argument("--r-min", type=int, default=0, help="minimum distinct neighbors per X-vertex")
    p.add_argument("--rY-min", type=int, default=0, help="minimum distinct neighbors per Y-vertex")
    p.add_argument("--t", type=int, help="fix |Y| - |X|")
    p.add_argument("--b", type=int, help="fix |E| - 2|Y|")
    p.add_argument("--budget", type=int, default=10**8, help="maximum number of labeled matrices")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-dedup", action="store_true", help="check labeled graphs instead of isomorphism classes")
    p.add_argument("--format", choices=("md", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bimatch", description="Exact analysis of matchings in bipartite multigraphs.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("construct", help="build a named extremal family")
    p.add_argument("--family", required=True)
    p.add_argument("--params", help="comma-separated name=value pairs, e.g. n=4,t=1,b=0")
    p.add_argument("--no-check", action="store_true", help="skip the hypothesis check")
    _add_io(p, graph_input=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="structural report")
    p.add_argument("--diagnostics", action="store_true")
    _add_io(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("count", help="maximum matching size and count")
    _add_io(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bounds", help="evaluate every applicable lower bound")
    p.add_argument("--format", choices=("md", "csv", "json"))
    _add_io(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("decompose", help="odd ear decomposition of an elementary graph")
    _add_io(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("normalize", help="bring X-rows into the heavy-plus-simple profile")
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    _add_io(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("verify", help="exhaustively check bounds on a class")
    p.add_argument("--theorem", default="criterion", help="id, comma list, 'criterion' or 'all'")
    _add_class(p)
    _add_io(p, graph_input=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="minimum count over a class, with witnesses")
    _add_class(p)
    _add_io(p, graph_input=False)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, BudgetExceeded, ValueError, IndexError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
