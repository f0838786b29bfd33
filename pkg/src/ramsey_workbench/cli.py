"""``ramsey-workbench`` command line.

Exit codes: 0 ok (or a flagged hypothesis-not-met), 1 usage or parse
error, 2 counterexample found, 3 budget exhausted, 4 internal
inconsistency (a theorem checker reported a violated conclusion).

Every command can print a JSON report (``--json``); ``--stable-output``
drops the timestamp and timing so identical runs give identical bytes.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .constructions import (
    ConstructionSpec,
    RegimeError,
    asymptotic_table,
    build_witness,
    format_table,
    parse_ratio,
    verify_witness,
)
from .cycles import SizeLimitError, check_bondy, check_dirac, circumference, has_cycle_of_length
from .graph6 import COLORING_HEADER, Graph6Error, format_coloring, read_coloring, read_graph, write_coloring
from .lemmas import (
    VIOLATED,
    PartialTwoColoring,
    check_component_lemma,
    check_figaj_luczak,
    check_star_matching_small,
    claims_audit,
    component_lemma_harness,
    dirac_chain_check,
    figaj_luczak_harness,
    theorem_sweep,
)
from .matching import _matching_in, connected_matching_number, find_fan, max_fan_blades
from .search import CheckpointError, arrows, random_coloring_audit, ramsey_exact, save_checkpoint

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE, EXIT_BUDGET, EXIT_BUG = 0, 1, 2, 3, 4
SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ratio(text: str) -> Fraction:
    try:
        return parse_ratio(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _ratio_nonneg(text: str) -> Fraction:
    if text.strip() == "0":
        return Fraction(0)
    return _ratio(text)


def _ratio_list(text: str) -> list[Fraction]:
    return [_ratio(x) for x in text.split(",") if x.strip()]


def _vertex_list(text: str) -> list[int]:
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        lo, _, hi = chunk.partition("-")
        try:
            out.extend(range(int(lo), int(hi) + 1) if hi else [int(lo)])
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad vertex list {text!r}") from exc
    return out


def _env_threads() -> int:
    raw = os.environ.get("RAMSEY_WORKBENCH_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ------------------------------------------------------------------ report


class Report:
    def __init__(self, command: str, parameters: dict, seed=None, threads: int = 1):
        self.command = command
        self.parameters = parameters
        self.result: dict = {}
        self.witnesses: list[dict] = []
        self.seed = seed
        self.threads = threads
        self.start = time.monotonic()

    def witness(self, kind: str, encoding: str, data) -> None:
        self.witnesses.append({"kind": kind, "encoding": encoding, "data": data})

    def as_dict(self, stable: bool) -> dict:
        provenance = {"tool_version": __version__, "seed": self.seed, "thread_count": self.threads}
        if not stable:
            provenance["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
            "witnesses": self.witnesses,
            "timing": {"wall_seconds": None if stable else round(time.monotonic() - self.start, 6)},
            "provenance": provenance,
        }


def _emit(args, report: Report, text: str) -> None:
    body = json.dumps(report.as_dict(args.stable_output), indent=2, sort_keys=True) + "\n"
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
    sys.stdout.write(body if args.json else text)


def _load_graph(path):
    try:
        return read_graph(path)
    except (OSError, UnicodeDecodeError, Graph6Error) as exc:
        raise UsageError(f"cannot read graph {path}: {exc}") from exc


def _load_coloring(path):
    try:
        return read_coloring(path)
    except (OSError, UnicodeDecodeError, Graph6Error) as exc:
        raise UsageError(f"cannot read coloring {path}: {exc}") from exc


def _coloring_witness(report: Report, c, kind: str = "coloring") -> None:
    report.witness(kind, COLORING_HEADER, format_coloring(c))


# ---------------------------------------------------------------- commands


def cmd_construct(args) -> int:
    family = args.family.upper()
    try:
        spec = ConstructionSpec(family, args.n, args.a)
    except (RegimeError, ValueError) as exc:
        raise UsageError(f"regime violation: {exc}") from exc
    c = build_witness(spec)
    report = Report("construct", {"family": family, "a": None if args.a is None else str(args.a),
                                  "n": args.n, "out": args.out})
    m, lb = spec.cycle_length, spec.lower_bound
    statement = f"R(C_{m}, F_{args.n}) >= {lb}"
    report.result = {"vertices": c.n, "cycle_length": m, "fan_blades": args.n,
                     "lower_bound_value": lb, "statement": statement}
    if args.out:
        try:
            write_coloring(args.out, c)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    _coloring_witness(report, c)
    _emit(args, report, f"{family}: {c.n}-vertex coloring; {statement}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    c = _load_coloring(args.coloring)
    report = Report("verify", {"coloring": args.coloring, "cycle": args.cycle, "fan": args.fan})
    try:
        cert = verify_witness(c, args.cycle, args.fan)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cert.validate(c)
    report.result = cert.as_dict()
    if cert.cycle is not None:
        report.witness("red-cycle", "vertex-list", list(cert.cycle.vertices))
    if cert.fan is not None:
        report.witness("blue-fan", "fan", {"center": cert.fan.center, "blades": [list(b) for b in cert.fan.blades]})
    _emit(args, report, f"{cert.verdict}\n")
    return EXIT_OK if cert.avoids else EXIT_COUNTEREXAMPLE


def cmd_detect(args) -> int:
    g = _load_graph(args.graph)
    params = {"what": args.what, "graph": args.graph}
    report = Report("detect", params)
    try:
        if args.what == "cycle":
            params.update(length=args.length, heuristic=args.heuristic)
            res = circumference(g, heuristic=args.heuristic)
            report.result = {"circumference": res.length, "exact": res.exact}
            cyc = res.cycle
            if args.length is not None:
                found = has_cycle_of_length(g, args.length, heuristic=args.heuristic)
                report.result["found"] = found is not None
                cyc = found
            if cyc is not None:
                report.witness("cycle", "vertex-list", list(cyc.vertices))
            text = f"circumference {res.length}" + ("" if res.exact else " (lower bound)")
            if args.length is not None:
                text += f"; C_{args.length} {'found' if cyc else 'none'}"
        elif args.what == "fan":
            params["blades"] = args.blades
            best, best_fan = 0, None
            for v in range(g.n):
                count, fan = max_fan_blades(g, v)
                if count > best:
                    best, best_fan = count, fan
            report.result = {"max_blades": best}
            fan = best_fan
            if args.blades is not None:
                fan = find_fan(g, args.blades)
                report.result["found"] = fan is not None
            if fan is not None:
                report.witness("fan", "fan", {"center": fan.center, "blades": [list(b) for b in fan.blades]})
            text = f"max blades {best}"
            if args.blades is not None:
                text += f"; F_{args.blades} {'found' if fan else 'none'}"
        else:
            size, comp = connected_matching_number(g)
            sub = _matching_in(g, sum(1 << v for v in comp)) if size else None
            report.result = {"connected_matching_number": size, "component": list(comp)}
            if sub is not None:
                report.witness("matching", "edge-list", [list(e) for e in sub.edges])
            text = f"connected matching number {size}"
    except SizeLimitError as exc:
        raise UsageError(f"{exc}; rerun with --heuristic") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, report, text + "\n")
    return EXIT_OK


def _search_code(result: str) -> int:
    return EXIT_BUDGET if result == "budget-exhausted" else EXIT_OK


def cmd_search(args) -> int:
    threads = args.threads
    if args.mode == "arrows":
        params = {"mode": "arrows", "n": args.n, "cycle": args.cycle, "fan": args.fan, "budget": args.budget,
                  "resume": args.resume, "symmetry": not args.no_symmetry}
        report = Report("search", params, threads=threads)
        try:
            rep = arrows(args.n, args.cycle, args.fan, budget=args.budget, threads=threads,
                         symmetry=not args.no_symmetry, resume=args.resume)
        except (CheckpointError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    elif args.mode == "exact":
        params = {"mode": "exact", "cycle": args.cycle, "fan": args.fan, "max_n": args.max_n,
                  "budget": args.budget, "symmetry": not args.no_symmetry}
        report = Report("search", params, threads=threads)
        try:
            rep = ramsey_exact(args.cycle, args.fan, args.max_n, budget=args.budget, threads=threads,
                               symmetry=not args.no_symmetry)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**32)
        params = {"mode": "audit", "n": args.n, "cycle": args.cycle, "fan": args.fan,
                  "samples": args.samples, "exhaustive": args.exhaustive}
        report = Report("search", params, seed=None if args.exhaustive else seed)
        try:
            audit = random_coloring_audit(args.n, args.cycle, args.fan, args.samples, seed,
                                          exhaustive=args.exhaustive)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report.result = audit.as_dict()
        for c in audit.good_colorings:
            _coloring_witness(report, c, "good-coloring")
        _emit(args, report, f"fraction {audit.fraction:.6f} ({audit.hits}/{audit.samples})\n")
        return EXIT_OK
    report.result = rep.as_dict(stable=True)
    if rep.frontier is not None:
        path = args.checkpoint or "ramsey-frontier.json"
        save_checkpoint(path, rep.frontier)
        report.result["checkpoint"] = path
    if rep.witness is not None:
        _coloring_witness(report, rep.witness, "good-coloring")
    text = rep.result if rep.value is None else f"{rep.result} {rep.value}"
    _emit(args, report, text + "\n")
    return _search_code(rep.result)


def _lemma_code(status: str) -> int:
    return EXIT_BUG if status == VIOLATED else EXIT_OK


def cmd_lemma(args) -> int:
    which = args.which
    params = {"which": which}
    report = Report("lemma", params)
    if which in ("dirac", "bondy", "chain"):
        params["graph"] = args.graph
        g = _load_graph(args.graph)
        try:
            if which == "dirac":
                d = check_dirac(g)
                status = d.status
                report.result = {"status": status, "n": d.n, "min_degree": d.min_degree, "bound": d.bound,
                                 "circumference": d.circumference}
                if d.cycle is not None:
                    report.witness("cycle", "vertex-list", list(d.cycle.vertices))
                text = f"bound {d.bound}, circumference {d.circumference}, {status}"
            elif which == "bondy":
                b = check_bondy(g)
                status = b.verdict
                report.result = {"status": status, "n": b.n, "min_degree": b.min_degree,
                                 "spectrum": sorted(b.spectrum)}
                text = status
            else:
                rep = dirac_chain_check(g)
                status = rep.status
                report.result = rep.as_dict()
                text = status
        except SizeLimitError as exc:
            raise UsageError(str(exc)) from exc
        _emit(args, report, text + "\n")
        return EXIT_BUG if status == VIOLATED else EXIT_OK
    if which == "component":
        params.update(coloring=args.coloring, red=args.red, blue=args.blue)
        h = _partial_from_args(args)
        rep = check_component_lemma(h)
        report.result = rep.as_dict()
        _emit(args, report, f"{rep.status}\n")
        return _lemma_code(rep.status)
    if which == "bimatch":
        params.update(graph=args.graph, v1=args.v1, eps=str(args.eps))
        g = _load_graph(args.graph)
        v1 = set(args.v1)
        if any(not 0 <= v < g.n for v in v1):
            raise UsageError("--v1 names a vertex outside the graph")
        v2 = [v for v in range(g.n) if v not in v1]
        try:
            rep = check_figaj_luczak(g, sorted(v1), v2, args.eps)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report.result = rep.as_dict()
        _emit(args, report, f"{rep.status}\n")
        return _lemma_code(rep.status)
    if which == "starmatch":
        params.update(k=args.k, n1=args.n1, n2=args.n2, budget=args.budget, interpret_t_as_k=args.interpret_t_as_k)
        try:
            rep = check_star_matching_small(args.k, args.n1, args.n2, args.budget, args.interpret_t_as_k)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report.result = rep.as_dict()
        _emit(args, report, f"value {rep.value} {rep.status}\n")
        if rep.status == "budget-exhausted":
            return EXIT_BUDGET
        return EXIT_OK if rep.status == "confirmed" else EXIT_BUG
    if which == "claims":
        params.update(coloring=args.coloring, red=args.red, blue=args.blue, a=str(args.a),
                      beta=str(args.beta), regime=args.regime, defect_cap=args.defect_cap)
        h = _partial_from_args(args)
        try:
            audit = claims_audit(h, args.a, args.beta, args.regime, args.defect_cap)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report.result = audit.as_dict()
        held = sum(c.holds for c in audit.checks)
        _emit(args, report, f"{held}/{len(audit.checks)} claim thresholds hold\n")
        return EXIT_OK
    # harnesses
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**32)
    report.seed = seed
    report.threads = args.threads
    params.update(instances=args.instances, max_n=args.max_n, save_dir=args.save_dir)
    if which == "harness-component":
        res = component_lemma_harness(args.instances, seed, threads=args.threads, save_dir=args.save_dir)
        bad = res.violations
    elif which == "harness-bimatch":
        res = figaj_luczak_harness(args.instances, seed, threads=args.threads, save_dir=args.save_dir)
        bad = res.violations
    else:
        report.seed = None
        res = theorem_sweep(args.max_n, save_dir=args.save_dir)
        bad = res.dirac_violations + res.bondy_violations + res.chain_violations
    report.result = res.as_dict()
    _emit(args, report, f"{bad} violations\n")
    return EXIT_BUG if bad else EXIT_OK


def _partial_from_args(args) -> PartialTwoColoring:
    if args.coloring:
        return PartialTwoColoring.from_coloring(_load_coloring(args.coloring))
    if args.red and args.blue:
        try:
            return PartialTwoColoring(_load_graph(args.red), _load_graph(args.blue))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError("give --coloring, or both --red and --blue")


def cmd_table(args) -> int:
    report = Report("table", {"a_list": [str(a) for a in args.a_list], "n": args.n})
    try:
        rows = asymptotic_table(args.a_list, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report.result = {"rows": [r.as_dict() for r in rows]}
    _emit(args, report, format_table(rows) if rows else "")
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    common.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
    common.add_argument("--stable-output", action="store_true",
                        help="omit timestamp and timing so identical runs are byte-identical")

    p = _Parser(prog="ramsey-workbench", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a lower-bound witness coloring")
    c.add_argument("--family", required=True, type=str.lower, choices=["w1", "w2", "w3", "w4", "w5"])
    c.add_argument("--a", type=_ratio, help="ratio P/Q (not used by w5)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out", metavar="PATH")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="certify a coloring avoids red C_m and blue F_n")
    v.add_argument("--coloring", required=True, metavar="PATH")
    v.add_argument("--cycle", type=int, required=True)
    v.add_argument("--fan", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("detect", parents=[common], help="find cycles, fans or connected matchings")
    d.add_argument("what", choices=["cycle", "fan", "cmatching"])
    d.add_argument("--graph", required=True, metavar="PATH")
    d.add_argument("--length", type=int)
    d.add_argument("--blades", type=int)
    d.add_argument("--heuristic", action="store_true", help="allow non-exact answers on large blocks")
    d.set_defaults(func=cmd_detect)

    s = sub.add_parser("search", parents=[common], help="exhaustive and randomized Ramsey searches")
    s.add_argument("mode", choices=["arrows", "exact", "audit"])
    s.add_argument("--n", type=int)
    s.add_argument("--cycle", type=int, required=True)
    s.add_argument("--fan", type=int, required=True)
    s.add_argument("--max-n", type=int)
    s.add_argument("--budget", type=float, help="wall-clock seconds")
    s.add_argument("--threads", type=int, default=_env_threads())
    s.add_argument("--resume", metavar="PATH")
    s.add_argument("--checkpoint", metavar="PATH", help="where to write the frontier (default ramsey-frontier.json)")
    s.add_argument("--no-symmetry", action="store_true")
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int)
    s.add_argument("--exhaustive", action="store_true")
    s.set_defaults(func=cmd_search)

    lm = sub.add_parser("lemma", parents=[common], help="run a lemma checker or harness")
    lm.add_argument("which", choices=["component", "bimatch", "starmatch", "dirac", "bondy", "chain", "claims",
                                      "harness-component", "harness-bimatch", "sweep"])
    lm.add_argument("--graph", metavar="PATH")
    lm.add_argument("--coloring", metavar="PATH")
    lm.add_argument("--red", metavar="PATH")
    lm.add_argument("--blue", metavar="PATH")
    lm.add_argument("--v1", type=_vertex_list, help="first part, e.g. 0-4 or 0,2,5")
    lm.add_argument("--eps", type=_ratio)
    lm.add_argument("--k", type=int)
    lm.add_argument("--n1", type=int)
    lm.add_argument("--n2", type=int)
    lm.add_argument("--interpret-t-as-k", action="store_true")
    lm.add_argument("--a", type=_ratio)
    lm.add_argument("--beta", type=_ratio_nonneg, default=Fraction(0))
    lm.add_argument("--regime", choices=["partI", "partII"])
    lm.add_argument("--defect-cap", type=int)
    lm.add_argument("--budget", type=float)
    lm.add_argument("--instances", type=int, default=500)
    lm.add_argument("--max-n", type=int, default=8)
    lm.add_argument("--seed", type=int)
    lm.add_argument("--threads", type=int, default=_env_threads())
    lm.add_argument("--save-dir", metavar="DIR")
    lm.set_defaults(func=cmd_lemma)

    t = sub.add_parser("table", parents=[common], help="lower bounds against the asymptotic main term")
    t.add_argument("--a-list", type=_ratio_list, required=True, help="comma-separated ratios P/Q")
    t.add_argument("--n", type=int, required=True)
    t.set_defaults(func=cmd_table)
    return p


_REQUIRED = {
    ("search", "arrows"): ("n",),
    ("search", "exact"): ("max_n",),
    ("search", "audit"): ("n",),
    ("lemma", "dirac"): ("graph",),
    ("lemma", "bondy"): ("graph",),
    ("lemma", "chain"): ("graph",),
    ("lemma", "bimatch"): ("graph", "v1", "eps"),
    ("lemma", "starmatch"): ("k", "n1", "n2"),
    ("lemma", "claims"): ("a", "regime"),
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    mode = getattr(args, "mode", None) or getattr(args, "which", None)
    for name in _REQUIRED.get((args.command, mode), ()):
        if getattr(args, name) is None:
            parser.error(f"{args.command} {mode} needs --{name.replace('_', '-')}")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ramsey-workbench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"ramsey-workbench: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_BUG


if __name__ == "__main__":
    sys.exit(main())
