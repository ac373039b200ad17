"""Command line: generate, check, discharge, certify, bounds and render."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bounds
from .audit import check_report, crossing_profile
from .constructions import FAMILIES
from .corpus import DEFAULT_SEED, random_corpus
from .discharge import DischargeError, run_discharge, ruleset
from .drawing import FORMAT_VERSION, DrawingError, from_json
from .optimize.chords import max_convex_chords
from .optimize.hblock import hblock_certificate
from .optimize.solver import BudgetExceeded, SolverError
from .render import to_svg

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _read(path: str):
    try:
        raw = sys.stdin.buffer.read() if path == "-" else open(path, "rb").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DrawingError(f"{path}: not JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise DrawingError(f"{path}: top level must be an object")
    return from_json(data), hashlib.sha256(raw).hexdigest()


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _report(command, status, verdicts=None, counters=None, digest=None, **extra):
    rep = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "exit_status": status,
        "verdicts": verdicts or {},
        "counters": counters or {},
    }
    if digest:
        rep["input_sha256"] = digest
    rep.update(extra)
    return rep


def _counters(d):
    return {"n": d.n, "m": d.m, "max_crossings": crossing_profile(d).max_crossings,
            "crossings": d.crossing_count()}


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args):
    make = FAMILIES[args.family]
    if args.x < 1:
        raise UsageError("--x must be at least 1")
    d = make(args.x, simple=True) if args.family == "six-simple" and args.simple else make(args.x)
    _write(args.output, dumps(d.to_json()) + "\n")
    return None


def cmd_check(args):
    d, digest = _read(args.file)
    rep, fails = check_report(d, k=args.k, min_k=args.min_k, outer=args.outer, framed=args.framed,
                              polyhedral=args.polyhedral)
    status = EXIT_VIOLATION if fails else EXIT_OK
    census = rep.pop("face_census")
    counters = _counters(d)
    counters["face_census"] = census
    return _report("check", status, {"verdict": rep.pop("verdict")}, counters, digest, audit=rep,
                   failures=rep.pop("failures"))


def cmd_discharge(args):
    try:
        rules = ruleset(args.ruleset)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.corpus:
        return _discharge_corpus(args, rules)
    if args.file is None:
        raise UsageError("discharge needs a drawing file or --corpus")
    d, digest = _read(args.file)
    led = run_discharge(d, rules)
    status = EXIT_OK if led.ok else EXIT_VIOLATION
    verdicts = {"violations": len(led.violations), "residue": str(led.residue)}
    return _report("discharge", status, verdicts, _counters(d), digest, ledger=led.to_json())


def _summary(name, d):
    try:
        led = run_discharge(d, ruleset(name))
    except DischargeError as exc:
        return {"n": d.n, "m": d.m, "error": str(exc)}
    return {"n": d.n, "m": d.m, "blocks": len(led.decomposition.blocks),
            "violations": list(led.violations), "residue": str(led.residue)}


def _discharge_corpus(args, rules):
    mode = "min" if rules.min_k else "k"
    corpus = list(random_corpus(args.corpus, rules.k, args.seed, n_max=args.n_max, mode=mode))
    names = [rules.name] * len(corpus)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_summary, names, corpus, chunksize=16))
    else:
        rows = [_summary(n, d) for n, d in zip(names, corpus)]
    bad = [dict(r, index=i) for i, r in enumerate(rows)
           if r.get("error") or r["violations"] or r["residue"] != "0"]
    status = EXIT_VIOLATION if bad else EXIT_OK
    verdicts = {"instances": len(rows), "failing": len(bad)}
    return _report("discharge", status, verdicts, {"seed": args.seed, "n_max": args.n_max},
                   ruleset=rules.to_json(), failures=bad)


def cmd_certify(args):
    if args.what == "hblock":
        alpha = rational(args.alpha)
        cert = hblock_certificate(alpha, exit_crossing=not args.no_exit_crossing, node_limit=args.node_limit)
        status = EXIT_OK if cert.optimum < 8 else EXIT_VIOLATION
        return _report("certify hblock", status, {"below_initial_charge": cert.optimum < 8},
                       certificate=cert.to_json())
    if args.n is None or args.k is None:
        raise UsageError("certify chords needs --n and --k")
    res = max_convex_chords(args.n, args.k, node_limit=args.node_limit)
    return _report("certify chords", EXIT_OK, {"optimum": res.count},
                   counters={"n": res.n, "k": res.k, "search_nodes": res.nodes},
                   chords=[list(c) for c in res.chords],
                   with_boundary=res.count + args.n)


def cmd_bounds(args):
    if args.what == "audit":
        audit = bounds.alpha_audit(rational(args.alpha or "49/170"))
        status = EXIT_OK if audit.holds else EXIT_VIOLATION
        return _report("bounds audit", status, {"holds": audit.holds, "failures": list(audit.failures)},
                       audit=audit.to_json())
    if args.what == "constants":
        rep = bounds.constants_report()
        failing = [c["name"] for c in rep["rounded_claims"] if not c["holds"]]
        status = EXIT_VIOLATION if failing else EXIT_OK
        return _report("bounds constants", status, {"failing_rounded_claims": failing}, constants=rep)
    ks = range(args.k + 1) if args.k is not None else range(13)
    rows = [bounds.density_table(k).to_json() for k in ks]
    return _report("bounds table", EXIT_OK, {"rows": len(rows)}, table=rows)


def cmd_render(args):
    d, digest = _read(args.file)
    _write(args.output, to_svg(d, args.title))
    return None if args.output in (None, "-") else _report("render", EXIT_OK, {}, _counters(d), digest,
                                                           output=args.output)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kplanar", description="Density bounds for k-planar drawings, checked exactly.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a construction as interchange JSON")
    g.add_argument("--family", required=True, choices=sorted(FAMILIES))
    g.add_argument("--x", type=int, required=True)
    g.add_argument("--simple", action="store_true", help="six-simple: drop parallel edges")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="audit a drawing")
    c.add_argument("file", nargs="?", default="-")
    c.add_argument("--k", type=int)
    c.add_argument("--min-k", type=int)
    c.add_argument("--outer", action="store_true")
    c.add_argument("--framed", action="store_true")
    c.add_argument("--polyhedral", action="store_true")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("discharge", help="run a rule set and print the charge ledger")
    d.add_argument("file", nargs="?")
    d.add_argument("--ruleset", default="five_planar_main")
    d.add_argument("--corpus", type=int, default=0, help="run on this many random convex drawings")
    d.add_argument("--seed", type=int, default=DEFAULT_SEED)
    d.add_argument("--n-max", type=int, default=15)
    d.add_argument("--jobs", type=int, default=1)
    d.set_defaults(func=cmd_discharge)

    ce = sub.add_parser("certify", help="exact optimisation certificates")
    ce.add_argument("what", choices=("hblock", "chords"))
    ce.add_argument("--alpha", default="49/170")
    ce.add_argument("--no-exit-crossing", action="store_true")
    ce.add_argument("--n", type=int)
    ce.add_argument("--k", type=int)
    ce.add_argument("--node-limit", type=int)
    ce.set_defaults(func=cmd_certify)

    b = sub.add_parser("bounds", help="exact constant and inequality checks")
    b.add_argument("what", choices=("audit", "constants", "table"))
    b.add_argument("--alpha")
    b.add_argument("--k", type=int)
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("render", help="write an SVG figure")
    r.add_argument("file")
    r.add_argument("-o", "--output")
    r.add_argument("--title")
    r.set_defaults(func=cmd_render)
    return p


def run(argv=None) -> int:
    start = time.perf_counter()
    command = "kplanar"
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        rep = args.func(args)
    except UsageError as exc:
        print(f"kplanar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        rep = _report(command, EXIT_BUDGET, {"budget_exceeded": True}, error=str(exc))
    except DischargeError as exc:
        rep = _report(command, EXIT_VIOLATION, {"applicable": False}, error=str(exc))
    except (DrawingError, SolverError, ValueError) as exc:
        print(f"kplanar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if rep is None:
        return EXIT_OK
    rep["seconds"] = round(time.perf_counter() - start, 3)
    sys.stdout.write(dumps(rep) + "\n")
    return rep["exit_status"]


def main():
    sys.exit(run())
