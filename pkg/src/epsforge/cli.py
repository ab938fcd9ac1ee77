"""Command-line interface.

Exit codes: 0 success, 1 semantic failure (invalid proof, undefined
translation, failed transformation), 2 unreadable or unparsable input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .epsilon_theorem import Diverged, NonTautology, TooManyAtoms, herbrand_pipeline
from .kernel import CALCULI, calculus_id, check, metrics
from .proofs import MalformedTree, calculus_hint, format_proof, parse_proof
from .syntax import MatrixUndefined, matrix
from .text import ParseError, parse_formula, show
from .transforms import PASSES, TransformError, TransformTrace, run_pass, to_critical_form
from .translation import SearchBoundExceeded, from_epsilon, skolemize_formula, to_epsilon

CORPUS_DIR = Path(__file__).parent / "corpus"

OK, FAIL, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: list[str]
    results: list[dict] = field(default_factory=list)
    status: int = OK

    def fail(self, code: int) -> None:
        self.status = max(self.status, code)


def resolve(name: str) -> Path:
    """A path as given, else relative to the bundled corpus."""
    p = Path(name)
    if p.exists():
        return p
    for cand in (CORPUS_DIR / name, CORPUS_DIR / p.name):
        if cand.exists():
            return cand
    raise InputError(f"{name}: no such file")


def read(name: str) -> str:
    try:
        return resolve(name).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{name}: {exc}") from None


def load_proof(name: str):
    src = read(name)
    try:
        p = parse_proof(src)
        p.validate_shape()
    except ParseError as exc:
        raise InputError(f"{name}: parse error: {exc}") from None
    except MalformedTree as exc:
        raise InputError(f"{name}: malformed tree: {exc}") from None
    return p, calculus_hint(src)


def load_formula(name: str):
    src = read(name)
    lines = [ln for ln in src.splitlines() if ln.strip() and not ln.lstrip().startswith(";")]
    if not lines:
        raise InputError(f"{name}: no formula")
    try:
        return parse_formula(" ".join(lines))
    except ParseError as exc:
        raise InputError(f"{name}: parse error: {exc}") from None


def pick_calculus(flag: str | None, hint: str | None) -> str:
    return calculus_id(flag or hint or "lk")


# --------------------------------------------------------------------------
# commands


def cmd_check(args) -> RunReport:
    rep = RunReport("check", args.files)
    for name in args.files:
        try:
            p, hint = load_proof(name)
        except InputError as exc:
            rep.fail(BAD_INPUT)
            rep.results.append({"file": name, "error": str(exc)})
            if not args.json:
                print(exc, file=sys.stderr)
            continue
        r = check(p, pick_calculus(args.calculus, hint))
        rep.results.append({"file": name, **r.to_json()})
        if not r.valid:
            rep.fail(FAIL)
        if not args.json:
            m = r.metrics
            verdict = "valid" if r.valid else "INVALID"
            print(f"{name}: {verdict} in {r.calculus} "
                  f"(length {m.length}, sequents {m.sequent_count}, size {m.symbol_size})")
            for v in r.violations:
                print(f"  {v.path}: {v.condition}: {v.message}")
    if args.json:
        print(json.dumps(rep.results, indent=2, sort_keys=True))
    return rep


def cmd_translate(args) -> RunReport:
    rep = RunReport("translate", [args.file])
    f = load_formula(args.file)
    try:
        if args.mode == "to-eps":
            out = show(to_epsilon(f))
        elif args.mode == "from-eps":
            g = from_epsilon(f)
            if g is None:
                out = "UNDEFINED"
                rep.fail(FAIL)
            else:
                out = show(g)
        elif args.mode == "skolemize":
            out = show(skolemize_formula(f, args.polarity))
        else:
            out = show(matrix(f))
    except SearchBoundExceeded as exc:
        out = f"UNDEFINED (search bound: {exc})"
        rep.fail(FAIL)
    except MatrixUndefined as exc:
        out = f"UNDEFINED ({exc})"
        rep.fail(FAIL)
    print(out)
    rep.results.append({"file": args.file, "output": out})
    return rep


def cmd_transform(args) -> RunReport:
    rep = RunReport("transform", [args.file])
    p, hint = load_proof(args.file)
    _, target = PASSES[args.pass_]
    trace = TransformTrace(args.pass_)
    try:
        if args.pass_ == "critical-form":
            out, crits, taut = to_critical_form(p, trace)
            extra = {"critical_formulas": [show(c.formula) for c in crits], "tautology": show(taut)}
        else:
            out = run_pass(args.pass_, p, trace)
            extra = {}
    except TransformError as exc:
        print(f"{args.file}: {type(exc).__name__}: {exc}", file=sys.stderr)
        rep.fail(FAIL)
        return rep
    text = f"; calculus: {target}\n{format_proof(out)}\n"
    # write-then-verify: the emitted script must re-parse and re-check
    again = parse_proof(text)
    report = check(again, target)
    if again != out or not report.valid:
        print(f"{args.file}: output failed re-check in {target}", file=sys.stderr)
        rep.fail(FAIL)
        return rep
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.emit_trace:
        data = {**trace.to_json(), **extra}
        Path(args.emit_trace).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    rep.results.append({"file": args.file, "trace": trace.to_json()})
    return rep


def cmd_measure(args) -> RunReport:
    rep = RunReport("measure", args.files)
    rows = []
    for name in args.files:
        try:
            p, hint = load_proof(name)
        except InputError as exc:
            print(exc, file=sys.stderr)
            rep.fail(BAD_INPUT)
            continue
        calc = pick_calculus(args.calculus, hint)
        if not check(p, calc).valid:
            rep.fail(FAIL)
        m = metrics(p)
        rows.append([name, calc, m.length, m.sequent_count, m.symbol_size])
    buf = io.StringIO()
    if args.csv:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["file", "calculus", "length", "sequent_count", "symbol_size"])
        w.writerows(rows)
    else:
        width = max([len(r[0]) for r in rows] + [4])
        buf.write(f"{'file':<{width}}  calculus    length  sequents  size\n")
        for r in rows:
            buf.write(f"{r[0]:<{width}}  {r[1]:<10}  {r[2]:>6}  {r[3]:>8}  {r[4]:>4}\n")
    sys.stdout.write(buf.getvalue())
    rep.results = [dict(zip(("file", "calculus", "length", "sequent_count", "symbol_size"), r)) for r in rows]
    return rep


def cmd_epsilon_theorem(args) -> RunReport:
    rep = RunReport("epsilon-theorem", [args.file])
    p, _ = load_proof(args.file)
    goal = load_formula(args.goal)
    try:
        hd = herbrand_pipeline(p, goal, reduce=not args.no_minimize)
    except (TransformError, NonTautology, Diverged, TooManyAtoms, ValueError) as exc:
        print(f"{args.file}: {type(exc).__name__}: {exc}", file=sys.stderr)
        rep.fail(FAIL)
        return rep
    data = hd.to_json()
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(f"template: {data['template']}")
        for ts in data["instances"]:
            print(f"instance: ({', '.join(ts)})")
        print(f"disjunction: {data['disjunction']}")
        print(f"certified: {'yes' if hd.certified else 'no'}")
    if not hd.certified:
        rep.fail(FAIL)
    rep.results.append(data)
    return rep


def cmd_corpus(args) -> RunReport:
    names = sorted(p.name for p in CORPUS_DIR.iterdir() if p.is_file())
    for n in names:
        print(CORPUS_DIR / n if args.paths else n)
    return RunReport("corpus", [], [{"file": n} for n in names])


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="epsforge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check proof scripts")
    c.add_argument("files", nargs="+")
    c.add_argument("--calculus", choices=CALCULI + ("lkp", "lkpp", "eps"), default=None)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("translate", help="translate a formula")
    t.add_argument("file")
    t.add_argument("--mode", choices=("to-eps", "from-eps", "skolemize", "matrix"), default="to-eps")
    t.add_argument("--polarity", choices=("positive", "negative"), default="positive")
    t.set_defaults(func=cmd_translate)

    x = sub.add_parser("transform", help="run a proof transformation")
    x.add_argument("file")
    x.add_argument("--pass", dest="pass_", choices=tuple(PASSES), required=True)
    x.add_argument("-o", "--output")
    x.add_argument("--emit-trace", metavar="PATH")
    x.set_defaults(func=cmd_transform)

    m = sub.add_parser("measure", help="proof metrics")
    m.add_argument("files", nargs="+")
    m.add_argument("--calculus", default=None)
    m.add_argument("--csv", action="store_true")
    m.set_defaults(func=cmd_measure)

    e = sub.add_parser("epsilon-theorem", help="extract a Herbrand disjunction")
    e.add_argument("file")
    e.add_argument("--goal", required=True)
    e.add_argument("--json", action="store_true")
    e.add_argument("--no-minimize", action="store_true")
    e.set_defaults(func=cmd_epsilon_theorem)

    k = sub.add_parser("corpus", help="list bundled corpus files")
    k.add_argument("--paths", action="store_true")
    k.set_defaults(func=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        rep = args.func(args)
    except InputError as exc:
        print(exc, file=sys.stderr)
        return BAD_INPUT
    except ValueError as exc:  # e.g. unknown calculus name
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
