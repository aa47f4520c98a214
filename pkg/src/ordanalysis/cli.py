"""Command line front end.

Exit codes: 0 success, 1 bound violated, 2 parse or usage error,
3 check failure, 4 descent found.
"""
from __future__ import annotations

import argparse
import sys

from . import ordinals as O
from .finitary import AxiomBase, check_fin, proof_from_text
from .infinitary import check_coherence, eliminate, eliminate_all, embed, evaluate_sound
from .infinitary.check import DEFAULT_SAMPLES
from .infinitary.io import deriv_from_text, deriv_to_text
from .pipeline import (
    BOUND_VIOLATED, CHECK_FAILED, DEFAULT_ASSIGNMENTS, DESCENT_FOUND, OK, PARSE_ERROR,
    PipelineConfig, analyze,
)
from .sexpr import ParseError
from .syntax import SetDescriptor, format_formula

# malformed files surface as any of these from the readers
_PARSE_ERRORS = (ValueError, KeyError, IndexError, TypeError)


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(PARSE_ERROR, f"cannot read {path}: {exc.strerror}") from None


def _load_fin(path):
    try:
        return proof_from_text(_read(path))
    except _PARSE_ERRORS as exc:
        raise _Fail(PARSE_ERROR, f"{path}: {exc}") from None


def _load_inf(path):
    try:
        return deriv_from_text(_read(path))
    except _PARSE_ERRORS as exc:
        raise _Fail(PARSE_ERROR, f"{path}: {exc}") from None


def _ord(text):
    try:
        return O.parse_ord(text)
    except O.OrdinalSyntaxError as exc:
        raise _Fail(PARSE_ERROR, f"ordinal {text!r}: {exc}") from None


def _samples(text):
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise _Fail(PARSE_ERROR, f"bad sample list {text!r}") from None


def _assignment(text):
    try:
        return SetDescriptor.parse(text)
    except (ValueError, ParseError) as exc:
        raise _Fail(PARSE_ERROR, f"bad set descriptor {text!r}: {exc}") from None


def _emit(pairs, report_path):
    text = "".join(f"{k}={v}\n" for k, v in pairs)
    sys.stdout.write(text)
    if report_path:
        with open(report_path, "w") as fh:
            fh.write(text)


def _write_deriv(d, path):
    if path:
        with open(path, "w") as fh:
            fh.write(deriv_to_text(d) + "\n")


# -- verbs -------------------------------------------------------------------

def cmd_ord(a):
    args = a.terms
    ops = {"cmp", "natsum", "add", "pow"}
    if args and args[0] in ops:
        op, rest = args[0], [_ord(t) for t in args[1:]]
        want = 1 if op == "pow" else 2
        if len(rest) != want:
            raise _Fail(PARSE_ERROR, f"ord {op} takes {want} operand(s)")
        if op == "cmp":
            print({-1: "LT", 0: "EQ", 1: "GT"}[O.compare(*rest)])
        elif op == "natsum":
            print(O.format_ord(O.nat_sum(*rest)))
        elif op == "add":
            print(O.format_ord(O.add(*rest)))
        else:
            print(O.format_ord(O.omega_pow(rest[0])))
        return OK
    if len(args) != 1:
        raise _Fail(PARSE_ERROR, "ord takes one term, or cmp|natsum|add|pow and operands")
    print(O.format_ord(_ord(args[0])))
    return OK


def cmd_check_fin(a):
    p = _load_fin(a.file)
    try:
        base = AxiomBase(a.base or p.base)
    except (ValueError, KeyError) as exc:
        raise _Fail(PARSE_ERROR, str(exc)) from None
    rep = check_fin(p, base)
    pairs = [("file", a.file), ("base", base.ident), ("ok", str(rep.ok).lower()),
             ("violations", str(len(rep.violations)))]
    pairs += [(f"violation.{i}", str(v)) for i, v in enumerate(rep.violations)]
    _emit(pairs, a.report)
    return OK if rep.ok else CHECK_FAILED


def cmd_check_inf(a):
    d = _load_inf(a.file)
    rep = check_coherence(d, samples=_samples(a.samples), max_nodes=a.max_nodes)
    pairs = [("file", a.file), ("height", O.format_ord(d.height)), ("rank", str(d.rank)),
             ("ok", str(rep.ok).lower()), ("verdict", rep.verdict), ("nodes", str(rep.nodes)),
             ("samples", ",".join(map(str, rep.sampled_instances))),
             ("complete", str(rep.complete).lower()), ("violations", str(len(rep.violations)))]
    pairs += [(f"violation.{i}", f"{'/'.join(p) or 'root'}: {c}: {m}")
              for i, (p, c, m) in enumerate(rep.violations[:50])]
    _emit(pairs, a.report)
    return OK if rep.ok else CHECK_FAILED


def cmd_embed(a):
    p = _load_fin(a.file)
    base = AxiomBase(p.base)
    rep = check_fin(p, base)
    if not rep.ok:
        raise _Fail(CHECK_FAILED, f"finitary check failed: {rep.first}")
    d = embed(p, base, check=False)
    _write_deriv(d, a.out)
    _emit([("file", a.file), ("height", O.format_ord(d.height)), ("rank", str(d.rank)),
           ("out", a.out or "")], a.report)
    return OK


def cmd_elim(a):
    d = _load_inf(a.file)
    trace = []
    if a.all:
        out = eliminate_all(d, trace)
    elif d.rank == 0:
        out = d
    else:
        out = eliminate(d, d.rank - 1)
        trace.append((out.rank, out.height))
    _write_deriv(out, a.out)
    pairs = [("file", a.file), ("inputHeight", O.format_ord(d.height)),
             ("inputRank", str(d.rank)), ("height", O.format_ord(out.height)),
             ("rank", str(out.rank)), ("rounds", str(len(trace)))]
    pairs += [(f"round.{i}", f"rank={r} height={O.format_ord(h)}") for i, (r, h) in enumerate(trace)]
    pairs.append(("out", a.out or ""))
    _emit(pairs, a.report)
    return OK


def cmd_eval(a):
    d = _load_inf(a.file)
    if d.rank != 0:
        raise _Fail(CHECK_FAILED, "eval needs a cut-free derivation (rank 0)")
    xs = [_assignment(x) for x in (a.X or ["empty"])]
    pairs, code = [("file", a.file), ("fuel", str(a.fuel))], OK
    for X in xs:
        res = evaluate_sound(d, X, a.fuel, a.max_nodes)
        pairs.append((f"sound.{X}", res.verdict))
        for i, (tags, h, sq) in enumerate(res.path):
            pairs.append((f"path.{X}.{i}", f"{'/'.join(tags) or 'root'} height={O.format_ord(h)} "
                          f"sequent={' '.join(sorted(format_formula(f) for f in sq))}"))
        if res.verdict == "DescentFound":
            code = DESCENT_FOUND
    _emit(pairs, a.report)
    return code


def cmd_analyze(a):
    p = _load_fin(a.file)
    cfg = PipelineConfig(
        gamma=_ord(a.gamma) if a.gamma is not None else None,
        assignments=tuple(str(_assignment(x)) for x in (a.X or DEFAULT_ASSIGNMENTS)),
        fuel=a.fuel, samples=_samples(a.samples), max_nodes=a.max_nodes,
    )
    rep = analyze(p, cfg, proof_id=a.id or a.file)
    _emit(rep.items(), a.report)
    return rep.exit_code


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ordanalysis", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)
    samples = ",".join(map(str, DEFAULT_SAMPLES))

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("ord", cmd_ord, "normalize, compare or combine ordinal terms")
    p.add_argument("terms", nargs="+")

    p = add("check-fin", cmd_check_fin, "check a finitary proof")
    p.add_argument("file")
    p.add_argument("--base", help="override the base named in the file")
    p.add_argument("--report")

    p = add("check-inf", cmd_check_inf, "check an infinitary derivation for coherence")
    p.add_argument("file")
    p.add_argument("--samples", default=samples)
    p.add_argument("--max-nodes", type=int, default=200_000)
    p.add_argument("--report")

    p = add("embed", cmd_embed, "embed a finitary proof")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--report")

    p = add("elim", cmd_elim, "lower the cut rank by one (or to 0 with --all)")
    p.add_argument("file")
    p.add_argument("--all", action="store_true")
    p.add_argument("--out")
    p.add_argument("--report")

    p = add("eval", cmd_eval, "descent search on a cut-free derivation")
    p.add_argument("file")
    p.add_argument("--X", action="append", help="set descriptor, repeatable")
    p.add_argument("--fuel", type=int, default=50)
    p.add_argument("--max-nodes", type=int, default=100_000)
    p.add_argument("--report")

    p = add("analyze", cmd_analyze, "run the full pipeline on a finitary proof")
    p.add_argument("file")
    p.add_argument("--gamma")
    p.add_argument("--X", action="append", help="set descriptor, repeatable")
    p.add_argument("--fuel", type=int, default=50)
    p.add_argument("--samples", default=samples)
    p.add_argument("--max-nodes", type=int, default=200_000)
    p.add_argument("--id")
    p.add_argument("--report")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return PARSE_ERROR if exc.code else OK
    try:
        return a.fn(a)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "build_parser", "BOUND_VIOLATED"]
