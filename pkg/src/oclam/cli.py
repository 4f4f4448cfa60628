"""``oclam`` command line: check, normalize, matrix, eval, equiv, fuzz.

Exit codes: 0 success, 1 usage or parse error, 2 semantic failure, 3 unknown
or out of fuel, 4 internal error.  With ``--json`` every invocation prints
exactly one JSON document ``{command, inputs, result, diagnostics, timings}``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .concrete import parse_term, parse_type, print_term, print_type, read_term_file
from .denot import (
    BangV, FunV, SemEnv, basis, canonicalize, evaluate, format_canonical, format_value,
    is_decidable, is_enumerable,
)
from .encode import Matrix, matrix_to_term, term_to_matrix
from .equiv import Distinguished, EquivalentUpToBound, obs_equiv
from .errors import (
    DimensionMismatch, FuelExhausted, NotVectorType, OclamError, ParseError, ShapeError,
    TypeCheckError, Unsupported,
)
from .gen import GenConfig
from .props import PROPERTIES, run_fuzz
from .reduce import normalize, parse_strategy
from .semiring import SEMIRINGS, get_semiring
from .typecheck import check, infer
from .types import Lolli

OK, USAGE, SEMANTIC, UNKNOWN, INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class Fail(Exception):
    """A reportable failure carrying its exit code and diagnostic."""

    def __init__(self, code: int, kind: str, message: str, result=None, **extra):
        super().__init__(message)
        self.code = code
        self.diag = {"level": "error", "kind": kind, "message": message, **extra}
        self.result = result


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = argparse.SUPPRESS
    p.add_argument("--semiring", choices=sorted(SEMIRINGS), default=d)
    p.add_argument("--fuel", type=int, default=d)
    p.add_argument("--seed", type=int, default=d)
    p.add_argument("--json", action="store_true", default=d)
    p.add_argument("--timings", action="store_true", default=d,
                   help="report wall-clock time (output is then not reproducible)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="oclam", parents=[common],
                  description="Typecheck, run and test terms of the linear-algebraic calculus.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="typecheck a closed term")
    p.add_argument("file")
    p.add_argument("--type")

    p = sub.add_parser("normalize", parents=[common], help="reduce to normal form")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--strategy", default="lo")
    p.add_argument("--ultra", action="store_true")

    p = sub.add_parser("matrix", parents=[common], help="matrices as terms")
    msub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, helptext in (("compile", "matrix JSON to a term"), ("extract", "term to matrix JSON")):
        q = msub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("file")
        q.add_argument("--domain", required=True)
        q.add_argument("--codomain", required=True)

    p = sub.add_parser("eval", parents=[common], help="denotation of a term")
    p.add_argument("file")
    p.add_argument("--type")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--at", type=int, metavar="BASIS_INDEX")
    g.add_argument("--env", metavar="ENVFILE")

    p = sub.add_parser("equiv", parents=[common], help="bounded observational equivalence")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--type", required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--budget", type=int, default=8)

    p = sub.add_parser("fuzz", parents=[common], help="property-based metatheory checks")
    p.add_argument("--props", default=",".join(PROPERTIES))
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--size", type=int, default=40)
    return top


# ---------------------------------------------------------------------------
# Commands

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise Fail(USAGE, "IOError", f"{path}: {e.strerror}")


def _term_file(path: str, S):
    try:
        return read_term_file(_read(path), S)
    except ParseError as e:
        raise Fail(USAGE, "ParseError", f"{path}:{e}", file=path, line=e.line,
                   column=e.column, expected=sorted(e.expected))


def _type_arg(text: str | None):
    if text is None:
        return None
    try:
        return parse_type(text)
    except ParseError as e:
        raise Fail(USAGE, "ParseError", f"type {text!r}: {e}")


def _typed(t, want, S, U=None, G=None):
    U, G = U or {}, G or {}
    try:
        return check(U, G, t, want, S).type if want is not None else infer(U, G, t, S).type
    except TypeCheckError as e:
        extra = {"path": list(e.path)}
        if e.expected is not None:
            extra["expected"] = print_type(e.expected)
        if e.found is not None:
            extra["found"] = print_type(e.found)
        raise Fail(SEMANTIC, e.kind, str(e), **extra)
    except OclamError as e:
        raise Fail(SEMANTIC, type(e).__name__, str(e))


def _pinned(cli_type, file_type):
    return _type_arg(cli_type) if cli_type is not None else file_type


def cmd_check(a, S):
    t, pinned = _term_file(a.file, S)
    A = _typed(t, _pinned(a.type, pinned), S)
    return {"type": print_type(A)}, print_type(A)


def cmd_normalize(a, S):
    t, pinned = _term_file(a.file, S)
    A = _typed(t, pinned, S)
    try:
        strat = parse_strategy(a.strategy)
    except ValueError as e:
        raise Fail(USAGE, "BadStrategy", str(e))
    try:
        res = normalize(t, strat, fuel=a.fuel, ultra=a.ultra, trace=a.trace)
    except FuelExhausted as e:
        raise Fail(UNKNOWN, "FuelExhausted", str(e),
                   result={"steps": e.steps, "last": print_term(e.term, S)})
    nf = print_term(res.term, S)
    out = {"type": print_type(A), "normal_form": nf, "steps": res.steps}
    lines = [nf]
    if a.trace:
        out["trace"] = [{"rule": site.rule if site else None,
                         "path": list(site.path) if site else None,
                         "term": print_term(u, S)} for site, u in res.trace]
        lines = [print_term(u, S) for _, u in res.trace]
    return out, "\n".join(lines)


def cmd_matrix(a, S):
    A, B = _type_arg(a.domain), _type_arg(a.codomain)
    try:
        if a.action == "compile":
            text = _read(a.file)
            try:
                M = Matrix.from_json(text, S)
            except (ValueError, KeyError, TypeError, ParseError) as e:
                raise Fail(USAGE, "BadMatrix", f"{a.file}: {e}")
            t = matrix_to_term(M, A, B)
            s = print_term(t, S)
            return {"term": s, "type": print_type(Lolli(A, B))}, s
        t, _ = _term_file(a.file, S)
        _typed(t, Lolli(A, B), S)
        M = term_to_matrix(t, A, B, S, a.fuel)
        doc = json.loads(M.to_json(S))
        return doc, M.to_json(S)
    except (NotVectorType, DimensionMismatch, ShapeError) as e:
        raise Fail(SEMANTIC, type(e).__name__, str(e))
    except FuelExhausted as e:
        raise Fail(UNKNOWN, "FuelExhausted", str(e))


def _env(path: str, S):
    """``{"linear": {x: {"type", "term"}}, "intuitionistic": {x: {"type", "atoms": [[w, term]]}}}``."""
    try:
        doc = json.loads(_read(path))
        U = {x: parse_type(e["type"]) for x, e in doc.get("intuitionistic", {}).items()}
        G = {x: parse_type(e["type"]) for x, e in doc.get("linear", {}).items()}
        Uv, Gv = {}, {}
        for x, e in doc.get("linear", {}).items():
            u = parse_term(e["term"], S)
            _typed(u, G[x], S)
            Gv[x] = evaluate(u, semiring=S)
        for x, e in doc.get("intuitionistic", {}).items():
            atoms = []
            for w, text in e["atoms"]:
                u = parse_term(text, S)
                _typed(u, U[x], S)
                atoms.append((S.parse(str(w)), evaluate(u, semiring=S)))
            Uv[x] = BangV(tuple(atoms))
    except (ValueError, KeyError, TypeError, AttributeError) as e:
        raise Fail(USAGE, "BadEnv", f"{path}: {e}")
    except ParseError as e:
        raise Fail(USAGE, "ParseError", f"{path}: {e}")
    return U, G, SemEnv(Uv, Gv)


def _show(A, v, S):
    if is_decidable(A):
        c = canonicalize(A, v, S)
        return format_canonical(A, c, S)
    return format_value(v, S)


def cmd_eval(a, S):
    t, pinned = _term_file(a.file, S)
    U, G, env = _env(a.env, S) if a.env else ({}, {}, None)
    A = _typed(t, _pinned(a.type, pinned), S, U, G)
    try:
        v = evaluate(t, env, semiring=S)
        if a.at is not None:
            if not (isinstance(A, Lolli) and is_enumerable(A.dom)):
                raise Fail(SEMANTIC, "NoBasis", f"--at needs a function on a finite basis, not {print_type(A)}")
            bs = basis(A.dom, S)
            if not 0 <= a.at < len(bs):
                raise Fail(USAGE, "BadIndex", f"basis index {a.at} outside 0..{len(bs) - 1}")
            v = v(bs[a.at]) if isinstance(v, FunV) else v
            A = A.cod
        text = _show(A, v, S)
    except Unsupported as e:
        raise Fail(SEMANTIC, "Unsupported", str(e))
    return {"type": print_type(A), "value": text}, text


def cmd_equiv(a, S):
    A = _type_arg(a.type)
    t, _ = _term_file(a.left, S)
    u, _ = _term_file(a.right, S)
    _typed(t, A, S)
    _typed(u, A, S)
    v = obs_equiv(t, u, A, a.depth, a.budget, a.fuel, a.seed, semiring=S)
    if isinstance(v, EquivalentUpToBound):
        return {"verdict": "EquivalentUpToBound", "depth": v.depth, "contexts": v.contexts}, \
            f"equivalent up to depth {v.depth} ({v.contexts} contexts)"
    if isinstance(v, Distinguished):
        res = {"verdict": "Distinguished", "context": print_term(v.context.term, S),
               "left": print_term(v.left, S), "right": print_term(v.right, S)}
        raise Fail(SEMANTIC, "Distinguished",
                   f"distinguished by {res['context']}: {res['left']} vs {res['right']}", result=res)
    raise Fail(UNKNOWN, "Unknown", v.reason, result={"verdict": "Unknown", "reason": v.reason})


def cmd_fuzz(a, S):
    props = [p for p in a.props.split(",") if p]
    try:
        rep = run_fuzz(props, a.n, a.seed, fuel=a.fuel,
                       cfg=GenConfig(max_size=a.size, semiring=S))
    except ValueError as e:
        raise Fail(USAGE, "BadProps", str(e))
    doc = rep.to_dict()
    if not rep.ok:
        raise Fail(SEMANTIC, "PropertyFailure", f"{len(rep.failures)} failing cases", result=doc)
    return doc, json.dumps(doc, sort_keys=True)


COMMANDS = {"check": cmd_check, "normalize": cmd_normalize, "matrix": cmd_matrix,
            "eval": cmd_eval, "equiv": cmd_equiv, "fuzz": cmd_fuzz}


# ---------------------------------------------------------------------------
# Driver

def _inputs(a) -> dict:
    skip = {"json", "timings"}
    return {k: v for k, v in sorted(vars(a).items()) if k not in skip}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        a = build_parser().parse_args(argv)
    except UsageError as e:
        as_json = "--json" in argv
        if as_json:
            _emit_json(out, None, {"argv": argv}, None,
                       [{"level": "error", "kind": "Usage", "message": str(e)}], None)
        else:
            print(f"oclam: {e}", file=err)
        return USAGE
    for k, v in (("semiring", "nat"), ("fuel", 100_000), ("seed", 0), ("json", False),
                 ("timings", False)):
        if not hasattr(a, k):
            setattr(a, k, v)
    S = get_semiring(a.semiring)
    cmd = a.command + (f" {a.action}" if a.command == "matrix" else "")
    t0 = time.perf_counter()
    code, result, diags, text = OK, None, [], None
    try:
        result, text = COMMANDS[a.command](a, S)
    except Fail as f:
        code, result, diags = f.code, f.result, [f.diag]
    except RecursionError:
        code, diags = INTERNAL, [{"level": "error", "kind": "RecursionError",
                                  "message": "term too deep to process"}]
    except Exception as e:  # noqa: BLE001
        code, diags = INTERNAL, [{"level": "error", "kind": type(e).__name__,
                                  "message": f"internal error: {e}"}]
    timings = {"total_ms": round((time.perf_counter() - t0) * 1000, 3)} if a.timings else {}
    if a.json:
        _emit_json(out, cmd, _inputs(a), result, diags, timings)
    else:
        if text is not None:
            print(text, file=out)
        elif result is not None:
            print(json.dumps(result, sort_keys=True), file=out)
        for d in diags:
            print(f"oclam {cmd}: {d['kind']}: {d['message']}", file=err)
        if timings:
            print(f"time: {timings['total_ms']} ms", file=err)
    return code


def _emit_json(out, cmd, inputs, result, diags, timings):
    doc = {"command": cmd, "inputs": inputs, "result": result, "diagnostics": diags,
           "timings": timings or {}}
    print(json.dumps(doc, sort_keys=True), file=out)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
