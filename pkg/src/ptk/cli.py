"""Command-line front end: ``ptk <command> ...``.

Every command prints a report (``--format text`` or ``json``). Exit codes:
0 success, 1 internal verification failure, 2 usage error, 3 parse or
alphabet error, 4 resource cap exceeded, 5 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
import time
from pathlib import Path

from . import automata as fa
from . import closures, dproduct, fo2, incomparability, simon, words
from .cfg import Cfg, parse_cfg
from .errors import (AlphabetError, CapExceeded, ParseError, PreconditionError, PtkError,
                     UnsupportedConstruct, VerificationError)
from .regex import regex_to_nfa
from .textio import parse_automaton, to_dot, to_text
from .words import Alphabet

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_PARSE, EXIT_CAP, EXIT_PRECONDITION = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ------------------------------------------------------------------ inputs

def _alphabet(args, required=True) -> Alphabet | None:
    letters = args.alphabet or os.environ.get("PTK_ALPHABET")
    if not letters:
        if required:
            raise UsageError("an alphabet is required (--alphabet or PTK_ALPHABET)")
        return None
    return Alphabet(letters)


def _word(text: str, alphabet: Alphabet) -> str:
    w = "" if text in ("_", "ε") else text
    return alphabet.check(w)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(source: str, args, allow_cfg=False):
    """Resolve an input: ``regex:<expr>``, ``cfg:<file>``, a ``.cfg`` file or an automaton file."""
    if source.startswith("regex:"):
        return regex_to_nfa(source[len("regex:"):], _alphabet(args))
    if source.startswith("cfg:") or source.endswith(".cfg"):
        if not allow_cfg:
            raise UsageError("a grammar is not accepted here")
        path = source[4:] if source.startswith("cfg:") else source
        return parse_cfg(_read(path), _alphabet(args))
    nfa = parse_automaton(_read(source), _alphabet(args, required=False))
    if args.alphabet is None:
        args.alphabet = nfa.alphabet.letters
    return nfa


def _dfa(source, args) -> fa.Dfa:
    return fa.to_dfa(_load(source, args))


def _emit_automaton(d, args, report, key="automaton"):
    text = to_text(d)
    if args.out:
        Path(args.out).write_text(text)
        report[f"{key}_file"] = args.out
    else:
        report[key] = text
    if args.dot:
        Path(args.dot).write_text(to_dot(d))
        report["dot_file"] = args.dot
    report["states"] = d.num_states


def _measure(d, args):
    if d.num_states > args.max_depth_states * 50:
        return "capped"
    h = simon.pt_height_dfa(d, cap=args.max_class_states)
    return "not PT" if h is None else h


# ---------------------------------------------------------------- commands

def cmd_height(args, report):
    A = _alphabet(args, required=args.kind != "dfa")
    if args.kind == "word":
        report["height"] = simon.pt_height_word(_word(args.target, A), A)
    elif args.kind == "set":
        ws = [_word(line.strip(), A) for line in _read(args.target).splitlines() if line.strip()]
        report["words"] = len(ws)
        report["height"] = simon.pt_height_finite(ws, A) if ws else 0
    else:
        d = _dfa(args.target, args)
        h = simon.pt_height_dfa(d, cap=args.max_class_states)
        report["piecewise_testable"] = h is not None
        report["height"] = h


def cmd_delta(args, report):
    A = _alphabet(args)
    d = simon.delta(_word(args.u, A), _word(args.v, A), A)
    report["delta"] = "inf" if d == simon.INF else int(d)


def cmd_simeq(args, report):
    A = _alphabet(args)
    report["equivalent"] = simon.sim_equiv(_word(args.u, A), _word(args.v, A), args.n, A)


def cmd_small_subword(args, report):
    A = _alphabet(args)
    u = _word(args.u, A)
    v = simon.small_subword(u, args.n)
    k = len(set(u)) or 1
    report["subword"] = v or "_"
    report["length"] = len(v)
    report["bound"] = words.f(k, args.n)


def cmd_profile(args, report):
    A = _alphabet(args)
    p = simon.profile(_word(args.u, A), args.n, A)
    report["maximal"] = [w or "_" for w in p.maximal]


def cmd_classes(args, report):
    A = _alphabet(args)
    ca = simon.class_automaton(A, args.level, cap=args.max_class_states)
    report["classes"] = ca.num_states
    bound = simon.class_count_bound(A.k, args.level)
    report["bound"] = None if bound is None else (bound if bound == simon.INF else round(bound, 3))
    report["within_bound"] = None if bound is None else ca.num_states <= bound
    census: dict = {}
    for rep in ca.representatives:
        census[len(rep)] = census.get(len(rep), 0) + 1
    report["census_by_shortest_length"] = {str(k): v for k, v in sorted(census.items())}
    if args.out:
        Path(args.out).write_text(to_text(ca.to_dfa([], minimal=False)))
        report["automaton_file"] = args.out


def cmd_closure(args, report):
    src = _load(args.input, args, allow_cfg=True)
    A = _alphabet(args)
    k = A.k
    if isinstance(src, Cfg):
        if args.op != "up":
            raise UsageError("grammars support only the upward closure")
        d = closures.up_closure_cfg(src)
        mins = closures.min_words(d)
        report["bound_rule"] = "longest minimal word"
        report["bound"] = max(map(len, mins), default=0)
        report["length_bound"] = src.ell ** src.N
    else:
        if args.op == "up":
            d = closures.up_closure(src)
        elif args.op == "down":
            d = closures.down_closure(src)
        elif args.op == "strict-up":
            d = closures.strict_up(src)
        elif args.op == "strict-down":
            d = closures.strict_down(src)
        else:
            d = closures.min_lang(src)
        if args.op in ("up", "strict-up", "min"):
            m = max(map(len, closures.min_words(src)), default=0)
            extra = 0 if args.op == "up" else 1
            report["bound_rule"] = "longest minimal word" + (" + 1" if extra else "")
            report["bound"] = m + extra
            if args.level is not None:
                fn = words.f(k, args.level)
                report["bound_from_level"] = fn if args.op == "up" else fn + 1
        else:
            cover = dproduct.dproduct_cover_nfa(src)
            ell = max((len(p) for p in cover), default=0)
            report["bound_rule"] = "longest cover product + 1"
            report["bound"] = ell + 1
            if args.level is not None:
                report["bound_from_level"] = (k + 1) * (words.f(k, args.level) + 1)
    report["measured_height"] = _measure(d, args)
    _emit_automaton(d, args, report)


def cmd_dproduct(args, report):
    if args.action == "cover":
        src = _load(args.input, args)
        cover = dproduct.dproduct_cover_nfa(src)
        report["products"] = [str(p) for p in cover]
        report["depth"] = dproduct.cover_depth(src, cap=args.max_depth_states) if cover else 0
    else:
        d = _dfa(args.input, args)
        A = d.alphabet
        if args.level is None:
            raise UsageError("--level is required")
        u = _word(args.u, A)
        p = dproduct.dproduct_for_word(u, d, args.level, check_pt=True)
        m = words.f(A.k, args.level)
        report["product"] = str(p)
        report["length"] = len(p)
        report["bound"] = m * A.k + m + A.k


def cmd_incomp(args, report):
    if args.action == "singleton":
        A = _alphabet(args)
        d = incomparability.incomparability_singleton(_word(args.u, A), A)
        _emit_automaton(d, args, report)
    elif args.action == "pt":
        d = _dfa(args.input, args)
        if args.level is None:
            raise UsageError("--level is required")
        out = incomparability.I_of_pt(d, args.level, method=args.method, cap=args.max_class_states)
        report["level_bound"] = words.f(d.alphabet.k, args.level) + 1
        report["measured_height"] = _measure(out, args)
        _emit_automaton(out, args, report)
    else:
        d = _dfa(args.input, args)
        u = _word(args.u, d.alphabet)
        report["in_I"] = incomparability.in_I(u, d)
        report["in_C"] = not report["in_I"]


def cmd_fo2(args, report):
    A = _alphabet(args)
    mode = fo2.EXTENDED if args.extended else fo2.BASIC
    phi = fo2.parse_formula(args.formula, A, mode)
    report["formula"] = str(phi)
    kw = {"class_cap": args.max_class_states}
    if args.action == "decide":
        report["value"] = fo2.decide(phi, **kw)
    elif args.action == "language":
        d = fo2.eliminate(phi, **kw)
        _emit_automaton(d, args, report)
    else:
        ledger = fo2.height_ledger(phi, **kw)
        report["ledger"] = [r.as_dict() for r in ledger]
        report["violations"] = len(ledger.violations())


def cmd_uk(args, report):
    A = _alphabet(args)
    u = words.generate_Uk(args.k, args.eta, A)
    if args.action == "gen":
        report["word"] = u or "_"
        report["length"] = len(u)
        return
    P, N = words.generate_Pk_Nk(args.k, args.eta, A)
    sub = A.prefix(args.k) if args.k else A
    matches = [w for w in sub.words(args.maxlen)
               if all(words.is_subword(p, w) for p in P) and not any(words.is_subword(q, w) for q in N)]
    report["matches"] = [w or "_" for w in matches]
    report["unique"] = matches == [u]


def cmd_bounds(args, report):
    report["exact"] = words.f(args.k, args.n)
    report["closed_form"] = round(words.f_upper(args.k, args.n), 6)


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False)
    S = argparse.SUPPRESS  # so options may appear before or after the command
    common.add_argument("--alphabet", default=S)
    common.add_argument("--format", choices=("text", "json"), default=S)
    common.add_argument("--timing", action="store_true", default=S)
    common.add_argument("--out", default=S)
    common.add_argument("--dot", default=S)
    common.add_argument("--max-class-states", type=int, default=S)
    common.add_argument("--max-enum-len", type=int, default=S)
    common.add_argument("--max-depth-states", type=int, default=S)

    p = _ArgParser(prog="ptk", description="Piecewise-testable language toolkit", parents=[common])
    p.add_argument("--batch", default=None, help="file with one command per line")
    sub = p.add_subparsers(dest="command")

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("height", cmd_height)
    sp.add_argument("kind", choices=("word", "set", "dfa"))
    sp.add_argument("target")

    sp = add("delta", cmd_delta)
    sp.add_argument("u")
    sp.add_argument("v")

    sp = add("simeq", cmd_simeq)
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("n", type=int)

    sp = add("small-subword", cmd_small_subword)
    sp.add_argument("u")
    sp.add_argument("n", type=int)

    sp = add("profile", cmd_profile)
    sp.add_argument("u")
    sp.add_argument("n", type=int)

    sp = add("classes", cmd_classes)
    sp.add_argument("--level", type=int, required=True)

    sp = add("closure", cmd_closure)
    sp.add_argument("op", choices=("up", "down", "strict-up", "strict-down", "min"))
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--level", type=int, default=None)

    sp = add("dproduct", cmd_dproduct)
    sp.add_argument("action", choices=("cover", "for-word"))
    sp.add_argument("u", nargs="?")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--level", type=int, default=None)

    sp = add("incomp", cmd_incomp)
    sp.add_argument("action", choices=("singleton", "pt", "member"))
    sp.add_argument("u", nargs="?")
    sp.add_argument("--in", dest="input", default=None)
    sp.add_argument("--level", type=int, default=None)
    sp.add_argument("--method", choices=("classes", "flat"), default="classes")

    sp = add("fo2", cmd_fo2)
    sp.add_argument("action", choices=("decide", "language", "ledger"))
    sp.add_argument("formula")
    sp.add_argument("--extended", action="store_true")

    sp = add("uk", cmd_uk)
    sp.add_argument("action", choices=("gen", "verify"))
    sp.add_argument("k", type=int)
    sp.add_argument("eta", type=int)
    sp.add_argument("--maxlen", type=int, default=None)

    sp = add("bounds", cmd_bounds)
    sp.add_argument("what", choices=("f",))
    sp.add_argument("k", type=int)
    sp.add_argument("n", type=int)
    return p


_DEFAULTS = {"alphabet": None, "format": "text", "timing": False, "out": None, "dot": None,
             "max_class_states": simon.DEFAULT_CLASS_CAP, "max_enum_len": 12,
             "max_depth_states": fa.DEFAULT_DEPTH_CAP}


def parse_args(argv):
    args = build_parser().parse_args(argv)
    for key, value in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    return args


def _check_args(args):
    if args.command == "dproduct" and args.action == "for-word" and args.u is None:
        raise UsageError("dproduct for-word needs a word")
    if args.command == "incomp":
        if args.action in ("singleton", "member") and args.u is None:
            raise UsageError(f"incomp {args.action} needs a word")
        if args.action in ("pt", "member") and args.input is None:
            raise UsageError(f"incomp {args.action} needs --in")
    if args.command == "uk" and args.action == "verify":
        if args.maxlen is None:
            raise UsageError("uk verify needs --maxlen")
        if args.maxlen > args.max_enum_len:
            raise CapExceeded(f"--maxlen {args.maxlen} exceeds --max-enum-len {args.max_enum_len}",
                              cap=args.max_enum_len, reached=args.maxlen)


def _format(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, ensure_ascii=False) + "\n"
    lines = []
    for key, value in report.items():
        if key == "timing":
            continue
        if isinstance(value, str) and "\n" in value:
            lines.append(f"{key}:")
            lines.extend("  " + line for line in value.rstrip("\n").split("\n"))
        elif isinstance(value, list):
            lines.append(f"{key}:")
            for item in value:
                lines.append("  " + (json.dumps(item, ensure_ascii=False) if isinstance(item, dict)
                                     else str(item)))
        elif isinstance(value, dict):
            lines.append(f"{key}: " + ", ".join(f"{k}={v}" for k, v in value.items()))
        else:
            lines.append(f"{key}: {_scalar(value)}")
    if "timing" in report:
        lines.append(f"timing: {report['timing']}")
    return "\n".join(lines) + "\n"


def _scalar(v):
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "none"
    return str(v)


def run_one(argv: list[str], out=sys.stdout, err=sys.stderr) -> int:
    fmt = "json" if "--format=json" in argv or ("--format" in argv and "json" in argv) else "text"
    try:
        args = parse_args(argv)
        fmt = args.format
        if args.batch:
            return run_batch(args.batch, out, err)
        if not args.command:
            raise UsageError("no command given")
        _check_args(args)
        report: dict = {"command": " ".join(argv)}
        start = time.perf_counter()
        args.func(args, report)
        if args.alphabet:
            report = {"command": report.pop("command"), "alphabet": args.alphabet, **report}
        if args.timing:
            report["timing"] = f"{time.perf_counter() - start:.3f}s"
        out.write(_format(report, fmt))
        return EXIT_OK
    except UsageError as e:
        return _fail(err, fmt, "usage", str(e), EXIT_USAGE)
    except (ParseError, AlphabetError) as e:
        return _fail(err, fmt, "parse", str(e), EXIT_PARSE)
    except CapExceeded as e:
        return _fail(err, fmt, "cap", str(e), EXIT_CAP, cap=e.cap, reached=e.reached)
    except (PreconditionError, UnsupportedConstruct) as e:
        return _fail(err, fmt, "precondition", str(e), EXIT_PRECONDITION)
    except (VerificationError, PtkError) as e:
        return _fail(err, fmt, "internal", str(e), EXIT_INTERNAL)


def _fail(err, fmt, kind, message, code, **extra) -> int:
    diag = {"error": kind, "message": message, **{k: v for k, v in extra.items() if v is not None}}
    if fmt == "json":
        err.write(json.dumps(diag, ensure_ascii=False) + "\n")
    else:
        err.write(f"error ({kind}): {message}\n")
        for k, v in extra.items():
            if v is not None:
                err.write(f"  {k}: {v}\n")
    return code


def run_batch(path: str, out=sys.stdout, err=sys.stderr) -> int:
    worst = EXIT_OK
    for line in _read(path).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        worst = max(worst, run_one(shlex.split(line), out, err))
    return worst


def main(argv: list[str] | None = None) -> int:
    return run_one(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
