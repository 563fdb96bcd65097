"""Command-line interface.

Exit codes: 0 success (or not distinguished), 10 distinguished / not
isomorphic, 2 usage or input error, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions as cons
from .errors import PosetDerivedError
from .fields import DEFAULT_PRIMES, QQ, GF, parse_field
from .homology import betti
from .invariants import Distinguished, distinguish, invariant_report
from .io import load_poset, poset_to_dict, save_poset, serialize_poset
from .poset import is_isomorphic, opposite, product
from .sheaves import ext_dims, hochschild_dims, sheaf_cohomology_constant, standard_sheaf

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_DISTINGUISHED = 10

HOCHSCHILD_MAX_POINTS = 400

_poly_list = {"type": "array", "items": {"type": "string"}}
_int_list = {"type": "array", "items": {"type": "integer", "minimum": 0}}

INFO_SCHEMA = {
    "type": "object",
    "required": ["n", "component_count", "component_sizes", "dim", "mobius_entry_sum",
                 "coxeter_charpoly", "q_invariant_factors", "p_invariant_factors",
                 "betti", "euler_char", "primes"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "component_count": {"type": "integer", "minimum": 1},
        "component_sizes": _int_list,
        "dim": {"type": "integer", "minimum": 0},
        "mobius_entry_sum": {"type": "integer"},
        "coxeter_charpoly": {"type": "array", "items": {"type": "integer"}},
        "q_invariant_factors": _poly_list,
        "p_invariant_factors": {"type": "object", "additionalProperties": _poly_list},
        "betti": {"type": "object", "additionalProperties": _int_list},
        "euler_char": {"type": "integer"},
        "primes": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _primes(text):
    if text is None:
        return list(DEFAULT_PRIMES)
    try:
        primes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None
    for p in primes:
        GF(p)
    return primes


def _components(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--component expects LABEL=FILE, got {item!r}")
        label, path = item.split("=", 1)
        out[label] = load_poset(path)
    return out


def _emit(out, args, payload, text):
    if getattr(args, "json", False):
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _write_or_print(out, args, X, name):
    if args.out:
        save_poset(args.out, X, name)
        return f"wrote {args.out} ({X.n} points)"
    return serialize_poset(X, name)


def cmd_info(args, out):
    X = load_poset(args.file)
    report = invariant_report(X, _primes(args.primes))
    _emit(out, args, report.to_dict(), report.render())
    return EXIT_OK


def cmd_compare(args, out):
    X, Y = load_poset(args.first), load_poset(args.second)
    verdict = distinguish(X, Y, _primes(args.primes))
    if isinstance(verdict, Distinguished):
        payload = {"verdict": "distinguished", "invariant": verdict.invariant,
                   "first": verdict.x_value, "second": verdict.y_value}
        code = EXIT_DISTINGUISHED
    else:
        payload = {"verdict": "not distinguished", "checked": list(verdict.checked)}
        code = EXIT_OK
    _emit(out, args, payload, verdict.render())
    return code


def cmd_construct(args, out):
    op = args.operation
    files = args.inputs
    if op == "opposite":
        if len(files) != 1:
            raise UsageError("opposite takes one poset")
        X = opposite(load_poset(files[0]))
    elif op == "product":
        if len(files) != 2:
            raise UsageError("product takes two posets")
        X = product(load_poset(files[0]), load_poset(files[1]))
    elif op == "ordinal-sum":
        if not files:
            raise UsageError("ordinal-sum takes at least one poset")
        X = cons.ordinal_sum([load_poset(f) for f in files])
    elif op in ("lex-sum", "flip"):
        if len(files) != 1:
            raise UsageError(f"{op} takes the index poset and --component options")
        S = load_poset(files[0])
        comps = _components(args.component)
        if op == "lex-sum":
            X = cons.lex_sum(S, comps)
        else:
            left, X = cons.bipartite_flip(S, comps)
            verdict = distinguish(left, X, _primes(args.primes))
            text = ("sum along S:\n" + serialize_poset(left)
                    + "sum along S^op:\n" + _write_or_print(out, args, X, "flip")
                    + "\n" + verdict.render())
            _emit(out, args, {"along_S": poset_to_dict(left), "along_S_op": poset_to_dict(X),
                              "distinguished": isinstance(verdict, Distinguished)}, text)
            return EXIT_OK
    elif op == "ay":
        if len(files) != 1:
            raise UsageError("ay takes one poset")
        X0 = load_poset(files[0])
        closed = [X0.index(t) for t in (args.closed or "").split(",") if t.strip()]
        algebra = cons.ay_algebra(X0, closed)
        result = cons.ay_poset(X0, closed)
        if isinstance(result, cons.StarViolation):
            text = ("gluing condition fails: " + result.describe()
                    + "\nendomorphism algebra:\n" + algebra.render())
            payload = {"condition_holds": False, "violation": list(result.labels),
                       "algebra_dimension": algebra.dimension, "algebra": algebra.render()}
            _emit(out, args, payload, text)
            return EXIT_OK
        text = ("gluing condition holds; reglued poset:\n"
                + _write_or_print(out, args, result, "reglued")
                + "\nendomorphism algebra:\n" + algebra.render())
        payload = {"condition_holds": True, "poset": poset_to_dict(result),
                   "algebra_dimension": algebra.dimension, "algebra": algebra.render()}
        _emit(out, args, payload, text)
        return EXIT_OK
    else:
        raise UsageError(f"unknown construction {op!r}")
    _emit(out, args, poset_to_dict(X), _write_or_print(out, args, X, op))
    return EXIT_OK


def cmd_ext(args, out):
    X = load_poset(args.file)
    F = parse_field(args.field)
    A = standard_sheaf(X, args.kind, X.index(args.source), F)
    B = standard_sheaf(X, args.kind, X.index(args.target), F)
    dims = ext_dims(A, B)
    chi = sum((-1) ** i * d for i, d in enumerate(dims))
    text = (f"Ext^i({args.kind} {args.source}, {args.kind} {args.target}) over {F}: "
            f"{tuple(dims)}\neuler form: {chi}")
    _emit(out, args, {"field": F.tag, "ext": dims, "euler_form": chi}, text)
    return EXIT_OK


def cmd_cohomology(args, out):
    X = load_poset(args.file)
    fields = [parse_field(args.field)] if args.field else [QQ] + [GF(p) for p in _primes(args.primes)]
    payload = {}
    lines = []
    for F in fields:
        simp, sheaf = betti(X, F), sheaf_cohomology_constant(X, F)
        payload[F.tag] = {"simplicial": simp, "constant_sheaf": sheaf}
        lines.append(f"{F}: simplicial {tuple(simp)}  constant sheaf {tuple(sheaf)}")
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_hochschild(args, out):
    X = load_poset(args.file)
    if X.n * X.n > HOCHSCHILD_MAX_POINTS:
        raise UsageError(f"enveloping poset would have {X.n * X.n} points "
                         f"(limit {HOCHSCHILD_MAX_POINTS}, i.e. at most 20 elements)")
    F = parse_field(args.field)
    dims = hochschild_dims(X, F, args.max_degree)
    _emit(out, args, {"field": F.tag, "hochschild": dims},
          f"HH^0..HH^{args.max_degree} over {F}: {tuple(dims)}")
    return EXIT_OK


def cmd_iso(args, out):
    X, Y = load_poset(args.first), load_poset(args.second)
    m = is_isomorphic(X, Y)
    if m is None:
        _emit(out, args, {"isomorphic": False}, "not isomorphic")
        return EXIT_DISTINGUISHED
    pairs = {X.labels[i]: Y.labels[j] for i, j in sorted(m.items())}
    _emit(out, args, {"isomorphic": True, "mapping": pairs},
          "isomorphic:\n" + "\n".join(f"  {a} -> {b}" for a, b in pairs.items()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="posetderived", description="Derived-equivalence invariants of finite posets")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, primes=True):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if primes:
            sp.add_argument("--primes", help="comma-separated primes (default: all <= 50)")

    sp = sub.add_parser("info", help="all invariants of one poset")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("compare", help="look for an invariant separating two posets")
    sp.add_argument("first")
    sp.add_argument("second")
    common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("construct", help="build a poset")
    sp.add_argument("operation",
                    choices=["opposite", "product", "ordinal-sum", "lex-sum", "flip", "ay"])
    sp.add_argument("inputs", nargs="*")
    sp.add_argument("--component", action="append", metavar="LABEL=FILE",
                    help="component poset for an element of the index poset")
    sp.add_argument("--closed", help="comma-separated labels of the closed subset (ay)")
    sp.add_argument("--out", help="write the resulting poset here (.poset or .json)")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("ext", help="Ext dimensions between standard sheaves")
    sp.add_argument("file")
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    sp.add_argument("--field", default="q")
    sp.add_argument("--kind", default="simple", choices=["simple", "projective", "injective"])
    common(sp, primes=False)
    sp.set_defaults(func=cmd_ext)

    sp = sub.add_parser("cohomology", help="Betti numbers and constant-sheaf cohomology")
    sp.add_argument("file")
    sp.add_argument("--field")
    common(sp)
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("hochschild", help="Hochschild cohomology dimensions")
    sp.add_argument("file")
    sp.add_argument("--max-degree", type=int, default=3)
    sp.add_argument("--field", default="q")
    common(sp, primes=False)
    sp.set_defaults(func=cmd_hochschild)

    sp = sub.add_parser("iso", help="order isomorphism between two posets")
    sp.add_argument("first")
    sp.add_argument("second")
    common(sp, primes=False)
    sp.set_defaults(func=cmd_iso)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        if getattr(args, "max_degree", 0) < 0:
            raise UsageError("--max-degree must be nonnegative")
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (PosetDerivedError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
