"""Command-line front end: ``mcfrag check | classify | reduce | selftest``.

Exit codes: 0 true / pass, 1 false / fail, 2 usage, parse or precondition error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import reductions
from .classifier import classify
from .evaluator import (FragmentError, evaluate, evaluate_boolean_shortcut,
                        evaluate_class1, shortcut_mode)
from .formulas import (AND, EQ, EXISTS, FORALL, FRAGMENT_NAMES, OR, BindError,
                       FormulaSyntaxError, PrenexSentence, Fragment, free_variables,
                       parse, symbols_of_sentence, to_prenex, to_surface)
from .reductions import ReductionError
from .selftest import run_all
from .structures import (DIGRAPH, RelationTable, Signature, StructureFormatError,
                         canonical_relation, clique, complement, digraph, format_table,
                         is_antireflexive, load_structure, symmetric_closure)

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _fragment_table() -> str:
    rows = [f"  {name:<18} {' '.join(sorted(Fragment.named(name).symbols))}"
            for name in FRAGMENT_NAMES]
    return "fragment names:\n" + "\n".join(rows)


def _read_sentence(args, sig: Signature) -> PrenexSentence:
    text = args.sentence
    if text is None:
        raise CliError("a sentence is required")
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    f = parse(text, sig, strict=not getattr(args, "lenient", False))
    free = free_variables(f)
    if free:
        raise CliError("not a sentence: free " + ", ".join(f"v{v}" for v in sorted(free)))
    return to_prenex(f)


def _class1_shape(f: PrenexSentence) -> bool:
    syms = symbols_of_sentence(f)
    return (syms <= {OR, EXISTS, EQ} and EXISTS in syms) or \
        (syms <= {AND, FORALL, EQ} and FORALL in syms)


def choose_path(s, f: PrenexSentence) -> str:
    if _class1_shape(f):
        return "class1"
    if shortcut_mode(s, f) is not None:
        return "boolean-shortcut"
    return "generic"


_PATHS = {
    "class1": evaluate_class1,
    "boolean-shortcut": evaluate_boolean_shortcut,
    "generic": evaluate,
}


def cmd_check(args) -> int:
    s = load_structure(args.structure)
    f = _read_sentence(args, s.signature)
    path = choose_path(s, f)
    if args.oracle:
        value = evaluate(s, f)
        print("true" if value else "false")
        print("path: generic (oracle)")
        if path != "generic":
            fast = _PATHS[path](s, f)
            if fast != value:
                print(f"MISMATCH: {path} says {str(fast).lower()}, generic says {str(value).lower()}",
                      file=sys.stderr)
                return EXIT_ERROR
            print(f"cross-checked {path}: paths agree")
        else:
            print("no fast path applies: paths agree")
    else:
        value = _PATHS[path](s, f)
        print("true" if value else "false")
        print(f"path: {path}")
    return EXIT_TRUE if value else EXIT_FALSE


def cmd_classify(args) -> int:
    s = load_structure(args.structure)
    names = list(FRAGMENT_NAMES) if args.all else [args.fragment]
    for name in names:
        v = classify(s, name)
        print(v.to_json())
        if args.explain:
            print("  " + v.explain())
    return 0


# -- reduce -----------------------------------------------------------------------

def _verdict(ok: bool) -> int:
    print("sound on this instance" if ok else "NOT sound on this instance")
    return 0 if ok else 1


def _signature(args) -> Signature:
    return load_structure(args.structure).signature if args.structure else DIGRAPH


def _reduce_dualize(args) -> int:
    sig = _signature(args)
    f = _read_sentence(args, sig)
    g = reductions.dualize(f)
    print(to_surface(g, sig))
    if not args.verify:
        return 0
    if not args.structure:
        raise CliError("--verify needs --structure")
    s = load_structure(args.structure)
    return _verdict(evaluate(s, f) != evaluate(complement(s), g))


def _reduce_colour(args) -> int:
    f = _read_sentence(args, DIGRAPH)
    g = reductions.colourability_to_forall_eq(f, args.n)
    print(to_surface(g, DIGRAPH))
    if not args.verify:
        return 0
    target = not evaluate(clique(args.n), f)
    samples = [clique(args.n), digraph(args.n)]
    return _verdict(all(evaluate(a, g) == target for a in samples))


def _reduce_sym(args) -> int:
    sig = _signature(args)
    f = _read_sentence(args, sig)
    g = reductions.symmetric_closure_rewrite(f)
    print(to_surface(g, sig))
    if not args.verify:
        return 0
    if not args.structure:
        raise CliError("--verify needs --structure")
    s = load_structure(args.structure)
    return _verdict(evaluate(symmetric_closure(s), f) == evaluate(s, g))


def parse_clauses(text: str) -> list[tuple[str, ...]]:
    """Clauses separated by ';' or newlines, literals by spaces or commas."""
    clauses = []
    for chunk in text.replace("\n", ";").split(";"):
        lits = chunk.replace(",", " ").split()
        if lits:
            clauses.append(tuple(lits))
    return clauses


def _reduce_nae3(args) -> int:
    text = Path(args.clause_file).read_text() if args.clause_file else args.clauses
    if text is None:
        raise CliError("give clauses inline or with --clause-file")
    clauses = parse_clauses(text)
    g = reductions.nae3_gadget(clauses)
    print(to_surface(g, DIGRAPH))
    if not args.verify:
        return 0
    return _verdict(evaluate(clique(2), g) == reductions.nae_satisfiable(clauses))


def _table_of(path: str) -> tuple[RelationTable, int]:
    s = load_structure(path)
    return canonical_relation(s), s.size


def _reduce_project(args) -> int:
    t, n = _table_of(args.structure)
    if t.is_sentinel:
        raise CliError("all relations are empty")
    out = reductions.project_to_binary(t)
    sys.stdout.write(format_table(out, n, "E"))
    if not args.verify:
        return 0
    ok = out.tuples == {tup[:2] for tup in t.tuples} and \
        (not is_antireflexive(t) or is_antireflexive(out))
    return _verdict(ok)


def _reduce_collapse(args) -> int:
    t, n = _table_of(args.structure)
    if t.is_sentinel:
        raise CliError("all relations are empty")
    final = t
    for pattern, final in reductions.collapse_steps(t):
        print("# pattern " + " ".join(map(str, pattern)))
    sys.stdout.write(format_table(final, n))
    if not args.verify:
        return 0
    return _verdict(is_antireflexive(final) and final.arity >= 2)


_REDUCTIONS = {
    "dualize": _reduce_dualize,
    "colour-to-forall-eq": _reduce_colour,
    "sym-closure": _reduce_sym,
    "nae3": _reduce_nae3,
    "project": _reduce_project,
    "collapse": _reduce_collapse,
}


def cmd_reduce(args) -> int:
    return _REDUCTIONS[args.name](args)


def cmd_selftest(args) -> int:
    results = run_all(args.size_bound, args.cases, args.seed)
    for r in results:
        print(r.summary())
        for msg in r.failures[:3]:
            print("  counterexample: " + msg.rstrip().replace("\n", "\n    "))
    ok = all(r.ok for r in results)
    print("selftest passed" if ok else "selftest FAILED")
    return 0 if ok else 1


# -- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcfrag",
        description="Model checking and complexity classification for fragments of first-order logic.",
        epilog=_fragment_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide A ⊨ φ")
    p.add_argument("structure", help="structure file")
    p.add_argument("sentence", help="sentence in surface syntax or binary coding, or @FILE")
    p.add_argument("--lenient", action="store_true",
                   help="warn instead of failing on quantifiers that bind nothing")
    p.add_argument("--oracle", action="store_true",
                   help="use the generic evaluator and cross-check any fast path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="complexity of Γ-MC(A)", epilog=_fragment_table(),
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("structure", help="structure file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fragment", choices=list(FRAGMENT_NAMES), metavar="NAME")
    group.add_argument("--all", action="store_true", help="all fragments, one line each")
    p.add_argument("--explain", action="store_true", help="also print the deciding facts")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="apply a reduction")
    p.add_argument("name", choices=list(_REDUCTIONS))
    p.add_argument("sentence", nargs="?",
                   help="input sentence or @FILE (dualize, colour-to-forall-eq, sym-closure)")
    p.add_argument("--lenient", action="store_true")
    p.add_argument("--structure", help="structure file (project, collapse; signature or check instance otherwise)")
    p.add_argument("--clauses", help="NAE-3SAT clauses, e.g. 'x y z; x y w'")
    p.add_argument("--clause-file")
    p.add_argument("-n", type=int, default=3, help="clique size for colour-to-forall-eq")
    p.add_argument("--verify", action="store_true",
                   help="brute-force check the reduction's guarantee on this instance")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("selftest", help="run the randomised property suites")
    p.add_argument("--size-bound", type=int, default=3)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reduce" and args.name in ("project", "collapse") and not args.structure:
        parser.error(f"reduce {args.name} needs --structure")
    try:
        return args.func(args)
    except (OSError, StructureFormatError, FormulaSyntaxError, BindError,
            FragmentError, ReductionError, CliError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
