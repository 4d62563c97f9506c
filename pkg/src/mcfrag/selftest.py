"""Randomised property suites, runnable from the command line.

Every suite is deterministic for a given seed and reports counterexamples
as printable strings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import reductions
from .evaluator import (TRUE, eliminate_equality, evaluate, evaluate_boolean_shortcut,
                        evaluate_class1, shortcut_mode)
from .formulas import CLASS_I, Fragment, to_surface
from .generators import random_sentence, random_structure, random_table
from .schaefer import all_boolean_relations, brute_force_profile, schaefer_profile
from .structures import (DIGRAPH, RelationTable, Signature, all_valid_witnesses,
                         clique, complement, format_structure, is_antireflexive,
                         symmetric_closure)

MIXED = Signature.of([("E", 2), ("P", 1), ("T", 3)])

DUAL_PAIRS = [
    ("or-exists", "and-forall"),
    ("or-exists-eq", "and-forall-eq"),
    ("and-exists", "or-forall"),
    ("and-exists-eq", "or-forall-eq"),
    ("and-or-exists", "and-or-forall"),
    ("and-or-exists-eq", "and-or-forall-eq"),
]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        self.failures.append(message)

    def summary(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.failures)} counterexamples)"
        return f"{self.name}: {self.cases} cases, {status}"


def _show(s, f) -> str:
    text = to_surface(f, s.signature) if f is not TRUE else "TRUE"
    return f"sentence {text!r} on structure\n{format_structure(s)}"


def _size(rng, bound: int) -> int:
    return rng.randint(1, bound)


def oracle_suite(cases: int, size_bound: int, rng: random.Random) -> SuiteResult:
    """Class I tuple scan and Boolean shortcut against the reference evaluator."""
    res = SuiteResult("oracle-agreement")
    for i in range(cases):
        sig = DIGRAPH if i % 2 else MIXED
        s = random_structure(sig, _size(rng, size_bound), rng)
        f = random_sentence(rng.choice(CLASS_I), sig, rng, max_vars=4, max_atoms=4)
        want = evaluate(s, f)
        res.cases += 1
        if evaluate_class1(s, f) != want:
            res.fail("class1 disagrees: " + _show(s, f))
        if shortcut_mode(s, f) is not None and evaluate_boolean_shortcut(s, f) != want:
            res.fail("boolean shortcut disagrees: " + _show(s, f))
    return res


def duality_suite(cases: int, size_bound: int, rng: random.Random) -> SuiteResult:
    res = SuiteResult("duality")
    for i in range(cases):
        frag = Fragment.named(rng.choice(DUAL_PAIRS[i % len(DUAL_PAIRS)]))
        sig = DIGRAPH if i % 3 else MIXED
        s = random_structure(sig, _size(rng, size_bound), rng)
        f = random_sentence(frag, sig, rng, max_vars=6, max_atoms=5)
        g = reductions.dualize(f)
        res.cases += 1
        if evaluate(s, f) == evaluate(complement(s), g):
            res.fail(f"A ⊨ φ agrees with Ā ⊨ dualize(φ) for φ = {to_surface(f, sig)!r}, "
                     f"dualize(φ) = {to_surface(g, sig)!r}, A =\n{format_structure(s)}")
    return res


def _random_clauses(rng: random.Random, max_vars: int = 8, max_clauses: int = 6):
    nvars = rng.randint(1, max_vars)
    return [tuple(rng.randint(1, nvars) for _ in range(3))
            for _ in range(rng.randint(1, max_clauses))]


def random_non_x_valid(rng: random.Random, max_size: int = 3, max_arity: int = 5) -> RelationTable:
    """A non-empty table over {0..n-1} containing no constant tuple."""
    while True:
        n = rng.randint(2, max(2, max_size))
        arity = rng.randint(2, max_arity)
        t = RelationTable(arity, random_table(arity, n, rng))
        if t.tuples and not all_valid_witnesses(t, n):
            return t


def reduction_suite(cases: int, size_bound: int, rng: random.Random) -> SuiteResult:
    res = SuiteResult("reduction-soundness")
    k2 = clique(2)
    for i in range(cases):
        res.cases += 1
        which = i % 6
        if which == 0:
            clauses = _random_clauses(rng)
            if evaluate(k2, reductions.nae3_gadget(clauses)) != reductions.nae_satisfiable(clauses):
                res.fail(f"nae3 gadget unsound on {clauses}")
        elif which == 1:
            s = random_structure(DIGRAPH, _size(rng, size_bound), rng)
            f = random_sentence(Fragment.named("full-fo-noeq"), DIGRAPH, rng, max_vars=4, max_atoms=4)
            g = reductions.symmetric_closure_rewrite(f)
            if evaluate(symmetric_closure(s), f) != evaluate(s, g):
                res.fail("symmetric closure rewrite unsound: " + _show(s, f))
        elif which == 2:
            s = random_structure(MIXED, _size(rng, size_bound), rng)
            f = random_sentence(Fragment.named("and-exists-eq"), MIXED, rng, max_vars=6, max_atoms=5)
            if evaluate(s, f) != evaluate(s, eliminate_equality(f)):
                res.fail("equality elimination changed truth: " + _show(s, f))
        elif which == 3:
            f = random_sentence(Fragment.named("and-exists"), DIGRAPH, rng, max_vars=4, max_atoms=6)
            g = reductions.colourability_to_forall_eq(f, 3)
            a = random_structure(DIGRAPH, 3, rng)
            if (not evaluate(clique(3), f)) != evaluate(a, g):
                res.fail(f"colouring reduction unsound on {to_surface(f, DIGRAPH)!r}")
        elif which == 4:
            t = random_non_x_valid(rng, size_bound)
            out = reductions.collapse_to_antireflexive(t)
            if not is_antireflexive(out) or out.arity < 2:
                res.fail(f"collapse of {sorted(t.tuples)} gave {sorted(out.tuples)}")
        else:
            s = random_structure(DIGRAPH, _size(rng, size_bound), rng)
            f = random_sentence(Fragment.named("and-exists"), DIGRAPH, rng, max_vars=6, max_atoms=5)
            g = reductions.csp_duality_instance_map(f)
            if evaluate(complement(s), f) == evaluate(s, g):
                res.fail("CSP duality map unsound: " + _show(s, f))
    return res


def schaefer_suite(max_arity: int) -> SuiteResult:
    res = SuiteResult("schaefer-validation")
    for arity in range(1, max_arity + 1):
        for t in all_boolean_relations(arity):
            res.cases += 1
            fast, slow = schaefer_profile(t), brute_force_profile(t)
            if fast != slow:
                res.fail(f"relation {sorted(t.tuples)}: closure {fast.holding()} "
                         f"vs brute force {slow.holding()}")
    return res


def run_all(size_bound: int = 3, cases: int = 200, seed: int = 0) -> list[SuiteResult]:
    if size_bound < 1:
        raise ValueError("size bound must be at least 1")
    rng = random.Random(seed)
    return [
        oracle_suite(cases, size_bound, rng),
        duality_suite(cases, size_bound, rng),
        reduction_suite(cases, size_bound, rng),
        schaefer_suite(min(3, size_bound + 1)),
    ]
