"""Deciding A ⊨ φ.

``evaluate`` is the reference: it expands every quantifier over the whole
domain.  The other entry points are faster special cases and are tested
against it.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Callable, Optional, Union

from .formulas import (AND, EQ, EXISTS, FORALL, NOT, OR, And, Atom, Eq, Exists,
                       Formula, Not, Or, PrenexSentence, bind, conj, flatten,
                       fragment_of, symbols_of_sentence)
from .structures import (Structure, canonical_relation, complement,
                         empty_or_x_valid, equality_table)


class FragmentError(ValueError):
    pass


class ShortcutNotSound(ValueError):
    pass


class TrueSentence:
    """Stands for a sentence that holds in every structure."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TRUE"


TRUE = TrueSentence()

Sentence = Union[PrenexSentence, Formula, TrueSentence]


def _compile(f: Formula, s: Structure, bound: frozenset) -> Callable[[list], bool]:
    if isinstance(f, Atom):
        missing = set(f.args) - bound
        if missing:
            raise RuntimeError(f"unbound variables {sorted(missing)} at atom {f}")
        table = s.tables[s.signature.index(f.rel)]
        args = f.args
        if len(args) == 1:
            (a,) = args
            return lambda env: (env[a],) in table
        if len(args) == 2:
            a, b = args
            return lambda env: (env[a], env[b]) in table
        return lambda env: tuple([env[a] for a in args]) in table
    if isinstance(f, Eq):
        missing = {f.left, f.right} - bound
        if missing:
            raise RuntimeError(f"unbound variables {sorted(missing)} at {f}")
        a, b = f.left, f.right
        if s.equality_negated:
            return lambda env: env[a] != env[b]
        return lambda env: env[a] == env[b]
    if isinstance(f, Not):
        c = _compile(f.child, s, bound)
        return lambda env: not c(env)
    if isinstance(f, And):
        l, r = _compile(f.left, s, bound), _compile(f.right, s, bound)
        return lambda env: l(env) and r(env)
    if isinstance(f, Or):
        l, r = _compile(f.left, s, bound), _compile(f.right, s, bound)
        return lambda env: l(env) or r(env)

    body = _compile(f.body, s, bound | {f.var})
    v = f.var
    dom = range(s.size)
    want = isinstance(f, Exists)

    def quantify(env):
        saved = env[v]
        try:
            for x in dom:
                env[v] = x
                if body(env) is want:
                    return want
            return not want
        finally:
            env[v] = saved

    return quantify


@lru_cache(maxsize=65536)
def _max_var(f: Formula) -> int:
    if isinstance(f, Atom):
        return max(f.args)
    if isinstance(f, Eq):
        return max(f.left, f.right)
    if isinstance(f, Not):
        return _max_var(f.child)
    if isinstance(f, (And, Or)):
        return max(_max_var(f.left), _max_var(f.right))
    return max(f.var, _max_var(f.body))


def evaluate(s: Structure, f: Sentence) -> bool:
    """Truth of a sentence in ``s`` by exhaustive quantifier expansion."""
    if isinstance(f, TrueSentence):
        return True
    if isinstance(f, PrenexSentence):
        f = f.to_formula()
    bind(f, s.signature)
    env = [None] * (_max_var(f) + 1)
    return _compile(f, s, frozenset())(env)


# -- single-connective fragments -------------------------------------------------

_EXISTS_OR = frozenset({OR, EXISTS, EQ})
_FORALL_AND = frozenset({AND, FORALL, EQ})


def _distinct(args) -> list[int]:
    seen = []
    for a in args:
        if a not in seen:
            seen.append(a)
    return seen


@lru_cache(maxsize=65536)
def _class1_plan(f: PrenexSentence):
    syms = symbols_of_sentence(f)
    if syms <= _EXISTS_OR and EXISTS in syms:
        existential = True
        parts = flatten(f.matrix, Or)
    elif syms <= _FORALL_AND and FORALL in syms:
        existential = False
        parts = flatten(f.matrix, And)
    else:
        raise FragmentError(f"{fragment_of(f)} is not a subset of a single-connective fragment")
    lits = []
    width = 1
    for lit in parts:
        # Each literal is checked on a tuple listing its distinct variables in order.
        local = _distinct((lit.left, lit.right) if isinstance(lit, Eq) else lit.args)
        pos = {v: i for i, v in enumerate(local)}
        if isinstance(lit, Eq):
            lits.append((None, (pos[lit.left], pos[lit.right])))
        else:
            lits.append((lit.rel, tuple(pos[a] for a in lit.args)))
        width = max(width, len(local))
    return existential, tuple(lits), width


def evaluate_class1(s: Structure, f: PrenexSentence) -> bool:
    """Tuple scan for sentences built from one quantifier and its matching connective.

    For ∃ with ∨, look for a tuple of length ``a`` (``a`` = the largest arity
    in play) some prefix of which satisfies some disjunct.  For ∀ with ∧,
    look for a tuple falsifying some conjunct instead.
    """
    if not isinstance(f, PrenexSentence):
        raise FragmentError("a prenex sentence is required")
    existential, lits, width = _class1_plan(f)
    bind(f.matrix, s.signature)

    checks = []
    neg = s.equality_negated
    for rel, idx in lits:
        if rel is None:
            i, j = idx
            checks.append(lambda t, i=i, j=j: (t[i] == t[j]) != neg)
        else:
            table = s.tables[s.signature.index(rel)]
            checks.append(lambda t, idx=idx, table=table: tuple([t[i] for i in idx]) in table)
    width = max([width] + [sym.arity for sym in s.signature])

    for t in product(range(s.size), repeat=width):
        for check in checks:
            if check(t) is existential:
                return existential
    return not existential


# -- equality elimination -------------------------------------------------------

def eliminate_equality(f: PrenexSentence) -> Union[PrenexSentence, TrueSentence]:
    """Remove equalities from an existential conjunctive sentence by substitution.

    Each class of variables joined by equalities is replaced by its least
    member.  A sentence made only of equalities becomes ``TRUE``.
    """
    syms = symbols_of_sentence(f)
    if not syms <= {AND, EXISTS, EQ}:
        raise FragmentError(f"{fragment_of(f)} is not within {{∧,∃,=}}")
    parent = {v: v for v in f.variables}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    atoms = []
    for lit in flatten(f.matrix, And):
        if isinstance(lit, Eq):
            a, b = find(lit.left), find(lit.right)
            if a != b:
                parent[max(a, b)] = min(a, b)
        else:
            atoms.append(lit)
    if not atoms:
        return TRUE
    atoms = [Atom(a.rel, tuple(find(v) for v in a.args)) for a in atoms]
    used = {v for a in atoms for v in a.args}
    prefix = tuple((k, v) for k, v in f.prefix if v in used)
    return PrenexSentence(prefix, conj(*atoms))


# -- Boolean sentence value shortcut ----------------------------------------------

def shortcut_mode(s: Structure, f: PrenexSentence) -> Optional[str]:
    """Which substitution makes the shortcut sound here, or None.

    ``"nonempty"``: atoms become "relation is non-empty".
    ``"full"``: atoms become "relation is full".
    """
    syms = symbols_of_sentence(f)
    has_eq = EQ in syms
    if s.size == 1:
        return "nonempty"
    if not has_eq and all(not tab or s.is_full(i) for i, tab in enumerate(s.tables)):
        return "nonempty"
    if NOT in syms:
        return None
    if syms & {EXISTS, FORALL} == {EXISTS}:
        if empty_or_x_valid(canonical_relation(s, has_eq), s.size):
            return "nonempty"
    if syms & {EXISTS, FORALL} == {FORALL}:
        if empty_or_x_valid(canonical_relation(complement(s), has_eq), s.size):
            return "full"
    return None


def evaluate_boolean_shortcut(s: Structure, f: PrenexSentence) -> bool:
    """Drop the quantifiers and evaluate the propositional skeleton.

    Only sound when ``shortcut_mode`` finds an applicable substitution:
    a one-element domain, relations that are all empty or full, or a
    positive single-quantifier sentence over a structure whose canonical
    relation (of the complement, for ∀) is empty or x-valid.
    """
    if not isinstance(f, PrenexSentence):
        raise FragmentError("a prenex sentence is required")
    bind(f.matrix, s.signature)
    mode = shortcut_mode(s, f)
    if mode is None:
        raise ShortcutNotSound("shortcut not sound here")
    eq = equality_table(s)
    full_size = s.size ** 2
    if mode == "nonempty":
        rel_value = [bool(tab) for tab in s.tables]
        eq_value = bool(eq)
    else:
        rel_value = [s.is_full(i) for i in range(len(s.tables))]
        eq_value = len(eq) == full_size

    def value(g) -> bool:
        if isinstance(g, Atom):
            return rel_value[s.signature.index(g.rel)]
        if isinstance(g, Eq):
            return eq_value
        if isinstance(g, Not):
            return not value(g.child)
        if isinstance(g, And):
            return value(g.left) and value(g.right)
        return value(g.left) or value(g.right)

    return value(f.matrix)
