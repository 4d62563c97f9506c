"""Enumeration and random generation of small structures and sentences."""

from __future__ import annotations

import random
from itertools import permutations, product
from typing import Iterator, Sequence

from .formulas import (AND, EQ, EXISTS, FORALL, NOT, OR, And, Atom, Eq, Formula,
                       Fragment, Not, Or, PrenexSentence, conj, disj)
from .structures import DIGRAPH, Signature, Structure


def all_structures(sig: Signature, n: int) -> Iterator[Structure]:
    """Every structure over ``sig`` with domain {0..n-1}."""
    spaces = [list(product(range(n), repeat=sym.arity)) for sym in sig]
    choices = [product((False, True), repeat=len(space)) for space in spaces]
    for picks in product(*[list(c) for c in choices]):
        tables = tuple(frozenset(t for t, b in zip(space, bits) if b)
                       for space, bits in zip(spaces, picks))
        yield Structure(sig, n, tables)


def all_small_structures(sig: Signature, max_size: int) -> Iterator[Structure]:
    for n in range(1, max_size + 1):
        yield from all_structures(sig, n)


def random_structure(sig: Signature, n: int, rng: random.Random, density: float | None = None) -> Structure:
    tables = []
    for sym in sig:
        p = rng.random() if density is None else density
        tables.append(frozenset(t for t in product(range(n), repeat=sym.arity) if rng.random() < p))
    return Structure(sig, n, tuple(tables))


def random_table(arity: int, n: int, rng: random.Random) -> frozenset:
    p = rng.random()
    return frozenset(t for t in product(range(n), repeat=arity) if rng.random() < p)


# -- sentences --------------------------------------------------------------------

def _random_atom(sig: Signature, nvars: int, use_eq: bool, rng: random.Random) -> Formula:
    choices = list(sig) + (["="] if use_eq else [])
    pick = rng.choice(choices)
    if pick == "=":
        return Eq(rng.randint(1, nvars), rng.randint(1, nvars))
    return Atom(pick.id, tuple(rng.randint(1, nvars) for _ in range(pick.arity)))


def _variables(f: Formula) -> list[int]:
    if isinstance(f, Atom):
        return list(f.args)
    if isinstance(f, Eq):
        return [f.left, f.right]
    if isinstance(f, Not):
        return _variables(f.child)
    return _variables(f.left) + _variables(f.right)


def _renumber(f: Formula, mapping: dict[int, int]) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(mapping[a] for a in f.args))
    if isinstance(f, Eq):
        return Eq(mapping[f.left], mapping[f.right])
    if isinstance(f, Not):
        return Not(_renumber(f.child, mapping))
    return type(f)(_renumber(f.left, mapping), _renumber(f.right, mapping))


def random_sentence(frag: Fragment, sig: Signature, rng: random.Random,
                    max_vars: int = 4, max_atoms: int = 4) -> PrenexSentence:
    """A random prenex sentence using only symbols of ``frag``.

    Variables are renumbered v1, v2, ... in order of first use, and only
    variables that occur in the matrix are quantified.
    """
    syms = frag.symbols
    kinds = [k for k in (EXISTS, FORALL) if k in syms]
    if not kinds:
        raise ValueError("fragment has no quantifier")
    ops = [o for o in (AND, OR) if o in syms]
    use_eq = EQ in syms
    if not len(sig) and not use_eq:
        raise ValueError("nothing to build atoms from")
    nvars = rng.randint(1, max_vars)
    natoms = rng.randint(1, max_atoms) if ops else 1
    parts = [_random_atom(sig if len(sig) else Signature(), nvars, use_eq, rng)
             for _ in range(natoms)]
    if NOT in syms:
        parts = [Not(p) if rng.random() < 0.3 else p for p in parts]
    while len(parts) > 1:
        i = rng.randrange(len(parts) - 1)
        node = And if rng.choice(ops) == AND else Or
        g = node(parts[i], parts[i + 1])
        if NOT in syms and rng.random() < 0.2:
            g = Not(g)
        parts[i:i + 2] = [g]
    matrix = parts[0]
    order: list[int] = []
    for v in _variables(matrix):
        if v not in order:
            order.append(v)
    mapping = {v: i for i, v in enumerate(order, start=1)}
    matrix = _renumber(matrix, mapping)
    prefix = tuple((rng.choice(kinds), v) for v in range(1, len(order) + 1))
    return PrenexSentence(prefix, matrix)


def _restricted_growth(length: int, max_blocks: int) -> Iterator[tuple[int, ...]]:
    """Sequences a_0..a_{l-1} with a_0 = 0 and a_i <= 1 + max(a_0..a_{i-1})."""

    def go(prefix, top):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for x in range(min(top + 2, max_blocks)):
            yield from go(prefix + [x], max(top, x))

    yield from go([], -1)


def _canonical_key(atoms: Sequence[tuple]) -> tuple:
    best = None
    for perm in permutations(atoms):
        mapping: dict = {}
        key = tuple((kind, tuple(mapping.setdefault(v, len(mapping)) for v in vs))
                    for kind, vs in perm)
        if best is None or key < best:
            best = key
    return best


def single_connective_sentences(kind: str, sig: Signature = DIGRAPH, max_vars: int = 4,
                                max_atoms: int = 4, with_eq: bool = False) -> list[PrenexSentence]:
    """All sentences ``Q v̄ (a_1 op ... op a_k)`` with k <= max_atoms, up to
    renaming of variables and reordering of the atoms.

    The connective is ∨ for ∃ and ∧ for ∀.
    """
    atom_kinds: list = [(sym.id, sym.arity) for sym in sig]
    if with_eq:
        atom_kinds.append((0, 2))  # relation ids start at 1
    op = disj if kind == EXISTS else conj
    seen = set()
    out = []
    for k in range(1, max_atoms + 1):
        for kinds in product(atom_kinds, repeat=k):
            width = sum(a for _, a in kinds)
            for pattern in _restricted_growth(width, max_vars):
                atoms, pos = [], 0
                for rel, arity in kinds:
                    atoms.append((rel, pattern[pos:pos + arity]))
                    pos += arity
                key = _canonical_key(atoms)
                if key in seen:
                    continue
                seen.add(key)
                lits = [Eq(vs[0] + 1, vs[1] + 1) if rel == 0 else Atom(rel, tuple(v + 1 for v in vs))
                        for rel, vs in key]
                nv = 1 + max(pattern)
                out.append(PrenexSentence.of(kind, range(1, nv + 1), op(*lits)))
    return out
