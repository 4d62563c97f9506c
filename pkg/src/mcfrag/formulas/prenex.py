"""Conversion of sentences to prenex normal form."""

from __future__ import annotations

from itertools import count

from .syntax import (Atom, Binary, Eq, Formula, Not, PrenexSentence, dual_kind,
                     free_variables, kind_of)


def rename_apart(f: Formula) -> Formula:
    """Give every quantifier a fresh variable v1, v2, ... in left-to-right order."""
    fresh = count(1)

    def go(g, env):
        if isinstance(g, Atom):
            return Atom(g.rel, tuple(env[a] for a in g.args))
        if isinstance(g, Eq):
            return Eq(env[g.left], env[g.right])
        if isinstance(g, Not):
            return Not(go(g.child, env))
        if isinstance(g, Binary):
            left = go(g.left, env)
            return type(g)(left, go(g.right, env))
        v = next(fresh)
        return type(g)(v, go(g.body, {**env, g.var: v}))

    if free_variables(f):
        raise ValueError("prenex conversion needs a sentence")
    return go(f, {})


def to_prenex(f: Formula) -> PrenexSentence:
    """Pull all quantifiers to the front after renaming bound variables apart.

    Quantifiers pass through ``¬`` with ∃ and ∀ swapped and through ``∧``/``∨``
    unchanged; left operands contribute their quantifiers first.
    """
    if isinstance(f, PrenexSentence):
        return f

    def pull(g):
        if isinstance(g, (Atom, Eq)):
            return [], g
        if isinstance(g, Not):
            prefix, m = pull(g.child)
            return [(dual_kind(k), v) for k, v in prefix], Not(m)
        if isinstance(g, Binary):
            p1, m1 = pull(g.left)
            p2, m2 = pull(g.right)
            return p1 + p2, type(g)(m1, m2)
        prefix, m = pull(g.body)
        return [(kind_of(g), g.var)] + prefix, m

    prefix, matrix = pull(rename_apart(f))
    return PrenexSentence(tuple(prefix), matrix)

