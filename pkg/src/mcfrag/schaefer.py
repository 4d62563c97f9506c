"""Schaefer's six classes of Boolean relations.

Membership is decided through closure under the usual polymorphisms
(min, max, majority, x⊕y⊕z).  The ``expressible_*`` functions decide the
same classes from their syntactic definitions by brute force and serve as
an independent check at small arity.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations, product
from typing import Callable, Iterable

from .structures import RelationTable

CLASSES = ("zero_valid", "one_valid", "horn", "dual_horn", "bijunctive", "affine")


@dataclass(frozen=True)
class SchaeferProfile:
    zero_valid: bool
    one_valid: bool
    horn: bool
    dual_horn: bool
    bijunctive: bool
    affine: bool

    def any(self) -> bool:
        return any(asdict(self).values())

    def holding(self) -> list[str]:
        return [name for name, v in asdict(self).items() if v]


def _check_boolean(t: RelationTable):
    if t.is_sentinel or t.arity < 1:
        raise ValueError("Boolean relation of positive arity expected")
    if any(x not in (0, 1) for tup in t.tuples for x in tup):
        raise ValueError("non-Boolean domain")


def closed_under(tuples: frozenset, op: Callable, k: int) -> bool:
    return all(tuple(map(op, *rows)) in tuples for rows in product(tuples, repeat=k))


def _majority(a, b, c):
    return (a & b) | (b & c) | (a & c)


def schaefer_profile(t: RelationTable) -> SchaeferProfile:
    _check_boolean(t)
    r = t.tuples
    return SchaeferProfile(
        zero_valid=(0,) * t.arity in r,
        one_valid=(1,) * t.arity in r,
        horn=closed_under(r, min, 2),
        dual_horn=closed_under(r, max, 2),
        bijunctive=closed_under(r, _majority, 3),
        affine=closed_under(r, lambda a, b, c: a ^ b ^ c, 3),
    )


# -- brute-force expressibility ---------------------------------------------------

# A literal is (variable index, polarity); a clause is a tuple of literals.

def _clauses(arity: int, allowed: Callable[[tuple], bool]) -> Iterable[tuple]:
    lits = [(i, p) for i in range(arity) for p in (True, False)]
    for size in range(0, 2 * arity + 1):
        for clause in combinations(lits, size):
            if allowed(clause):
                yield clause


def _satisfies(tup, clause) -> bool:
    return any(bool(tup[i]) == p for i, p in clause)


def _cnf_expressible(t: RelationTable, allowed) -> bool:
    # The conjunction of every allowed clause that t satisfies is the
    # tightest formula of that shape containing t.
    implied = [c for c in _clauses(t.arity, allowed) if all(_satisfies(x, c) for x in t.tuples)]
    models = {x for x in product((0, 1), repeat=t.arity)
              if all(_satisfies(x, c) for c in implied)}
    return models == set(t.tuples)


def expressible_horn(t: RelationTable) -> bool:
    return _cnf_expressible(t, lambda c: sum(p for _, p in c) <= 1)


def expressible_dual_horn(t: RelationTable) -> bool:
    return _cnf_expressible(t, lambda c: sum(not p for _, p in c) <= 1)


def expressible_2cnf(t: RelationTable) -> bool:
    return _cnf_expressible(t, lambda c: len(c) <= 2)


def expressible_affine(t: RelationTable) -> bool:
    """Is ``t`` the solution set of some system of linear equations over Z_2?"""
    a = t.arity
    equations = [(mask, c) for mask in product((0, 1), repeat=a) for c in (0, 1)]

    def holds(x, eq):
        mask, c = eq
        return sum(m & v for m, v in zip(mask, x)) % 2 == c

    implied = [e for e in equations if all(holds(x, e) for x in t.tuples)]
    models = {x for x in product((0, 1), repeat=a) if all(holds(x, e) for e in implied)}
    return models == set(t.tuples)


def brute_force_profile(t: RelationTable) -> SchaeferProfile:
    _check_boolean(t)
    return SchaeferProfile(
        zero_valid=(0,) * t.arity in t.tuples,
        one_valid=(1,) * t.arity in t.tuples,
        horn=expressible_horn(t),
        dual_horn=expressible_dual_horn(t),
        bijunctive=expressible_2cnf(t),
        affine=expressible_affine(t),
    )


def all_boolean_relations(arity: int) -> Iterable[RelationTable]:
    points = list(product((0, 1), repeat=arity))
    for bits in product((False, True), repeat=len(points)):
        yield RelationTable(arity, frozenset(p for p, b in zip(points, bits) if b))
