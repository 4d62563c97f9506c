"""Executable reductions between model checking problems.

Every function here comes with a soundness statement "x is a yes-instance
iff the image is"; the test-suite and ``selftest`` check those statements
with the reference evaluator.
"""

from __future__ import annotations

from itertools import product
from typing import Hashable, Iterator, Sequence

from .formulas import (AND, EXISTS, FORALL, NOT, And, Atom, Eq, Formula, Not, Or,
                       PrenexSentence, conj, disj, flatten, symbols_of_sentence)
from .structures import (RelationTable, Structure, all_valid_witnesses,
                         canonical_relation, is_antireflexive)


class ReductionError(ValueError):
    pass


def _swap_matrix(f: Formula) -> Formula:
    if isinstance(f, (Atom, Eq)):
        return f
    if isinstance(f, And):
        return Or(_swap_matrix(f.left), _swap_matrix(f.right))
    if isinstance(f, Or):
        return And(_swap_matrix(f.left), _swap_matrix(f.right))
    raise ReductionError("negation is not allowed")


def dualize(f: PrenexSentence) -> PrenexSentence:
    """Swap ∃ with ∀ and ∧ with ∨.

    For every structure A:  A ⊨ f  iff  complement(A) ⊭ dualize(f).
    """
    if NOT in symbols_of_sentence(f):
        raise ReductionError("dualize needs a negation-free sentence")
    prefix = tuple((FORALL if k == EXISTS else EXISTS, v) for k, v in f.prefix)
    return PrenexSentence(prefix, _swap_matrix(f.matrix))


def csp_duality_instance_map(f: PrenexSentence) -> PrenexSentence:
    """Map an {∧,∃} instance to an {∨,∀} instance of the complementary problem.

    ``complement(A) ⊨ f`` iff ``A ⊭ csp_duality_instance_map(f)``.
    """
    if not symbols_of_sentence(f) <= {AND, EXISTS}:
        raise ReductionError("expected an {∧,∃} sentence (eliminate equalities first)")
    return dualize(f)


def _binary_atoms(f: PrenexSentence, op) -> list[Atom]:
    parts = flatten(f.matrix, op)
    if not all(isinstance(p, Atom) and len(p.args) == 2 for p in parts):
        raise ReductionError("matrix must consist of binary atoms only")
    rels = {p.rel for p in parts}
    if len(rels) != 1:
        raise ReductionError("all atoms must use the same edge relation")
    return parts


def colourability_to_forall_eq(f: PrenexSentence, n: int) -> PrenexSentence:
    """Turn a K_n colourability instance into a universal disjunction of equalities.

    ``∃v̄ ⋀ E(u,w)`` becomes ``∀v̄ ⋁ u = w``; then K_n ⊭ f iff A ⊨ result for
    every A with n elements.
    """
    if n < 3:
        raise ReductionError("the reduction is stated for n >= 3")
    if symbols_of_sentence(f) - {AND} != {EXISTS}:
        raise ReductionError("expected an {∧,∃} sentence")
    atoms = _binary_atoms(f, And)
    return PrenexSentence.of(FORALL, f.variables,
                             disj(*(Eq(a.args[0], a.args[1]) for a in atoms)))


def symmetric_closure_rewrite(f: PrenexSentence, rel: int | None = None) -> PrenexSentence:
    """Replace each edge atom E(u,v) by E(u,v) ∨ E(v,u).

    ``symmetric_closure(G) ⊨ f`` iff ``G ⊨ result``.
    """

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            if len(g.args) != 2:
                raise ReductionError("symmetric closure applies to binary relations")
            if rel is not None and g.rel != rel:
                return g
            u, v = g.args
            return Or(g, Atom(g.rel, (v, u)))
        if isinstance(g, Eq):
            return g
        if isinstance(g, Not):
            return Not(go(g.child))
        return type(g)(go(g.left), go(g.right))

    return PrenexSentence(f.prefix, go(f.matrix))


def nae3_gadget(clauses: Sequence[Sequence[Hashable]], edge: int = 1) -> PrenexSentence:
    """Existential sentence over a digraph expressing a positive NAE-3SAT instance.

    Instance variables are numbered v1, v2, ... in order of first appearance;
    each clause (x, y, z) becomes E(x,y) ∨ E(y,z) ∨ E(z,x).  The instance is
    not-all-equal satisfiable iff K_2 ⊨ result.
    """
    if not clauses:
        raise ReductionError("the instance needs at least one clause")
    index: dict = {}
    parts = []
    for clause in clauses:
        if len(clause) != 3:
            raise ReductionError(f"clause {tuple(clause)} is not a triple")
        x, y, z = (index.setdefault(lit, len(index) + 1) for lit in clause)
        parts.append(disj(Atom(edge, (x, y)), Atom(edge, (y, z)), Atom(edge, (z, x))))
    return PrenexSentence.of(EXISTS, range(1, len(index) + 1), conj(*parts))


def nae_satisfiable(clauses: Sequence[Sequence[Hashable]]) -> bool:
    """Brute force: is there a 0/1 assignment with no clause all-equal?"""
    names = sorted({lit for c in clauses for lit in c}, key=repr)
    for bits in product((0, 1), repeat=len(names)):
        val = dict(zip(names, bits))
        if all(len({val[lit] for lit in c}) > 1 for c in clauses):
            return True
    return False


def project_to_binary(t: RelationTable) -> RelationTable:
    """E(v1, v2) := ∃ v3 ... vk R(v1, ..., vk)."""
    if t.arity < 2:
        raise ReductionError("projection needs arity at least 2")
    out = RelationTable(2, frozenset(tup[:2] for tup in t.tuples))
    if is_antireflexive(t):
        assert out.tuples and is_antireflexive(out), "projection lost antireflexivity"
    return out


def arity_projection(s: Structure) -> RelationTable:
    """Binary projection of the canonical relation of ``s``."""
    return project_to_binary(canonical_relation(s))


def _first_repeating(t: RelationTable):
    for tup in sorted(t.tuples):
        if len(set(tup)) < len(tup):
            return tup
    return None


def collapse_pattern(tup: tuple) -> tuple[int, ...]:
    """Coordinate pattern identifying equal positions of ``tup``.

    Distinct values are numbered by first occurrence, so (x3,x2,x3,x4,x4)
    gives (0, 1, 0, 2, 2), i.e. R'(u,v,w) := R(u,v,u,w,w).
    """
    first: dict = {}
    return tuple(first.setdefault(x, len(first)) for x in tup)


def apply_pattern(t: RelationTable, pattern: tuple[int, ...]) -> RelationTable:
    """{(u_0, ..., u_{m-1}) : (u_pattern[0], ..., u_pattern[k-1]) ∈ t}."""
    m = max(pattern) + 1
    keep = [pattern.index(j) for j in range(m)]
    tuples = frozenset(
        tuple(tup[i] for i in keep) for tup in t.tuples
        if all(tup[i] == tup[keep[pattern[i]]] for i in range(len(pattern)))
    )
    return RelationTable(m, tuples)


def collapse_steps(t: RelationTable) -> Iterator[tuple[tuple[int, ...], RelationTable]]:
    """Yield (pattern, next table) for each round of the collapse."""
    if t.is_sentinel or not t.tuples:
        raise ReductionError("collapse needs a non-empty relation")
    n = 1 + max(x for tup in t.tuples for x in tup)
    if all_valid_witnesses(t, n):
        raise ReductionError("collapse needs a relation that is not x-valid for any x")
    while True:
        tup = _first_repeating(t)
        if tup is None:
            return
        pattern = collapse_pattern(tup)
        t = apply_pattern(t, pattern)
        yield pattern, t


def collapse_to_antireflexive(t: RelationTable) -> RelationTable:
    """Repeatedly identify the coordinates repeated in the lexicographically
    first tuple that has a repetition, until the relation is antireflexive."""
    for _, t in collapse_steps(t):
        pass
    assert is_antireflexive(t) and t.arity >= 2
    return t

