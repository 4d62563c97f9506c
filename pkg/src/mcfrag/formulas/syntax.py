"""Formula trees.

Relations are referred to by their integer id and variables by their
positive index, so ``Atom(1, (1, 2))`` is R1(v1, v2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator, Union

NOT, AND, OR, EXISTS, FORALL, EQ = "¬", "∧", "∨", "∃", "∀", "="
SYMBOLS = (NOT, AND, OR, EXISTS, FORALL, EQ)


def _memo_hash(cls):
    # Trees are used as cache keys; hashing them afresh each time is recursive.
    raw = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = raw(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


@_memo_hash
@dataclass(frozen=True)
class Atom:
    rel: int
    args: tuple[int, ...]


@_memo_hash
@dataclass(frozen=True)
class Eq:
    left: int
    right: int


@_memo_hash
@dataclass(frozen=True)
class Not:
    child: "Formula"


@_memo_hash
@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@_memo_hash
@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@_memo_hash
@dataclass(frozen=True)
class Exists:
    var: int
    body: "Formula"


@_memo_hash
@dataclass(frozen=True)
class Forall:
    var: int
    body: "Formula"


Formula = Union[Atom, Eq, Not, And, Or, Exists, Forall]
Quantified = (Exists, Forall)
Binary = (And, Or)


def quantifier(kind: str, var: int, body: Formula) -> Formula:
    return Exists(var, body) if kind == EXISTS else Forall(var, body)


def kind_of(q) -> str:
    return EXISTS if isinstance(q, Exists) else FORALL


def dual_kind(kind: str) -> str:
    return FORALL if kind == EXISTS else EXISTS


def conj(*parts: Formula) -> Formula:
    return reduce(And, parts)


def disj(*parts: Formula) -> Formula:
    return reduce(Or, parts)


def flatten(f: Formula, op) -> list[Formula]:
    """Operands of a maximal ``op``-tree rooted at ``f``, left to right."""
    if isinstance(f, op):
        return flatten(f.left, op) + flatten(f.right, op)
    return [f]


def literals(f: Formula) -> Iterator[Union[Atom, Eq]]:
    if isinstance(f, (Atom, Eq)):
        yield f
    elif isinstance(f, Not):
        yield from literals(f.child)
    elif isinstance(f, Binary):
        yield from literals(f.left)
        yield from literals(f.right)
    else:
        yield from literals(f.body)


def free_variables(f: Formula) -> frozenset[int]:
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, Eq):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return free_variables(f.child)
    if isinstance(f, Binary):
        return free_variables(f.left) | free_variables(f.right)
    return free_variables(f.body) - {f.var}


def is_sentence(f: Formula) -> bool:
    return not free_variables(f)


def symbols_of(f: Formula) -> frozenset[str]:
    """The symbols of {¬, ∧, ∨, ∃, ∀, =} occurring in ``f``."""
    if isinstance(f, Atom):
        return frozenset()
    if isinstance(f, Eq):
        return frozenset({EQ})
    if isinstance(f, Not):
        return symbols_of(f.child) | {NOT}
    if isinstance(f, Binary):
        op = AND if isinstance(f, And) else OR
        return symbols_of(f.left) | symbols_of(f.right) | {op}
    return symbols_of(f.body) | {kind_of(f)}


def is_quantifier_free(f: Formula) -> bool:
    return not (symbols_of(f) & {EXISTS, FORALL})


def vacuous_quantifiers(f: Formula) -> list[Formula]:
    """Quantifier nodes whose variable is not free in their body."""
    out = []
    if isinstance(f, Not):
        out += vacuous_quantifiers(f.child)
    elif isinstance(f, Binary):
        out += vacuous_quantifiers(f.left) + vacuous_quantifiers(f.right)
    elif isinstance(f, Quantified):
        if f.var not in free_variables(f.body):
            out.append(f)
        out += vacuous_quantifiers(f.body)
    return out


def substitute(f: Formula, mapping: dict[int, int]) -> Formula:
    """Rename free occurrences of variables (quantified ones are left alone)."""
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(mapping.get(v, v) for v in f.args))
    if isinstance(f, Eq):
        return Eq(mapping.get(f.left, f.left), mapping.get(f.right, f.right))
    if isinstance(f, Not):
        return Not(substitute(f.child, mapping))
    if isinstance(f, Binary):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != f.var}
    return type(f)(f.var, substitute(f.body, inner))


@_memo_hash
@dataclass(frozen=True)
class PrenexSentence:
    """A quantifier prefix followed by a quantifier-free matrix."""

    prefix: tuple[tuple[str, int], ...]
    matrix: Formula

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(tuple(q) for q in self.prefix))
        names = [v for _, v in self.prefix]
        if len(set(names)) != len(names):
            raise ValueError("prefix variables must be distinct")
        if not is_quantifier_free(self.matrix):
            raise ValueError("matrix must be quantifier-free")
        if not free_variables(self.matrix) <= set(names):
            raise ValueError("matrix has variables not bound by the prefix")

    @classmethod
    def of(cls, kind: str, variables, matrix: Formula) -> "PrenexSentence":
        return cls(tuple((kind, v) for v in variables), matrix)

    def to_formula(self) -> Formula:
        f = self.__dict__.get("_formula")
        if f is None:
            f = self.matrix
            for kind, v in reversed(self.prefix):
                f = quantifier(kind, v, f)
            object.__setattr__(self, "_formula", f)
        return f

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.prefix)

    @property
    def kinds(self) -> frozenset[str]:
        return frozenset(k for k, _ in self.prefix)


@lru_cache(maxsize=65536)
def symbols_of_sentence(f) -> frozenset[str]:
    if isinstance(f, PrenexSentence):
        return symbols_of(f.matrix) | f.kinds
    return symbols_of(f)
