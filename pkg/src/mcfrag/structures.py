"""Finite relational structures and the structural operations the classifier needs.

Domain elements are the integers ``0 .. n-1``.  Relations are stored as
frozensets of tuples, in signature order.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Optional, Sequence


class SignatureMismatch(ValueError):
    pass


class StructureFormatError(ValueError):
    pass


@dataclass(frozen=True)
class RelationSymbol:
    id: int
    name: str
    arity: int


@dataclass(frozen=True)
class Signature:
    symbols: tuple[RelationSymbol, ...] = ()

    def __post_init__(self):
        ids = [r.id for r in self.symbols]
        names = [r.name for r in self.symbols]
        if len(set(ids)) != len(ids) or len(set(names)) != len(names):
            raise ValueError("relation ids and names must be distinct")
        for r in self.symbols:
            if r.id < 1 or r.arity < 1:
                raise ValueError(f"bad relation symbol {r}")

    @classmethod
    def of(cls, symbols: Iterable[tuple[str, int]]) -> "Signature":
        """Build a signature from ``(name, arity)`` pairs; ids are 1, 2, ..."""
        return cls(tuple(RelationSymbol(i, name, arity)
                         for i, (name, arity) in enumerate(symbols, start=1)))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self) -> Iterator[RelationSymbol]:
        return iter(self.symbols)

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(r.arity for r in self.symbols)

    def index(self, key) -> int:
        """Position of a relation given by id (int) or name (str)."""
        for i, r in enumerate(self.symbols):
            if (isinstance(key, int) and r.id == key) or r.name == key:
                return i
        if isinstance(key, str):
            m = re.fullmatch(r"R(\d+)", key)
            if m:
                return self.index(int(m.group(1)))
        raise KeyError(key)

    def lookup(self, key) -> RelationSymbol:
        return self.symbols[self.index(key)]

    def compatible(self, other: "Signature") -> bool:
        return [(r.id, r.arity) for r in self] == [(r.id, r.arity) for r in other]


DIGRAPH = Signature.of([("E", 2)])


@dataclass(frozen=True)
class RelationTable:
    arity: int
    tuples: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "tuples", frozenset(tuple(t) for t in self.tuples))
        if self.arity == 0 and self.tuples:
            raise ValueError("the arity-0 table is reserved for the empty canonical relation")
        for t in self.tuples:
            if len(t) != self.arity:
                raise ValueError(f"tuple {t} does not have arity {self.arity}")

    @property
    def is_sentinel(self) -> bool:
        return self.arity == 0

    def __len__(self):
        return len(self.tuples)

    def __contains__(self, t):
        return tuple(t) in self.tuples

    def __iter__(self):
        return iter(sorted(self.tuples))


# R_A when every relation is empty.
EMPTY_CANONICAL = RelationTable(0, frozenset())


@dataclass(frozen=True)
class Structure:
    """A finite structure over a signature.

    ``equality_negated`` is set on complemented structures: there the
    built-in equality symbol is read as disequality, so that complementing
    twice gives back the original structure.
    """

    signature: Signature
    size: int
    tables: tuple[frozenset, ...]
    equality_negated: bool = False

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("structures are non-empty")
        tables = tuple(frozenset(tuple(t) for t in tab) for tab in self.tables)
        if len(tables) != len(self.signature):
            raise ValueError("one table per relation symbol is required")
        for sym, tab in zip(self.signature, tables):
            for t in tab:
                if len(t) != sym.arity or any(not 0 <= x < self.size for x in t):
                    raise ValueError(f"bad tuple {t} for relation {sym.name}")
        object.__setattr__(self, "tables", tables)

    @classmethod
    def build(cls, size: int, relations: dict) -> "Structure":
        """``relations`` maps name -> (arity, tuples), in signature order."""
        sig = Signature.of((name, arity) for name, (arity, _) in relations.items())
        return cls(sig, size, tuple(frozenset(map(tuple, ts)) for _, ts in relations.values()))

    def relation(self, key) -> frozenset:
        return self.tables[self.signature.index(key)]

    def table(self, key) -> RelationTable:
        i = self.signature.index(key)
        return RelationTable(self.signature.symbols[i].arity, self.tables[i])

    def is_full(self, i: int) -> bool:
        return len(self.tables[i]) == self.size ** self.signature.symbols[i].arity

    @property
    def elements(self) -> range:
        return range(self.size)

    def digest(self) -> str:
        text = format_structure(self)
        if self.equality_negated:
            text += "#neq\n"
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def digraph(n: int, edges: Iterable[tuple[int, int]] = ()) -> Structure:
    return Structure(DIGRAPH, n, (frozenset(edges),))


def clique(n: int) -> Structure:
    """K_n: all ordered pairs of distinct vertices."""
    if n < 1:
        raise ValueError("clique size must be positive")
    return digraph(n, ((i, j) for i in range(n) for j in range(n) if i != j))


def complement(s: Structure) -> Structure:
    tables = tuple(
        frozenset(product(range(s.size), repeat=sym.arity)) - tab
        for sym, tab in zip(s.signature, s.tables)
    )
    return Structure(s.signature, s.size, tables, not s.equality_negated)


def equality_table(s: Structure) -> frozenset:
    """The relation denoted by ``=`` in ``s`` (disequality when negated)."""
    if s.equality_negated:
        return frozenset((x, y) for x in s.elements for y in s.elements if x != y)
    return frozenset((x, x) for x in s.elements)


def canonical_relation(s: Structure, include_equality: bool = False) -> RelationTable:
    """Product of the non-empty relations of ``s``, in signature order.

    With ``include_equality`` the interpretation of ``=`` is appended as a
    final binary block (and dropped like any other relation when empty).
    Returns ``EMPTY_CANONICAL`` when nothing non-empty is left.
    """
    blocks = [tab for tab in s.tables if tab]
    arity = sum(sym.arity for sym, tab in zip(s.signature, s.tables) if tab)
    if include_equality:
        eq = equality_table(s)
        if eq:
            blocks.append(eq)
            arity += 2
    if not blocks:
        return EMPTY_CANONICAL
    tuples = frozenset(sum(parts, ()) for parts in product(*[sorted(b) for b in blocks]))
    return RelationTable(arity, tuples)


def _require_arity(t: RelationTable):
    if t.is_sentinel:
        raise ValueError("undefined on empty canonical relation")


def is_x_valid(t: RelationTable, x: int) -> bool:
    _require_arity(t)
    return (x,) * t.arity in t.tuples


def all_valid_witnesses(t: RelationTable, n: int) -> set[int]:
    _require_arity(t)
    return {x for x in range(n) if (x,) * t.arity in t.tuples}


def empty_or_x_valid(t: RelationTable, n: int) -> bool:
    return t.is_sentinel or bool(all_valid_witnesses(t, n))


def is_antireflexive(t: RelationTable) -> bool:
    _require_arity(t)
    return all(len(set(tup)) == len(tup) for tup in t.tuples)


# -- homomorphisms, cores --------------------------------------------------

def _check_signatures(a: Structure, b: Structure):
    if not a.signature.compatible(b.signature):
        raise SignatureMismatch("structures have different signatures")


def is_homomorphism(h: Sequence[int], a: Structure, b: Structure) -> bool:
    _check_signatures(a, b)
    if len(h) != a.size or any(not 0 <= y < b.size for y in h):
        return False
    return all(tuple(h[x] for x in t) in tb
               for ta, tb in zip(a.tables, b.tables) for t in ta)


def find_homomorphism(a: Structure, b: Structure) -> Optional[tuple[int, ...]]:
    """Some homomorphism a -> b as a tuple ``h`` with ``h[x]`` the image of x.

    Plain backtracking over the vertices of ``a`` in domain order.  A tuple
    of ``a`` is checked as soon as its largest vertex has been assigned.
    """
    _check_signatures(a, b)
    # constraints[v] = list of (tuple, target table) whose max vertex is v
    constraints: list[list] = [[] for _ in range(a.size)]
    for ta, tb in zip(a.tables, b.tables):
        for t in ta:
            constraints[max(t)].append((t, tb))
    h = [0] * a.size

    def extend(v: int) -> bool:
        if v == a.size:
            return True
        for y in range(b.size):
            h[v] = y
            if all(tuple(h[x] for x in t) in tb for t, tb in constraints[v]) and extend(v + 1):
                return True
        return False

    return tuple(h) if extend(0) else None


def induced_substructure(s: Structure, vertices: Sequence[int]) -> Structure:
    """Restriction of ``s`` to ``vertices``, relabelled to 0..k-1 in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    tables = tuple(
        frozenset(tuple(index[x] for x in t) for t in tab if all(x in index for x in t))
        for tab in s.tables
    )
    return Structure(s.signature, len(vertices), tables, s.equality_negated)


def core_vertices(s: Structure) -> tuple[int, ...]:
    """Vertex set of the core: a smallest subset that ``s`` maps into."""
    for k in range(1, s.size + 1):
        for subset in combinations(range(s.size), k):
            if find_homomorphism(s, induced_substructure(s, subset)) is not None:
                return subset
    raise AssertionError("unreachable: s retracts onto itself")


def core(s: Structure) -> Structure:
    return induced_substructure(s, core_vertices(s))


def find_isomorphism(a: Structure, b: Structure) -> Optional[tuple[int, ...]]:
    _check_signatures(a, b)
    if a.size != b.size or [len(t) for t in a.tables] != [len(t) for t in b.tables]:
        return None
    for perm in permutations(range(b.size)):
        if all(frozenset(tuple(perm[x] for x in t) for t in ta) == tb
               for ta, tb in zip(a.tables, b.tables)):
            return perm
    return None


def is_isomorphic(a: Structure, b: Structure) -> bool:
    return find_isomorphism(a, b) is not None


def hom_equivalent(a: Structure, b: Structure) -> bool:
    _check_signatures(a, b)
    return find_homomorphism(a, b) is not None and find_homomorphism(b, a) is not None


def cores_isomorphic(a: Structure, b: Structure) -> bool:
    _check_signatures(a, b)
    return is_isomorphic(core(a), core(b))


# -- graphs -----------------------------------------------------------------

def is_digraph(s: Structure) -> bool:
    return s.signature.arities == (2,)


def is_undirected_graph(s: Structure) -> bool:
    return is_digraph(s) and all((y, x) in s.tables[0] for x, y in s.tables[0])


def has_self_loop(s: Structure) -> bool:
    return is_digraph(s) and any(x == y for x, y in s.tables[0])


def symmetric_closure(s: Structure) -> Structure:
    if not is_digraph(s):
        raise ValueError("symmetric closure needs a digraph")
    edges = s.tables[0]
    return Structure(s.signature, s.size, (edges | {(y, x) for x, y in edges},),
                     s.equality_negated)


def two_colouring(s: Structure) -> Optional[dict[int, int]]:
    """A proper 2-colouring of an undirected graph, or None."""
    adj: dict[int, set[int]] = {v: set() for v in s.elements}
    for x, y in s.tables[0]:
        if x == y:
            return None
        adj[x].add(y)
    colour: dict[int, int] = {}
    for root in s.elements:
        if root in colour:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return None
    return colour


def is_bipartite_graph(s: Structure) -> bool:
    """Loop-free undirected graph without odd cycles.

    Agrees with the definitional test "the core is K_1 or K_2".
    """
    if not is_digraph(s):
        raise ValueError("bipartiteness is defined for digraphs only")
    if not is_undirected_graph(s):
        raise ValueError("edge relation is not symmetric")
    return two_colouring(s) is not None


# -- text format --------------------------------------------------------------

def format_structure(s: Structure, canonical: Optional[RelationTable] = None) -> str:
    """Render ``s`` in the block format read by ``parse_structure``.

    With ``canonical`` given, only that table is emitted as ``relation CANON``.
    """
    lines = [f"domain {s.size}"]
    blocks = ([("CANON", canonical.arity, canonical.tuples)] if canonical is not None
              else [(sym.name, sym.arity, tab) for sym, tab in zip(s.signature, s.tables)])
    for name, arity, tuples in blocks:
        lines.append(f"relation {name} {arity}")
        lines.extend(" ".join(map(str, t)) for t in sorted(tuples))
        lines.append("")
    return "\n".join(lines) + "\n"


def format_table(t: RelationTable, n: int, name: str = "CANON") -> str:
    lines = [f"domain {n}", f"relation {name} {t.arity}"]
    lines.extend(" ".join(map(str, tup)) for tup in sorted(t.tuples))
    return "\n".join(lines) + "\n\n"


def parse_structure(text: str) -> Structure:
    size = None
    relations: dict = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            current = None
            continue
        words = line.split()
        if size is None:
            if words[0] != "domain" or len(words) != 2 or not words[1].isdigit():
                raise StructureFormatError(f"line {lineno}: expected 'domain <n>'")
            size = int(words[1])
            continue
        if words[0] == "relation":
            if len(words) != 3 or not words[2].isdigit() or int(words[2]) < 1:
                raise StructureFormatError(f"line {lineno}: expected 'relation <name> <arity>'")
            name, arity = words[1], int(words[2])
            if name in relations:
                raise StructureFormatError(f"line {lineno}: duplicate relation {name}")
            relations[name] = (arity, [])
            current = name
            continue
        if current is None:
            raise StructureFormatError(f"line {lineno}: tuple outside a relation block")
        arity, tuples = relations[current]
        try:
            t = tuple(int(w) for w in words)
        except ValueError:
            raise StructureFormatError(f"line {lineno}: non-integer element") from None
        if len(t) != arity:
            raise StructureFormatError(f"line {lineno}: tuple of length {len(t)} in relation of arity {arity}")
        if any(not 0 <= x < size for x in t):
            raise StructureFormatError(f"line {lineno}: element out of range")
        tuples.append(t)
    if size is None:
        raise StructureFormatError("missing 'domain' line")
    try:
        return Structure.build(size, relations)
    except ValueError as e:
        raise StructureFormatError(str(e)) from None


def load_structure(path) -> Structure:
    with open(path) as fh:
        return parse_structure(fh.read())
