from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mcfrag.generators import all_structures, all_small_structures
from mcfrag.structures import (DIGRAPH, EMPTY_CANONICAL, RelationTable, Signature,
                               SignatureMismatch, Structure, StructureFormatError,
                               all_valid_witnesses, canonical_relation, clique,
                               complement, core, core_vertices, cores_isomorphic,
                               digraph, find_homomorphism, format_structure,
                               has_self_loop, hom_equivalent, is_antireflexive,
                               is_bipartite_graph, is_homomorphism, is_isomorphic,
                               is_undirected_graph, is_x_valid, parse_structure,
                               symmetric_closure, two_colouring)

import oracle

K2, K3 = clique(2), clique(3)
PATH3 = digraph(3, [(0, 1), (1, 0), (1, 2), (2, 1)])


@st.composite
def structures(draw, max_size=3):
    sig = draw(st.sampled_from([DIGRAPH, Signature.of([("P", 1), ("E", 2)]),
                                Signature.of([("T", 3)])]))
    n = draw(st.integers(1, max_size))
    tables = tuple(
        frozenset(draw(st.sets(st.tuples(*[st.integers(0, n - 1)] * sym.arity), max_size=n ** sym.arity)))
        for sym in sig)
    return Structure(sig, n, tables)


# -- complement -------------------------------------------------------------------

def test_complement_k2():
    assert complement(K2).tables[0] == {(0, 0), (1, 1)}


def test_complement_of_empty_is_full():
    assert len(complement(digraph(2)).tables[0]) == 4


def test_complement_k3_leaves_loops():
    assert complement(K3).tables[0] == {(0, 0), (1, 1), (2, 2)}


@given(structures())
def test_complement_involution(s):
    assert complement(complement(s)) == s


def test_complement_involution_exhaustive():
    sig = Signature.of([("P", 1), ("E", 2)])
    for s in all_small_structures(sig, 2):
        assert complement(complement(s)) == s


def test_complement_flips_equality():
    assert complement(K2).equality_negated
    assert not complement(complement(K2)).equality_negated


# -- canonical relation --------------------------------------------------------------

def test_canonical_product():
    s = Structure.build(2, {"P": (1, [(0,)]), "E": (2, [(0, 1)])})
    t = canonical_relation(s)
    assert (t.arity, t.tuples) == (3, {(0, 0, 1)})


def test_canonical_all_empty_is_sentinel():
    t = canonical_relation(digraph(3))
    assert t is EMPTY_CANONICAL and t.is_sentinel


def test_canonical_drops_empty_relations():
    s = Structure.build(2, {"P": (1, []), "E": (2, [(0, 1)])})
    t = canonical_relation(s)
    assert (t.arity, t.tuples) == (2, {(0, 1)})


def test_canonical_with_equality_block():
    t = canonical_relation(digraph(2), include_equality=True)
    assert (t.arity, t.tuples) == (2, {(0, 0), (1, 1)})
    t = canonical_relation(complement(digraph(2, [(0, 0), (0, 1), (1, 0), (1, 1)])), True)
    assert t.tuples == {(0, 1), (1, 0)}


@given(structures(), st.booleans())
@settings(max_examples=200)
def test_canonical_matches_oracle(s, with_eq):
    t = canonical_relation(s, with_eq)
    want = oracle.canonical_tuples(s, with_eq)
    if want is None:
        assert t.is_sentinel
    else:
        assert t.tuples == want
        count = 1
        for tab in s.tables:
            count *= len(tab) or 1
        assert len(t.tuples) == count * (s.size if with_eq and not s.equality_negated else
                                         s.size * (s.size - 1) if with_eq else 1)


# -- validity ---------------------------------------------------------------------

def test_x_valid_examples():
    assert not is_x_valid(K2.table("E"), 0)
    assert is_x_valid(RelationTable(2, {(1, 1)}), 1)
    assert all_valid_witnesses(RelationTable(3, {(0, 0, 1), (2, 2, 2)}), 3) == {2}


def test_x_valid_sentinel_errors():
    with pytest.raises(ValueError, match="undefined on empty canonical relation"):
        is_x_valid(EMPTY_CANONICAL, 0)
    with pytest.raises(ValueError, match="undefined on empty canonical relation"):
        all_valid_witnesses(EMPTY_CANONICAL, 2)


def test_antireflexive_examples():
    assert is_antireflexive(K3.table("E"))
    assert not is_antireflexive(RelationTable(3, {(0, 1, 0)}))
    assert not is_antireflexive(RelationTable(2, K2.tables[0] | {(1, 1)}))


def test_binary_antireflexive_iff_not_x_valid():
    for s in all_structures(DIGRAPH, 3):
        t = s.table("E")
        assert is_antireflexive(t) == (not all_valid_witnesses(t, 3))


# -- homomorphisms and cores -------------------------------------------------------------

def test_hom_examples():
    assert find_homomorphism(K2, K3) is not None
    assert find_homomorphism(K3, K2) is None
    assert find_homomorphism(K3, K3) is not None


def test_hom_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        find_homomorphism(K2, Structure.build(2, {"P": (1, [(0,)])}))


def test_hom_agrees_with_oracle_exhaustive():
    graphs = list(all_small_structures(DIGRAPH, 2)) + [K3, PATH3]
    for a, b in product(graphs, repeat=2):
        h = find_homomorphism(a, b)
        assert (h is not None) == oracle.hom_exists(a, b)
        if h is not None:
            assert is_homomorphism(h, a, b) and oracle.preserves(h, a, b)


def test_core_examples():
    assert is_isomorphic(core(K3), K3)
    assert is_isomorphic(core(PATH3), K2)
    loop = digraph(1, [(0, 0)])
    assert core(loop) == loop


def test_core_tie_break_is_lexicographic():
    assert core_vertices(PATH3) == (0, 1)


@given(structures())
@settings(max_examples=80, deadline=None)
def test_core_properties(s):
    c = core(s)
    assert c.size == oracle.core_size(s)
    assert is_isomorphic(core(c), c)
    assert hom_equivalent(s, c)


def test_hom_equivalence_examples():
    assert hom_equivalent(K2, PATH3)
    assert not hom_equivalent(K2, K3)
    assert hom_equivalent(K3, K3)


def test_hom_equivalence_iff_cores_isomorphic_small_digraphs():
    graphs = list(all_small_structures(DIGRAPH, 2)) + \
        [s for s in all_structures(DIGRAPH, 3) if len(s.tables[0]) in (0, 2, 3, 6, 9)]
    for a in graphs:
        for b in graphs:
            assert hom_equivalent(a, b) == cores_isomorphic(a, b)


def test_isomorphism_oracle():
    for a in all_structures(DIGRAPH, 2):
        for b in all_structures(DIGRAPH, 2):
            assert is_isomorphic(a, b) == oracle.isomorphic(a, b)


# -- graphs ------------------------------------------------------------------

def test_bipartite_examples():
    assert is_bipartite_graph(K2)
    assert not is_bipartite_graph(K3)
    assert is_bipartite_graph(digraph(3))


def test_bipartite_errors():
    with pytest.raises(ValueError):
        is_bipartite_graph(digraph(2, [(0, 1)]))
    with pytest.raises(ValueError):
        is_bipartite_graph(Structure.build(2, {"P": (1, [(0,)])}))


def test_bipartite_matches_core_definition():
    for n in (1, 2, 3, 4):
        for s in all_structures(DIGRAPH, n):
            if not is_undirected_graph(s):
                continue
            by_core = core(s).size <= 2 and not has_self_loop(s) and \
                (core(s).size == 1 or is_isomorphic(core(s), K2))
            assert is_bipartite_graph(s) == by_core
            loopfree = not has_self_loop(s)
            assert is_bipartite_graph(s) == (loopfree and not oracle.has_odd_cycle(n, s.tables[0]))


def test_two_colouring_is_proper():
    col = two_colouring(PATH3)
    assert all(col[u] != col[v] for u, v in PATH3.tables[0])
    assert two_colouring(K3) is None


def test_clique():
    assert clique(1).tables[0] == frozenset()
    assert clique(2).tables[0] == {(0, 1), (1, 0)}
    assert len(clique(3).tables[0]) == 6


def test_symmetric_closure():
    s = symmetric_closure(digraph(2, [(0, 1)]))
    assert s.tables[0] == {(0, 1), (1, 0)}


# -- text format ------------------------------------------------------------------

def test_parse_format_roundtrip():
    text = "domain 3\n# a comment\nrelation E 2\n0 1\n1 2\n\nrelation P 1\n2\n"
    s = parse_structure(text)
    assert s.size == 3 and s.relation("E") == {(0, 1), (1, 2)} and s.relation("P") == {(2,)}
    assert parse_structure(format_structure(s)) == s


@given(structures())
def test_format_roundtrip_property(s):
    assert parse_structure(format_structure(s)) == s


def test_canonical_export():
    s = Structure.build(2, {"P": (1, [(0,)]), "E": (2, [(0, 1)])})
    text = format_structure(s, canonical=canonical_relation(s))
    assert "relation CANON 3" in text and "0 0 1" in text


@pytest.mark.parametrize("text", [
    "relation E 2\n0 1\n",
    "domain 2\nrelation E 2\n0 5\n",
    "domain 2\nrelation E 2\n0\n",
    "domain 2\n0 1\n",
    "domain 2\nrelation E 2\n0 x\n",
    "domain 0\n",
])
def test_parse_errors(text):
    with pytest.raises(StructureFormatError):
        parse_structure(text)
