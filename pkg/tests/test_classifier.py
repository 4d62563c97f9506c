import csv
import json
from itertools import product
from pathlib import Path

import pytest

from mcfrag.classifier import (FACTS, Complexity, check_fact, classify, classify_all,
                               describe_fact)
from mcfrag.formulas import AND, OR, FRAGMENT_NAMES, Fragment
from mcfrag.generators import all_structures
from mcfrag.schaefer import (all_boolean_relations, brute_force_profile,
                             expressible_2cnf, expressible_affine, expressible_horn,
                             schaefer_profile)
from mcfrag.structures import (DIGRAPH, RelationTable, Signature, Structure,
                               canonical_relation, clique, complement, digraph,
                               has_self_loop, is_bipartite_graph, is_undirected_graph)

import oracle

C = Complexity
GOLDEN = Path(__file__).parent / "data" / "golden_verdicts.tsv"
K3_EDGES = [(a, b) for a in range(3) for b in range(3) if a != b]

GOLDEN_STRUCTURES = {
    "K1": clique(1),
    "K2": clique(2),
    "K3": clique(3),
    "K3+loop": digraph(3, K3_EDGES + [(0, 0)]),
    "loop1": digraph(1, [(0, 0)]),
    "P!=Q": Structure.build(2, {"R": (2, [(0, 1), (1, 0)])}),
}


def _golden_rows():
    with open(GOLDEN) as fh:
        rows = [r for r in csv.reader(fh, delimiter="\t") if r and not r[0].startswith("#")]
    return rows


def test_golden_table_complete():
    rows = _golden_rows()
    assert len(rows) == len(GOLDEN_STRUCTURES) * 14
    assert {(r[0], r[1]) for r in rows} == {(s, f) for s in GOLDEN_STRUCTURES for f in FRAGMENT_NAMES}


@pytest.mark.parametrize("row", _golden_rows(), ids=lambda r: f"{r[0]}:{r[1]}")
def test_golden_table(row):
    name, frag, cls, theorem = row
    v = classify(GOLDEN_STRUCTURES[name], frag)
    assert (v.complexity.value, v.theorem) == (cls, theorem)


# -- worked examples --------------------------------------------------------------

def test_examples():
    assert classify(clique(3), "and-exists").complexity == C.NP_COMPLETE
    assert classify(clique(2), "and-exists").complexity == C.PTIME
    assert classify(clique(5), "or-exists").complexity == C.LOGSPACE
    assert classify(digraph(3, [(0, 1)]), "or-forall-eq").complexity == C.CONP_COMPLETE
    assert classify(digraph(1, [(0, 0)]), "full-fo").complexity == C.LOGSPACE
    assert classify(clique(2), "and-or-exists").complexity == C.NP_COMPLETE


def test_k3_and_exists_theorem():
    v = classify(clique(3), "and-exists")
    assert v.theorem == "HellNesetril"
    assert v.facts["core_size"] == 3 and not v.facts["bipartite"]


def test_directed_non_boolean_is_open():
    v = classify(digraph(3, [(0, 1)]), "and-exists")
    assert v.complexity == C.OPEN_CSP_DICHOTOMY
    assert classify(complement(digraph(3, [(0, 1)])), "or-forall").complexity == C.OPEN_CSP_DICHOTOMY


def test_single_element_all_fragments():
    for s in all_structures(Signature.of([("E", 2), ("P", 1)]), 1):
        for v in classify_all(s):
            assert v.complexity in (C.LOGSPACE, C.PTIME)


def test_unsupported_fragment():
    v = classify(clique(2), Fragment(frozenset({AND, OR})))
    assert v.complexity == C.UNSUPPORTED_FRAGMENT and v.theorem == "Unsupported"


def test_unknown_fragment_name():
    with pytest.raises(ValueError, match="unknown fragment"):
        classify(clique(2), "and-nothing")


def test_empty_relations_with_equality_note():
    v = classify(digraph(3), "and-exists-eq")
    assert v.complexity == C.PTIME and v.theorem == "EmptyRelations"
    assert any("equality-only" in n for n in v.notes)


def test_full_fo_noeq_trivial_relations():
    full = digraph(2, [(a, b) for a in range(2) for b in range(2)])
    assert classify(full, "full-fo-noeq").complexity == C.LOGSPACE
    assert classify(digraph(2), "full-fo-noeq").complexity == C.LOGSPACE
    assert classify(clique(2), "full-fo-noeq").complexity == C.PSPACE_COMPLETE
    assert classify(full, "full-fo").complexity == C.PSPACE_COMPLETE


def test_forall_and_or_eq_boundary():
    assert classify(digraph(3), "and-or-forall-eq").complexity == C.CONP_COMPLETE
    full2 = digraph(2, [(a, b) for a in range(2) for b in range(2)])
    # Ā is empty apart from the ≠ block, which is not x-valid.
    assert classify(full2, "and-or-forall-eq").complexity == C.CONP_COMPLETE
    assert classify(digraph(1), "and-or-forall-eq").complexity == C.LOGSPACE


# -- invariants ------------------------------------------------------------------

def _small_digraphs():
    for n in (1, 2, 3):
        yield from all_structures(DIGRAPH, n)


def test_duality_coherence():
    swap = {C.NP_COMPLETE: C.CONP_COMPLETE}
    for s in _small_digraphs():
        a = classify(s, "or-forall")
        b = classify(complement(s), "and-exists")
        assert a.complexity == swap.get(b.complexity, b.complexity)
        assert a.theorem == "Duality+" + b.theorem


def test_hell_nesetril_consistency_exhaustive():
    for n in (1, 2, 3, 4):
        for s in all_structures(DIGRAPH, n):
            if not is_undirected_graph(s):
                continue
            v = classify(s, "and-exists")
            if v.theorem != "HellNesetril":
                continue
            loop = has_self_loop(s)
            assert (v.complexity == C.PTIME) == (loop or is_bipartite_graph(s))
            if v.complexity == C.NP_COMPLETE:
                assert not loop and oracle.has_odd_cycle(n, s.tables[0])
                assert oracle.core_size(s) >= 3


def test_schaefer_and_hell_nesetril_agree_on_boolean_graphs():
    for s in all_structures(DIGRAPH, 2):
        if not is_undirected_graph(s):
            continue
        v = classify(s, "and-exists")
        hn = has_self_loop(s) or is_bipartite_graph(s) or not s.tables[0]
        assert (v.complexity == C.PTIME) == hn


def test_never_open_on_decidable_cases():
    sig = Signature.of([("E", 2), ("P", 1)])
    for s in list(all_structures(sig, 1)) + list(all_structures(sig, 2)):
        for v in classify_all(s):
            assert v.complexity != C.OPEN_CSP_DICHOTOMY
    for s in _small_digraphs():
        if is_undirected_graph(s):
            assert classify(s, "and-exists").complexity != C.OPEN_CSP_DICHOTOMY


def test_open_only_for_csp_fragments():
    allowed = {"and-exists", "and-exists-eq", "or-forall"}
    for s in _small_digraphs():
        for v in classify_all(s):
            if v.complexity == C.OPEN_CSP_DICHOTOMY:
                assert v.fragment in allowed


def test_witness_facts_reproduce():
    ternary = Signature.of([("T", 3), ("P", 1)])
    samples = list(_small_digraphs())[::7] + list(all_structures(ternary, 2))[::17]
    for s in samples:
        for v in classify_all(s):
            assert v.theorem and v.facts
            for key, value in v.facts.items():
                assert check_fact(s, key) == value
                assert describe_fact(key, value)


def test_verdict_serialization():
    v = classify(clique(3), "and-exists")
    d = json.loads(v.to_json())
    assert d["class"] == "NP_COMPLETE" and d["theorem"] == "HellNesetril"
    assert d["fragment"] == "and-exists" and d["structure"] == clique(3).digest()
    assert "R_A" in describe_fact("canonical_empty", False)
    assert "R_Ā" in describe_fact("complement.canonical_empty", False)
    assert "≠" in describe_fact("complement.schaefer_classes_eq", [])


def test_facts_registry_covers_recorded_keys():
    for s in _small_digraphs():
        for v in classify_all(s):
            for key in v.facts:
                assert key.removeprefix("complement.") in FACTS


# -- Schaefer classes ------------------------------------------------------------------

def test_schaefer_examples():
    p_or_q = schaefer_profile(RelationTable(2, {(0, 1), (1, 0), (1, 1)}))
    assert p_or_q.dual_horn and not p_or_q.horn and p_or_q.one_valid and not p_or_q.zero_valid
    neq = schaefer_profile(RelationTable(2, {(0, 1), (1, 0)}))
    assert neq.affine and neq.bijunctive and not neq.zero_valid and not neq.one_valid
    full = schaefer_profile(RelationTable(2, {(0, 0), (0, 1), (1, 0), (1, 1)}))
    assert all([full.zero_valid, full.one_valid, full.horn, full.dual_horn, full.bijunctive, full.affine])


def test_schaefer_non_boolean():
    with pytest.raises(ValueError, match="non-Boolean"):
        schaefer_profile(RelationTable(2, {(0, 2)}))


def test_schaefer_known_hard_relations():
    one_in_three = RelationTable(3, {(1, 0, 0), (0, 1, 0), (0, 0, 1)})
    assert not schaefer_profile(one_in_three).any()
    nae = RelationTable(3, {t for t in product((0, 1), repeat=3) if len(set(t)) > 1})
    assert not schaefer_profile(nae).any()


def test_schaefer_closure_matches_brute_force():
    for arity in (1, 2, 3):
        for t in all_boolean_relations(arity):
            assert schaefer_profile(t) == brute_force_profile(t)


def test_brute_force_syntax_sanity():
    assert expressible_horn(RelationTable(2, {(0, 0), (0, 1), (1, 1)}))
    assert not expressible_2cnf(RelationTable(3, {(1, 0, 0), (0, 1, 0), (0, 0, 1)}))
    assert expressible_affine(RelationTable(3, {(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)}))
    assert expressible_horn(RelationTable(2, set()))


def test_forall_or_eq_both_readings():
    # On two elements the {∨,∀,=} verdict uses R_Ā with the ≠ block.  Record
    # where that reading differs from R_Ā alone.
    differ = 0
    for s in all_structures(Signature.of([("T", 3)]), 2):
        with_neq = canonical_relation(complement(s), True)
        plain = canonical_relation(complement(s))
        a = schaefer_profile(with_neq).any()
        b = plain.is_sentinel or schaefer_profile(plain).any()
        v = classify(s, "or-forall-eq")
        assert (v.complexity == C.PTIME) == a
        differ += a != b
    assert differ > 0
