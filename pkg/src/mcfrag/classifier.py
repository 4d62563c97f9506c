"""Expression complexity of Γ-MC(A) for a fixed structure A.

``classify`` returns a ``Verdict`` naming the complexity class, the
classification result it rests on, and the structural facts that decided
the branch.  Facts are recorded under names from ``FACTS`` so that they can
be recomputed with ``check_fact``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Callable, Union

from .formulas import CLASS_I, Fragment
from .schaefer import SchaeferProfile, schaefer_profile
from .structures import (Structure, all_valid_witnesses, canonical_relation,
                         complement, core_vertices, has_self_loop,
                         is_bipartite_graph, is_undirected_graph)


class Complexity(str, enum.Enum):
    LOGSPACE = "LOGSPACE"
    PTIME = "PTIME"
    NP_COMPLETE = "NP_COMPLETE"
    CONP_COMPLETE = "CONP_COMPLETE"
    PSPACE_COMPLETE = "PSPACE_COMPLETE"
    OPEN_CSP_DICHOTOMY = "OPEN_CSP_DICHOTOMY"
    UNSUPPORTED_FRAGMENT = "UNSUPPORTED_FRAGMENT"

    def __str__(self):
        return self.value


_DUAL = {Complexity.NP_COMPLETE: Complexity.CONP_COMPLETE}


@dataclass(frozen=True)
class Verdict:
    complexity: Complexity
    theorem: str
    facts: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()
    fragment: str = ""
    structure: str = ""

    def to_dict(self) -> dict:
        return {
            "class": self.complexity.value,
            "theorem": self.theorem,
            "facts": self.facts,
            "notes": list(self.notes),
            "fragment": self.fragment,
            "structure": self.structure,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    def explain(self) -> str:
        parts = [describe_fact(k, v) for k, v in self.facts.items()]
        return "; ".join(parts + list(self.notes))


# -- facts ----------------------------------------------------------------------

def _witnesses(t, n) -> list[int]:
    return [] if t.is_sentinel else sorted(all_valid_witnesses(t, n))


def _schaefer(t) -> list[str]:
    return [] if t.is_sentinel else schaefer_profile(t).holding()


FACTS: dict[str, Callable[[Structure], object]] = {
    "domain_size": lambda s: s.size,
    "all_relations_empty": lambda s: not any(s.tables),
    "relations_empty_or_full": lambda s: all(
        not tab or s.is_full(i) for i, tab in enumerate(s.tables)),
    "canonical_empty": lambda s: canonical_relation(s).is_sentinel,
    "canonical_x_witnesses": lambda s: _witnesses(canonical_relation(s), s.size),
    "canonical_eq_empty": lambda s: canonical_relation(s, True).is_sentinel,
    "canonical_eq_x_witnesses": lambda s: _witnesses(canonical_relation(s, True), s.size),
    "schaefer_classes": lambda s: _schaefer(canonical_relation(s)),
    "schaefer_classes_eq": lambda s: _schaefer(canonical_relation(s, True)),
    "undirected_graph": is_undirected_graph,
    "has_self_loop": has_self_loop,
    "bipartite": lambda s: is_undirected_graph(s) and is_bipartite_graph(s),
    "core_size": lambda s: len(core_vertices(s)),
}

_DESCRIPTIONS = {
    "domain_size": "‖A‖ = {}",
    "all_relations_empty": "all relations empty: {}",
    "relations_empty_or_full": "every relation empty or full: {}",
    "canonical_empty": "R_A empty: {}",
    "canonical_x_witnesses": "R_A x-valid for x in {}",
    "canonical_eq_empty": "R_A (with =) empty: {}",
    "canonical_eq_x_witnesses": "R_A (with =) x-valid for x in {}",
    "schaefer_classes": "Schaefer classes of R_A: {}",
    "schaefer_classes_eq": "Schaefer classes of R_A (with =): {}",
    "undirected_graph": "undirected graph: {}",
    "has_self_loop": "has a self-loop: {}",
    "bipartite": "bipartite: {}",
    "core_size": "core has {} vertices",
}

_COMPLEMENT = "complement."


def check_fact(s: Structure, key: str):
    """Recompute a recorded fact; ``complement.``-prefixed keys refer to Ā."""
    if key.startswith(_COMPLEMENT):
        return check_fact(complement(s), key[len(_COMPLEMENT):])
    return FACTS[key](s)


def describe_fact(key: str, value) -> str:
    if key.startswith(_COMPLEMENT):
        inner = describe_fact(key[len(_COMPLEMENT):], value)
        dual = inner.replace("R_A", "R_Ā").replace("‖A‖", "‖Ā‖").replace("(with =)", "(with ≠)")
        return dual if dual != inner else "in Ā, " + inner
    text = _DESCRIPTIONS[key]
    if isinstance(value, list):
        value = "{" + ", ".join(map(str, value)) + "}" if value else "∅"
    return text.format(value)


class _Facts(dict):
    """Fact collector bound to one structure and key prefix."""

    def __init__(self, s: Structure, prefix: str = ""):
        super().__init__()
        self.s, self.prefix = s, prefix

    def __call__(self, key: str):
        value = FACTS[key](self.s)
        self[self.prefix + key] = value
        return value


# -- the decision procedure ------------------------------------------------------

def _csp(s: Structure, facts: _Facts, with_eq: bool):
    """Class, theorem and notes for CSP(s), i.e. {∧,∃}-MC(s)."""
    notes = ["in NP: guess an assignment and check it"]
    if facts("all_relations_empty"):
        if with_eq:
            notes.append("yes-instances are exactly the equality-only sentences")
        else:
            notes.append("no sentence is true")
        return Complexity.PTIME, "EmptyRelations", notes
    if facts("domain_size") == 1:
        notes.append("a sentence is true iff it mentions no empty relation")
        return Complexity.PTIME, "SingletonDomain", notes
    if s.size == 2:
        classes = facts("schaefer_classes_eq" if with_eq else "schaefer_classes")
        return (Complexity.PTIME if classes else Complexity.NP_COMPLETE), "Schaefer", notes
    if facts("undirected_graph"):
        loop = facts("has_self_loop")
        bip = facts("bipartite")
        facts("core_size")
        tractable = loop or bip
        return (Complexity.PTIME if tractable else Complexity.NP_COMPLETE), "HellNesetril", notes
    notes.append("a full classification is equivalent to the CSP dichotomy conjecture")
    return Complexity.OPEN_CSP_DICHOTOMY, "OpenCSP", notes


def _fragment(g: Union[Fragment, str]) -> Fragment:
    return Fragment.named(g) if isinstance(g, str) else g


def classify(a: Structure, g: Union[Fragment, str]) -> Verdict:
    g = _fragment(g)
    name = g.name
    facts = _Facts(a)
    notes: list[str] = []
    C = Complexity

    def verdict(cls, theorem):
        return Verdict(cls, theorem, dict(facts), tuple(notes), name or str(g), a.digest())

    if name is None:
        notes.append(f"{g} is not one of the supported fragments")
        return verdict(C.UNSUPPORTED_FRAGMENT, "Unsupported")

    if g in CLASS_I:
        facts("domain_size")
        notes.append("scan all tuples of length max-arity for a witness")
        return verdict(C.LOGSPACE, "ClassIScan")

    if name == "full-fo":
        return verdict(C.LOGSPACE if facts("domain_size") == 1 else C.PSPACE_COMPLETE, "FullFO")

    if name == "full-fo-noeq":
        trivial = facts("relations_empty_or_full")
        return verdict(C.LOGSPACE if trivial else C.PSPACE_COMPLETE, "FullFONoEquality")

    if name in ("and-exists", "and-exists-eq"):
        cls, theorem, extra = _csp(a, facts, with_eq=name.endswith("-eq"))
        notes.extend(extra)
        return verdict(cls, theorem)

    if name == "or-forall":
        cfacts = _Facts(complement(a), _COMPLEMENT)
        cls, theorem, extra = _csp(cfacts.s, cfacts, with_eq=False)
        facts.update(cfacts)
        notes.extend(extra[1:])
        notes.append("complement of {∧,∃}-MC(Ā) under swapping ∃/∀ and ∧/∨; in coNP")
        return verdict(_DUAL.get(cls, cls), "Duality+" + theorem)

    if name == "or-forall-eq":
        n = facts("domain_size")
        if n == 1:
            notes.append("every sentence reduces to a Boolean disjunction; in particular PTIME")
            return verdict(C.LOGSPACE, "ForallOrEqSingleton")
        if n == 2:
            cfacts = _Facts(complement(a), _COMPLEMENT)
            classes = cfacts("schaefer_classes_eq")
            facts.update(cfacts)
            notes.append("Schaefer classes taken on R_Ā with the disequality block appended")
            return verdict(C.PTIME if classes else C.CONP_COMPLETE, "Duality+Schaefer")
        notes.append("complement of K_n colourability reduces to it")
        return verdict(C.CONP_COMPLETE, "CliqueColouring")

    if name == "and-or-exists":
        empty = facts("canonical_empty")
        wit = facts("canonical_x_witnesses")
        return verdict(C.LOGSPACE if empty or wit else C.NP_COMPLETE, "ExistsAndOrDichotomy")

    if name == "and-or-exists-eq":
        wit = facts("canonical_eq_x_witnesses")
        return verdict(C.LOGSPACE if wit else C.NP_COMPLETE, "ExistsAndOrEqDichotomy")

    if name == "and-or-forall":
        cfacts = _Facts(complement(a), _COMPLEMENT)
        empty = cfacts("canonical_empty")
        wit = cfacts("canonical_x_witnesses")
        facts.update(cfacts)
        return verdict(C.LOGSPACE if empty or wit else C.CONP_COMPLETE, "ForallAndOrDichotomy")

    assert name == "and-or-forall-eq"
    if facts("domain_size") >= 3:
        return verdict(C.CONP_COMPLETE, "ForallAndOrEqTrichotomy")
    # Ā carries disequality in place of equality.
    cfacts = _Facts(complement(a), _COMPLEMENT)
    empty = cfacts("canonical_eq_empty")
    wit = cfacts("canonical_eq_x_witnesses")
    facts.update(cfacts)
    return verdict(C.LOGSPACE if empty or wit else C.CONP_COMPLETE, "ForallAndOrEqTrichotomy")


def classify_all(a: Structure) -> list[Verdict]:
    from .formulas import SUPPORTED
    return [classify(a, g) for g in SUPPORTED]


__all__ = ["Complexity", "FACTS", "SchaeferProfile", "Verdict", "check_fact",
           "classify", "classify_all", "describe_fact", "schaefer_profile"]
