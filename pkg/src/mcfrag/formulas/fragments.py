"""The logic fragments, named by the symbols of {¬, ∧, ∨, ∃, ∀, =} they allow."""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import AND, EQ, EXISTS, FORALL, NOT, OR, SYMBOLS, symbols_of_sentence

_ORDER = {s: i for i, s in enumerate(SYMBOLS)}

# kebab-case name -> symbol set
FRAGMENT_NAMES = {
    "or-exists": {OR, EXISTS},
    "or-exists-eq": {OR, EXISTS, EQ},
    "and-forall": {AND, FORALL},
    "and-forall-eq": {AND, FORALL, EQ},
    "and-exists": {AND, EXISTS},
    "and-exists-eq": {AND, EXISTS, EQ},
    "or-forall": {OR, FORALL},
    "or-forall-eq": {OR, FORALL, EQ},
    "and-or-exists": {AND, OR, EXISTS},
    "and-or-exists-eq": {AND, OR, EXISTS, EQ},
    "and-or-forall": {AND, OR, FORALL},
    "and-or-forall-eq": {AND, OR, FORALL, EQ},
    "full-fo": {NOT, AND, OR, EXISTS, FORALL, EQ},
    "full-fo-noeq": {NOT, AND, OR, EXISTS, FORALL},
}


@dataclass(frozen=True)
class Fragment:
    symbols: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "symbols", frozenset(self.symbols))
        unknown = self.symbols - set(SYMBOLS)
        if unknown:
            raise ValueError(f"unknown symbols {sorted(unknown)}")

    @classmethod
    def named(cls, name: str) -> "Fragment":
        try:
            return cls(frozenset(FRAGMENT_NAMES[name]))
        except KeyError:
            raise ValueError(f"unknown fragment name {name!r}") from None

    @property
    def name(self) -> str | None:
        for name, syms in FRAGMENT_NAMES.items():
            if syms == self.symbols:
                return name
        return None

    @property
    def supported(self) -> bool:
        return self.name is not None

    def __contains__(self, symbol):
        return symbol in self.symbols

    def __le__(self, other: "Fragment"):
        return self.symbols <= other.symbols

    def __str__(self):
        return "{" + ",".join(sorted(self.symbols, key=_ORDER.get)) + "}"


SUPPORTED = tuple(Fragment.named(n) for n in FRAGMENT_NAMES)

CLASS_I = tuple(Fragment.named(n) for n in ("or-exists", "or-exists-eq", "and-forall", "and-forall-eq"))
CLASS_II = tuple(Fragment.named(n) for n in ("and-exists", "and-exists-eq", "or-forall", "or-forall-eq"))
CLASS_III = tuple(Fragment.named(n) for n in
                  ("and-or-exists", "and-or-exists-eq", "and-or-forall", "and-or-forall-eq"))
FULL = (Fragment.named("full-fo"), Fragment.named("full-fo-noeq"))


def fragment_of(f) -> Fragment:
    """The exact set of logical symbols used by a formula or prenex sentence."""
    return Fragment(symbols_of_sentence(f))


def smallest_supported(frag: Fragment) -> Fragment | None:
    """The smallest named fragment containing ``frag`` (ties: table order)."""
    candidates = [g for g in SUPPORTED if frag <= g]
    return min(candidates, key=lambda g: len(g.symbols)) if candidates else None
