"""Formula trees, parsing, fragments and prenex conversion."""

from __future__ import annotations

from typing import Optional

from ..structures import Signature
from .coding import (ALPHABET, emit_binary_coding, normalize_coding,
                     parse_binary_coding, scan)
from .fragments import (CLASS_I, CLASS_II, CLASS_III, FRAGMENT_NAMES, FULL,
                        SUPPORTED, Fragment, fragment_of, smallest_supported)
from .parser import (BindError, FormulaSyntaxError, VacuousQuantifier,
                     VacuousQuantifierWarning, bind, check_quantifier_scopes,
                     parse_surface, to_surface)
from .prenex import rename_apart, to_prenex
from .syntax import (AND, EQ, EXISTS, FORALL, NOT, OR, SYMBOLS, And, Atom, Eq,
                     Exists, Forall, Formula, Not, Or, PrenexSentence, conj,
                     disj, flatten, free_variables, is_sentence, literals,
                     substitute, symbols_of, symbols_of_sentence)

_CODING_ONLY = frozenset(SYMBOLS) - {EQ}


def looks_like_coding(text: str) -> bool:
    """True when ``text`` uses the coding alphabet rather than surface syntax."""
    stripped = [c for c in text if not c.isspace()]
    return any(c in _CODING_ONLY for c in stripped) or \
        (bool(stripped) and all(c in ALPHABET for c in stripped))


def parse(text: str, sig: Optional[Signature] = None, strict: bool = True) -> Formula:
    """Parse either syntax, detecting the coding by its alphabet."""
    if looks_like_coding(text):
        return parse_binary_coding(text, sig, strict)
    return parse_surface(text, sig, strict)


def why_not_well_formed(text: str, sig: Signature, frag: Fragment) -> Optional[str]:
    """None for a well-formed sentence of ``frag``, otherwise the reason it is not."""
    try:
        f = parse(text, sig)
    except (FormulaSyntaxError, BindError) as e:
        return str(e)
    free = free_variables(f)
    if free:
        return "not a sentence: free " + ", ".join(f"v{v}" for v in sorted(free))
    extra = symbols_of(f) - frag.symbols
    if extra:
        return f"uses symbols outside {frag}: " + " ".join(sorted(extra))
    return None


def well_formed(text: str, sig: Signature, frag: Fragment) -> bool:
    return why_not_well_formed(text, sig, frag) is None


__all__ = [
    "ALPHABET", "AND", "And", "Atom", "BindError", "CLASS_I", "CLASS_II",
    "CLASS_III", "EQ", "EXISTS", "Eq", "Exists", "FORALL", "FRAGMENT_NAMES",
    "FULL", "Forall", "Formula", "FormulaSyntaxError", "Fragment", "NOT", "Not",
    "OR", "Or", "PrenexSentence", "SUPPORTED", "SYMBOLS", "VacuousQuantifier",
    "VacuousQuantifierWarning", "bind", "check_quantifier_scopes", "conj",
    "disj", "emit_binary_coding", "flatten", "fragment_of", "free_variables",
    "is_sentence", "literals", "looks_like_coding", "normalize_coding", "parse",
    "parse_binary_coding", "parse_surface", "rename_apart", "scan",
    "smallest_supported", "substitute", "symbols_of", "symbols_of_sentence",
    "to_prenex", "to_surface", "well_formed", "why_not_well_formed",
]
