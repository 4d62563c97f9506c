"""The token coding over the alphabet {¬,∧,∨,∃,∀,=} ∪ {(,),R,v,0,1}.

Relations and variables carry binary indices (``R10`` is relation 2,
``v11`` is variable 3).  Compound formulas are fully parenthesised::

    R1(v1v10)     (φ∧ψ)     (φ∨ψ)     (¬φ)     (∃v1φ)     (∀v1φ)     v1=v10

Arguments of an atom are juxtaposed; the leading ``v`` of each one
delimits it.
"""

from __future__ import annotations

from typing import Optional

from ..structures import Signature
from .parser import BindError, FormulaSyntaxError, bind
from .syntax import (AND, EQ, EXISTS, FORALL, NOT, OR, And, Atom, Eq, Exists,
                     Forall, Formula, Not, Or, PrenexSentence)

ALPHABET = frozenset("¬∧∨∃∀=()Rv01")


def _bin(i: int) -> str:
    return format(i, "b")


def emit_binary_coding(f) -> str:
    if isinstance(f, PrenexSentence):
        f = f.to_formula()
    if isinstance(f, Atom):
        return f"R{_bin(f.rel)}(" + "".join(f"v{_bin(a)}" for a in f.args) + ")"
    if isinstance(f, Eq):
        return f"v{_bin(f.left)}=v{_bin(f.right)}"
    if isinstance(f, Not):
        return f"({NOT}{emit_binary_coding(f.child)})"
    if isinstance(f, (And, Or)):
        op = AND if isinstance(f, And) else OR
        return f"({emit_binary_coding(f.left)}{op}{emit_binary_coding(f.right)})"
    q = EXISTS if isinstance(f, Exists) else FORALL
    return f"({q}v{_bin(f.var)}{emit_binary_coding(f.body)})"


def scan(text: str) -> str:
    """Strip whitespace and check the alphabet and parenthesis balance."""
    depth = 0
    out = []
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch not in ALPHABET:
            raise FormulaSyntaxError(f"symbol {ch!r} is not in the alphabet", pos)
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise FormulaSyntaxError("unbalanced parentheses", pos)
        out.append(ch)
    if depth:
        raise FormulaSyntaxError("unbalanced parentheses")
    return "".join(out)


class _CodingParser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise FormulaSyntaxError(f"expected {ch!r}, found {found!r}", self.i)
        self.i += 1

    def index(self, prefix: str) -> int:
        self.expect(prefix)
        start = self.i
        while self.peek() in ("0", "1") and self.peek():
            self.i += 1
        digits = self.s[start:self.i]
        if not digits:
            raise FormulaSyntaxError(f"malformed binary index after {prefix!r}", start)
        value = int(digits, 2)
        if value < 1:
            raise FormulaSyntaxError(f"index of {prefix!r} must be positive", start)
        return value

    def formula(self) -> Formula:
        ch = self.peek()
        if ch == "R":
            rel = self.index("R")
            self.expect("(")
            args = [self.index("v")]
            while self.peek() == "v":
                args.append(self.index("v"))
            self.expect(")")
            return Atom(rel, tuple(args))
        if ch == "v":
            left = self.index("v")
            self.expect(EQ)
            return Eq(left, self.index("v"))
        if ch != "(":
            raise FormulaSyntaxError(f"unexpected {ch or 'end of input'!r}", self.i)
        self.i += 1
        head = self.peek()
        if head == NOT:
            self.i += 1
            f = Not(self.formula())
        elif head in (EXISTS, FORALL):
            self.i += 1
            var = self.index("v")
            body = self.formula()
            f = Exists(var, body) if head == EXISTS else Forall(var, body)
        else:
            left = self.formula()
            op = self.peek()
            if op not in (AND, OR):
                raise FormulaSyntaxError(f"expected {AND!r} or {OR!r}", self.i)
            self.i += 1
            right = self.formula()
            f = And(left, right) if op == AND else Or(left, right)
        self.expect(")")
        return f


def parse_binary_coding(tokens: str, sig: Optional[Signature] = None, strict: bool = True) -> Formula:
    from .parser import check_quantifier_scopes
    text = scan(tokens)
    p = _CodingParser(text)
    f = p.formula()
    if p.i != len(text):
        raise FormulaSyntaxError("trailing symbols", p.i)
    if sig is not None:
        bind(f, sig)
    check_quantifier_scopes(f, strict)
    return f


def normalize_coding(tokens: str) -> str:
    """Whitespace-free coding with binary indices written without leading zeros."""
    return emit_binary_coding(parse_binary_coding(tokens, strict=False))


__all__ = ["ALPHABET", "BindError", "emit_binary_coding", "normalize_coding",
           "parse_binary_coding", "scan"]
