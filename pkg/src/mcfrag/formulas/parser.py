"""Surface syntax: parser and pretty-printer.

Grammar::

    formula := ("exists" | "forall") var formula | disj
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "!" unary | "(" formula ")" | var "=" var | atom
             | ("exists" | "forall") var formula
    atom    := relname "(" var ("," var)* ")"
    var     := "v" digits

``!`` binds tighter than ``&``, which binds tighter than ``|``; both binary
operators associate to the left and quantifiers extend as far right as
possible.
"""

from __future__ import annotations

import re
from functools import lru_cache
import warnings
from typing import Optional

from ..structures import Signature
from .syntax import (And, Atom, Binary, Eq, Exists, Forall, Formula, Not, Or,
                     PrenexSentence, Quantified, vacuous_quantifiers)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: Optional[int] = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at position {pos})")


class BindError(ValueError):
    """Unknown relation or wrong number of arguments."""


class VacuousQuantifier(FormulaSyntaxError):
    pass


class VacuousQuantifierWarning(UserWarning):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<var>v\d+\b)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()&|!=,])
""", re.VERBOSE)

KEYWORDS = {"exists": Exists, "forall": Forall}


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "word" and value in KEYWORDS:
                kind = "quant"
            elif kind == "punct":
                kind = value
            out.append((kind, value, pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _var_index(token: str, pos: int) -> int:
    j = int(token[1:])
    if j < 1:
        raise FormulaSyntaxError("variable indices start at 1", pos)
    return j


class _SurfaceParser:
    def __init__(self, text: str, sig: Optional[Signature]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: Optional[str] = None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.formula()
        self.take("end")
        return f

    def formula(self) -> Formula:
        if self.peek()[0] == "quant":
            return self.quantified()
        left = self.conj()
        while self.peek()[0] == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def quantified(self) -> Formula:
        _, word, _ = self.take("quant")
        _, var, pos = self.take("var")
        return KEYWORDS[word](_var_index(var, pos), self.formula())

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek()[0] == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "!":
            self.take()
            return Not(self.unary())
        if kind == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if kind == "quant":
            return self.quantified()
        if kind == "var":
            self.take()
            self.take("=")
            _, other, pos2 = self.take("var")
            return Eq(_var_index(value, pos), _var_index(other, pos2))
        if kind == "word":
            return self.atom()
        what = "end of input" if kind == "end" else repr(value)
        raise FormulaSyntaxError(f"unexpected {what}", pos)

    def atom(self) -> Formula:
        _, name, pos = self.take("word")
        self.take("(")
        args = []
        while True:
            _, var, vpos = self.take("var")
            args.append(_var_index(var, vpos))
            if self.peek()[0] != ",":
                break
            self.take()
        self.take(")")
        return Atom(self.resolve(name, len(args), pos), tuple(args))

    def resolve(self, name: str, nargs: int, pos: int) -> int:
        if self.sig is None:
            m = re.fullmatch(r"R(\d+)", name)
            if not m or int(m.group(1)) < 1:
                raise BindError(f"unknown relation {name!r} at position {pos}")
            return int(m.group(1))
        try:
            sym = self.sig.lookup(name)
        except KeyError:
            raise BindError(f"unknown relation {name!r} at position {pos}") from None
        if sym.arity != nargs:
            raise BindError(f"relation {name} has arity {sym.arity}, "
                            f"got {nargs} arguments at position {pos}")
        return sym.id


def check_quantifier_scopes(f: Formula, strict: bool = True):
    """Every quantifier must bind a variable that is free in its scope."""
    bad = vacuous_quantifiers(f)
    if not bad:
        return
    msg = "quantified variable(s) not free in their scope: " + \
        ", ".join(f"v{q.var}" for q in bad)
    if strict:
        raise VacuousQuantifier(msg)
    warnings.warn(msg, VacuousQuantifierWarning, stacklevel=3)


def parse_surface(text: str, sig: Optional[Signature] = None, strict: bool = True) -> Formula:
    """Parse a formula in surface syntax, binding relation names against ``sig``.

    Without a signature, relations must be written ``R<id>``.
    """
    f = _SurfaceParser(text, sig).parse()
    check_quantifier_scopes(f, strict)
    return f


@lru_cache(maxsize=65536)
def _relation_uses(g) -> tuple:
    from .syntax import literals
    return tuple(sorted({(lit.rel, len(lit.args)) for lit in literals(g) if isinstance(lit, Atom)}))


def bind(f, sig: Signature):
    """Check relation ids and arities of ``f`` against ``sig``."""
    g = f.matrix if isinstance(f, PrenexSentence) else f
    for rel, nargs in _relation_uses(g):
        try:
            sym = sig.lookup(rel)
        except KeyError:
            raise BindError(f"relation R{rel} is not in the signature") from None
        if sym.arity != nargs:
            raise BindError(f"relation {sym.name} has arity {sym.arity}, "
                            f"used with {nargs} arguments")


# -- printing -------------------------------------------------------------------

_PREC = {Or: 1, And: 2}


def _prec(f) -> int:
    if isinstance(f, Quantified):
        return 0
    return _PREC.get(type(f), 3)


def to_surface(f, sig: Optional[Signature] = None) -> str:
    """Render a formula (or prenex sentence) so that ``parse_surface`` gives it back."""
    if isinstance(f, PrenexSentence):
        f = f.to_formula()

    def name(rel: int) -> str:
        if sig is not None:
            try:
                return sig.lookup(rel).name
            except KeyError:
                pass
        return f"R{rel}"

    def wrap(g, need: int) -> str:
        text = show(g)
        return f"({text})" if _prec(g) < need else text

    def show(g) -> str:
        if isinstance(g, Atom):
            return f"{name(g.rel)}(" + ",".join(f"v{a}" for a in g.args) + ")"
        if isinstance(g, Eq):
            return f"v{g.left} = v{g.right}"
        if isinstance(g, Not):
            return "!" + wrap(g.child, 3)
        if isinstance(g, Binary):
            p = _PREC[type(g)]
            op = " & " if isinstance(g, And) else " | "
            return wrap(g.left, p) + op + wrap(g.right, p + 1)
        word = "exists" if isinstance(g, Exists) else "forall"
        return f"{word} v{g.var} {show(g.body)}"

    return show(f)
