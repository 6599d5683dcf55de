"""Formulas of the tangle modal language, with a parser and printer.

Grammar, loosest binding first::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "<>" unary | "[]" unary
             | "<t>" "{" formula ("," formula)* "}" | atom
    atom    := "bot" | "top" | IDENT | "(" formula ")"

``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable


class ParseError(ValueError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class Formula:
    """Base class of the syntax tree. Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self) -> str:
        return "Bot()"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self) -> str:
        return "Top()"


_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"bot", "top"})


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def __post_init__(self) -> None:
        if not _IDENT.match(self.name) or self.name in KEYWORDS:
            raise ValueError(f"invalid variable name {self.name!r}")


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Dia(Formula):
    arg: Formula


@dataclass(frozen=True)
class Box(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Tangle(Formula):
    """The tangle connective over a nonempty set of formulas.

    Arguments are deduplicated and sorted by :func:`formula_key`.
    """

    args: tuple[Formula, ...]

    def __init__(self, args: Iterable[Formula]) -> None:
        uniq = {formula_key(a): a for a in args}
        if not uniq:
            raise ValueError("tangle needs at least one argument")
        object.__setattr__(self, "args", tuple(uniq[k] for k in sorted(uniq)))


_RANK = {Bot: 0, Top: 1, Var: 2, Not: 3, Dia: 4, Box: 5, And: 6, Or: 7, Imp: 8, Iff: 9, Tangle: 10}
_UNARY_CLASSES = (Not, Dia, Box)
_BINARY_CLASSES = (And, Or, Imp, Iff)


def formula_key(f: Formula) -> tuple:
    """A total order on formulas, used to normalise tangle arguments."""
    rank = _RANK[type(f)]
    if isinstance(f, Var):
        return (rank, f.name)
    if isinstance(f, _UNARY_CLASSES):
        return (rank, formula_key(f.arg))
    if isinstance(f, _BINARY_CLASSES):
        return (rank, formula_key(f.left), formula_key(f.right))
    if isinstance(f, Tangle):
        return (rank, tuple(formula_key(a) for a in f.args))
    return (rank,)


def variables(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, _UNARY_CLASSES):
        return variables(f.arg)
    if isinstance(f, _BINARY_CLASSES):
        return variables(f.left) | variables(f.right)
    if isinstance(f, Tangle):
        return set().union(*(variables(a) for a in f.args))
    return set()


def conj(fs: Iterable[Formula]) -> Formula:
    """Left-nested conjunction of a nonempty sequence."""
    it = iter(fs)
    out = next(it)
    for f in it:
        out = And(out, f)
    return out


# --- printing -------------------------------------------------------------

_PREC = {Iff: 1, Imp: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Imp: "->", Or: "|", And: "&"}
_PREFIX = {Not: "~", Dia: "<>", Box: "[]"}
_UNARY_PREC = 5


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), _UNARY_PREC)


def to_text(f: Formula) -> str:
    """Canonical text with the fewest parentheses that re-parse to ``f``."""
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, _UNARY_CLASSES):
        inner = to_text(f.arg)
        if _prec(f.arg) < _UNARY_PREC:
            inner = f"({inner})"
        return _PREFIX[type(f)] + inner
    if isinstance(f, Tangle):
        return "<t>{" + ", ".join(to_text(a) for a in f.args) + "}"
    p = _PREC[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    # "->" groups to the right, the others to the left
    left_paren = _prec(f.left) < p or (_prec(f.left) == p and isinstance(f, Imp))
    right_paren = _prec(f.right) < p or (_prec(f.right) == p and not isinstance(f, Imp))
    if left_paren:
        left = f"({left})"
    if right_paren:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


# --- parsing --------------------------------------------------------------

_TOKEN = re.compile(
    r"\s+|#[^\n]*|(?P<op><->|->|<t>|<>|\[\]|[~&|(){},])|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
)


def tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("op") or m.group("ident"):
            tokens.append((m.group(0), pos))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if expected is not None and tok != expected:
            found = repr(tok) if tok else "end of input"
            raise ParseError(f"expected {expected!r}, found {found}", self.pos())
        self.i += 1
        return tok

    def formula(self) -> Formula:
        f = self.imp()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.or_()
        if self.peek() == "->":
            self.take()
            return Imp(f, self.imp())
        return f

    def or_(self) -> Formula:
        f = self.and_()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.and_())
        return f

    def and_(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "<>":
            self.take()
            return Dia(self.unary())
        if tok == "[]":
            self.take()
            return Box(self.unary())
        if tok == "<t>":
            self.take()
            self.take("{")
            if self.peek() == "}":
                raise ParseError("empty tangle", self.pos())
            args = [self.formula()]
            while self.peek() == ",":
                self.take()
                args.append(self.formula())
            self.take("}")
            return Tangle(args)
        return self.atom()

    def atom(self) -> Formula:
        tok, pos = self.tokens[self.i]
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok == "bot":
            self.take()
            return Bot()
        if tok == "top":
            self.take()
            return Top()
        if tok and (tok[0].isalpha()):
            self.take()
            return Var(tok)
        raise ParseError(f"unexpected {tok!r}" if tok else "unexpected end of input", pos)


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek():
        raise ParseError(f"trailing input {p.peek()!r}", p.pos())
    return f
