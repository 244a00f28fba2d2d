"""Propositional formulas: parsing, printing and truth-table evaluation.

Grammar (loosest to tightest, ``->`` right-associative, the rest left):

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := not ("&" not)*
    not     := "!" not | primary
    primary := "0" | "1" | ident | "(" formula ")"

The Unicode spellings ¬ ∧ ∨ → ↔ are accepted as aliases.  ``1`` denotes
the always-true proposition ⊤ and ``0`` the always-false ⊥.  Parsing
builds the AST verbatim; no simplification happens here.  Error
positions count bytes of the UTF-8 encoding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Element, FreeBooleanAlgebra, UnsupportedOperationError


class ParseError(Exception):
    """Lexical or syntax error, carrying the byte offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (byte {position})")
        self.position = position


class UnboundAtomError(Exception):
    """A formula mentions an atom the binding does not cover."""


class Formula:
    """Base class of AST nodes; structural equality, no evaluation state."""

    __slots__ = ()

    def __str__(self) -> str:
        return unparse(self)


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: int  # 1 is ⊤, 0 is ⊥


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class _Token:
    kind: str  # one of ! & | -> <-> ( ) const ident end
    text: str
    pos: int   # byte offset


_SINGLE = {"!": "!", "&": "&", "|": "|", "(": "(", ")": ")",
           "¬": "!", "∧": "&", "∨": "|"}


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    pos = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            pos += len(ch.encode("utf-8"))
            i += 1
            continue
        if text.startswith("<->", i):
            tokens.append(_Token("<->", "<->", pos))
            i += 3
            pos += 3
            continue
        if text.startswith("->", i):
            tokens.append(_Token("->", "->", pos))
            i += 2
            pos += 2
            continue
        if ch == "→":
            tokens.append(_Token("->", ch, pos))
        elif ch == "↔":
            tokens.append(_Token("<->", ch, pos))
        elif ch in _SINGLE:
            tokens.append(_Token(_SINGLE[ch], ch, pos))
        elif ch in "01":
            tokens.append(_Token("const", ch, pos))
        elif ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i + 1
            while j < length and text[j].isascii() and (text[j].isalnum()
                                                        or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], pos))
            pos += j - i
            i = j
            continue
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
        pos += len(ch.encode("utf-8"))
        i += 1
    tokens.append(_Token("end", "", pos))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.at = 0

    def peek(self) -> _Token:
        return self.tokens[self.at]

    def advance(self) -> _Token:
        token = self.tokens[self.at]
        self.at += 1
        return token

    def formula(self) -> Formula:
        node = self.iff()
        tail = self.peek()
        if tail.kind != "end":
            raise ParseError(f"unexpected {tail.text!r} after formula", tail.pos)
        return node

    def iff(self) -> Formula:
        node = self.imp()
        while self.peek().kind == "<->":
            self.advance()
            node = Iff(node, self.imp())
        return node

    def imp(self) -> Formula:
        node = self.or_()
        if self.peek().kind == "->":
            self.advance()
            node = Implies(node, self.imp())
        return node

    def or_(self) -> Formula:
        node = self.and_()
        while self.peek().kind == "|":
            self.advance()
            node = Or(node, self.and_())
        return node

    def and_(self) -> Formula:
        node = self.not_()
        while self.peek().kind == "&":
            self.advance()
            node = And(node, self.not_())
        return node

    def not_(self) -> Formula:
        if self.peek().kind == "!":
            self.advance()
            return Not(self.not_())
        return self.primary()

    def primary(self) -> Formula:
        token = self.peek()
        if token.kind == "const":
            self.advance()
            return Const(int(token.text))
        if token.kind == "ident":
            self.advance()
            return Atom(token.text)
        if token.kind == "(":
            self.advance()
            node = self.iff()
            closing = self.peek()
            if closing.kind != ")":
                raise ParseError(f"expected ')', found {closing.text!r}"
                                 if closing.kind != "end" else
                                 "expected ')', found end of input", closing.pos)
            self.advance()
            return node
        if token.kind == "end":
            raise ParseError("unexpected end of input", token.pos)
        raise ParseError(f"unexpected token {token.text!r}", token.pos)


def parse(text: str) -> Formula:
    """Parse a formula; raises ParseError with a byte position on failure."""
    return _Parser(_tokenize(text)).formula()


_LEVEL = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Atom: 6, Const: 6}


def _render(f: Formula, floor: int) -> str:
    level = _LEVEL[type(f)]
    if isinstance(f, Const):
        s = "1" if f.value else "0"
    elif isinstance(f, Atom):
        s = f.name
    elif isinstance(f, Not):
        s = "!" + _render(f.operand, 5)
    elif isinstance(f, And):
        s = _render(f.left, 4) + " & " + _render(f.right, 5)
    elif isinstance(f, Or):
        s = _render(f.left, 3) + " | " + _render(f.right, 4)
    elif isinstance(f, Implies):
        s = _render(f.left, 3) + " -> " + _render(f.right, 2)
    else:
        s = _render(f.left, 1) + " <-> " + _render(f.right, 2)
    if level < floor:
        return "(" + s + ")"
    return s


def unparse(f: Formula) -> str:
    """Render with minimal parentheses; parse(unparse(f)) equals f."""
    return _render(f, 0)


def atoms_of(f: Formula) -> list[str]:
    """Atom names occurring in the formula, sorted lexically."""
    seen: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            seen.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or, Implies, Iff)):
            stack.append(node.left)
            stack.append(node.right)
    return sorted(seen)


def evaluate(f: Formula, algebra: FreeBooleanAlgebra,
             binding: dict[str, Element | str] | None = None) -> Element:
    """Truth-table evaluation of ``f`` as an element of a free algebra.

    ``binding`` maps atom names to carrier elements (or element names)
    and defaults to binding each of the algebra's own atoms to itself.
    Since every connective acts row by row, this is substitution:
    the result is f with each atom replaced by its bound proposition.
    Logical AND lands on the additive operation and OR on the
    multiplicative one; ``->`` and ``<->`` use their usual expansions.
    """
    if not isinstance(algebra, FreeBooleanAlgebra):
        raise UnsupportedOperationError("evaluation needs a free Boolean algebra")
    if binding is None:
        values = {name: algebra.atom_value(i)
                  for i, name in enumerate(algebra.atoms)}
    else:
        values = {}
        for name, bound in binding.items():
            if isinstance(bound, str):
                values[name] = algebra.index_of(bound)
            else:
                values[name] = algebra._member(bound)
    mask = algebra.mask

    def walk(node: Formula) -> int:
        if isinstance(node, Const):
            return mask if node.value else 0
        if isinstance(node, Atom):
            idx = values.get(node.name)
            if idx is None:
                raise UnboundAtomError(f"atom {node.name!r} is not bound")
            return idx
        if isinstance(node, Not):
            return mask ^ walk(node.operand)
        if isinstance(node, And):
            return walk(node.left) & walk(node.right)
        if isinstance(node, Or):
            return walk(node.left) | walk(node.right)
        if isinstance(node, Implies):
            return (mask ^ walk(node.left)) | walk(node.right)
        if isinstance(node, Iff):
            return mask ^ (walk(node.left) ^ walk(node.right))
        raise TypeError(f"not a formula node: {node!r}")

    return algebra.element(walk(f))
