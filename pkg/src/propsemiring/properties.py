"""Exhaustive semiring-axiom and classification checkers.

Every checker scans the whole carrier in lexicographic order and returns
a PropertyReport.  A fails verdict always carries the first witness the
scan met, so re-running the cited elements through the operation tables
reproduces the violated equation.  Exhaustive scanning is the point:
these checkers double as the oracle for every claim about an instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import Algebra, Element


@dataclass
class PropertyReport:
    """Outcome of one exhaustive check.

    ``witness`` holds element names; ``checked`` counts the tuples the
    scan examined before stopping (everything, when the property holds).
    """

    property: str
    holds: bool
    witness: tuple[str, ...] | None = None
    checked: int = 0
    details: dict | None = None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def to_json(self) -> dict:
        doc: dict = {
            "property": self.property,
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness is not None else None,
            "checked": self.checked,
        }
        if self.details:
            doc.update(self.details)
        return doc


def _names(algebra: Algebra, *indices: int) -> tuple[str, ...]:
    return tuple(algebra.name_of(i) for i in indices)


def _commutativity(name: str, algebra: Algebra,
                   op: Callable[[int, int], int]) -> PropertyReport:
    n = algebra.size
    checked = 0
    for i in range(n):
        for j in range(n):
            checked += 1
            if op(i, j) != op(j, i):
                return PropertyReport(name, False, _names(algebra, i, j), checked)
    return PropertyReport(name, True, None, checked)


def _associativity(name: str, algebra: Algebra,
                   op: Callable[[int, int], int]) -> PropertyReport:
    n = algebra.size
    checked = 0
    for i in range(n):
        for j in range(n):
            ij = op(i, j)
            for k in range(n):
                checked += 1
                if op(ij, k) != op(i, op(j, k)):
                    return PropertyReport(name, False,
                                          _names(algebra, i, j, k), checked)
    return PropertyReport(name, True, None, checked)


def _identity(name: str, algebra: Algebra, op: Callable[[int, int], int],
              e: int) -> PropertyReport:
    checked = 0
    for x in range(algebra.size):
        checked += 1
        if op(e, x) != x or op(x, e) != x:
            return PropertyReport(name, False, _names(algebra, x), checked,
                                  details={"identity": algebra.name_of(e)})
    return PropertyReport(name, True, None, checked,
                          details={"identity": algebra.name_of(e)})


def _distributivity(algebra: Algebra) -> PropertyReport:
    n = algebra.size
    add, mul = algebra.add_i, algebra.mul_i
    checked = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                checked += 1
                jk = add(j, k)
                if mul(i, jk) != add(mul(i, j), mul(i, k)):
                    return PropertyReport("distributivity", False,
                                          _names(algebra, i, j, k), checked,
                                          details={"side": "left"})
                if mul(jk, i) != add(mul(j, i), mul(k, i)):
                    return PropertyReport("distributivity", False,
                                          _names(algebra, i, j, k), checked,
                                          details={"side": "right"})
    return PropertyReport("distributivity", True, None, checked)


def is_multiplicatively_absorbing(algebra: Algebra) -> PropertyReport:
    """⊤ × p = ⊤ = p × ⊤ for every p."""
    top = algebra.top_index
    mul = algebra.mul_i
    checked = 0
    for p in range(algebra.size):
        checked += 1
        if mul(top, p) != top or mul(p, top) != top:
            return PropertyReport("top-absorbing", False, _names(algebra, p), checked)
    return PropertyReport("top-absorbing", True, None, checked)


def check_semiring_axioms(algebra: Algebra) -> list[PropertyReport]:
    """One report per axiom of a commutative semiring with absorbing ⊤."""
    return [
        _commutativity("add-commutativity", algebra, algebra.add_i),
        _associativity("add-associativity", algebra, algebra.add_i),
        _identity("add-identity", algebra, algebra.add_i, algebra.top_index),
        _commutativity("mul-commutativity", algebra, algebra.mul_i),
        _associativity("mul-associativity", algebra, algebra.mul_i),
        _identity("mul-identity", algebra, algebra.mul_i, algebra.bot_index),
        _distributivity(algebra),
        is_multiplicatively_absorbing(algebra),
    ]


def is_zerosumfree(algebra: Algebra) -> PropertyReport:
    """p + q = ⊤ forces p = q = ⊤."""
    n = algebra.size
    top = algebra.top_index
    add = algebra.add_i
    checked = 0
    for p in range(n):
        for q in range(n):
            checked += 1
            if add(p, q) == top and not (p == top and q == top):
                return PropertyReport("zerosumfree", False,
                                      _names(algebra, p, q), checked)
    return PropertyReport("zerosumfree", True, None, checked)


def is_entire(algebra: Algebra) -> PropertyReport:
    """p × q = ⊤ forces p = ⊤ or q = ⊤ (no zero divisors)."""
    n = algebra.size
    top = algebra.top_index
    mul = algebra.mul_i
    checked = 0
    for p in range(n):
        for q in range(n):
            checked += 1
            if mul(p, q) == top and p != top and q != top:
                return PropertyReport("entire", False, _names(algebra, p, q), checked)
    return PropertyReport("entire", True, None, checked)


def is_simple(algebra: Algebra) -> PropertyReport:
    """p + ⊥ = ⊥ for every p (⊥ is additively infinite)."""
    bot = algebra.bot_index
    add = algebra.add_i
    checked = 0
    for p in range(algebra.size):
        checked += 1
        if add(p, bot) != bot or add(bot, p) != bot:
            return PropertyReport("simple", False, _names(algebra, p), checked)
    return PropertyReport("simple", True, None, checked)


def compute_center(algebra: Algebra) -> list[Element]:
    """Elements commuting multiplicatively with the whole carrier."""
    n = algebra.size
    mul = algebra.mul_i
    center = []
    for p in range(n):
        if all(mul(p, q) == mul(q, p) for q in range(n)):
            center.append(Element(algebra, p))
    return center


def additively_cancellable_elements(algebra: Algebra) -> list[Element]:
    """Elements a with a + x = a + y (either side) forcing x = y."""
    n = algebra.size
    add = algebra.add_i
    out = []
    for a in range(n):
        row = [add(a, x) for x in range(n)]
        col = [add(x, a) for x in range(n)]
        if len(set(row)) == n and len(set(col)) == n:
            out.append(Element(algebra, a))
    return out
