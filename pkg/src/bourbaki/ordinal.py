"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
decreasing exponents (themselves ordinals) and positive integer coefficients.
The empty tuple is 0.  These index the stages of transfinite towers.

Text grammar (``w`` stands for omega, ``ω`` is accepted on input)::

    sum      := product ("+" product)*
    product  := "w" ["^" exponent] ["*" k] | k
    exponent := k | "w" ["^" exponent] | "(" sum ")"
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonCanonical, OrdinalParseError


class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple(terms)
        prev = None
        for term in terms:
            if not (isinstance(term, tuple) and len(term) == 2):
                raise NonCanonical(f"term {term!r} is not an (exponent, coefficient) pair")
            exp, coeff = term
            if not isinstance(exp, Ordinal):
                raise NonCanonical(f"exponent {exp!r} is not an Ordinal")
            if not isinstance(coeff, int) or isinstance(coeff, bool) or coeff < 1:
                raise NonCanonical(f"coefficient {coeff!r} must be a positive integer")
            if prev is not None and ord_compare(prev, exp) <= 0:
                raise NonCanonical("exponents must be strictly decreasing")
            prev = exp
        self.terms: tuple[tuple[Ordinal, int], ...] = terms
        self._hash = hash(terms)

    @classmethod
    def finite(cls, n: int) -> Ordinal:
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((ZERO, n),)) if n else ZERO

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Ordinal) -> bool:
        return ord_compare(self, other) < 0

    def __le__(self, other: Ordinal) -> bool:
        return ord_compare(self, other) <= 0

    def __gt__(self, other: Ordinal) -> bool:
        return ord_compare(self, other) > 0

    def __ge__(self, other: Ordinal) -> bool:
        return ord_compare(self, other) >= 0

    def __repr__(self) -> str:
        return f"Ordinal({ord_format(self)!r})"

    def __str__(self) -> str:
        return ord_format(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def _as_ordinal(a) -> Ordinal:
    if isinstance(a, Ordinal):
        return a
    if isinstance(a, int) and not isinstance(a, bool):
        return Ordinal.finite(a)
    raise NonCanonical(f"{a!r} is not an ordinal")


def ord_compare(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    a, b = _as_ordinal(a), _as_ordinal(b)
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ord_compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def ord_successor(a: Ordinal) -> Ordinal:
    a = _as_ordinal(a)
    if a.terms and not a.terms[-1][0].terms:
        return Ordinal(a.terms[:-1] + ((ZERO, a.terms[-1][1] + 1),))
    return Ordinal(a.terms + ((ZERO, 1),))


@dataclass(frozen=True)
class OrdinalKind:
    kind: str  # "zero" | "successor" | "limit"
    predecessor: Ordinal | None = None


def ord_classify(a: Ordinal) -> OrdinalKind:
    a = _as_ordinal(a)
    if not a.terms:
        return OrdinalKind("zero")
    exp, coeff = a.terms[-1]
    if exp.terms:
        return OrdinalKind("limit")
    head = a.terms[:-1] + (((ZERO, coeff - 1),) if coeff > 1 else ())
    return OrdinalKind("successor", Ordinal(head))


def ord_add_omega(a: Ordinal) -> Ordinal:
    """``a + w``, the least limit ordinal strictly above ``a``."""
    a = _as_ordinal(a)
    kept = tuple(t for t in a.terms if t[0].terms)
    if kept and kept[-1][0] == ONE:
        return Ordinal(kept[:-1] + ((ONE, kept[-1][1] + 1),))
    return Ordinal(kept + ((ONE, 1),))


def infinite_part(a: Ordinal) -> Ordinal:
    """``a`` with its finite tail removed; ``a - infinite_part(a)`` is finite."""
    return Ordinal(t for t in _as_ordinal(a).terms if t[0].terms)


def finite_distance(a: Ordinal, b: Ordinal) -> int | None:
    """``n`` with ``a + n == b`` when one exists, else ``None``."""
    a, b = _as_ordinal(a), _as_ordinal(b)
    if infinite_part(a) != infinite_part(b) or b < a:
        return None
    tail = lambda o: o.terms[-1][1] if o.terms and not o.terms[-1][0].terms else 0  # noqa: E731
    return tail(b) - tail(a)


def _format_exponent(e: Ordinal) -> str:
    if e.is_finite() or (len(e.terms) == 1 and e.terms[0][1] == 1):
        return ord_format(e)
    return f"({ord_format(e)})"


def ord_format(a: Ordinal) -> str:
    a = _as_ordinal(a)
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if not exp.terms:
            parts.append(str(coeff))
            continue
        base = "w" if exp == ONE else f"w^{_format_exponent(exp)}"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace("ω", "w").replace(" ", "")
        self.pos = 0

    def error(self, expected: str):
        raise OrdinalParseError(self.pos, expected, self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("an integer")
        return int(self.text[start:self.pos])

    def sum(self) -> Ordinal:
        terms = [self.product()]
        while self.eat("+"):
            terms.append(self.product())
        nonzero = [t for t in terms if t is not None]
        if not nonzero:
            return ZERO
        if len(nonzero) != len(terms):
            raise NonCanonical(f"zero summand in {self.text!r}")
        try:
            return Ordinal(nonzero)
        except NonCanonical:
            raise NonCanonical(f"exponents not strictly decreasing in {self.text!r}") from None

    def product(self):
        if self.peek().isdigit():
            k = self.integer()
            return (ZERO, k) if k else None
        if not self.eat("w"):
            self.error("'w' or an integer")
        exp = self.exponent() if self.eat("^") else ONE
        coeff = self.integer() if self.eat("*") else 1
        if coeff == 0:
            raise NonCanonical("coefficient 0")
        return (exp, coeff)

    def exponent(self) -> Ordinal:
        if self.peek().isdigit():
            return Ordinal.finite(self.integer())
        if self.eat("("):
            inner = self.sum()
            if not self.eat(")"):
                self.error("')'")
            return inner
        if self.eat("w"):
            exp = self.exponent() if self.eat("^") else ONE
            return Ordinal(((exp, 1),))
        self.error("an exponent")

    def parse(self) -> Ordinal:
        if not self.text:
            self.error("an ordinal expression")
        result = self.sum()
        if self.pos != len(self.text):
            self.error("end of input")
        return result


def ord_parse(text: str) -> Ordinal:
    """Parse the ``w`` grammar, e.g. ``"w^2+w*3+1"``."""
    return _Parser(text).parse()
