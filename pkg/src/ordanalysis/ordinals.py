"""Ordinal notations below the first fixed point of xi -> epsilon_xi.

A notation is either ``Zero``, a ``Sum`` of monomials ``w^e * c`` written
with strictly decreasing exponents, or ``Eps(a)`` standing for epsilon_a.
Every public operation takes and returns normal forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import NamedTuple, Union

__all__ = [
    "OrdTerm", "Zero", "Sum", "Eps", "ZERO", "ONE", "OMEGA", "LT", "EQ", "GT",
    "normalize", "compare", "add", "nat_sum", "omega_pow", "eps", "classify",
    "nat", "is_finite", "finite_value", "split_finite", "Classification",
    "OrdinalSyntaxError", "parse_ord", "format_ord", "leq", "lt", "omax",
]

LT, EQ, GT = -1, 0, 1


@total_ordering
class _Ordered:
    def __lt__(self, other):
        if not isinstance(other, _Ordered):
            return NotImplemented
        return compare(self, other) < 0

    def __str__(self):
        return format_ord(self)

    def __repr__(self):
        return f"<ord {format_ord(self)}>"


@dataclass(frozen=True, repr=False)
class Zero(_Ordered):
    pass


@dataclass(frozen=True, repr=False)
class Sum(_Ordered):
    terms: tuple  # ((exponent, coefficient), ...)


@dataclass(frozen=True, repr=False)
class Eps(_Ordered):
    sub: "OrdTerm"


OrdTerm = Union[Zero, Sum, Eps]

ZERO = Zero()


def _cnf(a):
    if isinstance(a, Zero):
        return ()
    if isinstance(a, Eps):
        return ((a, 1),)
    return a.terms


def _mk(terms) -> OrdTerm:
    """Build a term from an already sorted, merged monomial list."""
    terms = tuple((e, c) for e, c in terms if c > 0)
    if not terms:
        return ZERO
    if len(terms) == 1 and isinstance(terms[0][0], Eps) and terms[0][1] == 1:
        return terms[0][0]
    return Sum(terms)


def compare(a: OrdTerm, b: OrdTerm) -> int:
    if a is b:
        return EQ
    if isinstance(a, Eps) and isinstance(b, Eps):
        return compare(a.sub, b.sub)
    ca, cb = _cnf(a), _cnf(b)
    for (ea, na), (eb, nb) in zip(ca, cb):
        c = compare(ea, eb)
        if c:
            return c
        if na != nb:
            return LT if na < nb else GT
    if len(ca) == len(cb):
        return EQ
    return LT if len(ca) < len(cb) else GT


def lt(a, b) -> bool:
    return compare(a, b) < 0


def leq(a, b) -> bool:
    return compare(a, b) <= 0


def omax(*args) -> OrdTerm:
    best = ZERO
    for a in args:
        if compare(a, best) > 0:
            best = a
    return best


def _merge(*lists):
    acc: list = []
    for lst in lists:
        for e, c in lst:
            for k, (e2, c2) in enumerate(acc):
                if e2 == e:
                    acc[k] = (e2, c2 + c)
                    break
            else:
                acc.append((e, c))
    acc.sort(key=_SortKey, reverse=True)
    return acc


class _SortKey:
    __slots__ = ("m",)

    def __init__(self, m):
        self.m = m

    def __lt__(self, other):
        return compare(self.m[0], other.m[0]) < 0


def normalize(raw) -> OrdTerm:
    """Canonical form of an arbitrary term.

    Monomials of a raw ``Sum`` are treated as a multiset: they are sorted by
    exponent and merged, so ``w^0*2 + w^1*1`` becomes ``w + 2``.
    """
    if isinstance(raw, Zero):
        return ZERO
    if isinstance(raw, Eps):
        return Eps(normalize(raw.sub))
    if isinstance(raw, Sum):
        return _mk(_merge([(normalize(e), int(c)) for e, c in raw.terms if c]))
    raise TypeError(f"not an ordinal term: {raw!r}")


def nat(n: int) -> OrdTerm:
    if n < 0:
        raise ValueError("negative ordinal")
    return Sum(((ZERO, n),)) if n else ZERO


ONE = nat(1)
OMEGA = Sum(((ONE, 1),))


def add(a: OrdTerm, b: OrdTerm) -> OrdTerm:
    cb = _cnf(b)
    if not cb:
        return a
    lead = cb[0][0]
    out = []
    for e, c in _cnf(a):
        k = compare(e, lead)
        if k > 0:
            out.append((e, c))
        elif k == 0:
            out.append((e, c + cb[0][1]))
            return _mk(out + list(cb[1:]))
        else:
            break
    return _mk(out + list(cb))


def nat_sum(a: OrdTerm, b: OrdTerm) -> OrdTerm:
    return _mk(_merge(_cnf(a), _cnf(b)))


def omega_pow(a: OrdTerm) -> OrdTerm:
    if isinstance(a, Eps):
        return a
    return Sum(((a, 1),))


def eps(a: OrdTerm) -> OrdTerm:
    return Eps(a)


class Classification(NamedTuple):
    kind: str  # "zero" | "successor" | "limit"
    predecessor: "OrdTerm | None" = None


def classify(a: OrdTerm) -> Classification:
    ca = _cnf(a)
    if not ca:
        return Classification("zero")
    e, c = ca[-1]
    if isinstance(e, Zero):
        return Classification("successor", _mk(list(ca[:-1]) + [(e, c - 1)]))
    return Classification("limit")


def is_finite(a: OrdTerm) -> bool:
    return all(isinstance(e, Zero) for e, _ in _cnf(a))


def finite_value(a: OrdTerm) -> int:
    if not is_finite(a):
        raise ValueError(f"{a} is infinite")
    return sum(c for _, c in _cnf(a))


def split_finite(a: OrdTerm) -> tuple:
    """Split ``a`` as ``limit_part + k`` with ``k`` finite."""
    ca = _cnf(a)
    if ca and isinstance(ca[-1][0], Zero):
        return _mk(ca[:-1]), ca[-1][1]
    return a, 0


# -- text syntax -----------------------------------------------------------

class OrdinalSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self):
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise OrdinalSyntaxError(f"expected {ch!r}", self.i)
        self.i += 1

    def number(self) -> int:
        self.ws()
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            raise OrdinalSyntaxError("expected a natural number", j)
        return int(self.s[j:self.i])

    def term(self):
        mons = [self.summand()]
        while self.peek() == "+":
            self.i += 1
            mons.append(self.summand())
        return mons

    def summand(self):
        ch = self.peek()
        if ch == "w":
            self.i += 1
            exp = ONE
            if self.peek() == "^":
                self.i += 1
                self.expect("(")
                exp = normalize(Sum(tuple(self.term())))
                self.expect(")")
            coeff = 1
            if self.peek() == "*":
                self.i += 1
                coeff = self.number()
            return (exp, coeff)
        if ch == "e":
            self.i += 1
            self.expect("(")
            sub = normalize(Sum(tuple(self.term())))
            self.expect(")")
            coeff = 1
            if self.peek() == "*":
                self.i += 1
                coeff = self.number()
            return (Eps(sub), coeff)
        if ch.isdigit():
            return (ZERO, self.number())
        raise OrdinalSyntaxError(f"unexpected {ch or 'end of input'!r}", self.i)


def parse_ord(text: str) -> OrdTerm:
    p = _Parser(text)
    mons = p.term()
    p.ws()
    if p.i != len(text):
        raise OrdinalSyntaxError(f"trailing input {text[p.i]!r}", p.i)
    return normalize(Sum(tuple(mons)))


def format_ord(a: OrdTerm) -> str:
    if isinstance(a, Zero):
        return "0"
    if isinstance(a, Eps):
        return f"e({format_ord(a.sub)})"
    if is_finite(a):
        return str(finite_value(a))
    parts = []
    for e, c in a.terms:
        if isinstance(e, Eps) and c == 1:
            parts.append(format_ord(e))
        else:
            parts.append(f"w^({format_ord(e)})*{c}")
    return "+".join(parts)
