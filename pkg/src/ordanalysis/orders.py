"""Decidable orders on the naturals with explicit order-type witnesses.

Each order is addressed by a short identifier (``fin:2``, ``omega``,
``omega2``, ``nota:e(0)``) so formulas and derivation files can refer to it.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import count, islice
from math import isqrt

from .ordinals import (
    ONE, OMEGA, ZERO, Eps, OrdTerm, Sum, add, compare, format_ord, nat,
    normalize, parse_ord,
)


class OrderDescriptor:
    """A decidable order on a subset of N.

    Subclasses supply ``in_field``, ``witness`` and ``otyp``; ``less`` is
    induced by the witness map, which therefore is order preserving by
    construction.  ``predecessors`` and ``field_elements`` return ``None``
    when the set in question is infinite.
    """

    ident: str
    otyp: OrdTerm

    def in_field(self, n: int) -> bool:
        raise NotImplementedError

    def witness(self, n: int) -> OrdTerm:
        raise NotImplementedError

    def less(self, x: int, y: int) -> bool:
        return (self.in_field(x) and self.in_field(y)
                and compare(self.witness(x), self.witness(y)) < 0)

    def predecessors(self, n: int):
        return None

    def field_elements(self):
        return None

    def sample_field(self, k: int) -> list:
        elems = self.field_elements()
        if elems is not None:
            return list(elems)[:k]
        return list(islice((n for n in count() if self.in_field(n)), k))

    def __repr__(self):
        return f"<order {self.ident}>"

    def __eq__(self, other):
        return isinstance(other, OrderDescriptor) and other.ident == self.ident

    def __hash__(self):
        return hash(self.ident)


class FiniteOrder(OrderDescriptor):
    """The chain 0 < 1 < ... < size-1."""

    def __init__(self, size: int):
        self.size = size
        self.ident = f"fin:{size}"
        self.otyp = nat(size)

    def in_field(self, n):
        return 0 <= n < self.size

    def witness(self, n):
        return nat(n)

    def predecessors(self, n):
        return list(range(min(n, self.size))) if self.in_field(n) else []

    def field_elements(self):
        return list(range(self.size))


class OmegaOrder(OrderDescriptor):
    ident = "omega"
    otyp = OMEGA

    def in_field(self, n):
        return n >= 0

    def witness(self, n):
        return nat(n)

    def less(self, x, y):
        return 0 <= x < y

    def predecessors(self, n):
        return list(range(n))


class OmegaTwoOrder(OrderDescriptor):
    """Evens in their natural order, followed by the odds: type w*2."""

    ident = "omega2"
    otyp = Sum(((ONE, 2),))

    def in_field(self, n):
        return n >= 0

    def witness(self, n):
        return nat(n // 2) if n % 2 == 0 else add(OMEGA, nat(n // 2))

    def predecessors(self, n):
        if n % 2 == 0:
            return list(range(0, n, 2))
        return None


# -- notation order --------------------------------------------------------

def _pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def _unpair(z: int) -> tuple:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def encode(t: OrdTerm) -> int:
    """Injective code of a notation as a natural number."""
    if t == ZERO:
        return 0
    if isinstance(t, Eps):
        return 2 * encode(t.sub) + 2
    lc = 0
    for e, c in reversed(t.terms):
        lc = 1 + _pair(_pair(encode(e), c - 1), lc)
    return 2 * lc + 1


def _decode_raw(n: int, depth: int = 0):
    if depth > 64:
        return None
    if n == 0:
        return ZERO
    if n % 2 == 0:
        sub = _decode_raw((n - 2) // 2, depth + 1)
        return None if sub is None else Eps(sub)
    lc = (n - 1) // 2
    mons = []
    while lc:
        m, lc = _unpair(lc - 1)
        ec, c = _unpair(m)
        e = _decode_raw(ec, depth + 1)
        if e is None:
            return None
        mons.append((e, c + 1))
    if not mons:
        return None
    return Sum(tuple(mons))


@lru_cache(maxsize=4096)
def decode(n: int):
    """Inverse of :func:`encode`; ``None`` for codes of no normal form."""
    raw = _decode_raw(n)
    if raw is None:
        return None
    t = normalize(raw)
    return t if encode(t) == n else None


class NotationOrder(OrderDescriptor):
    """Codes of notations below ``bound``, ordered by the notation order."""

    def __init__(self, bound: OrdTerm):
        self.bound = bound
        self.otyp = bound
        self.ident = f"nota:{format_ord(bound)}"

    def in_field(self, n):
        if n < 0:
            return False
        t = decode(n)
        return t is not None and compare(t, self.bound) < 0

    def witness(self, n):
        t = decode(n)
        return t if t is not None else ZERO


@lru_cache(maxsize=None)
def get_order(ident: str) -> OrderDescriptor:
    if ident == "omega":
        return OmegaOrder()
    if ident == "omega2":
        return OmegaTwoOrder()
    if ident.startswith("fin:"):
        return FiniteOrder(int(ident[4:]))
    if ident.startswith("nota:"):
        return NotationOrder(parse_ord(ident[5:]))
    raise KeyError(f"unknown order {ident!r}")


def check_descriptor(order: OrderDescriptor, samples) -> list:
    """Return violated invariants of ``order`` on the given sample points."""
    problems = []
    pts = [n for n in samples if order.in_field(n)]
    for x in pts:
        wx = order.witness(x)
        if compare(wx, order.otyp) >= 0:
            problems.append(f"witness({x}) = {wx} not below otyp {order.otyp}")
        for y in pts:
            want = compare(wx, order.witness(y)) < 0
            if order.less(x, y) != want:
                problems.append(f"less({x},{y}) disagrees with witnesses")
    for x in pts:
        preds = order.predecessors(x)
        if preds is not None:
            for y in pts:
                if order.less(y, x) and y not in preds:
                    problems.append(f"{y} missing from predecessors({x})")
    return problems


__all__ = [
    "OrderDescriptor", "FiniteOrder", "OmegaOrder", "OmegaTwoOrder",
    "NotationOrder", "get_order", "encode", "decode", "check_descriptor",
]
