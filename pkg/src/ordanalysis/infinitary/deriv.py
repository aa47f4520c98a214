"""Finitely represented infinitary derivations.

A node of the omega rule does not store its premises.  It stores a *family*,
an object that produces the premise for any numeral on demand, together
with a height expression bounding the premise heights as a function of that
numeral.  Families are pure: the same numeral always yields an equal
premise, and instances are cached.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

from ..ordinals import (
    OMEGA, ZERO, OrdTerm, add, classify, compare, nat, nat_sum, omega_pow,
    split_finite,
)
from ..orders import get_order
from ..syntax import Num, closed_nf, subst_term, term_value, term_vars

RULES = ("axTrue", "axSet", "andI", "orI", "exI", "omega", "cutI")


@lru_cache(maxsize=200_000)
def norm(f):
    return closed_nf(f)


def seq(*fs) -> frozenset:
    return frozenset(norm(f) for f in fs)


# -- height expressions ----------------------------------------------------

class OrdExpr:
    """An ordinal-valued expression in the distinguished variable."""

    def at(self, var: str, n: int) -> OrdTerm:
        raise NotImplementedError

    def bound(self, var: str):
        """``(U, strict)``: every value is below U (strict) or at most U."""
        raise NotImplementedError


@dataclass(frozen=True)
class Const(OrdExpr):
    value: OrdTerm

    def at(self, var, n):
        return self.value

    def bound(self, var):
        return self.value, False


@dataclass(frozen=True)
class Nat(OrdExpr):
    """The finite ordinal denoted by a number term."""
    term: object

    def at(self, var, n):
        return nat(term_value(subst_term(self.term, var, Num(n))))

    def bound(self, var):
        if var in term_vars(self.term):
            return OMEGA, True
        return nat(term_value(self.term)), False


@dataclass(frozen=True)
class Add(OrdExpr):
    left: OrdExpr
    right: OrdExpr

    def at(self, var, n):
        return add(self.left.at(var, n), self.right.at(var, n))

    def bound(self, var):
        ua, sa = self.left.bound(var)
        ub, sb = self.right.bound(var)
        finite_right = split_finite(ub)[0] == ZERO
        return add(ua, ub), sb or (sa and finite_right)


@dataclass(frozen=True)
class NatSum(OrdExpr):
    left: OrdExpr
    right: OrdExpr

    def at(self, var, n):
        return nat_sum(self.left.at(var, n), self.right.at(var, n))

    def bound(self, var):
        ua, sa = self.left.bound(var)
        ub, sb = self.right.bound(var)
        return nat_sum(ua, ub), sa or sb


@dataclass(frozen=True)
class Pow(OrdExpr):
    arg: OrdExpr

    def at(self, var, n):
        return omega_pow(self.arg.at(var, n))

    def bound(self, var):
        u, s = self.arg.bound(var)
        return omega_pow(u), s


def stretch(w: OrdTerm, mul: int, add_: int) -> OrdTerm:
    """beta + mul*k + add for w = beta + k with beta a limit or zero."""
    beta, k = split_finite(w)
    return add(beta, nat(mul * k + add_))


@dataclass(frozen=True)
class Stretch(OrdExpr):
    """Order-type witness of the variable, with its finite tail scaled."""
    order: str
    mul: int
    plus: int

    def at(self, var, n):
        o = get_order(self.order)
        w = o.witness(n) if o.in_field(n) else ZERO  # off the field: as if 0
        return stretch(w, self.mul, self.plus)

    def bound(self, var):
        otyp = get_order(self.order).otyp
        if classify(otyp).kind == "limit":
            return otyp, True
        beta, k = split_finite(otyp)
        if k == 0:
            return ZERO, False
        return stretch(otyp, self.mul, self.plus - self.mul), False


@dataclass(frozen=True)
class Cond(OrdExpr):
    """``then`` where the variable is a predecessor of ``pivot`` (kind
    ``prec``) or a field element (kind ``fld``), ``other`` elsewhere."""
    kind: str
    order: str
    pivot: object  # number term; ignored for kind fld
    then: OrdExpr
    other: OrdExpr

    def holds(self, n):
        o = get_order(self.order)
        if self.kind == "fld":
            return o.in_field(n)
        return o.less(n, term_value(self.pivot))

    def at(self, var, n):
        return (self.then if self.holds(n) else self.other).at(var, n)

    def bound(self, var):
        b1 = self._then_bound(var)
        b2 = self.other.bound(var)
        return _bmax(b1, b2)

    def _then_bound(self, var):
        t = self.then
        if (self.kind == "prec" and isinstance(t, Stretch) and t.order == self.order
                and t.plus >= t.mul and not term_vars(self.pivot)):
            # predecessors m of p satisfy stretch(m) <= stretch(p) - mul
            w = get_order(self.order).witness(term_value(self.pivot))
            return stretch(w, t.mul, t.plus - t.mul), False
        return t.bound(var)


def _bmax(a, b):
    c = compare(a[0], b[0])
    if c > 0:
        return a
    if c < 0:
        return b
    return a[0], a[1] and b[1]


def uniform_ok(hexpr: OrdExpr, var: str, height: OrdTerm) -> bool:
    u, strict = hexpr.bound(var)
    c = compare(u, height)
    return c <= 0 if strict else c < 0


# -- families --------------------------------------------------------------

GENERATORS: dict = {}
LIFTS: dict = {}


def generator(name):
    def deco(fn):
        GENERATORS[name] = fn
        return fn
    return deco


def lift(name):
    def deco(fn):
        LIFTS[name] = fn
        return fn
    return deco


class Family:
    """Produces the premise of an omega node at each numeral."""

    def __init__(self):
        self._cache = {}

    def instance(self, n: int) -> "InfDeriv":
        d = self._cache.get(n)
        if d is None:
            d = self._make(n)
            if len(self._cache) < 4096:
                self._cache[n] = d
        return d

    def _make(self, n):
        raise NotImplementedError


class Template(Family):
    """A derivation with a distinguished free number variable."""

    def __init__(self, var: str, body: "InfDeriv"):
        super().__init__()
        self.var, self.body = var, body

    def _make(self, n):
        return subst_deriv(self.body, self.var, Num(n))


class Gen(Family):
    """Named builder applied to fixed arguments and the numeral."""

    def __init__(self, name: str, *args):
        super().__init__()
        if name not in GENERATORS:
            raise KeyError(f"unknown generator {name!r}")
        self.name, self.args = name, args

    def _make(self, n):
        return GENERATORS[self.name](*self.args, n)


class Lift(Family):
    """A transformation applied instance-wise to another family."""

    def __init__(self, op: str, args: tuple, base: Family):
        super().__init__()
        if op not in LIFTS:
            raise KeyError(f"unknown lift {op!r}")
        self.op, self.args, self.base = op, tuple(args), base

    def _make(self, n):
        return LIFTS[self.op](self.base.instance(n), *self.args)


# -- nodes -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InfDeriv:
    rule: str
    sequent: frozenset
    height: OrdTerm
    rank: int = 0
    formula: object = None  # atom, principal formula or cut formula
    premises: tuple = ()
    side: int = 0
    witness: int = 0
    var: str = "x"
    hexpr: OrdExpr = None
    family: Family = field(default=None, repr=False)

    def premise(self, n: int) -> "InfDeriv":
        """n-th premise; for the omega rule the instance at numeral n."""
        if self.rule == "omega":
            return self.family.instance(n)
        return self.premises[n]

    def with_(self, **kw) -> "InfDeriv":
        return replace(self, **kw)

    def __repr__(self):
        return f"<InfDeriv {self.rule} h={self.height} r={self.rank} |seq|={len(self.sequent)}>"


def ax_true(sequent, atom) -> InfDeriv:
    return InfDeriv("axTrue", frozenset(sequent) | {norm(atom)}, ZERO, 0, norm(atom))


def ax_set(sequent, lit) -> InfDeriv:
    """``lit`` is the member ``n in X``; its partner ``n notin X`` is implied."""
    from ..syntax import dual
    lit = norm(lit)
    return InfDeriv("axSet", frozenset(sequent) | {lit, dual(lit)}, ZERO, 0, lit)


def _top(*ds):
    h = ZERO
    for d in ds:
        if compare(d.height, h) > 0:
            h = d.height
    return add(h, nat(1))


def _h(height, default):
    return default if height is None else height


def and_i(sequent, f, left, right, height=None, rank=None) -> InfDeriv:
    return InfDeriv("andI", frozenset(sequent), _h(height, _top(left, right)),
                    max(left.rank, right.rank) if rank is None else rank,
                    norm(f), (left, right))


def or_i(sequent, f, side, sub, height=None, rank=None) -> InfDeriv:
    return InfDeriv("orI", frozenset(sequent), _h(height, _top(sub)),
                    sub.rank if rank is None else rank, norm(f), (sub,), side=side)


def ex_i(sequent, f, witness, sub, height=None, rank=None) -> InfDeriv:
    return InfDeriv("exI", frozenset(sequent), _h(height, _top(sub)),
                    sub.rank if rank is None else rank, norm(f), (sub,),
                    witness=witness)


def cut_i(sequent, f, left, right, height=None, rank=None) -> InfDeriv:
    from ..syntax import rank as frank
    r = max(left.rank, right.rank, frank(f) + 1) if rank is None else rank
    return InfDeriv("cutI", frozenset(sequent), _h(height, _top(left, right)), r,
                    norm(f), (left, right))


def omega_i(sequent, f, family, hexpr, height, rank=0, var="x") -> InfDeriv:
    return InfDeriv("omega", frozenset(sequent), height, rank, norm(f),
                    var=var, hexpr=hexpr, family=family)


def weaken(d: InfDeriv, extra) -> InfDeriv:
    """Same derivation of a larger sequent (premises may drop formulas)."""
    extra = frozenset(extra)
    if extra <= d.sequent:
        return d
    return replace(d, sequent=d.sequent | extra)


# -- substitution into templates ---------------------------------------------

def _subst_formula(f, var, t):
    from ..syntax import subst
    return norm(subst(f, var, t))


def _subst_oexpr(e, var, t):
    if isinstance(e, Nat):
        return Nat(subst_term(e.term, var, t))
    if isinstance(e, (Add, NatSum)):
        return type(e)(_subst_oexpr(e.left, var, t), _subst_oexpr(e.right, var, t))
    if isinstance(e, Pow):
        return Pow(_subst_oexpr(e.arg, var, t))
    if isinstance(e, Cond):
        return Cond(e.kind, e.order, subst_term(e.pivot, var, t) if e.pivot is not None else None,
                    _subst_oexpr(e.then, var, t), _subst_oexpr(e.other, var, t))
    return e


def _subst_arg(a, var, t):
    from ..syntax import ATOMS, And, Exists, ForAll, Or, subst
    if isinstance(a, InfDeriv):
        return subst_deriv(a, var, t)
    if isinstance(a, ATOMS + (And, Or, ForAll, Exists)):
        return norm(subst(a, var, t))
    if isinstance(a, frozenset):
        return frozenset(_subst_arg(x, var, t) for x in a)
    return a


def _subst_family(fam, var, t):
    if isinstance(fam, Template):
        if fam.var == var:
            return fam
        return Template(fam.var, subst_deriv(fam.body, var, t))
    if isinstance(fam, Gen):
        return Gen(fam.name, *[_subst_arg(a, var, t) for a in fam.args])
    if isinstance(fam, Lift):
        return Lift(fam.op, tuple(_subst_arg(a, var, t) for a in fam.args),
                    _subst_family(fam.base, var, t))
    raise TypeError(fam)


def subst_deriv(d: InfDeriv, var: str, t) -> InfDeriv:
    sq = frozenset(_subst_formula(f, var, t) for f in d.sequent)
    f = _subst_formula(d.formula, var, t) if d.formula is not None else None
    if d.rule == "omega":
        if d.var == var:  # shadowed inside the family
            return replace(d, sequent=sq, formula=f)
        return replace(d, sequent=sq, formula=f, hexpr=_subst_oexpr(d.hexpr, var, t),
                       family=_subst_family(d.family, var, t))
    prem = tuple(subst_deriv(p, var, t) for p in d.premises)
    return replace(d, sequent=sq, formula=f, premises=prem)


__all__ = [
    "InfDeriv", "OrdExpr", "Const", "Nat", "Add", "NatSum", "Pow", "Stretch",
    "Cond", "Family", "Template", "Gen", "Lift", "GENERATORS", "LIFTS",
    "generator", "lift", "ax_true", "ax_set", "and_i", "or_i", "ex_i",
    "cut_i", "omega_i", "weaken", "seq", "norm", "stretch", "uniform_ok",
    "subst_deriv", "RULES",
]
