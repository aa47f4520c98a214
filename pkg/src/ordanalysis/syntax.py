"""The pseudo-Pi^1_1 language: one free set variable X over (0, 1, +, *).

Formulas are kept in negation normal form; negation is the De Morgan
``dual``.  Besides equations and X-literals the atomic signature carries the
decidable relations of registered orders (``prec``/``fld`` and their
complements), so transfinite induction along an order stays first order.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Union

from . import sexpr
from .orders import get_order
from .sexpr import Symbol, sym


def _node(cls):
    """Frozen dataclass with a memoised structural hash."""
    cls = dataclass(frozen=True, repr=False)(cls)
    plain = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_h"]
        except KeyError:
            h = plain(self)
            object.__setattr__(self, "_h", h)
            return h

    cls.__hash__ = __hash__
    cls.__repr__ = lambda self: f"<{type(self).__name__} {self}>"
    return cls


# -- terms ----------------------------------------------------------------

class _Term:
    def __str__(self):
        return sexpr.dumps(term_to_sx(self))


@_node
class Num(_Term):
    value: int


@_node
class Var(_Term):
    name: str


@_node
class Plus(_Term):
    left: "NumTerm"
    right: "NumTerm"


@_node
class Times(_Term):
    left: "NumTerm"
    right: "NumTerm"


NumTerm = Union[Num, Var, Plus, Times]


def term_vars(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, (Plus, Times)):
        return term_vars(t.left) | term_vars(t.right)
    return frozenset()


def term_value(t) -> int:
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Plus):
        return term_value(t.left) + term_value(t.right)
    if isinstance(t, Times):
        return term_value(t.left) * term_value(t.right)
    raise ValueError(f"open term: variable {t.name!r}")


def subst_term(t, var: str, s):
    if isinstance(t, Var):
        return s if t.name == var else t
    if isinstance(t, (Plus, Times)):
        left, right = subst_term(t.left, var, s), subst_term(t.right, var, s)
        if left is t.left and right is t.right:
            return t
        return type(t)(left, right)
    return t


def eval_closed_subterms(t):
    if isinstance(t, (Plus, Times)) and not term_vars(t):
        return Num(term_value(t))
    if isinstance(t, (Plus, Times)):
        return type(t)(eval_closed_subterms(t.left), eval_closed_subterms(t.right))
    return t


# -- formulas -------------------------------------------------------------

class _Formula:
    def __str__(self):
        return sexpr.dumps(formula_to_sx(self))


@_node
class Eq(_Formula):
    left: NumTerm
    right: NumTerm


@_node
class Neq(_Formula):
    left: NumTerm
    right: NumTerm


@_node
class In(_Formula):
    term: NumTerm


@_node
class NotIn(_Formula):
    term: NumTerm


@_node
class Prec(_Formula):
    order: str
    left: NumTerm
    right: NumTerm


@_node
class NPrec(_Formula):
    order: str
    left: NumTerm
    right: NumTerm


@_node
class Fld(_Formula):
    order: str
    term: NumTerm


@_node
class NFld(_Formula):
    order: str
    term: NumTerm


@_node
class And(_Formula):
    left: "Formula"
    right: "Formula"


@_node
class Or(_Formula):
    left: "Formula"
    right: "Formula"


@_node
class ForAll(_Formula):
    var: str
    body: "Formula"


@_node
class Exists(_Formula):
    var: str
    body: "Formula"


Formula = Union[Eq, Neq, In, NotIn, Prec, NPrec, Fld, NFld, And, Or, ForAll, Exists]

ATOMS = (Eq, Neq, In, NotIn, Prec, NPrec, Fld, NFld)
_DUAL = {Eq: Neq, Neq: Eq, In: NotIn, NotIn: In, Prec: NPrec, NPrec: Prec,
         Fld: NFld, NFld: Fld, And: Or, Or: And, ForAll: Exists, Exists: ForAll}


def is_atom(f) -> bool:
    return isinstance(f, ATOMS)


def is_set_literal(f) -> bool:
    return isinstance(f, (In, NotIn))


def _terms(f):
    return [getattr(f, fl.name) for fl in dataclasses.fields(f)
            if fl.name in ("left", "right", "term")]


def _map_terms(f, fn):
    kw = {fl.name: getattr(f, fl.name) for fl in dataclasses.fields(f)}
    for k in ("left", "right", "term"):
        if k in kw:
            kw[k] = fn(kw[k])
    return type(f)(**kw)


def dual(f):
    cls = _DUAL[type(f)]
    if isinstance(f, (And, Or)):
        return cls(dual(f.left), dual(f.right))
    if isinstance(f, (ForAll, Exists)):
        return cls(f.var, dual(f.body))
    kw = {fl.name: getattr(f, fl.name) for fl in dataclasses.fields(f)}
    return cls(**kw)


def rank(f) -> int:
    """Number of connectives and quantifiers; atoms have rank 0."""
    if isinstance(f, (And, Or)):
        return 1 + rank(f.left) + rank(f.right)
    if isinstance(f, (ForAll, Exists)):
        return 1 + rank(f.body)
    return 0


def depth(f) -> int:
    if isinstance(f, (And, Or)):
        return 1 + max(depth(f.left), depth(f.right))
    if isinstance(f, (ForAll, Exists)):
        return 1 + depth(f.body)
    return 0


def free_vars(f) -> frozenset:
    if isinstance(f, (And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (ForAll, Exists)):
        return free_vars(f.body) - {f.var}
    out = frozenset()
    for t in _terms(f):
        out |= term_vars(t)
    return out


def _fresh(base: str, avoid) -> str:
    k = 0
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


def subst(f, var: str, t):
    """Capture-avoiding substitution of term ``t`` for ``var``."""
    if isinstance(f, (And, Or)):
        left, right = subst(f.left, var, t), subst(f.right, var, t)
        if left is f.left and right is f.right:
            return f
        return type(f)(left, right)
    if isinstance(f, (ForAll, Exists)):
        if f.var == var or var not in free_vars(f.body):
            return f
        body, bound = f.body, f.var
        if bound in term_vars(t):
            new = _fresh(bound, term_vars(t) | free_vars(body))
            body, bound = subst(body, bound, Var(new)), new
        return type(f)(bound, subst(body, var, t))
    return _map_terms(f, lambda s: subst_term(s, var, t))


def subst_numeral(f, var: str, n: int):
    return subst(f, var, Num(n))


def instantiate(f, n: int):
    """Body of a quantified formula at the numeral ``n``, closed terms evaluated."""
    return closed_nf(subst(f.body, f.var, Num(n)))


def closed_nf(f):
    """Replace every closed compound term by its numeral value."""
    if isinstance(f, (And, Or)):
        return type(f)(closed_nf(f.left), closed_nf(f.right))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.var, closed_nf(f.body))
    return _map_terms(f, eval_closed_subterms)


def atom_truth(f):
    """Truth of a closed non-set atom in N; ``None`` for X-literals."""
    if isinstance(f, (In, NotIn)):
        return None
    if isinstance(f, (Eq, Neq)):
        v = term_value(f.left) == term_value(f.right)
        return v if isinstance(f, Eq) else not v
    if isinstance(f, (Prec, NPrec)):
        v = get_order(f.order).less(term_value(f.left), term_value(f.right))
        return v if isinstance(f, Prec) else not v
    if isinstance(f, (Fld, NFld)):
        v = get_order(f.order).in_field(term_value(f.term))
        return v if isinstance(f, Fld) else not v
    raise ValueError(f"not an atom: {f}")


def in_diag(f) -> bool:
    """Membership of a closed atom in the atomic diagram of N."""
    if not is_atom(f) or is_set_literal(f):
        raise ValueError(f"not an arithmetic atom: {f}")
    if free_vars(f):
        raise ValueError(f"open atom: {f}")
    return atom_truth(f)


def sequent(*fs) -> frozenset:
    return frozenset(fs)


# -- sets for X and bounded evaluation -----------------------------------

@dataclass(frozen=True)
class SetDescriptor:
    """A decidable interpretation of X."""

    kind: str  # empty | all | finite | cofinite | periodic
    members: frozenset = frozenset()
    modulus: int = 1

    def __contains__(self, n: int) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "all":
            return True
        if self.kind == "finite":
            return n in self.members
        if self.kind == "cofinite":
            return n not in self.members
        if self.kind == "periodic":
            return n % self.modulus in self.members
        raise ValueError(self.kind)

    def __str__(self):
        if self.kind in ("empty", "all"):
            return self.kind
        items = ",".join(str(m) for m in sorted(self.members))
        if self.kind == "periodic":
            return f"periodic:{self.modulus}:{items}"
        return f"{self.kind}:{items}"

    @classmethod
    def parse(cls, text: str) -> "SetDescriptor":
        def nums(s):
            return frozenset(int(x) for x in s.strip("{}").split(",") if x.strip())

        if text in ("empty", "all"):
            return cls(text)
        kind, _, rest = text.partition(":")
        if kind in ("finite", "cofinite"):
            return cls(kind, nums(rest))
        if kind == "periodic":
            mod, _, res = rest.partition(":")
            return cls("periodic", nums(res), int(mod))
        raise ValueError(f"bad set descriptor {text!r}")


EMPTY = SetDescriptor("empty")
ALL = SetDescriptor("all")


class Truth(Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"


def _and3(a, b):
    if Truth.FALSE in (a, b):
        return Truth.FALSE
    if a is Truth.TRUE and b is Truth.TRUE:
        return Truth.TRUE
    return Truth.UNKNOWN


def _or3(a, b):
    if Truth.TRUE in (a, b):
        return Truth.TRUE
    if a is Truth.FALSE and b is Truth.FALSE:
        return Truth.FALSE
    return Truth.UNKNOWN


def _disjuncts(f):
    if isinstance(f, Or):
        return _disjuncts(f.left) + _disjuncts(f.right)
    return [f]


def _conjuncts(f):
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def guard_domain(f):
    """Finite range of a guarded quantifier, or ``None``.

    ``forall y (y nprec t or ...)`` ranges over the predecessors of ``t`` and
    ``exists y (y prec t and ...)`` likewise; ``fld`` guards range over a
    finite field.
    """
    y = f.var
    if isinstance(f, ForAll):
        parts, neg_prec, neg_fld = _disjuncts(f.body), NPrec, NFld
    else:
        parts, neg_prec, neg_fld = _conjuncts(f.body), Prec, Fld
    for g in parts:
        if (isinstance(g, neg_prec) and g.left == Var(y)
                and not term_vars(g.right)):
            preds = get_order(g.order).predecessors(term_value(g.right))
            if preds is not None:
                return preds
        if isinstance(g, neg_fld) and g.term == Var(y):
            elems = get_order(g.order).field_elements()
            if elems is not None:
                return elems
    return None


def eval_bounded(f, X: SetDescriptor, fuel: int) -> Truth:
    """Three-valued truth of a closed formula under the interpretation X.

    Atoms are decided exactly.  A quantifier is exact when its variable is
    guarded by a finite domain (see :func:`guard_domain`); otherwise only a
    counterexample (resp. witness) within ``0..fuel`` yields a verdict.
    """
    if is_atom(f):
        if free_vars(f):
            raise ValueError(f"open formula: {f}")
        if isinstance(f, (In, NotIn)):
            v = term_value(f.term) in X
            return Truth.TRUE if v == isinstance(f, In) else Truth.FALSE
        return Truth.TRUE if atom_truth(f) else Truth.FALSE
    if isinstance(f, And):
        left = eval_bounded(f.left, X, fuel)
        if left is Truth.FALSE:
            return left
        return _and3(left, eval_bounded(f.right, X, fuel))
    if isinstance(f, Or):
        left = eval_bounded(f.left, X, fuel)
        if left is Truth.TRUE:
            return left
        return _or3(left, eval_bounded(f.right, X, fuel))
    if f.var not in free_vars(f.body):
        return eval_bounded(f.body, X, fuel)
    universal = isinstance(f, ForAll)
    decisive = Truth.FALSE if universal else Truth.TRUE
    domain = guard_domain(f)
    exact = domain is not None
    if not exact:
        domain = range(fuel + 1)
    acc = Truth.TRUE if universal else Truth.FALSE
    for n in domain:
        v = eval_bounded(instantiate(f, n), X, fuel)
        if v is decisive:
            return v
        if v is Truth.UNKNOWN:
            acc = Truth.UNKNOWN
    return acc if exact else Truth.UNKNOWN


def sequent_truth(gamma, X: SetDescriptor, fuel: int) -> Truth:
    acc = Truth.FALSE
    for f in gamma:
        acc = _or3(acc, eval_bounded(f, X, fuel))
        if acc is Truth.TRUE:
            break
    return acc


# -- s-expression syntax ---------------------------------------------------

_ATOM_SX = {Eq: "=", Neq: "!=", In: "in", NotIn: "notin", Prec: "prec",
            NPrec: "nprec", Fld: "fld", NFld: "nfld"}
_SX_ATOM = {v: k for k, v in _ATOM_SX.items()}
_BIN_SX = {And: "and", Or: "or", ForAll: "all", Exists: "ex"}
_SX_BIN = {v: k for k, v in _BIN_SX.items()}


def term_to_sx(t):
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        return sym(t.name)
    op = "+" if isinstance(t, Plus) else "*"
    return [sym(op), term_to_sx(t.left), term_to_sx(t.right)]


def term_from_sx(x):
    if isinstance(x, Symbol):
        return Var(str(x))
    if isinstance(x, int):
        return Num(x)
    if isinstance(x, list) and len(x) == 3 and x[0] in ("+", "*"):
        cls = Plus if x[0] == "+" else Times
        return cls(term_from_sx(x[1]), term_from_sx(x[2]))
    raise sexpr.ParseError(f"bad term {sexpr.dumps(x) if isinstance(x, list) else x!r}")


def formula_to_sx(f):
    if isinstance(f, (And, Or)):
        return [sym(_BIN_SX[type(f)]), formula_to_sx(f.left), formula_to_sx(f.right)]
    if isinstance(f, (ForAll, Exists)):
        return [sym(_BIN_SX[type(f)]), sym(f.var), formula_to_sx(f.body)]
    head = [sym(_ATOM_SX[type(f)])]
    if isinstance(f, (Prec, NPrec, Fld, NFld)):
        head.append(f.order)
    return head + [term_to_sx(t) for t in _terms(f)]


def formula_from_sx(x):
    if not isinstance(x, list) or not x or not isinstance(x[0], Symbol):
        raise sexpr.ParseError(f"bad formula {x!r}")
    head, args = str(x[0]), x[1:]
    if head in ("and", "or") and len(args) == 2:
        return _SX_BIN[head](formula_from_sx(args[0]), formula_from_sx(args[1]))
    if head in ("all", "ex") and len(args) == 2 and isinstance(args[0], Symbol):
        return _SX_BIN[head](str(args[0]), formula_from_sx(args[1]))
    cls = _SX_ATOM.get(head)
    if cls in (Prec, NPrec, Fld, NFld):
        if not args or not isinstance(args[0], str) or isinstance(args[0], Symbol):
            raise sexpr.ParseError(f"{head} needs a quoted order id")
        args = args[1:]
        want = 2 if cls in (Prec, NPrec) else 1
        if len(args) != want:
            raise sexpr.ParseError(f"{head} takes {want} terms")
        return cls(x[1], *[term_from_sx(a) for a in args])
    if cls in (Eq, Neq) and len(args) == 2:
        return cls(term_from_sx(args[0]), term_from_sx(args[1]))
    if cls in (In, NotIn) and len(args) == 1:
        return cls(term_from_sx(args[0]))
    raise sexpr.ParseError(f"bad formula head {head!r}")


def parse_formula(text: str):
    return formula_from_sx(sexpr.loads(text))


def format_formula(f) -> str:
    return sexpr.dumps(formula_to_sx(f))


def sort_key(f) -> str:
    return format_formula(f)
