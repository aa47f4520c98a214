"""Finitary Tait calculus over PA(X) and PA + TI(order, -).

Premises may drop formulas of the conclusion (weakening is built in): a
premise is acceptable when its sequent is contained in the conclusion plus
the rule's active formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import sexpr
from .orders import OrderDescriptor, get_order
from .sexpr import Symbol, sym
from .syntax import (
    And, Eq, Exists, Fld, ForAll, In, Neq, NFld, NotIn, NPrec, Num, Or, Plus,
    Times, Var, closed_nf, dual, formula_from_sx, formula_to_sx, free_vars, is_atom,
    sort_key, subst, term_from_sx, term_to_sx,
)

RULES = ("axL", "andR", "orR", "exR", "allR", "cut", "axiom")


@dataclass(frozen=True)
class FinNode:
    rule: str
    sequent: frozenset
    formula: object = None  # literal, principal, cut formula or axiom
    children: tuple = ()
    side: int = 0
    witness: object = None
    eigen: str = ""
    axiom_id: str = ""


@dataclass(frozen=True)
class FinProof:
    base: str
    root: FinNode


# -- axiom bases -----------------------------------------------------------

x, y = Var("x"), Var("y")
_one, _zero = Num(1), Num(0)

ALGEBRAIC = {
    "succ-nonzero": ForAll("x", Neq(Plus(x, _one), _zero)),
    "succ-inj": ForAll("x", ForAll("y", Or(Neq(Plus(x, _one), Plus(y, _one)), Eq(x, y)))),
    "zero-or-succ": ForAll("x", Or(Eq(x, _zero), Exists("y", Eq(x, Plus(y, _one))))),
    "add-zero": ForAll("x", Eq(Plus(x, _zero), x)),
    "add-succ": ForAll("x", ForAll("y", Eq(Plus(x, Plus(y, _one)), Plus(Plus(x, y), _one)))),
    "add-comm": ForAll("x", ForAll("y", Eq(Plus(x, y), Plus(y, x)))),
    "mul-zero": ForAll("x", Eq(Times(x, _zero), _zero)),
    "mul-succ": ForAll("x", ForAll("y", Eq(Times(x, Plus(y, _one)), Plus(Times(x, y), x)))),
    "eq-set": ForAll("x", ForAll("y", Or(Neq(x, y), Or(NotIn(x), In(y))))),
    "eq-succ": ForAll("x", ForAll("y", Or(Neq(x, y), Eq(Plus(x, _one), Plus(y, _one))))),
    "eq-trans": ForAll("x", ForAll("y", ForAll("z", Or(Neq(x, y), Or(Neq(y, Var("z")), Eq(x, Var("z"))))))),
}


def mk_induction(phi, var: str = "x"):
    """phi(0) and forall v (phi(v) -> phi(v+1)) -> forall v phi(v), in NNF."""
    extra = free_vars(phi) - {var}
    if extra:
        raise ValueError(f"induction formula has parameters {sorted(extra)}")
    step = Exists(var, And(phi, dual(subst(phi, var, Plus(Var(var), _one)))))
    return Or(Or(dual(subst(phi, var, _zero)), step), ForAll(var, phi))


def _fresh_var(phi, avoid: str) -> str:
    used = set(_all_vars(phi)) | {avoid}
    for cand in ("y", "z", "u", "v", "w"):
        if cand not in used:
            return cand
    k = 0
    while f"y{k}" in used:
        k += 1
    return f"y{k}"


def _all_vars(f):
    if isinstance(f, (And, Or)):
        yield from _all_vars(f.left)
        yield from _all_vars(f.right)
    elif isinstance(f, (ForAll, Exists)):
        yield f.var
        yield from _all_vars(f.body)
    else:
        yield from free_vars(f)


def mk_ti(order: OrderDescriptor, phi, var: str = "x"):
    """TI(order, phi) as a single NNF formula.

    forall x in field (forall y (y < x -> phi(y)) -> phi(x))
        -> forall x in field phi(x)
    """
    extra = free_vars(phi) - {var}
    if extra:
        raise ValueError(f"TI formula has parameters {sorted(extra)}")
    o, v = order.ident, Var(var)
    w = _fresh_var(phi, var)
    below = ForAll(w, Or(NPrec(o, Var(w), v), subst(phi, var, Var(w))))
    not_prog = Exists(var, And(Fld(o, v), And(below, dual(phi))))
    return Or(not_prog, ForAll(var, Or(NFld(o, v), phi)))


def ti_parts(f):
    """(order, phi, var) if ``f`` is literally some mk_ti output, else None."""
    if not (isinstance(f, Or) and isinstance(f.right, ForAll)):
        return None
    body = f.right.body
    if not (isinstance(body, Or) and isinstance(body.left, NFld)):
        return None
    var = f.right.var
    if body.left.term != Var(var):
        return None
    try:
        order = get_order(body.left.order)
        rebuilt = mk_ti(order, body.right, var)
    except (KeyError, ValueError):
        return None
    return (order, body.right, var) if closed_nf(rebuilt) == closed_nf(f) else None


def induction_parts(f):
    """(phi, var) if ``f`` is literally some mk_induction output, else None."""
    if not (isinstance(f, Or) and isinstance(f.right, ForAll)):
        return None
    phi, var = f.right.body, f.right.var
    try:
        return (phi, var) if closed_nf(mk_induction(phi, var)) == closed_nf(f) else None
    except ValueError:
        return None


class AxiomBase:
    """``logic`` (no axioms), ``PA`` or ``PA+TI(<order id>)``."""

    def __init__(self, ident: str):
        self.ident = ident
        self.order = None
        if ident.startswith("PA+TI(") and ident.endswith(")"):
            self.order = get_order(ident[6:-1])
        elif ident not in ("logic", "PA"):
            raise ValueError(f"unknown axiom base {ident!r}")

    def kind(self, f):
        """``algebraic:<name>``, ``induction``, ``ti`` or ``None``."""
        if self.ident == "logic":
            return None
        for name, ax in ALGEBRAIC.items():
            if closed_nf(ax) == closed_nf(f):
                return f"algebraic:{name}"
        if induction_parts(f):
            return "induction"
        if self.order is not None:
            parts = ti_parts(f)
            if parts and parts[0] == self.order:
                return "ti"
        return None

    def contains(self, f) -> bool:
        return self.kind(f) is not None

    def __repr__(self):
        return f"<AxiomBase {self.ident}>"


# -- checker ---------------------------------------------------------------

@dataclass
class Violation:
    path: tuple
    code: str
    message: str

    def __str__(self):
        where = "/".join(map(str, self.path)) or "root"
        return f"{where}: {self.code}: {self.message}"


@dataclass
class FinReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self):
        return self.violations[0] if self.violations else None


def _premise_ok(child, conclusion, active) -> bool:
    return child.sequent <= conclusion | {active}


def check_fin(proof: FinProof, base: AxiomBase) -> FinReport:
    report = FinReport()
    if proof.base != base.ident:
        report.violations.append(Violation((), "wrong-base",
                                           f"proof declares base {proof.base}"))
    stack = [(proof.root, ())]
    while stack:
        node, path = stack.pop()
        for v in _check_node(node, base):
            report.violations.append(Violation(path, *v))
        for k, ch in reversed(list(enumerate(node.children))):
            stack.append((ch, path + (k,)))
    return report


_ARITY = {"axL": 0, "axiom": 0, "andR": 2, "cut": 2, "orR": 1, "exR": 1, "allR": 1}


def _check_node(node, base):
    seq, f = node.sequent, node.formula
    if node.rule not in _ARITY:
        return [("unknown-rule", node.rule)]
    if len(node.children) != _ARITY[node.rule]:
        return [("arity", f"{node.rule} needs {_ARITY[node.rule]} premises")]
    if node.rule == "axL":
        if not is_atom(f) or f not in seq or dual(f) not in seq:
            return [("wrong-principal", f"{f} and its dual must both occur")]
        return []
    if node.rule == "axiom":
        if seq != frozenset([f]):
            return [("wrong-principal", "axiom leaf must carry exactly its axiom")]
        if free_vars(f):
            return [("unknown-axiom", f"axiom {f} is not closed")]
        if not base.contains(f):
            return [("unknown-axiom", f"{f} is not in {base.ident}")]
        return []
    if node.rule == "cut":
        left, right = node.children
        if not _premise_ok(left, seq, f):
            return [("bad-premise", "left premise not contained in conclusion + cut formula")]
        if not _premise_ok(right, seq, dual(f)):
            return [("bad-premise", "right premise not contained in conclusion + dual")]
        return []
    if f not in seq:
        return [("wrong-principal", f"principal {f} not in conclusion")]
    if node.rule == "andR":
        if not isinstance(f, And):
            return [("wrong-principal", f"{f} is not a conjunction")]
        out = []
        for ch, part in zip(node.children, (f.left, f.right)):
            if not _premise_ok(ch, seq, part):
                out.append(("bad-premise", f"premise does not match conjunct {part}"))
        return out
    if node.rule == "orR":
        if not isinstance(f, Or) or node.side not in (0, 1):
            return [("wrong-principal", f"{f} is not a disjunction")]
        part = f.left if node.side == 0 else f.right
        if not _premise_ok(node.children[0], seq, part):
            return [("bad-premise", f"premise does not match disjunct {part}")]
        return []
    if node.rule == "exR":
        if not isinstance(f, Exists):
            return [("wrong-principal", f"{f} is not existential")]
        inst = subst(f.body, f.var, node.witness)
        if not _premise_ok(node.children[0], seq, inst):
            return [("bad-premise", f"premise does not match instance {inst}")]
        return []
    if node.rule == "allR":
        if not isinstance(f, ForAll):
            return [("wrong-principal", f"{f} is not universal")]
        a = node.eigen
        if any(a in free_vars(g) for g in seq):
            return [("bad-eigenvariable", f"{a} occurs free in the conclusion")]
        inst = subst(f.body, f.var, Var(a))
        if not _premise_ok(node.children[0], seq, inst):
            return [("bad-premise", f"premise does not match instance {inst}")]
        return []
    return [("unknown-rule", node.rule)]


def axiom_leaves(proof: FinProof) -> list:
    """Axiom formulas at the leaves, left to right, with repetitions."""
    out = []

    def walk(n):
        if n.rule == "axiom":
            out.append(n.formula)
        for ch in n.children:
            walk(ch)

    walk(proof.root)
    return out


def cut_formulas(proof: FinProof) -> list:
    out = []

    def walk(n):
        if n.rule == "cut":
            out.append(n.formula)
        for ch in n.children:
            walk(ch)

    walk(proof.root)
    return out


# -- constructors ----------------------------------------------------------

def axL(seq, lit) -> FinNode:
    return FinNode("axL", frozenset(seq), lit)


def axiom(ax_id: str, f) -> FinNode:
    return FinNode("axiom", frozenset([f]), f, axiom_id=ax_id)


def andR(seq, f, left, right) -> FinNode:
    return FinNode("andR", frozenset(seq), f, (left, right))


def orR(seq, f, side, sub) -> FinNode:
    return FinNode("orR", frozenset(seq), f, (sub,), side=side)


def exR(seq, f, witness, sub) -> FinNode:
    return FinNode("exR", frozenset(seq), f, (sub,), witness=witness)


def allR(seq, f, eigen, sub) -> FinNode:
    return FinNode("allR", frozenset(seq), f, (sub,), eigen=eigen)


def cut(seq, f, left, right) -> FinNode:
    return FinNode("cut", frozenset(seq), f, (left, right))


# -- file format -----------------------------------------------------------

def _seq_sx(seq):
    return [sym("seq")] + [formula_to_sx(f) for f in sorted(seq, key=sort_key)]


def node_to_sx(n: FinNode):
    head = [sym(n.rule), _seq_sx(n.sequent)]
    if n.rule == "axL":
        return head + [formula_to_sx(n.formula)]
    if n.rule == "axiom":
        return head + [n.axiom_id, formula_to_sx(n.formula)]
    kids = [node_to_sx(c) for c in n.children]
    f = formula_to_sx(n.formula)
    if n.rule in ("andR", "cut"):
        return head + [f] + kids
    if n.rule == "orR":
        return head + [f, n.side] + kids
    if n.rule == "exR":
        return head + [f, term_to_sx(n.witness)] + kids
    return head + [f, sym(n.eigen)] + kids


def node_from_sx(x) -> FinNode:
    if not (isinstance(x, list) and len(x) >= 3 and isinstance(x[0], Symbol)):
        raise sexpr.ParseError("bad proof node")
    rule, sq = str(x[0]), x[1]
    if not (isinstance(sq, list) and sq and sq[0] == "seq"):
        raise sexpr.ParseError(f"{rule} node lacks its (seq ...)")
    seq = frozenset(formula_from_sx(f) for f in sq[1:])
    a = x[2:]
    if rule == "axL":
        return FinNode(rule, seq, formula_from_sx(a[0]))
    if rule == "axiom":
        return FinNode(rule, seq, formula_from_sx(a[1]), axiom_id=str(a[0]))
    f = formula_from_sx(a[0])
    if rule in ("andR", "cut"):
        return FinNode(rule, seq, f, (node_from_sx(a[1]), node_from_sx(a[2])))
    if rule == "orR":
        return FinNode(rule, seq, f, (node_from_sx(a[2]),), side=int(a[1]))
    if rule == "exR":
        return FinNode(rule, seq, f, (node_from_sx(a[2]),), witness=term_from_sx(a[1]))
    if rule == "allR":
        return FinNode(rule, seq, f, (node_from_sx(a[2]),), eigen=str(a[1]))
    raise sexpr.ParseError(f"unknown rule {rule!r}")


def proof_to_text(p: FinProof) -> str:
    return sexpr.dumps([sym("proof"), [sym("base"), p.base], node_to_sx(p.root)])


def proof_from_text(text: str) -> FinProof:
    x = sexpr.loads(text)
    if not (isinstance(x, list) and len(x) == 3 and x[0] == "proof"
            and isinstance(x[1], list) and x[1][0] == "base"):
        raise sexpr.ParseError("expected (proof (base <id>) <node>)")
    return FinProof(str(x[1][1]), node_from_sx(x[2]))
