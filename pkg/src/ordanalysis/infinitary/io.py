"""S-expression files for infinitary derivations.

    (infderiv (def 1 <node-or-context>) ... <node>)

Nodes carry ``:height`` and ``:rank`` annotations.  Omega nodes name their
variable and height expression and end with a family:
``(template x <node>)``, ``(gen <name> <arg> ...)`` or
``(lift <op> (<arg> ...) <family>)``.  Derivations used as family
arguments are written once as numbered definitions and referred to by
``(d <k>)``, which keeps shared subderivations shared.
"""
from __future__ import annotations

from .. import sexpr
from ..finitary import FinNode, node_from_sx, node_to_sx
from ..ordinals import format_ord, parse_ord
from ..sexpr import ParseError, Symbol, sym
from ..syntax import (
    ATOMS, And, Exists, ForAll, Or, formula_from_sx, formula_to_sx, sort_key,
    term_from_sx, term_to_sx,
)
from .deriv import (
    Add, Cond, Const, Gen, InfDeriv, Lift, Nat, NatSum, Pow, Stretch, Template,
)
from .embed import AxiomTable, EmbedContext

_FORMULAS = ATOMS + (And, Or, ForAll, Exists)


# -- height expressions --------------------------------------------------------

def oexpr_to_sx(e):
    if isinstance(e, Const):
        return format_ord(e.value)
    if isinstance(e, Nat):
        return [sym("nat"), term_to_sx(e.term)]
    if isinstance(e, Add):
        return [sym("add"), oexpr_to_sx(e.left), oexpr_to_sx(e.right)]
    if isinstance(e, NatSum):
        return [sym("nsum"), oexpr_to_sx(e.left), oexpr_to_sx(e.right)]
    if isinstance(e, Pow):
        return [sym("pow"), oexpr_to_sx(e.arg)]
    if isinstance(e, Stretch):
        return [sym("stretch"), e.order, e.mul, e.plus]
    if isinstance(e, Cond):
        pivot = [] if e.kind == "fld" else [term_to_sx(e.pivot)]
        return [sym("cond"), sym(e.kind), e.order] + pivot + [oexpr_to_sx(e.then), oexpr_to_sx(e.other)]
    raise TypeError(f"cannot write height expression {e!r}")


def oexpr_from_sx(x):
    if isinstance(x, str) and not isinstance(x, Symbol):
        return Const(parse_ord(x))
    if not (isinstance(x, list) and x and isinstance(x[0], Symbol)):
        raise ParseError(f"bad height expression {x!r}")
    h, a = str(x[0]), x[1:]
    if h == "nat":
        return Nat(term_from_sx(a[0]))
    if h == "add":
        return Add(oexpr_from_sx(a[0]), oexpr_from_sx(a[1]))
    if h == "nsum":
        return NatSum(oexpr_from_sx(a[0]), oexpr_from_sx(a[1]))
    if h == "pow":
        return Pow(oexpr_from_sx(a[0]))
    if h == "stretch":
        return Stretch(str(a[0]), int(a[1]), int(a[2]))
    if h == "cond":
        kind, order = str(a[0]), str(a[1])
        if kind == "fld":
            return Cond(kind, order, None, oexpr_from_sx(a[2]), oexpr_from_sx(a[3]))
        return Cond(kind, order, term_from_sx(a[2]), oexpr_from_sx(a[3]), oexpr_from_sx(a[4]))
    raise ParseError(f"unknown height expression {h!r}")


# -- writer --------------------------------------------------------------------

class _Writer:
    def __init__(self):
        self.defs = []     # emitted (def k ...) forms
        self.ids = {}      # id(obj) -> k
        self.keep = []

    def ref(self, obj, build):
        k = self.ids.get(id(obj))
        if k is None:
            body = build()
            k = len(self.defs) + 1
            self.ids[id(obj)] = k
            self.keep.append(obj)
            self.defs.append([sym("def"), k, body])
        return k

    def seq(self, s):
        return [sym("seq")] + [formula_to_sx(f) for f in sorted(s, key=sort_key)]

    def node(self, d: InfDeriv):
        head = [sym(d.rule), self.seq(d.sequent), sym(":height"), format_ord(d.height),
                sym(":rank"), d.rank]
        f = formula_to_sx(d.formula)
        if d.rule in ("axTrue", "axSet"):
            return head + [f]
        if d.rule in ("andI", "cutI"):
            return head + [f, self.node(d.premises[0]), self.node(d.premises[1])]
        if d.rule == "orI":
            return head + [f, d.side, self.node(d.premises[0])]
        if d.rule == "exI":
            return head + [f, d.witness, self.node(d.premises[0])]
        if d.rule == "omega":
            return head + [f, sym(d.var), sym(":heightExpr"), oexpr_to_sx(d.hexpr),
                           self.family(d.family)]
        raise TypeError(f"unknown rule {d.rule}")

    def family(self, fam):
        if isinstance(fam, Template):
            return [sym("template"), sym(fam.var), self.node(fam.body)]
        if isinstance(fam, Gen):
            return [sym("gen"), sym(fam.name)] + [self.arg(a) for a in fam.args]
        if isinstance(fam, Lift):
            return [sym("lift"), sym(fam.op), [self.arg(a) for a in fam.args],
                    self.family(fam.base)]
        raise TypeError(f"cannot write family {fam!r}")

    def arg(self, a):
        if isinstance(a, bool):
            raise TypeError("boolean argument")
        if isinstance(a, int):
            return a
        if isinstance(a, str):
            return a
        if isinstance(a, _FORMULAS):
            return [sym("f"), formula_to_sx(a)]
        if isinstance(a, frozenset):
            return [sym("fs")] + [formula_to_sx(f) for f in sorted(a, key=sort_key)]
        if isinstance(a, InfDeriv):
            return [sym("d"), self.ref(a, lambda: self.node(a))]
        if isinstance(a, FinNode):
            return [sym("fin"), node_to_sx(a)]
        if isinstance(a, EmbedContext):
            return [sym("d"), self.ref(a, lambda: self.context(a))]
        if isinstance(a, tuple):
            return [sym("tuple")] + [self.arg(x) for x in a]
        raise TypeError(f"cannot write family argument {a!r}")

    def context(self, ctx):
        axs = [[sym("ax"), formula_to_sx(f), self.arg(d)]
               for f, d in sorted(ctx.table.derivs.items(), key=lambda kv: sort_key(kv[0]))]
        return [sym("ctx"), ctx.r] + axs


def deriv_to_sx(d: InfDeriv):
    w = _Writer()
    root = w.node(d)
    return [sym("infderiv")] + w.defs + [root]


def deriv_to_text(d: InfDeriv) -> str:
    return sexpr.dumps(deriv_to_sx(d))


# -- reader --------------------------------------------------------------------

class _Reader:
    def __init__(self):
        self.defs = {}

    def seq(self, x):
        if not (isinstance(x, list) and x and x[0] == "seq"):
            raise ParseError("expected (seq ...)")
        return frozenset(formula_from_sx(f) for f in x[1:])

    def node(self, x) -> InfDeriv:
        if not (isinstance(x, list) and len(x) >= 7 and isinstance(x[0], Symbol)):
            raise ParseError("bad derivation node")
        rule = str(x[0])
        sq = self.seq(x[1])
        if x[2] != ":height" or x[4] != ":rank":
            raise ParseError(f"{rule} node lacks :height/:rank")
        h, r = parse_ord(x[3]), int(x[5])
        a = x[6:]
        f = formula_from_sx(a[0])
        base = dict(rule=rule, sequent=sq, height=h, rank=r, formula=f)
        if rule in ("axTrue", "axSet"):
            return InfDeriv(**base)
        if rule in ("andI", "cutI"):
            return InfDeriv(**base, premises=(self.node(a[1]), self.node(a[2])))
        if rule == "orI":
            return InfDeriv(**base, side=int(a[1]), premises=(self.node(a[2]),))
        if rule == "exI":
            return InfDeriv(**base, witness=int(a[1]), premises=(self.node(a[2]),))
        if rule == "omega":
            if a[2] != ":heightExpr":
                raise ParseError("omega node lacks :heightExpr")
            return InfDeriv(**base, var=str(a[1]), hexpr=oexpr_from_sx(a[3]),
                            family=self.family(a[4]))
        raise ParseError(f"unknown rule {rule!r}")

    def family(self, x):
        h = str(x[0])
        if h == "template":
            return Template(str(x[1]), self.node(x[2]))
        if h == "gen":
            return Gen(str(x[1]), *[self.arg(a) for a in x[2:]])
        if h == "lift":
            return Lift(str(x[1]), tuple(self.arg(a) for a in x[2]), self.family(x[3]))
        raise ParseError(f"unknown family {h!r}")

    def arg(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, str) and not isinstance(x, Symbol):
            return x
        if not (isinstance(x, list) and x):
            raise ParseError(f"bad family argument {x!r}")
        h = str(x[0])
        if h == "f":
            return formula_from_sx(x[1])
        if h == "fs":
            return frozenset(formula_from_sx(f) for f in x[1:])
        if h == "d":
            try:
                return self.defs[x[1]]
            except KeyError:
                raise ParseError(f"undefined reference {x[1]}") from None
        if h == "fin":
            return node_from_sx(x[1])
        if h == "tuple":
            return tuple(self.arg(a) for a in x[1:])
        raise ParseError(f"unknown argument tag {h!r}")

    def definition(self, x):
        body = x[2]
        if isinstance(body, list) and body and body[0] == "ctx":
            table = AxiomTable({formula_from_sx(ax[1]): self.arg(ax[2]) for ax in body[2:]})
            return EmbedContext(table, int(body[1]))
        return self.node(body)


def deriv_from_sx(x) -> InfDeriv:
    if not (isinstance(x, list) and len(x) >= 2 and x[0] == "infderiv"):
        raise ParseError("expected (infderiv ...)")
    r = _Reader()
    for item in x[1:-1]:
        if not (isinstance(item, list) and item and item[0] == "def"):
            raise ParseError("expected (def k ...)")
        r.defs[item[1]] = r.definition(item)
    return r.node(x[-1])


def deriv_from_text(text: str) -> InfDeriv:
    return deriv_from_sx(sexpr.loads(text))


__all__ = ["deriv_to_text", "deriv_from_text", "deriv_to_sx", "deriv_from_sx",
           "oexpr_to_sx", "oexpr_from_sx"]
