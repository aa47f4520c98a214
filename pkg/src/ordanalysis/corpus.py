"""Hand-built finitary proofs used by the tests, the scripts and the CLI."""
from __future__ import annotations

from .finitary import (
    ALGEBRAIC, FinProof, allR, andR, axiom, axL, cut, exR, mk_induction,
    mk_ti, orR,
)
from .orders import get_order
from .syntax import (
    And, Eq, Exists, ForAll, In, Neq, NotIn, Num, Or, Plus, Var, dual,
    parse_formula, subst,
)

P = parse_formula


def excluded_middle() -> FinProof:
    """0 in X or 0 notin X."""
    p, q = In(Num(0)), NotIn(Num(0))
    A = Or(p, q)
    leaf = axL({p, q}, p)
    d = orR({A, p}, A, 1, leaf)
    return FinProof("logic", orR({A}, A, 0, d))


def forall_excluded_middle() -> FinProof:
    """forall x (x in X or x notin X)."""
    F = P("(all x (or (in x) (notin x)))")
    a = Var("a")
    B = Or(In(a), NotIn(a))
    leaf = axL({In(a), NotIn(a)}, In(a))
    d = orR({B, In(a)}, B, 1, leaf)
    d = orR({B}, B, 0, d)
    return FinProof("logic", allR({F}, F, "a", d))


def and_commutes() -> FinProof:
    """(0 in X and 1 in X) -> (1 in X and 0 in X)."""
    p0, p1 = In(Num(0)), In(Num(1))
    n0, n1 = NotIn(Num(0)), NotIn(Num(1))
    L, R = Or(n0, n1), And(p1, p0)
    F = Or(L, R)
    right = andR({n0, n1, R}, R, axL({n0, n1, p1}, p1), axL({n0, n1, p0}, p0))
    d = orR({n0, L, R}, L, 1, right)
    d = orR({L, R}, L, 0, d)
    d = orR({F, L}, F, 1, d)
    return FinProof("logic", orR({F}, F, 0, d))


def exists_intro() -> FinProof:
    """exists x (x notin X or 2 in X)."""
    F = P("(ex x (or (notin x) (in 2)))")
    body = Or(NotIn(Num(2)), In(Num(2)))
    d = orR({body, NotIn(Num(2))}, body, 1, axL({NotIn(Num(2)), In(Num(2))}, In(Num(2))))
    d = orR({body}, body, 0, d)
    return FinProof("logic", exR({F}, F, Num(2), d))


def add_zero() -> FinProof:
    """forall x (x + 0 = x), read off the algebraic axiom."""
    return FinProof("PA", axiom("add-zero", ALGEBRAIC["add-zero"]))


def _use(name, witnesses, gamma, sub):
    """Derive ``gamma`` from axiom ``name`` and a proof ``sub`` of
    ``gamma + {dual of the instance at witnesses}``."""
    A = ALGEBRAIC[name]
    neg = dual(A)
    chain, f = [], neg
    for w in witnesses:
        chain.append(f)
        f = subst(f.body, f.var, w)
    d = sub
    for g, w in reversed(list(zip(chain, witnesses))):
        d = exR(set(gamma) | {g}, g, w, d)
    return cut(set(gamma), A, axiom(name, A), d)


def zero_add() -> FinProof:
    """forall x (0 + x = x) by one induction instance."""
    z, a = Num(0), Var("a")
    x = Var("x")
    phi = Eq(Plus(z, x), x)
    ind = mk_induction(phi, "x")
    goal = ForAll("x", phi)
    nind = dual(ind)
    base_f, step_f = nind.left.left, nind.left.right
    tail_f = nind.right

    # base: 0+0 = 0 from add-zero at 0
    phi0 = Eq(Plus(z, z), z)
    base = _use("add-zero", [z], {phi0}, axL({phi0, dual(phi0)}, phi0))

    # step at eigenvariable a: 0+a != a  or  0+(a+1) = a+1
    a1 = Plus(a, Num(1))
    hyp, concl = Neq(Plus(z, a), a), Eq(Plus(z, a1), a1)
    gam = {hyp, concl}
    s1 = Neq(Plus(z, a1), Plus(Plus(z, a), Num(1)))  # dual of add-succ instance
    s2 = Neq(Plus(Plus(z, a), Num(1)), a1)
    g3 = gam | {s1, s2}
    t_l, t_r = dual(s1), dual(s2)
    trans = And(t_l, And(t_r, dual(concl)))
    inner = andR(g3 | {And(t_r, dual(concl))}, And(t_r, dual(concl)),
                 axL(g3 | {t_r}, t_r), axL(g3 | {dual(concl)}, concl))
    sub3 = andR(g3 | {trans}, trans, axL(g3 | {t_l}, t_l), inner)
    sub3 = _use("eq-trans", [Plus(z, a1), Plus(Plus(z, a), Num(1)), a1], g3, sub3)
    cong = And(dual(hyp), s2)
    sub2 = andR(gam | {s1, cong}, cong, axL(gam | {s1, dual(hyp)}, hyp), sub3)
    sub2 = _use("eq-succ", [Plus(z, a), a], gam | {s1}, sub2)
    sub1 = _use("add-succ", [z, a], gam, sub2)
    body = Or(hyp, concl)
    d = orR({body, hyp}, body, 1, sub1)
    d = orR({body}, body, 0, d)
    step = allR({step_f}, step_f, "a", d)

    hyps = And(base_f, step_f)
    left = andR({hyps, goal}, hyps, base, step)
    phia = Eq(Plus(z, a), a)
    r = exR({tail_f, phia}, tail_f, a, axL({dual(phia), phia}, phia))
    right = allR({tail_f, goal}, goal, "a", r)
    pind = andR({nind, goal}, nind, left, right)
    return FinProof("PA", cut({goal}, ind, axiom("induction", ind), pind))


def ti_excluded_middle(order_id: str = "nota:e(0)") -> FinProof:
    """forall x (not Fld x or x in X or x notin X) via one TI instance."""
    order = get_order(order_id)
    o = order.ident
    x, a = Var("x"), Var("a")
    phi = Or(In(x), NotIn(x))
    ti = mk_ti(order, phi, "x")
    ntI = dual(ti)
    prog, bad = ntI.left, ntI.right
    goal = ti.right
    phia = Or(In(a), NotIn(a))

    def em(extra):
        leaf = axL(extra | {In(a), NotIn(a)}, In(a))
        d = orR(extra | {phia, In(a)}, phia, 1, leaf)
        return orR(extra | {phia}, phia, 0, d)

    # progressiveness holds since phi(a) does
    pbody = subst(prog.body, prog.var, a)
    rest = pbody.right
    d = orR({rest}, rest, 1, em(frozenset()))
    d = orR({pbody}, pbody, 1, d)
    left = allR({prog, goal}, prog, "a", d)

    # the bad element cannot exist
    gbody = subst(goal.body, goal.var, a)
    nfld, fld = gbody.left, dual(gbody.left)
    inst = subst(bad.body, bad.var, a)  # Fld a and not phi(a)
    nphi = inst.right
    base_set = {bad, nfld, phia}
    kill = andR(base_set | {nphi}, nphi,
                orR(base_set | {NotIn(a)}, phia, 0, axL({In(a), NotIn(a)}, In(a))),
                orR(base_set | {In(a)}, phia, 1, axL({In(a), NotIn(a)}, In(a))))
    top = andR(base_set | {inst}, inst, axL({fld, nfld}, fld), kill)
    d = exR(base_set, bad, a, top)
    d = orR({bad, nfld, gbody}, gbody, 1, d)
    d = orR({bad, gbody}, gbody, 0, d)
    right = allR({bad, goal}, goal, "a", d)
    pt = andR({ntI, goal}, ntI, left, right)
    return FinProof(f"PA+TI({o})", cut({goal}, ti, axiom("ti", ti), pt))


CORPUS = {
    "excluded-middle": excluded_middle,
    "forall-excluded-middle": forall_excluded_middle,
    "and-commutes": and_commutes,
    "exists-intro": exists_intro,
    "add-zero": add_zero,
    "zero-add": zero_add,
    "ti-excluded-middle": ti_excluded_middle,
}


def load(name: str) -> FinProof:
    return CORPUS[name]()


# -- infinitary samples ----------------------------------------------------------

def forall_plus_zero():
    """Cut-free omega-rule derivation of forall x (x+0 = x)."""
    from .infinitary import derive_valid
    return derive_valid({P("(all x (= (+ x 0) x))")})


def one_atomic_cut():
    """Height 2, one cut on the X-literal 0 in X."""
    from .infinitary import ax_set, cut_i, or_i
    p, q = In(Num(0)), NotIn(Num(0))
    A = Or(p, q)
    left = or_i({A, p}, A, 1, ax_set({A, p, q}, p))
    right = or_i({A, q}, A, 0, ax_set({A, p, q}, p))
    return cut_i({A}, p, left, right)


INF_CORPUS = {
    "forall-plus-zero": forall_plus_zero,
    "one-atomic-cut": one_atomic_cut,
}


__all__ = (["CORPUS", "INF_CORPUS", "load"] + [f.__name__ for f in CORPUS.values()]
           + [f.__name__ for f in INF_CORPUS.values()])
