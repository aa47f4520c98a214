"""Cut elimination: inversion, the single-cut reduction and rank lowering.

All transformations are lazy at omega nodes: the transformed node keeps the
original family wrapped in a ``Lift`` and a transformed height expression,
so transforming then instantiating is the same as instantiating then
transforming.
"""
from __future__ import annotations

from ..ordinals import add, omega_pow
from ..syntax import Exists, Or, atom_truth, dual, instantiate, is_atom, is_set_literal, rank
from .deriv import Add, Const, InfDeriv, Lift, Pow, cut_i, lift, norm, weaken

LEAVES = ("axTrue", "axSet")


# -- inversion ---------------------------------------------------------------

def _replacement(target, op, arg):
    if op == "and":
        return norm(target.right if arg else target.left)
    if op == "all":
        return instantiate(target, arg)
    return None  # op == "false": drop a false atom


def invert(d: InfDeriv, target, op: str, arg=0) -> InfDeriv:
    """Replace ``target`` in the end sequent.

    op ``and``: a conjunction by its ``arg``-th conjunct; ``all``: a universal
    formula by its instance at numeral ``arg``; ``false``: delete a false
    arithmetic atom.  Heights and ranks never grow.
    """
    if target not in d.sequent:
        return d
    repl = _replacement(target, op, arg)
    new = (d.sequent - {target}) | ({repl} if repl is not None else frozenset())
    if d.formula == target and ((op == "and" and d.rule == "andI")
                                or (op == "all" and d.rule == "omega")):
        q = invert(d.premise(arg), target, op, arg)
        return weaken(q, new)
    if d.rule in LEAVES:
        return d.with_(sequent=new)
    if d.rule == "omega":
        return d.with_(sequent=new, family=Lift("invert", (target, op, arg), d.family))
    prem = tuple(invert(p, target, op, arg) for p in d.premises)
    return d.with_(sequent=new, premises=prem)


@lift("invert")
def _lift_invert(p, target, op, arg):
    return invert(p, target, op, arg)


# -- reduction of one cut ------------------------------------------------------

def is_or_type(f) -> bool:
    return is_atom(f) or isinstance(f, (Or, Exists))


def reduce_cut(D: InfDeriv, E: InfDeriv, F, rho: int) -> InfDeriv:
    """From D |- G, F and E |- L, not F derive G, L without cutting F.

    F must be a disjunction, an existential or an atom; new cuts are on
    immediate subformulas of F only, so the result has rank label ``rho``
    when rank(F) < rho + 1.
    """
    F = norm(F)
    nF = dual(F)
    delta = E.sequent - {nF}
    if is_atom(F):
        if not is_set_literal(F):
            if atom_truth(F):
                out = invert(E, nF, "false")
            else:
                out = invert(D, F, "false")
            return weaken(out, (D.sequent - {F}) | delta)
        return weaken(_reduce(D, E, F, rho), (D.sequent - {F}) | delta)
    if not isinstance(F, (Or, Exists)):
        raise ValueError(f"reduce_cut needs a disjunctive cut formula, got {F}")
    return weaken(_reduce(D, E, F, rho), (D.sequent - {F}) | delta)


def _reduce(D, E, F, rho):
    if F not in D.sequent:
        return D
    nF = dual(F)
    new = (D.sequent - {F}) | (E.sequent - {nF})
    gamma = E.height
    if D.rule in LEAVES:
        if D.rule == "axSet" and F in (D.formula, dual(D.formula)):
            # F and its partner both sit in the axiom; E supplies the rest
            return weaken(E, new)
        return D.with_(sequent=D.sequent - {F})
    h = add(gamma, D.height)
    if D.formula == F and D.rule in ("orI", "exI"):
        p = D.premises[0]
        if D.rule == "orI":
            active = norm(F.right if D.side else F.left)
            inv = invert(E, nF, "and", D.side)
        else:
            active = instantiate(F, D.witness)
            inv = invert(E, nF, "all", D.witness)
        left = _reduce(p, E, F, rho)
        return cut_i(new, active, left, inv, height=h, rank=rho)
    if D.rule == "omega":
        fam = Lift("reduce", (E, F, rho), D.family)
        return D.with_(sequent=new, height=h, rank=rho, family=fam,
                       hexpr=Add(Const(gamma), D.hexpr))
    prem = tuple(_reduce(p, E, F, rho) for p in D.premises)
    return D.with_(sequent=new, height=h, rank=rho, premises=prem)


@lift("reduce")
def _lift_reduce(p, E, F, rho):
    return _reduce(p, E, F, rho)


# -- rank lowering -------------------------------------------------------------

def eliminate(d: InfDeriv, rho: int = None) -> InfDeriv:
    """Lower the rank label from rho+1 to rho; height becomes w^height."""
    if rho is None:
        rho = d.rank - 1
    if rho < 0:
        raise ValueError("rank label is already 0")
    if d.rank > rho + 1:
        raise ValueError(f"rank label {d.rank} exceeds {rho + 1}")
    return _elim(d, rho)


def _elim(d, rho):
    if d.rank <= rho:
        return d
    if d.rule in LEAVES:
        return d.with_(rank=rho)
    h = omega_pow(d.height)
    if d.rule == "cutI":
        F = d.formula
        left, right = (_elim(p, rho) for p in d.premises)
        if rank(F) < rho:
            return cut_i(d.sequent, F, left, right, height=h, rank=rho)
        if is_or_type(F):
            out = reduce_cut(left, right, F, rho)
        else:
            out = reduce_cut(right, left, dual(F), rho)
        out = weaken(out, d.sequent)
        if out.rule in LEAVES:  # a leaf keeps height 0
            return out.with_(rank=rho)
        return out.with_(height=h, rank=rho)
    if d.rule == "omega":
        fam = Lift("elim", (rho,), d.family)
        return d.with_(height=h, rank=rho, family=fam, hexpr=Pow(d.hexpr))
    prem = tuple(_elim(p, rho) for p in d.premises)
    return d.with_(height=h, rank=rho, premises=prem)


@lift("elim")
def _lift_elim(p, rho):
    return _elim(p, rho)


def eliminate_all(d: InfDeriv, trace=None) -> InfDeriv:
    """Iterate :func:`eliminate` down to rank 0.  ``trace`` collects heights."""
    while d.rank > 0:
        d = eliminate(d, d.rank - 1)
        if trace is not None:
            trace.append((d.rank, d.height))
    return d


__all__ = ["invert", "reduce_cut", "eliminate", "eliminate_all", "is_or_type"]
