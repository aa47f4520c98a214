"""Embedding of finitary proofs into the infinitary calculus.

Free variables are handled by a numeral assignment: the eigenvariable of a
universal rule becomes the omega rule's numeral, and variables that are
never bound are read as 0.  Axiom leaves are replaced by cut-free
derivations of the axioms, so the proof's own cut on an axiom is what
discharges it.
"""
from __future__ import annotations

from ..finitary import AxiomBase, FinNode, FinProof, axiom_leaves, check_fin
from ..ordinals import ZERO, add, nat, omax
from ..syntax import (
    Num, atom_truth, dual, free_vars, is_set_literal, In, rank, subst, term_value,
    subst_term, term_vars,
)
from .build import embed_axiom
from .deriv import (
    Const, Gen, and_i, ax_set, ax_true, cut_i, ex_i, generator, norm, omega_i, or_i,
)


class EmbedError(ValueError):
    pass


class AxiomTable:
    """Cut-free derivations for the axiom formulas of a proof."""

    def __init__(self, derivs: dict):
        self.derivs = {norm(a): d for a, d in derivs.items()}

    @classmethod
    def build(cls, formulas):
        return cls({norm(a): embed_axiom(a) for a in formulas})

    def __getitem__(self, a):
        try:
            return self.derivs[norm(a)]
        except KeyError:
            raise EmbedError(f"no derivation supplied for axiom {a}") from None


def _close(f, sigma):
    for v in sorted(free_vars(f)):
        f = subst(f, v, Num(sigma.get(v, 0)))
    return norm(f)


def _close_term(t, sigma):
    for v in sorted(term_vars(t)):
        t = subst_term(t, v, Num(sigma.get(v, 0)))
    return term_value(t)


def cut_rank_label(root: FinNode) -> int:
    """Smallest rank label admitting every cut of the proof."""
    best = 0
    stack = [root]
    while stack:
        n = stack.pop()
        if n.rule == "cut":
            best = max(best, rank(n.formula) + 1)
        stack.extend(n.children)
    return best


class EmbedContext:
    """Axiom table and rank label shared by all parts of one embedding."""

    def __init__(self, table: AxiomTable, r: int):
        self.table, self.r = table, r
        self._h = {}

    def height(self, n: FinNode):
        k = id(n)
        if k not in self._h:
            if n.rule == "axL":
                h = ZERO
            elif n.rule == "axiom":
                h = self.table[n.formula].height
            else:
                h = add(omax(*[self.height(c) for c in n.children]), nat(1))
            self._h[k] = (n, h)  # keep n alive so its id stays unique
        return self._h[k][1]


def embed(proof: FinProof, base: AxiomBase, axiom_derivs=None, check: bool = True):
    """Infinitary derivation of the end sequent of ``proof``."""
    if check:
        rep = check_fin(proof, base)
        if not rep.ok:
            raise EmbedError(f"finitary proof does not check: {rep.first}")
    if axiom_derivs is None:
        table = AxiomTable.build(axiom_leaves(proof))
    elif isinstance(axiom_derivs, AxiomTable):
        table = axiom_derivs
    else:
        table = AxiomTable(axiom_derivs)
    ctx = EmbedContext(table, cut_rank_label(proof.root))
    return _embed(proof.root, {}, ctx)


def _embed(n: FinNode, sigma: dict, ctx: EmbedContext):
    sq = frozenset(_close(f, sigma) for f in n.sequent)
    if n.rule == "axiom":
        return ctx.table[n.formula]
    if n.rule == "axL":
        lit = _close(n.formula, sigma)
        if is_set_literal(lit):
            return ax_set(sq, lit if isinstance(lit, In) else dual(lit))
        return ax_true(sq, lit if atom_truth(lit) else dual(lit))
    f = _close(n.formula, sigma)
    h, r = ctx.height(n), ctx.r
    kids = n.children
    if n.rule == "andR":
        return and_i(sq, f, _embed(kids[0], sigma, ctx), _embed(kids[1], sigma, ctx), h, r)
    if n.rule == "orR":
        return or_i(sq, f, n.side, _embed(kids[0], sigma, ctx), h, r)
    if n.rule == "exR":
        w = _close_term(n.witness, sigma)
        return ex_i(sq, f, w, _embed(kids[0], sigma, ctx), h, r)
    if n.rule == "cut":
        return cut_i(sq, f, _embed(kids[0], sigma, ctx), _embed(kids[1], sigma, ctx), h, r)
    if n.rule == "allR":
        fam = Gen("embed", kids[0], tuple(sorted(sigma.items())), n.eigen, ctx)
        return omega_i(sq, f, fam, Const(ctx.height(kids[0])), h, r, var="n")
    raise EmbedError(f"unknown rule {n.rule}")


@generator("embed")
def _gen_embed(node, sigma_items, eigen, ctx, n):
    sigma = dict(sigma_items)
    sigma[eigen] = n
    return _embed(node, sigma, ctx)


def embedding_bound(proof: FinProof, table: AxiomTable):
    """Natural sum of the axiom heights plus the number of axiom leaves."""
    from ..ordinals import nat_sum
    leaves = axiom_leaves(proof)
    acc = ZERO
    for a in leaves:
        acc = nat_sum(acc, table[a].height)
    return add(acc, nat(len(leaves)))


__all__ = ["embed", "EmbedError", "AxiomTable", "EmbedContext", "cut_rank_label", "embedding_bound"]
