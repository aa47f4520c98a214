import pytest
from hypothesis import given, settings

from helpers import corpus_embedding, cut_derivations, logic_formula, _template_cut
from ordanalysis import corpus
from ordanalysis.finitary import AxiomBase, FinNode, axiom_leaves, cut_formulas
from ordanalysis.infinitary import (
    AxiomTable, EmbedError, check_coherence, cut_rank_label, eliminate,
    eliminate_all, embed, embedding_bound, invert, norm, reduce_cut, taut,
)
from ordanalysis.ordinals import EQ, ZERO, add, compare, eps, leq, lt, nat, nat_sum, omega_pow
from ordanalysis.syntax import In, Num, dual, rank

SAMPLES = (0, 1, 2, 5)


def fin_height(n: FinNode) -> int:
    if n.rule in ("axL", "axiom"):
        return 0
    return 1 + max(fin_height(c) for c in n.children)


def walk(d, out=None):
    """Finite-branching nodes of a derivation (omega nodes not entered)."""
    out = [] if out is None else out
    out.append(d)
    if d.rule != "omega":
        for p in d.premises:
            walk(p, out)
    return out


# -- embedding -------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(corpus.CORPUS))
def test_embedding_is_coherent_and_keeps_the_sequent(name):
    p = corpus.load(name)
    d = embed(p, AxiomBase(p.base))
    rep = check_coherence(d)
    assert rep.ok, rep
    assert d.sequent == p.root.sequent


@pytest.mark.parametrize("name", sorted(corpus.CORPUS))
def test_embedding_height_and_rank(name):
    # height <= tc(A1) # ... # tc(An) + proof height; strict rank label
    p = corpus.load(name)
    table = AxiomTable.build(axiom_leaves(p))
    d = embed(p, AxiomBase(p.base), table)
    acc = ZERO
    for a in axiom_leaves(p):
        acc = nat_sum(acc, table[a].height)
    assert leq(d.height, add(acc, nat(fin_height(p.root))))
    assert d.rank == max((rank(f) + 1 for f in cut_formulas(p)), default=0)
    assert d.rank == cut_rank_label(p.root)


def test_embedding_bound_matches_independent_sum():
    p = corpus.zero_add()
    table = AxiomTable.build(axiom_leaves(p))
    hs = sorted((table[a].height for a in axiom_leaves(p)), reverse=True)
    acc = ZERO
    for h in hs:  # natural sum of a descending list is ordinary addition
        acc = add(acc, h)
    assert compare(embedding_bound(p, table), add(acc, nat(len(hs)))) == EQ


def test_pure_logic_embedding_has_finite_height():
    d = embed(corpus.excluded_middle(), AxiomBase("logic"))
    assert d.height == nat(2) and d.rank == 0


def test_missing_axiom_derivation():
    p = corpus.add_zero()
    with pytest.raises(EmbedError):
        embed(p, AxiomBase("PA"), AxiomTable({}))


def test_wrong_base_rejected():
    with pytest.raises(EmbedError):
        embed(corpus.add_zero(), AxiomBase("logic"))


# -- inversion and reduction ---------------------------------------------------------

@settings(max_examples=40)
@given(logic_formula(max_rank=3))
def test_inversion_never_raises_labels(F):
    F = norm(F)
    d = taut(F)
    A = F if F in d.sequent and type(F).__name__ in ("And", "ForAll") else dual(F)
    if type(A).__name__ == "And":
        for side in (0, 1):
            e = invert(d, A, "and", side)
            assert leq(e.height, d.height) and e.rank <= d.rank
            assert check_coherence(e, SAMPLES).ok
    elif type(A).__name__ == "ForAll":
        e = invert(d, A, "all", 3)
        assert leq(e.height, d.height)
        assert check_coherence(e, SAMPLES).ok


@settings(max_examples=40)
@given(logic_formula(max_rank=2))
def test_reduce_cut_on_tautologies(F):
    F = norm(F)
    F = F if type(F).__name__ in ("Or", "Exists") or rank(F) == 0 else dual(F)
    D, E = taut(F), taut(F)
    out = reduce_cut(D, E, F, rank(F))
    assert out.sequent == (D.sequent - {F}) | (E.sequent - {dual(F)})
    rep = check_coherence(out, SAMPLES)
    assert rep.ok, rep
    assert leq(out.height, add(E.height, D.height))


# -- elimination ----------------------------------------------------------------------

def test_one_atomic_cut_example():
    d = corpus.one_atomic_cut()
    assert d.height == nat(2) and d.rank == 1
    out = eliminate(d, 0)
    assert out.rank == 0 and leq(out.height, omega_pow(nat(2)))
    assert check_coherence(out).ok
    assert all(n.rule != "cutI" for n in walk(out))


def test_cut_free_input_is_relabelled_only():
    d = taut(In(Num(0)))
    assert eliminate_all(d) is d


@settings(max_examples=30)
@given(cut_derivations())
def test_eliminate_properties(d):
    assert check_coherence(d, SAMPLES).ok
    rho = d.rank - 1
    out = eliminate(d, rho)
    assert out.rank == rho
    assert out.sequent == d.sequent
    assert leq(out.height, omega_pow(d.height))
    rep = check_coherence(out, SAMPLES)
    assert rep.ok, rep
    assert all(rank(n.formula) < rho for n in walk(out) if n.rule == "cutI")


def test_template_cut_commutes_with_instantiation():
    T = _template_cut()
    E = eliminate(T, 0)
    for n in (0, 3, 9):
        a = E.premise(n)
        b = eliminate(T.premise(n), 0)
        assert a.sequent == b.sequent and a.height == b.height
        assert leq(a.height, E.hexpr.at(E.var, n))
        assert check_coherence(a).ok


@pytest.mark.parametrize("name,bound", [("zero-add", eps(ZERO)), ("ti-excluded-middle", eps(nat(1)))])
def test_eliminate_all_on_corpus(name, bound):
    d = corpus_embedding(name)
    trace = []
    out = eliminate_all(d, trace)
    assert out.rank == 0 and out.sequent == d.sequent
    assert len(trace) == d.rank
    h = d.height
    for r, th in trace:
        h = omega_pow(h)
        assert leq(th, h)
    assert lt(out.height, bound)
    assert check_coherence(out).ok
