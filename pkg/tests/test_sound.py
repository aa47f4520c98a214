import pytest
from hypothesis import given, settings, strategies as st

from helpers import delta0, fake_derive, forall_x_eq_1, set_descriptors
from ordanalysis import corpus
from ordanalysis.infinitary import (
    DESCENT, UNKNOWN, VERIFIED, ax_true, check_coherence, derive_valid, evaluate_sound,
)
from ordanalysis.ordinals import nat
from ordanalysis.syntax import (
    Eq, ForAll, Neq, Num, SetDescriptor, Truth, Var, sequent_truth,
)

EMPTY = SetDescriptor.parse("empty")


def test_true_axiom():
    d = ax_true({Eq(Num(0), Num(0))}, Eq(Num(0), Num(0)))
    for x in ("empty", "all", "finite:0,2"):
        assert evaluate_sound(d, SetDescriptor.parse(x)).verdict == VERIFIED


def test_forall_plus_zero_example():
    res = evaluate_sound(corpus.forall_plus_zero(), EMPTY, fuel=50)
    assert res.verdict == VERIFIED


def test_corrupted_forall_x_eq_1():
    res = evaluate_sound(forall_x_eq_1(), EMPTY)
    assert res.verdict == DESCENT
    assert res.path[-1][0] == ("x=0",)
    assert res.heights_descending()


def test_rejects_cuts():
    with pytest.raises(ValueError):
        evaluate_sound(corpus.one_atomic_cut(), EMPTY)


def test_node_budget_gives_unknown():
    d = fake_derive({ForAll("x", Neq(Var("x"), Num(40)))})
    res = evaluate_sound(d, EMPTY, fuel=60, max_nodes=5)
    assert res.verdict == UNKNOWN and "budget" in res.reason


def test_counterexample_beyond_fuel_is_missed():
    # the bogus instance sits at 60, outside a fuel of 50
    d = fake_derive({ForAll("x", Neq(Var("x"), Num(60)))})
    assert not check_coherence(d, samples=(60,)).ok
    assert evaluate_sound(d, EMPTY, fuel=50).verdict == VERIFIED
    res = evaluate_sound(d, EMPTY, fuel=70)
    assert res.verdict == DESCENT and res.heights_descending()


@settings(max_examples=60)
@given(delta0(max_rank=4, with_x=False))
def test_genuine_derivations_verify(f):
    X = EMPTY
    truth = sequent_truth(frozenset({f}), X, 20)
    d = fake_derive({f})
    res = evaluate_sound(d, X, fuel=20)
    if truth is Truth.TRUE:
        assert res.verdict == VERIFIED
    else:
        assert res.verdict == DESCENT and res.heights_descending()
        assert not check_coherence(d, samples=range(8)).ok


@settings(max_examples=40)
@given(delta0(max_rank=3), set_descriptors)
def test_verdict_agrees_with_truth(f, x):
    X = SetDescriptor.parse(x)
    d = fake_derive({f})
    res = evaluate_sound(d, X, fuel=20)
    truth = sequent_truth(frozenset({f}), X, 20)
    assert (res.verdict == VERIFIED) == (truth is Truth.TRUE)


def test_descending_heights_on_corrupted_valid_derivation():
    d = derive_valid({ForAll("x", Eq(Var("x"), Var("x")))})
    bad = d.with_(formula=ForAll("x", Eq(Var("x"), Num(2))),
                  sequent=frozenset({ForAll("x", Eq(Var("x"), Num(2)))}))
    res = evaluate_sound(bad, EMPTY)
    assert res.verdict == DESCENT
    assert res.path[0][1] == nat(1)
