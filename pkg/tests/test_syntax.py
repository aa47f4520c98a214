import pytest
from hypothesis import given, strategies as st

from helpers import delta0, logic_formula, set_descriptors
from ordanalysis.orders import (
    NotationOrder, OmegaTwoOrder, check_descriptor, decode, encode, get_order,
)
from ordanalysis.ordinals import OMEGA, compare, parse_ord
from ordanalysis.sexpr import ParseError, dumps, loads
from ordanalysis.syntax import (
    And, Eq, Exists, ForAll, In, Neq, NotIn, NPrec, Num, Or, Plus, Prec, Times, Truth, Var,
    SetDescriptor, closed_nf, depth, dual, eval_bounded, format_formula, free_vars,
    instantiate, parse_formula, rank, subst,
)


# -- an independent evaluator ------------------------------------------------------

def value(t, env):
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        return env[t.name]
    a, b = value(t.left, env), value(t.right, env)
    return a + b if isinstance(t, Plus) else a * b


def brute(f, X, env=None, span=12):
    """Truth by exhaustive search; valid for bounded formulas with bounds < span."""
    env = env or {}
    if isinstance(f, Eq):
        return value(f.left, env) == value(f.right, env)
    if isinstance(f, Neq):
        return value(f.left, env) != value(f.right, env)
    if isinstance(f, In):
        return value(f.term, env) in X
    if isinstance(f, NotIn):
        return value(f.term, env) not in X
    if isinstance(f, Prec):
        return value(f.left, env) < value(f.right, env)
    if isinstance(f, NPrec):
        return not value(f.left, env) < value(f.right, env)
    if isinstance(f, And):
        return brute(f.left, X, env) and brute(f.right, X, env)
    if isinstance(f, Or):
        return brute(f.left, X, env) or brute(f.right, X, env)
    q = all if isinstance(f, ForAll) else any
    return q(brute(f.body, X, {**env, f.var: n}) for n in range(span))


# -- orders ----------------------------------------------------------------------

@pytest.mark.parametrize("ident", ["fin:5", "omega", "omega2", "nota:e(0)", "nota:w^(w)"])
def test_descriptors_are_consistent(ident):
    order = get_order(ident)
    pts = list(range(40)) + order.sample_field(12)
    assert check_descriptor(order, pts) == []


def test_omega2_has_type_omega_times_two():
    o = OmegaTwoOrder()
    assert o.less(10, 1) and not o.less(1, 10)
    assert compare(o.witness(3), OMEGA) >= 0
    assert str(o.otyp) == "w^(1)*2"


@given(st.integers(0, 5000))
def test_notation_codes_round_trip(n):
    t = decode(n)
    if t is not None:
        assert encode(t) == n


def test_notation_order_contains_small_ordinals():
    o = NotationOrder(parse_ord("e(0)"))
    for text in ["0", "5", "w", "w^(w)+3"]:
        assert o.in_field(encode(parse_ord(text)))
    assert not o.in_field(encode(parse_ord("e(0)")))


# -- formulas ----------------------------------------------------------------------

@given(logic_formula(max_rank=3))
def test_dual_is_an_involution(f):
    assert dual(dual(f)) == f
    assert rank(dual(f)) == rank(f) and depth(dual(f)) == depth(f)


@given(delta0())
def test_format_parse_round_trip(f):
    assert parse_formula(format_formula(f)) == f


def test_order_atoms_need_a_quoted_id():
    assert parse_formula('(prec "omega" 1 2)') == Prec("omega", Num(1), Num(2))
    with pytest.raises(ParseError):
        parse_formula("(prec omega 1 2)")


def test_sexpr_reader():
    assert loads('(a "b" 3 ; comment\n (c))') == ["a", "b", 3, ["c"]]
    assert dumps(loads('(x "y z")')) == '(x "y z")'
    with pytest.raises(ParseError):
        loads("(a (b)")


def test_substitution_avoids_capture():
    f = ForAll("y", Eq(Var("x"), Var("y")))
    g = subst(f, "x", Var("y"))
    assert free_vars(g) == {"y"}
    assert instantiate(ForAll("x", Eq(Var("x"), Num(0))), 3) == Eq(Num(3), Num(0))


def test_closed_nf_evaluates_closed_terms():
    f = Eq(Plus(Num(2), Times(Num(2), Num(3))), Var("x"))
    assert closed_nf(f) == Eq(Num(8), Var("x"))


@given(delta0(), set_descriptors)
def test_eval_bounded_matches_brute_force(f, x):
    X = SetDescriptor.parse(x)
    want = Truth.TRUE if brute(f, X) else Truth.FALSE
    assert eval_bounded(f, X, 20) is want


def test_unbounded_quantifiers_are_unknown_without_a_counterexample():
    X = SetDescriptor.parse("empty")
    assert eval_bounded(ForAll("x", Eq(Var("x"), Var("x"))), X, 10) is Truth.UNKNOWN
    assert eval_bounded(ForAll("x", Eq(Var("x"), Num(0))), X, 10) is Truth.FALSE
    assert eval_bounded(Exists("x", Eq(Var("x"), Num(7))), X, 10) is Truth.TRUE


@pytest.mark.parametrize("text,members", [
    ("finite:0,2", [0, 2]), ("periodic:2:0", [0, 2, 4]), ("cofinite:1", [0, 2, 3, 4]),
])
def test_set_descriptors(text, members):
    X = SetDescriptor.parse(text)
    assert [n for n in range(5) if n in X] == members
    assert SetDescriptor.parse(str(X)) == X


def test_guarded_order_quantifier_is_exact():
    f = ForAll("y", Or(NPrec("omega2", Var("y"), Num(6)), Eq(Times(Var("y"), Num(0)), Num(0))))
    assert eval_bounded(f, SetDescriptor.parse("all"), 3) is Truth.TRUE
