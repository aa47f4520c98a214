"""Shared strategies, fake derivations and mutations for the test suite."""
from hypothesis import strategies as st

from ordanalysis import corpus
from ordanalysis.finitary import ALGEBRAIC, AxiomBase
from ordanalysis.infinitary import (
    Add, Cond, Nat, NatSum, Pow, Stretch,
    Const, NotDerivable, Template, and_i, ax_set, ax_true, cut_i, derive_valid, embed,
    eliminate_all, ex_i, generator, norm, omega_i, or_i, taut, weaken,
)
from ordanalysis.infinitary.build import measure
from ordanalysis.ordinals import OMEGA, add, eps, leq, nat, nat_sum, omega_pow
from ordanalysis.syntax import (
    And, Eq, Exists, ForAll, In, Neq, NotIn, NPrec, Num, Or, Plus, Prec, Times, Var,
    dual, instantiate, is_atom, is_set_literal, rank, sort_key,
)

# -- ordinals ------------------------------------------------------------------

small_nats = st.integers(0, 4).map(nat)

ords_below_e0 = st.recursive(
    small_nats,
    lambda ch: st.one_of(
        st.tuples(ch, ch).map(lambda p: add(*p)),
        st.tuples(ch, ch).map(lambda p: nat_sum(*p)),
        ch.map(omega_pow),
    ),
    max_leaves=8,
)

ords = st.recursive(
    small_nats,
    lambda ch: st.one_of(
        st.tuples(ch, ch).map(lambda p: add(*p)),
        st.tuples(ch, ch).map(lambda p: nat_sum(*p)),
        ch.map(omega_pow),
        ch.map(eps),
    ),
    max_leaves=8,
)

# -- height expressions ----------------------------------------------------------

n_var = Var("n")
atom_exprs = st.one_of(
    ords.map(Const),
    st.tuples(st.integers(0, 3), st.integers(0, 5)).map(
        lambda p: Nat(Plus(Times(Num(p[0]), n_var), Num(p[1])))),
    st.tuples(st.sampled_from(["omega", "omega2", "fin:4", "nota:e(0)"]),
              st.integers(1, 6), st.integers(0, 8)).map(lambda p: Stretch(*p)),
)
exprs = st.recursive(atom_exprs, lambda ch: st.one_of(
    st.tuples(ch, ch).map(lambda p: Add(*p)),
    st.tuples(ch, ch).map(lambda p: NatSum(*p)),
    ch.map(Pow),
    st.tuples(st.sampled_from(["omega", "omega2"]), st.integers(0, 9), ch, ch).map(
        lambda p: Cond("prec", p[0], Num(p[1]), p[2], p[3])),
), max_leaves=5)


# -- formulas ------------------------------------------------------------------

VARS = ("x", "y", "z")


def terms(scope):
    base = st.integers(0, 4).map(Num)
    if scope:
        base = st.one_of(base, st.sampled_from(scope).map(Var))
    return st.recursive(
        base,
        lambda ch: st.one_of(st.tuples(ch, ch).map(lambda p: Plus(*p)),
                             st.tuples(ch, ch).map(lambda p: Times(*p))),
        max_leaves=3,
    )


def atoms(scope, with_x=True):
    t = terms(scope)
    opts = [st.builds(Eq, t, t), st.builds(Neq, t, t),
            st.builds(Prec, st.just("omega"), t, t), st.builds(NPrec, st.just("omega"), t, t)]
    if with_x:
        opts += [st.builds(In, t), st.builds(NotIn, t)]
    return st.one_of(*opts)


@st.composite
def delta0(draw, max_rank=3, scope=(), with_x=True):
    """Closed (given ``scope``) formula whose quantifiers are bounded."""
    if max_rank == 0 or draw(st.integers(0, 2)) == 0:
        return draw(atoms(scope, with_x))
    kind = draw(st.sampled_from(["and", "or", "all", "ex"]))
    if kind in ("and", "or"):
        a = draw(delta0(max_rank - 1, scope, with_x))
        b = draw(delta0(max_rank - 1 - rank(a), scope, with_x))
        return (And if kind == "and" else Or)(a, b)
    if max_rank < 3:
        return draw(atoms(scope, with_x))
    v = next(n for n in VARS if n not in scope)
    bound = Num(draw(st.integers(0, 4)))
    body = draw(delta0(max_rank - 2, scope + (v,), with_x))
    if kind == "all":
        return ForAll(v, Or(NPrec("omega", Var(v), bound), body))
    return Exists(v, And(Prec("omega", Var(v), bound), body))


@st.composite
def logic_formula(draw, max_rank=2, scope=()):
    """Closed formula with unbounded quantifiers over X-literals and equations."""
    if max_rank == 0 or draw(st.integers(0, 2)) == 0:
        t = terms(scope)
        return draw(st.one_of(st.builds(In, t), st.builds(NotIn, t), st.builds(Eq, t, t)))
    kind = draw(st.sampled_from(["and", "or", "all", "ex"]))
    if kind in ("and", "or"):
        a = draw(logic_formula(max_rank - 1, scope))
        b = draw(logic_formula(max_rank - 1 - rank(a), scope))
        return (And if kind == "and" else Or)(a, b)
    v = next(n for n in VARS if n not in scope)
    body = draw(logic_formula(max_rank - 1, scope + (v,)))
    return (ForAll if kind == "all" else Exists)(v, body)


set_descriptors = st.sampled_from(["empty", "all", "finite:0,2", "periodic:2:0",
                                   "finite:1", "cofinite:3", "periodic:3:1,2"])

# -- fake derivations ----------------------------------------------------------


def fake_derive(gamma):
    """Like derive_valid, but closes dead ends with an unjustified axiom."""
    gamma = frozenset(norm(f) for f in gamma)
    if not any(_has_forall(f) for f in gamma):  # otherwise derive_valid fails lazily
        try:
            return derive_valid(gamma)
        except NotDerivable:
            pass
    comps = sorted((f for f in gamma if not is_atom(f)), key=sort_key)
    h = nat(measure(gamma))
    if not comps:
        lits = sorted(gamma, key=sort_key)
        bad = next((a for a in lits if not is_set_literal(a)), None)
        if bad is None:
            bad = Eq(Num(0), Num(1))
        return ax_true(gamma | {bad}, bad) if bad not in gamma else ax_true(gamma, bad)
    F = comps[0]
    rest = gamma - {F}
    if isinstance(F, And):
        return and_i(gamma, F, fake_derive(rest | {F.left}), fake_derive(rest | {F.right}), height=h)
    if isinstance(F, Or):
        inner = fake_derive(rest | {F.left, F.right})
        mid = or_i(gamma | {norm(F.left)}, F, 1, inner, height=nat(measure(gamma) - 1))
        return or_i(gamma, F, 0, mid, height=h)
    if isinstance(F, ForAll):
        from ordanalysis.infinitary import Gen
        return omega_i(gamma, F, Gen("fake", rest, F), Const(nat(measure(gamma) - 1)), h, var="n")
    return ex_i(gamma, F, 0, fake_derive(rest | {instantiate(F, 0)}), height=h)


def _has_forall(f):
    if isinstance(f, ForAll):
        return True
    if isinstance(f, (And, Or)):
        return _has_forall(f.left) or _has_forall(f.right)
    return isinstance(f, Exists) and _has_forall(f.body)


@generator("fake")
def _gen_fake(rest, F, n):
    return fake_derive(rest | {instantiate(F, n)})


# -- random derivations with cuts -------------------------------------------------

W3 = add(OMEGA, add(OMEGA, OMEGA))


def pad(d, h):
    """Raise the height label of the root, never lowering it (leaves stay at 0)."""
    if d.rule in ("axTrue", "axSet") or not leq(d.height, h):
        return d
    return d.with_(height=h)


@st.composite
def pad_height(draw, d):
    k = draw(st.integers(0, 3))
    block = draw(st.sampled_from([nat(0), OMEGA, add(OMEGA, OMEGA)]))
    return pad(d, add(block, nat(k)))


def _template_cut(var="x"):
    """forall x (x in X or x notin X) with a cut on x in X under the omega rule."""
    p, q = In(Var(var)), NotIn(Var(var))
    A = Or(p, q)
    left = or_i({A, p}, A, 1, ax_set({A, p, q}, p))
    right = or_i({A, q}, A, 0, ax_set({A, p, q}, p))
    body = cut_i({A}, p, left, right)
    F = ForAll(var, A)
    return omega_i({F}, F, Template(var, body), Const(nat(2)), nat(3), rank=1, var=var)


@st.composite
def cut_derivations(draw):
    """Derivations with cut rank label <= 3 and height <= w*3."""
    kind = draw(st.sampled_from(["taut", "nested", "template", "axiom"]))
    if kind == "taut":
        F = norm(draw(logic_formula(max_rank=2)))
        l = draw(pad_height(taut(F)))
        r = draw(pad_height(taut(F)))
        d = cut_i({F, dual(F)}, F, l, r)
    elif kind == "nested":
        F = norm(draw(logic_formula(max_rank=1)))
        G = norm(draw(logic_formula(max_rank=2)))
        inner = cut_i({F, dual(F)}, F, draw(pad_height(taut(F))), taut(F))
        d = cut_i({F, dual(F)}, G, weaken(inner, {G}), weaken(taut(F), {dual(G)}))
    elif kind == "template":
        T = _template_cut()
        F = norm(T.formula)
        d = cut_i({F}, F, draw(pad_height(T)), weaken(taut(F), {F}))
    else:
        name = draw(st.sampled_from([n for n, a in ALGEBRAIC.items() if rank(a) <= 2]))
        A = norm(ALGEBRAIC[name])
        d = cut_i({A}, A, draw(pad_height(derive_valid({A}))), taut(A))
    if draw(st.booleans()):
        d = draw(pad_height(d))
    return d


# -- corpus derivations and mutations ------------------------------------------------


def corpus_embedding(name):
    p = corpus.load(name)
    return embed(p, AxiomBase(p.base))


def first_node(d, pred, path=()):
    """Path (premise indices) to the first finite-branching node matching pred."""
    if pred(d):
        return path
    if d.rule == "omega":
        return None
    for i, p in enumerate(d.premises):
        r = first_node(p, pred, path + (i,))
        if r is not None:
            return r
    return None


def replace_at(d, path, fn):
    if not path:
        return fn(d)
    i = path[0]
    prem = list(d.premises)
    prem[i] = replace_at(prem[i], path[1:], fn)
    return d.with_(premises=tuple(prem))


def mutate(d, pred, fn):
    path = first_node(d, pred)
    if path is None:
        raise LookupError("no node to mutate")
    return replace_at(d, path, fn)


def forall_x_eq_1():
    """Corrupted omega derivation claiming forall x (x = 1)."""
    F = ForAll("x", Eq(Var("x"), Num(1)))
    body = ax_true({Eq(Var("x"), Num(1))}, Eq(Var("x"), Num(1)))
    return omega_i({F}, F, Template("x", body), Const(nat(0)), nat(1))


def mutations():
    """(name, derivation) pairs, each a deliberately broken derivation."""
    zero_add = corpus_embedding("zero-add")
    zero_add_cf = eliminate_all(zero_add)
    fem = corpus_embedding("forall-excluded-middle")
    andc = corpus_embedding("and-commutes")
    ti = corpus_embedding("ti-excluded-middle")
    out = []

    def add_case(name, fn):
        out.append((name, fn))

    add_case("premise-height-equals-parent", lambda: mutate(
        zero_add, lambda n: n.rule != "omega" and n.premises and n.premises[0].rule != "omega"
        and n.height != n.premises[0].height,
        lambda n: replace_at(n, (0,), lambda p: p.with_(height=n.height))))
    conj = derive_valid({And(Eq(Plus(Num(1), Num(1)), Num(2)), Exists("x", Eq(Var("x"), Num(3))))})
    add_case("false-arithmetic-axiom", lambda: mutate(
        conj, lambda n: n.rule == "axTrue",
        lambda n: n.with_(formula=Eq(Num(0), Num(1)), sequent=n.sequent | {Eq(Num(0), Num(1))})))
    add_case("flipped-or-side", lambda: mutate(
        andc, lambda n: n.rule == "orI", lambda n: n.with_(side=1 - n.side)))
    add_case("wrong-exists-witness", lambda: mutate(
        corpus_embedding("exists-intro"), lambda n: n.rule == "exI",
        lambda n: n.with_(witness=n.witness + 1)))
    add_case("dropped-root-formula", lambda: zero_add_cf.with_(sequent=frozenset()))
    add_case("cut-rank-not-strict", lambda: mutate(
        zero_add, lambda n: n.rule == "cutI", lambda n: n.with_(rank=rank(n.formula))))
    add_case("non-uniform-height-expr", lambda: mutate(
        fem, lambda n: n.rule == "omega", lambda n: n.with_(hexpr=Const(n.height))))
    add_case("forall-x-eq-1", forall_x_eq_1)
    add_case("set-axiom-without-partner", lambda: mutate(
        andc, lambda n: n.rule == "axSet",
        lambda n: n.with_(sequent=n.sequent - {dual(n.formula)})))
    add_case("false-end-sequent", lambda: zero_add_cf.with_(
        sequent=frozenset({Eq(Num(0), Num(1))})))
    add_case("fake-bounded-universal", lambda: fake_derive(
        {ForAll("x", Or(NPrec("omega", Var("x"), Num(5)), Eq(Plus(Var("x"), Var("x")), Var("x"))))}))
    add_case("swapped-cut-premises", lambda: mutate(
        zero_add, lambda n: n.rule == "cutI",
        lambda n: n.with_(premises=(n.premises[1], n.premises[0]))))
    add_case("height-expr-too-small", lambda: mutate(
        ti, lambda n: n.rule == "omega", lambda n: n.with_(hexpr=Const(nat(0)))))
    add_case("ti-height-below-order-type", lambda: mutate(
        ti, lambda n: n.rule == "omega", lambda n: n.with_(height=OMEGA)))
    add_case("fake-false-conjunction", lambda: fake_derive(
        {And(Eq(Num(1), Num(1)), Eq(Times(Num(2), Num(2)), Num(5)))}))
    return [(name, fn()) for name, fn in out]
