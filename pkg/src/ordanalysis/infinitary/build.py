"""Cut-free derivations of axioms: valid sentences, tautologies, induction
and transfinite induction."""
from __future__ import annotations

from functools import lru_cache

from ..finitary import ALGEBRAIC, induction_parts, mk_induction, mk_ti, ti_parts
from ..ordinals import OMEGA, add, classify, nat
from ..orders import OrderDescriptor, get_order
from ..syntax import (
    And, Exists, ForAll, In, Num, Or, Plus, Times, Var, atom_truth, depth,
    dual, instantiate, is_atom, is_set_literal, sort_key,
)
from .deriv import (
    Cond, Const, Gen, Nat, Stretch, and_i, ax_set, ax_true, ex_i, generator,
    norm, omega_i, or_i,
)


class NotDerivable(ValueError):
    pass


# -- proof search for valid sequents ---------------------------------------

def cost(f) -> int:
    if is_atom(f):
        return 0
    if isinstance(f, And):
        return 1 + max(cost(f.left), cost(f.right))
    if isinstance(f, Or):
        return 2 + cost(f.left) + cost(f.right)
    return 1 + cost(f.body)


def measure(gamma) -> int:
    return sum(cost(f) for f in gamma)


def _leaf(gamma):
    for f in sorted(gamma, key=sort_key):
        if is_atom(f):
            if is_set_literal(f):
                if isinstance(f, In) and dual(f) in gamma:
                    return ax_set(gamma, f)
            elif atom_truth(f):
                return ax_true(gamma, f)
    return None


_PRIORITY = {And: 0, Or: 1, ForAll: 2, Exists: 3}


def derive_valid(gamma, witnesses=range(17)) -> object:
    """Cut-free derivation of a closed sequent that holds for every X.

    Invertible rules are applied first; existential witnesses are found by
    backtracking over ``witnesses`` and the numerals of the sequent.  The
    height label of a sequent is its cost measure, so labels are predictable
    and uniform across omega instances.
    """
    gamma = frozenset(norm(f) for f in gamma)
    leaf = _leaf(gamma)
    if leaf is not None:
        return leaf
    comps = sorted((f for f in gamma if not is_atom(f)),
                   key=lambda f: (_PRIORITY[type(f)], sort_key(f)))
    if not comps:
        raise NotDerivable(f"no axiom applies to {{{', '.join(map(str, gamma))}}}")
    F = comps[0]
    rest = gamma - {F}
    h = nat(measure(gamma))
    if isinstance(F, And):
        left = derive_valid(rest | {norm(F.left)}, witnesses)
        right = derive_valid(rest | {norm(F.right)}, witnesses)
        return and_i(gamma, F, left, right, height=h)
    if isinstance(F, Or):
        inner = derive_valid(rest | {norm(F.left), norm(F.right)}, witnesses)
        mid = or_i(gamma | {norm(F.left)}, F, 1, inner, height=nat(measure(gamma) - 1))
        return or_i(gamma, F, 0, mid, height=h)
    if isinstance(F, ForAll):
        return omega_i(gamma, F, Gen("valid", rest, F), Const(nat(measure(gamma) - 1)), h, var="n")
    last = None
    for n in _candidates(gamma, witnesses):
        try:
            sub = derive_valid(rest | {instantiate(F, n)}, witnesses)
        except NotDerivable as exc:
            last = exc
            continue
        return ex_i(gamma, F, n, sub, height=h)
    raise NotDerivable(f"no witness for {F}: {last}")


def _candidates(gamma, witnesses):
    from ..syntax import _terms  # numerals of atoms
    seen = list(witnesses)
    stack = list(gamma)
    while stack:
        f = stack.pop()
        if isinstance(f, (And, Or)):
            stack += [f.left, f.right]
        elif isinstance(f, (ForAll, Exists)):
            stack.append(f.body)
        else:
            for t in _terms(f):
                if isinstance(t, Num) and t.value not in seen:
                    seen.append(t.value)
    return seen


@generator("valid")
def _gen_valid(rest, F, n):
    return derive_valid(rest | {instantiate(F, n)})


# -- tautologies -------------------------------------------------------------

def taut(A):
    """Cut-free derivation of {A, not A} with height 2*depth(A)."""
    A = norm(A)
    if is_atom(A):
        if is_set_literal(A):
            return ax_set({A, dual(A)}, A if isinstance(A, In) else dual(A))
        return ax_true({A, dual(A)}, A if atom_truth(A) else dual(A))
    if isinstance(A, (Or, Exists)):
        A = dual(A)
    N = dual(A)
    if isinstance(A, And):
        left = or_i({N, A.left}, N, 0, taut(A.left))
        right = or_i({N, A.right}, N, 1, taut(A.right))
        return and_i({A, N}, A, left, right)
    d = depth(A)
    return omega_i({A, N}, A, Gen("taut", A), Const(nat(2 * d - 1)), nat(2 * d), var="n")


@generator("taut")
def _gen_taut(A, n):
    B = instantiate(A, n)
    N = dual(A)
    return ex_i({N, B}, N, n, taut(B))


# -- induction -------------------------------------------------------------

def derive_induction(phi, var: str = "x"):
    """Height omega+4: the omega rule's i-th premise unfolds i steps."""
    ind = norm(mk_induction(phi, var))
    L, goal = ind.left, ind.right
    N0, E = L.left, L.right
    d = depth(phi)
    hexpr = Nat(Plus(Times(Num(2), Var("n")), Num(2 * d)))
    s4 = omega_i({N0, E, goal}, goal, Gen("ind", phi, var), hexpr, OMEGA, var="n")
    n2 = or_i({N0, L, goal}, L, 1, s4)
    n3 = or_i({L, goal}, L, 0, n2)
    n4 = or_i({ind, L}, ind, 1, n3)
    return or_i({ind}, ind, 0, n4)


_IND_CHAINS: dict = {}


def _ind_step(phi, var, i):
    chain = _IND_CHAINS.setdefault((phi, var), [])
    if not chain:
        ind = norm(mk_induction(phi, var))
        chain.append((ind, taut(instantiate(ind.right, 0))))
    ind = chain[0][0]
    N0, E = ind.left.left, ind.left.right
    while len(chain) <= i:
        k = len(chain) - 1
        prev = chain[k][1]
        nxt = instantiate(ind.right, k + 1)
        C = instantiate(E, k)
        body = and_i({N0, E, nxt, C}, C, prev, taut(nxt))
        chain.append((ind, ex_i({N0, E, nxt}, E, k, body)))
    return chain[i][1]


@generator("ind")
def _gen_ind(phi, var, n):
    return _ind_step(phi, var, n)


# -- transfinite induction ---------------------------------------------------

def derive_ti(order: OrderDescriptor, phi, var: str = "x"):
    """Cut-free derivation of TI(order, phi) with height otyp+2.

    The premise for a field element n has height beta + 6k + 2*depth(phi) + 6
    where beta + k is the witness of n (beta a limit or zero).
    """
    if classify(order.otyp).kind != "limit":
        raise ValueError(f"order type {order.otyp} of {order.ident} is not a limit")
    ti = norm(mk_ti(order, phi, var))
    not_prog, goal = ti.left, ti.right
    d = depth(phi)
    hexpr = Cond("fld", order.ident, None, Stretch(order.ident, 6, 2 * d + 6), Const(nat(1)))
    s2 = omega_i({not_prog, goal}, goal, Gen("ti-field", order.ident, phi, var), hexpr,
                 order.otyp, var="n")
    mid = or_i({ti, goal}, ti, 0, s2)
    return or_i({ti}, ti, 1, mid)


@lru_cache(maxsize=256)
def _ti_parts(order_id, phi, var):
    ti = norm(mk_ti(get_order(order_id), phi, var))
    return ti.left, ti.right


@lru_cache(maxsize=4096)
def ti_step(order_id: str, phi, var: str, n: int):
    """Derivation of {not Prog, phi(n)} for a field element n."""
    from .deriv import stretch
    order = get_order(order_id)
    not_prog, goal = _ti_parts(order_id, phi, var)
    d = depth(phi)
    inst = instantiate(not_prog, n)
    below, nphi = inst.right.left, inst.right.right
    phin = instantiate(goal, n).right
    w = stretch(order.witness(n), 6, 2 * d + 2)
    hexpr = Cond("prec", order_id, Num(n), Stretch(order_id, 6, 2 * d + 6), Const(nat(1)))
    b = omega_i({not_prog, below}, below, Gen("ti-below", order_id, phi, var, n), hexpr, w,
                var="n")
    a2 = and_i({not_prog, phin, inst.right}, inst.right, b, taut(phin))
    fld = inst.left
    a1 = and_i({not_prog, phin, inst}, inst, ax_true({fld}, fld), a2)
    return ex_i({not_prog, phin}, not_prog, n, a1)


@generator("ti-below")
def _gen_ti_below(order_id, phi, var, n, m):
    not_prog, _ = _ti_parts(order_id, phi, var)
    below = instantiate(not_prog, n).right.left
    bm = instantiate(below, m)
    if get_order(order_id).less(m, n):
        return or_i({not_prog, bm}, bm, 1, ti_step(order_id, phi, var, m))
    return or_i({bm}, bm, 0, ax_true({bm.left}, bm.left))


@generator("ti-field")
def _gen_ti_field(order_id, phi, var, n):
    not_prog, goal = _ti_parts(order_id, phi, var)
    g = instantiate(goal, n)
    if get_order(order_id).in_field(n):
        return or_i({not_prog, g}, g, 1, ti_step(order_id, phi, var, n))
    return or_i({g}, g, 0, ax_true({g.left}, g.left))


# -- axioms --------------------------------------------------------------------

def embed_axiom(a):
    """Cut-free derivation of a single axiom of PA(X) or of a TI instance."""
    a = norm(a)
    for ax in ALGEBRAIC.values():
        if norm(ax) == a:
            return derive_valid({a})
    parts = induction_parts(a)
    if parts:
        return derive_induction(*parts)
    parts = ti_parts(a)
    if parts:
        return derive_ti(*parts)
    raise ValueError(f"not an axiom: {a}")


def axiom_bound(a):
    """Target bound on the truth complexity of an axiom: w+5, or otyp+2 for TI."""
    if ti_parts(norm(a)):
        return add(ti_parts(norm(a))[0].otyp, nat(2))
    return add(OMEGA, nat(5))


__all__ = [
    "derive_valid", "taut", "derive_induction", "derive_ti", "ti_step",
    "embed_axiom", "axiom_bound", "cost", "measure", "NotDerivable",
]
