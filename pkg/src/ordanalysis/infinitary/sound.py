"""Soundness of cut-free derivations as a falsification search.

If a coherent derivation had a false end sequent, every false sequent would
have a false premise, giving an infinite chain of false sequents with
strictly descending heights.  The search below looks for such a chain.  It
can only end in a node that is false although all of its premises are true
(or at a false axiom), which exhibits a local violation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..syntax import (
    In, SetDescriptor, Truth, atom_truth, dual, free_vars, guard_domain, is_atom,
    is_set_literal, sequent_truth,
)
from .deriv import InfDeriv

VERIFIED, UNKNOWN, DESCENT = "Verified", "Unknown", "DescentFound"


@dataclass
class SoundResult:
    verdict: str
    path: list = field(default_factory=list)  # [(tags, height, sequent)]
    nodes: int = 0
    reason: str = ""

    def heights_descending(self) -> bool:
        from ..ordinals import lt
        hs = [h for _, h, _ in self.path]
        return all(lt(b, a) for a, b in zip(hs, hs[1:]))

    def __str__(self):
        s = f"{self.verdict} (nodes={self.nodes})"
        if self.reason:
            s += f": {self.reason}"
        for tags, h, sq in self.path:
            s += f"\n  {'/'.join(tags) or 'root'} height {h}: {{{', '.join(sorted(map(str, sq)))}}}"
        return s


@lru_cache(maxsize=100_000)
def _truth(sq, X, fuel):
    return sequent_truth(sq, X, fuel)


def _leaf_ok(d):
    f = d.formula
    if f not in d.sequent:
        return False
    if d.rule == "axTrue":
        return (is_atom(f) and not is_set_literal(f) and not free_vars(f)
                and bool(atom_truth(f)))
    return isinstance(f, In) and dual(f) in d.sequent


class _Budget(Exception):
    pass


def evaluate_sound(d: InfDeriv, X: SetDescriptor, fuel: int = 50, max_nodes: int = 100_000) -> SoundResult:
    if d.rank != 0:
        raise ValueError("evaluate_sound needs a cut-free derivation (rank label 0)")
    counter = [0]

    def search(node, tags, chain):
        counter[0] += 1
        if counter[0] > max_nodes:
            raise _Budget
        t = _truth(node.sequent, X, fuel)
        if t is Truth.TRUE:
            return SoundResult(VERIFIED)
        chain = chain + [(tags, node.height, node.sequent)] if t is Truth.FALSE else []
        if node.rule in ("axTrue", "axSet"):
            if _leaf_ok(node):
                return SoundResult(VERIFIED)
            if t is Truth.FALSE:
                return SoundResult(DESCENT, chain, reason="false axiom")
            return SoundResult(UNKNOWN, reason="axiom clause fails on an undecided sequent")
        try:
            kids = _children(node, fuel)
        except Exception as exc:  # a family that cannot produce its premise
            return SoundResult(UNKNOWN, reason=f"premise unavailable: {exc}")
        results, truths = [], []
        for tag, child in kids:
            r = search(child, tags + (tag,), chain)
            if r.verdict == DESCENT:
                return r
            results.append(r)
            truths.append(_truth(child.sequent, X, fuel))
        if t is Truth.FALSE and all(v is Truth.TRUE for v in truths):
            return SoundResult(DESCENT, chain, reason=f"false {node.rule} with true premises")
        if t is Truth.FALSE or any(r.verdict == UNKNOWN for r in results):
            return SoundResult(UNKNOWN)
        return SoundResult(VERIFIED)

    try:
        res = search(d, (), [])
    except _Budget:
        res = SoundResult(UNKNOWN, reason="node budget exhausted")
    res.nodes = counter[0]
    return res


def _children(node, fuel):
    if node.rule != "omega":
        return [(str(k), p) for k, p in enumerate(node.premises)]
    ns = list(range(fuel + 1))
    dom = guard_domain(node.formula)
    if dom is not None:
        ns += [n for n in dom if n > fuel]
    return [(f"{node.var}={n}", node.premise(n)) for n in ns]


__all__ = ["evaluate_sound", "SoundResult", "VERIFIED", "UNKNOWN", "DESCENT"]
