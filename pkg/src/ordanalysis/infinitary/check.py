"""Local coherence of infinitary derivations.

Every node is checked against the clause for its rule.  Omega nodes are
checked at the given sample numerals (and the check descends into those
instances) plus once symbolically: the height expression must be bounded
below the node height uniformly in the numeral.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..ordinals import ZERO, leq, lt
from ..syntax import (
    And, Exists, ForAll, In, Or, atom_truth, dual, free_vars, instantiate,
    is_atom, is_set_literal, rank,
)
from .deriv import InfDeriv, uniform_ok

DEFAULT_SAMPLES = (0, 1, 2, 3, 5, 17)


@dataclass
class CheckReport:
    violations: list = field(default_factory=list)  # (path, clause, detail)
    sampled_instances: tuple = ()
    nodes: int = 0
    complete: bool = True

    @property
    def verdict(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        lines = [f"verdict={self.verdict} nodes={self.nodes}"]
        for path, clause, detail in self.violations[:20]:
            lines.append(f"  {'/'.join(path) or 'root'}: {clause}: {detail}")
        return "\n".join(lines)


def check_coherence(d: InfDeriv, samples=DEFAULT_SAMPLES, max_nodes: int = 200_000) -> CheckReport:
    samples = tuple(sorted(set(samples)))
    rep = CheckReport(sampled_instances=samples)
    seen = {}
    stack = [(d, ())]
    while stack:
        node, path = stack.pop()
        if id(node) in seen:
            continue
        seen[id(node)] = node
        rep.nodes += 1
        if rep.nodes > max_nodes:
            rep.complete = False
            break
        for clause, detail in _node_violations(node, samples):
            rep.violations.append((path, clause, detail))
        for tag, child in _children(node, samples, rep, path):
            stack.append((child, path + (tag,)))
    return rep


def _children(node, samples, rep, path):
    if node.rule == "omega":
        out = []
        for n in samples:
            try:
                out.append((f"{node.var}={n}", node.premise(n)))
            except Exception as exc:  # a broken family is a violation, not a crash
                rep.violations.append((path, "omega-instance", f"{n}: {exc}"))
        return out
    return [(str(k), p) for k, p in enumerate(node.premises)]


def _sub(child, node, active):
    extra = child.sequent - node.sequent - ({active} if active is not None else set())
    if extra:
        return [("premise", "premise has formulas outside conclusion + active: "
                 + ", ".join(sorted(map(str, extra))))]
    return []


def _labels(child, node, bound=None):
    out = []
    if not lt(child.height, node.height):
        out.append(("height", f"premise height {child.height} not below {node.height}"))
    if child.rank > node.rank:
        out.append(("rank", f"premise rank {child.rank} exceeds {node.rank}"))
    if bound is not None and not leq(child.height, bound):
        out.append(("hexpr", f"premise height {child.height} exceeds height expression {bound}"))
    return out


def _node_violations(node, samples):
    out = []
    for f in node.sequent:
        if free_vars(f):
            out.append(("closed", f"open formula {f}"))
    r, f = node.rule, node.formula
    if r in ("axTrue", "axSet"):
        if node.height != ZERO:
            out.append(("axiom-label", "axioms carry height 0"))
        if f not in node.sequent:
            out.append(("axiom", f"{f} not in sequent"))
        elif r == "axTrue":
            if not is_atom(f) or is_set_literal(f) or free_vars(f) or not atom_truth(f):
                out.append(("axiom", f"{f} is not a true closed arithmetic atom"))
        else:
            if not isinstance(f, In) or dual(f) not in node.sequent:
                out.append(("axiom", f"no matching pair s notin X, t in X for {f}"))
        return out
    if r == "cutI":
        if free_vars(f):
            out.append(("cut", f"open cut formula {f}"))
        if rank(f) >= node.rank:
            out.append(("cut-rank", f"rank({f}) = {rank(f)} not below {node.rank}"))
        left, right = node.premises
        out += _sub(left, node, f) + _sub(right, node, dual(f))
        out += _labels(left, node) + _labels(right, node)
        return out
    if f not in node.sequent:
        return out + [("principal", f"{f} not in sequent")]
    if r == "andI":
        if not isinstance(f, And) or len(node.premises) != 2:
            return out + [("principal", f"{f} is not a conjunction")]
        for p, part in zip(node.premises, (f.left, f.right)):
            out += _sub(p, node, part) + _labels(p, node)
        return out
    if r == "orI":
        if not isinstance(f, Or):
            return out + [("principal", f"{f} is not a disjunction")]
        p = node.premises[0]
        return out + _sub(p, node, f.right if node.side else f.left) + _labels(p, node)
    if r == "exI":
        if not isinstance(f, Exists):
            return out + [("principal", f"{f} is not existential")]
        p = node.premises[0]
        return out + _sub(p, node, instantiate(f, node.witness)) + _labels(p, node)
    if r == "omega":
        if not isinstance(f, ForAll):
            return out + [("principal", f"{f} is not universal")]
        try:
            if not uniform_ok(node.hexpr, node.var, node.height):
                u, s = node.hexpr.bound(node.var)
                out.append(("uniform", f"height expression bound {'<' if s else '<='} {u} "
                            f"not below {node.height}"))
        except Exception as exc:
            out.append(("uniform", f"cannot bound height expression: {exc}"))
        for n in samples:
            try:
                p = node.premise(n)
                h = node.hexpr.at(node.var, n)
            except Exception:
                continue  # reported by _children
            out += _sub(p, node, instantiate(f, n)) + _labels(p, node, h)
            if not lt(h, node.height):
                out.append(("hexpr", f"height expression at {n} is {h}, not below {node.height}"))
        return out
    return out + [("rule", f"unknown rule {r}")]


def tc_upper_bound(d: InfDeriv) -> object:
    """Height label of a cut-free derivation: an upper bound on truth complexity."""
    if d.rank != 0:
        raise ValueError("derivation has cuts (rank label > 0)")
    return d.height


__all__ = ["CheckReport", "check_coherence", "tc_upper_bound", "DEFAULT_SAMPLES"]
