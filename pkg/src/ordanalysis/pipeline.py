"""End-to-end analysis of a finitary proof: check, embed, eliminate, evaluate."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .finitary import AxiomBase, FinProof, axiom_leaves, check_fin, ti_parts
from .infinitary import (
    DESCENT, AxiomTable, check_coherence, eliminate_all, embed, embedding_bound,
    evaluate_sound,
)
from .infinitary.check import DEFAULT_SAMPLES
from .ordinals import ZERO, add, eps, format_ord, leq, lt, nat
from .syntax import SetDescriptor, format_formula

DEFAULT_ASSIGNMENTS = ("empty", "all", "finite:0,2", "periodic:2:0")

# exit codes
OK, BOUND_VIOLATED, PARSE_ERROR, CHECK_FAILED, DESCENT_FOUND = 0, 1, 2, 3, 4


class StageError(Exception):
    def __init__(self, stage: str, code: int, message: str):
        super().__init__(message)
        self.stage, self.code = stage, code


@dataclass
class PipelineConfig:
    gamma: object = None                  # OrdTerm or None for pure PA mode
    assignments: tuple = DEFAULT_ASSIGNMENTS
    fuel: int = 50
    samples: tuple = DEFAULT_SAMPLES
    max_nodes: int = 200_000
    check_stages: bool = True             # coherence check after each stage


@dataclass
class PipelineReport:
    proof_id: str
    base: str
    gamma: object = None
    n: int = 0
    ti_formulas: list = field(default_factory=list)
    embed_height: object = None
    embed_rank: int = 0
    embed_bound: object = None
    rounds: list = field(default_factory=list)   # [(rank, height)]
    final_height: object = None
    epsilon_bound: object = None
    bound_satisfied: bool = False
    verdicts: dict = field(default_factory=dict)
    stage: str = "done"
    error: str = ""
    exit_code: int = OK
    seconds: float = 0.0

    def items(self):
        """Flat key/value pairs in a stable order."""
        f = lambda o: "" if o is None else format_ord(o)
        out = [
            ("proof", self.proof_id),
            ("base", self.base),
            ("gamma", f(self.gamma)),
            ("axiomCount", str(self.n)),
            ("tiCount", str(len(self.ti_formulas))),
        ]
        out += [(f"ti.{i}", format_formula(p)) for i, p in enumerate(self.ti_formulas)]
        out += [
            ("embed.height", f(self.embed_height)),
            ("embed.rank", str(self.embed_rank)),
            ("embed.bound", f(self.embed_bound)),
            ("elim.rounds", str(len(self.rounds))),
        ]
        out += [(f"elim.round.{i}", f"rank={r} height={format_ord(h)}")
                for i, (r, h) in enumerate(self.rounds)]
        out += [
            ("finalHeight", f(self.final_height)),
            ("epsilonBound", f(self.epsilon_bound)),
            ("boundSatisfied", str(self.bound_satisfied).lower()),
        ]
        out += [(f"sound.{x}", v) for x, v in self.verdicts.items()]
        out += [
            ("stage", self.stage),
            ("error", self.error),
            ("exitCode", str(self.exit_code)),
            ("seconds", f"{self.seconds:.3f}"),
        ]
        return out

    def to_text(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.items())


def parse_report(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        if line.strip():
            k, _, v = line.partition("=")
            out[k] = v
    return out


def epsilon_bound(gamma):
    """eps(gamma+1), or eps(0) in pure PA mode."""
    return eps(ZERO) if gamma is None else eps(add(gamma, nat(1)))


def _coherent(d, cfg, stage):
    if not cfg.check_stages:
        return
    rep = check_coherence(d, samples=cfg.samples, max_nodes=cfg.max_nodes)
    if not rep.ok:
        path, clause, detail = rep.violations[0]
        raise StageError(stage, CHECK_FAILED, f"{'/'.join(path) or 'root'}: {clause}: {detail}")


def analyze(proof: FinProof, cfg: PipelineConfig = PipelineConfig(), proof_id: str = "proof") -> PipelineReport:
    t0 = time.perf_counter()
    rep = PipelineReport(proof_id, proof.base, gamma=cfg.gamma)
    try:
        _run(proof, cfg, rep)
    except StageError as exc:
        rep.stage, rep.error, rep.exit_code = exc.stage, str(exc), exc.code
    rep.seconds = time.perf_counter() - t0
    return rep


def _run(proof, cfg, rep):
    try:
        base = AxiomBase(proof.base)
    except (ValueError, KeyError) as exc:
        raise StageError("check-fin", CHECK_FAILED, str(exc)) from None
    fin = check_fin(proof, base)
    if not fin.ok:
        raise StageError("check-fin", CHECK_FAILED, str(fin.first))

    leaves = axiom_leaves(proof)
    rep.n = len(leaves)
    for a in leaves:
        parts = ti_parts(a)
        if parts and parts[1] not in rep.ti_formulas:
            rep.ti_formulas.append(parts[1])
    if base.order is not None:
        if cfg.gamma is None:
            raise StageError("check-fin", PARSE_ERROR, "a TI base needs --gamma")
        if not leq(base.order.otyp, eps(cfg.gamma)):
            raise StageError("check-fin", CHECK_FAILED,
                             f"order type {format_ord(base.order.otyp)} exceeds eps(gamma)")

    table = AxiomTable.build(leaves)
    for a, d in table.derivs.items():
        _coherent(d, cfg, "embed-axiom")
    d = embed(proof, base, table, check=False)
    rep.embed_height, rep.embed_rank = d.height, d.rank
    rep.embed_bound = embedding_bound(proof, table)
    _coherent(d, cfg, "embed")

    trace = []
    d = eliminate_all(d, trace)
    rep.rounds = trace
    rep.final_height = d.height
    _coherent(d, cfg, "elim")

    rep.epsilon_bound = epsilon_bound(cfg.gamma)
    rep.bound_satisfied = lt(d.height, rep.epsilon_bound)

    for x in cfg.assignments:
        X = SetDescriptor.parse(x) if isinstance(x, str) else x
        res = evaluate_sound(d, X, cfg.fuel, cfg.max_nodes)
        rep.verdicts[str(X)] = res.verdict
    if any(v == DESCENT for v in rep.verdicts.values()):
        raise StageError("eval", DESCENT_FOUND, "descent found")
    if not rep.bound_satisfied:
        raise StageError("bound", BOUND_VIOLATED, "final height not below the epsilon bound")


__all__ = ["PipelineConfig", "PipelineReport", "analyze", "epsilon_bound", "parse_report",
           "StageError", "DEFAULT_ASSIGNMENTS", "OK", "BOUND_VIOLATED", "PARSE_ERROR",
           "CHECK_FAILED", "DESCENT_FOUND"]
