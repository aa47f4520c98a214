"""Analyze every shipped corpus proof and print a one-line summary each.

TI proofs run at --gamma (default 0); the others in pure PA mode.
Full reports go to --out/<name>.report when --out is given.
"""
import argparse
from pathlib import Path

from ordanalysis.corpus import CORPUS
from ordanalysis.finitary import AxiomBase
from ordanalysis.ordinals import format_ord, parse_ord
from ordanalysis.pipeline import PipelineConfig, analyze


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", default="0")
    ap.add_argument("--fuel", type=int, default=50)
    ap.add_argument("--out")
    a = ap.parse_args()
    gamma = parse_ord(a.gamma)
    out = Path(a.out) if a.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name, mk in CORPUS.items():
        p = mk()
        g = gamma if AxiomBase(p.base).order is not None else None
        rep = analyze(p, PipelineConfig(gamma=g, fuel=a.fuel), proof_id=name)
        worst = max(worst, rep.exit_code)
        fmt = lambda o: "-" if o is None else format_ord(o)
        print(f"{name:24} exit={rep.exit_code} n={rep.n} rank={rep.embed_rank} "
              f"embed={fmt(rep.embed_height)} final<{fmt(rep.epsilon_bound)}:"
              f"{rep.bound_satisfied} verdicts={sorted(set(rep.verdicts.values()))} "
              f"{rep.seconds:.2f}s")
        if out:
            (out / f"{name}.report").write_text(rep.to_text())
    raise SystemExit(worst)


if __name__ == "__main__":
    main()
