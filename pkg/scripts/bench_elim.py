"""Time cut elimination on random small derivations.

Builds derivations from cuts on random tautologies and shipped axioms,
eliminates one rank, and reports height growth and timing per cut rank.
"""
import argparse
import random
import statistics
import time
from collections import defaultdict

from ordanalysis.finitary import ALGEBRAIC
from ordanalysis.infinitary import check_coherence, cut_i, derive_valid, eliminate, norm, taut
from ordanalysis.ordinals import format_ord, leq, omega_pow
from ordanalysis.syntax import And, Exists, ForAll, In, NotIn, Num, Or, Var, dual, rank


def rand_formula(rng, depth):
    if depth == 0:
        return rng.choice([In, NotIn])(Num(rng.randint(0, 3)))
    k = rng.choice(["and", "or", "all", "ex"])
    if k in ("and", "or"):
        return (And if k == "and" else Or)(rand_formula(rng, depth - 1), rand_formula(rng, depth - 1))
    body = rng.choice([In, NotIn])(Var("x"))
    return (ForAll if k == "all" else Exists)("x", body)


def rand_cut(rng):
    if rng.random() < 0.3:
        A = norm(rng.choice([a for a in ALGEBRAIC.values() if rank(a) <= 2]))
        return cut_i({A}, A, derive_valid({A}), taut(A))
    F = norm(rand_formula(rng, rng.randint(0, 2)))
    return cut_i({F, dual(F)}, F, taut(F), taut(F))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--check", action="store_true", help="also run the coherence checker")
    a = ap.parse_args()
    rng = random.Random(a.seed)
    times, failures = defaultdict(list), 0
    for _ in range(a.n):
        d = rand_cut(rng)
        t0 = time.perf_counter()
        out = eliminate(d, d.rank - 1)
        times[d.rank].append(time.perf_counter() - t0)
        ok = out.rank == d.rank - 1 and leq(out.height, omega_pow(d.height))
        if a.check:
            ok = ok and check_coherence(out, samples=(0, 1, 2)).ok
        if not ok:
            failures += 1
            print("FAILED:", format_ord(d.height), d.rank, format_ord(out.height))
    for r in sorted(times):
        ts = times[r]
        print(f"rank {r}: {len(ts):4} runs, median {1e3 * statistics.median(ts):.2f} ms, "
              f"max {1e3 * max(ts):.2f} ms")
    print(f"failures: {failures}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
