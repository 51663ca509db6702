"""Compare α tables of generator outputs with products of their singleton entries.

For each weight vector the generator's ``α_S`` is checked against ``Π_{i∈S} α_{i}``
and the conjectured product lower bound ``α_S ≥ Π α_{i}`` is tested on every
CM quasi-CW member of the built-in corpora.

    python3 scripts/sharpness_table.py --max-weight 2 --rank 4
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from itertools import product
from math import prod

from cdindex.constructions import builtin_corpus, gorenstein_generator
from cdindex.verify import Analysis, conjecture84_violations, set_key


@dataclass
class SharpnessConfig:
    rank: int = 4
    max_weight: int = 2


def generator_rows(cfg: SharpnessConfig) -> list[dict]:
    rows = []
    for w in product(range(cfg.max_weight + 1), repeat=cfg.rank - 1):
        A = Analysis(gorenstein_generator(w).poset)
        al = A.alphas
        single = {S[0]: v for S, v in al.items() if len(S) == 1}
        mism = {set_key(S): (v, prod(single[i] for i in S)) for S, v in al.items()
                if S and v != prod(single[i] for i in S)}
        rows.append({"weights": w, "alphas": al, "mismatches": mism})
    return rows


def corpus_rows() -> list[tuple[str, list]]:
    out = []
    for n in (2, 3, 4):
        for P in builtin_corpus(n):
            A = Analysis(P)
            if A.cm and A.quasicw and A.alphas is not None:
                out.append((P.name, conjecture84_violations(A.alphas)))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rank", type=int, default=4)
    ap.add_argument("--max-weight", type=int, default=2)
    args = ap.parse_args(argv)
    cfg = SharpnessConfig(rank=args.rank, max_weight=args.max_weight)
    bad = 0
    for r in generator_rows(cfg):
        table = " ".join(f"{set_key(S)}={v}" for S, v in sorted(r["alphas"].items()))
        flag = "ok" if not r["mismatches"] else f"MISMATCH {r['mismatches']}"
        bad += bool(r["mismatches"])
        print(f"gen{r['weights']}: {table}  {flag}")
    print(f"\ngenerator outputs with α_S != product of singletons: {bad}")
    print("\nproduct lower bound on CM quasi-CW corpus members:")
    for name, viol in corpus_rows():
        print(f"  {name:<24} {'holds' if not viol else f'violated {viol}'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
