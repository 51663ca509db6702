"""Span rank of a-expression coefficient vectors over families of quasi-CW posets.

For each rank ``n`` the family mixes spheres (generator outputs, simplices,
cross-polytopes, cubes, suspensions), balls (a top adjoined to a sphere of rank
``n - 1``) and order ideals of spheres obtained by deleting top elements.  The
rank of the stacked ``(Φ', Υ')`` vectors is compared with ``F_{n+2}``.

    python3 scripts/span_rank.py --max-rank 5 --check-qcw
"""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from itertools import product

from cdindex.constructions import (
    builtin_corpus, cross_polytope, cube, gorenstein_generator, simplex_boundary, suspend, with_top,
)
from cdindex.poset import order_ideal
from cdindex.verify import Analysis, span_rank


@dataclass
class SpanConfig:
    min_rank: int = 2
    max_rank: int = 5
    generator_weight: int = 3  # α_i ranges over 0..weight-1
    max_generators: int = 27
    ideals_per_sphere: int = 4
    ideal_spheres: int = 10
    check_qcw: bool = False


def spheres(n: int, cfg: SpanConfig, below: list) -> list:
    out = [gorenstein_generator(a).poset for a in product(range(cfg.generator_weight), repeat=n - 1)]
    out = out[: cfg.max_generators]
    if n >= 2:
        out += [simplex_boundary(n), cross_polytope(n), cube(n)]
    out += [suspend(P, ("x", "y")) for P in below[:5]]
    return out


def ideals(P, k: int) -> list:
    tops = P.level(P.n)
    return [order_ideal(P, [x for x in P.elements if x not in tops[:j]]) for j in range(1, min(k, len(tops) - 1) + 1)]


def family(n: int, cfg: SpanConfig, below: list, here: list) -> list:
    balls = [with_top(P) for P in below]
    ide = [Q for P in here[: cfg.ideal_spheres] for Q in ideals(P, cfg.ideals_per_sphere)]
    extra = builtin_corpus(n) if n <= 4 else []
    return here + balls + [Q for Q in ide if Q.n == n] + extra


def run(cfg: SpanConfig) -> dict:
    below = spheres(cfg.min_rank - 1, cfg, []) if cfg.min_rank > 1 else []
    rows = {}
    for n in range(cfg.min_rank, cfg.max_rank + 1):
        here = spheres(n, cfg, below)
        members = family(n, cfg, below, here)
        if cfg.check_qcw:
            members = [P for P in members if Analysis(P).quasicw]
        info = span_rank(members).get(n, {"members": 0, "rank": 0, "target": None})
        info["full"] = info["rank"] == info["target"]
        rows[n] = info
        below = here
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-rank", type=int, default=2)
    ap.add_argument("--max-rank", type=int, default=5)
    ap.add_argument("--check-qcw", action="store_true", help="drop members that are not quasi-CW")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    cfg = SpanConfig(min_rank=args.min_rank, max_rank=args.max_rank, check_qcw=args.check_qcw)
    rows = run(cfg)
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for n, r in rows.items():
            tag = "full" if r["full"] else "short"
            print(f"n={n}: members={r['members']:3d} rank={r['rank']:2d} target={r['target']:2d} {tag}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
