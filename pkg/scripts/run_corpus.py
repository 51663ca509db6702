"""Verify the built-in corpora (or a directory of ``.poset`` files) and write JSON reports.

    python3 scripts/run_corpus.py --out reports/
    python3 scripts/run_corpus.py --dir my_posets/ --checks euler,cm,nonneg
"""
from __future__ import annotations

import argparse
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from cdindex.cli import read_poset
from cdindex.constructions import builtin_corpus
from cdindex.verify import ALL_CHECKS, VerifyConfig, span_rank, verify


@dataclass
class CorpusRun:
    ranks: tuple[int, ...] = (1, 2, 3, 4)
    directory: str | None = None
    out: str | None = None
    checks: tuple[str, ...] = ALL_CHECKS
    seed: int = 0
    tallies: Counter = field(default_factory=Counter)


def members(cfg: CorpusRun) -> list:
    if cfg.directory:
        return [read_poset(p) for p in sorted(Path(cfg.directory).glob("*.poset"))]
    return [P for n in cfg.ranks for P in builtin_corpus(n)]


def run(cfg: CorpusRun) -> list[dict]:
    vcfg = VerifyConfig(seed=cfg.seed, checks=cfg.checks)
    out_dir = Path(cfg.out) if cfg.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    posets = members(cfg)
    for P in posets:
        rep = verify(P, vcfg)
        row = {c["name"]: c["status"] for c in rep.checks}
        cfg.tallies.update(f"{k}:{v}" for k, v in row.items())
        rows.append({"poset": rep.poset, "rank": P.n, "checks": row})
        if out_dir:
            safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in rep.poset)
            (out_dir / f"{safe}.json").write_text(rep.to_json())
    if out_dir:
        summary = {"members": rows, "spanRank": {str(k): v for k, v in span_rank(posets).items()}}
        (out_dir / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dir")
    ap.add_argument("--out")
    ap.add_argument("--checks", default=",".join(ALL_CHECKS))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    cfg = CorpusRun(directory=args.dir, out=args.out, checks=tuple(args.checks.split(",")), seed=args.seed)
    for row in run(cfg):
        fails = [k for k, v in row["checks"].items() if v == "fail"]
        print(f"{row['poset']:<28} n={row['rank']}  fail: {', '.join(fails) or '-'}")
    print()
    for name in cfg.checks:
        counts = {s: cfg.tallies[f"{name}:{s}"] for s in ("pass", "fail", "skipped")}
        print(f"{name:<15} pass={counts['pass']:3d} fail={counts['fail']:3d} skipped={counts['skipped']:3d}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
