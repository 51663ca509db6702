"""``cdindex`` command line: compute, verify, gen, corpus."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import (
    BadParameter,
    barycentric,
    builtin_corpus,
    gorenstein_generator,
    polytope,
    unzip,
)
from .linalg import Field, FieldError
from .poset import GradedPoset, PosetError, dump_poset, parse_poset
from .verify import ALL_CHECKS, EXTRA_CHECKS, VerifyConfig, compute, span_rank, verify


def read_poset(path: str) -> GradedPoset:
    text = Path(path).read_text(encoding="utf-8")
    return parse_poset(text, source=path).relabel(Path(path).stem)


def _checks(text: str | None) -> tuple[str, ...]:
    if not text or text == "all":
        return ALL_CHECKS
    names = tuple(c.strip() for c in text.split(",") if c.strip())
    unknown = [c for c in names if c not in ALL_CHECKS + EXTRA_CHECKS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown checks: {', '.join(unknown)}")
    return names


def _config(args) -> VerifyConfig:
    return VerifyConfig(
        field=args.field,
        seed=args.seed,
        checks=_checks(getattr(args, "checks", None)),
        corollary74_cap=getattr(args, "cor74_cap", 2),
        corollary74_max_ideals=getattr(args, "cor74_max", 120),
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render(report, fmt: str) -> str:
    return report.to_json() if fmt == "json" else report.to_text()


def cmd_compute(args) -> int:
    report = compute(read_poset(args.file), _config(args))
    _emit(_render(report, args.report), args.output)
    return 0


def cmd_verify(args) -> int:
    report = verify(read_poset(args.file), _config(args))
    _emit(_render(report, args.report), args.output)
    return 1 if any(c["status"] == "fail" for c in report.checks) and args.strict else 0


def cmd_gen(args) -> int:
    if args.alphas is not None:
        try:
            alphas = [int(x) for x in args.alphas.split(",") if x.strip()]
        except ValueError:
            raise BadParameter(f"bad --alphas {args.alphas!r}") from None
        res = gorenstein_generator(alphas)
        P, note = res.poset, f"distinguished element: {res.distinguished}"
    elif args.polytope:
        P, note = polytope(args.polytope), None
    elif args.bary:
        P, note = barycentric(read_poset(args.bary)), None
    elif args.unzip:
        if not (args.sigma and args.tau):
            raise BadParameter("--unzip needs --sigma and --tau")
        base = read_poset(args.unzip)
        P = unzip(base, args.sigma, args.tau).relabel(f"unzip({base.name};{args.sigma},{args.tau})")
        note = None
    else:
        raise BadParameter("gen needs one of --alphas, --polytope, --bary, --unzip")
    _emit(dump_poset(P, note), args.output)
    return 0


def _corpus_members(args) -> list[tuple[str, GradedPoset | Exception]]:
    members: list[tuple[str, GradedPoset | Exception]] = []
    if args.builtin:
        for n in (1, 2, 3, 4):
            members += [(P.name, P) for P in builtin_corpus(n)]
        return members
    if not args.dir:
        raise BadParameter("corpus needs a directory or --builtin")
    for path in sorted(Path(args.dir).glob("*.poset")):
        try:
            members.append((path.name, read_poset(str(path))))
        except (OSError, PosetError) as exc:
            members.append((path.name, exc))
    return members


def cmd_corpus(args) -> int:
    config = _config(args)
    rows, posets = [], []
    for name, P in _corpus_members(args):
        if isinstance(P, Exception):
            rows.append({"poset": name, "error": f"{type(P).__name__}: {P}", "checks": {}})
            continue
        posets.append(P)
        try:
            rep = verify(P, config)
            rows.append({"poset": name, "rank": P.n, "checks": {c["name"]: c["status"] for c in rep.checks}})
        except Exception as exc:  # isolate per-file failures
            rows.append({"poset": name, "error": f"{type(exc).__name__}: {exc}", "checks": {}})
    spans = {str(n): v for n, v in span_rank(posets).items()}
    summary = {"members": rows, "spanRank": spans}
    if args.report == "json":
        text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    else:
        lines = []
        for r in rows:
            if "error" in r:
                lines.append(f"{r['poset']}: ERROR {r['error']}")
                continue
            tally = {}
            for st in r["checks"].values():
                tally[st] = tally.get(st, 0) + 1
            bad = [k for k, v in r["checks"].items() if v == "fail"]
            lines.append(f"{r['poset']} (rank {r['rank']}): "
                         + " ".join(f"{k}={v}" for k, v in sorted(tally.items()))
                         + (f"  failing: {','.join(bad)}" if bad else ""))
        for n, v in spans.items():
            mark = "ok" if v["rank"] == v["target"] else "short"
            lines.append(f"span rank n={n}: {v['rank']} / F_{int(n) + 2} = {v['target']} ({mark}, {v['members']} members)")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=Field(), help="q or fp:<prime> (default q)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    checks = argparse.ArgumentParser(add_help=False)
    checks.add_argument("--checks", help="comma-separated check names, or 'all' (default)")
    checks.add_argument("--cor74-cap", type=int, default=2, help="max maximal cells deleted per order ideal")
    checks.add_argument("--cor74-max", type=int, default=120, help="max order ideals examined")

    ap = argparse.ArgumentParser(prog="cdindex", description="cd-index invariants of graded posets")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="flag vectors, ab/cd-indices and the α-table")
    p.add_argument("file")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common, checks], help="run inequality and oracle checks")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="exit 1 if any check fails")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="write a poset file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alphas", help="generator weights, e.g. 1,2,1")
    g.add_argument("--polytope", help="ngon:5, cube, cube:4, simplex:3, cross:3, boolean:2, szero, pyramid-flap")
    g.add_argument("--bary", metavar="FILE")
    g.add_argument("--unzip", metavar="FILE")
    p.add_argument("--sigma")
    p.add_argument("--tau")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("corpus", parents=[common, checks], help="verify a directory of posets")
    p.add_argument("dir", nargs="?")
    p.add_argument("--builtin", action="store_true", help="use the built-in corpora of ranks 1-4")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        ap.error(str(exc))
    except (PosetError, BadParameter, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
