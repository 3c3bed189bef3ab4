"""Command-line entry point: ``ttt <command> [args]``.

Exit status: 0 on success or a true decision, 1 on a false decision (or a
failed suite), 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .census import classify_corpus, classify_trees
from .corpus import MAX_ENUM_SIZE, CorpusBudgetExceeded, family_grid
from .dsl import DslError, format_finite, parse_ordinal, parse_tree, print_tree, read_corpus, to_dot
from .finite import embed_rooted, embed_rooted_oracle, OracleBudgetExceeded
from .ordinal import format_ordinal
from .ranks import nw_rank, schmidt_rank
from .suites import SUITES, UnknownSuite, run_suite
from .symbolic import embeds, equivalent
from .theta import theta
from .tree import W, TruncationBudgetExceeded, family, truncate


def _decision(value: bool) -> int:
    print("true" if value else "false")
    return 0 if value else 1


def cmd_parse(args) -> int:
    print(print_tree(parse_tree(args.expr), compact_families=args.compact))
    return 0


def cmd_rank(args) -> int:
    t = parse_tree(args.expr)
    which = [k for k in ("schmidt", "nw") if getattr(args, k)] or ["schmidt", "nw"]
    results = {"schmidt": schmidt_rank, "nw": nw_rank}
    for k in which:
        r = results[k](t)
        print(str(r) if len(which) == 1 else f"{k}\t{r}")
        if args.trace:
            for code, contribution in r.trace:
                print(f"  {code}\t{format_ordinal(contribution)}")
    return 0


def cmd_embed(args) -> int:
    t, s = parse_tree(args.t), parse_tree(args.s)
    if not args.finite:
        return _decision(embeds(t, s))
    ft, fs = truncate(t, args.depth), truncate(s, args.depth)
    phi = embed_rooted(ft, fs)
    if args.oracle:
        want = embed_rooted_oracle(ft, fs)
        print(f"oracle\t{'true' if want else 'false'}")
    if phi is not None and args.format == "json":
        print(json.dumps({str(k): v for k, v in sorted(phi.items())}))
    return _decision(phi is not None)


def cmd_equiv(args) -> int:
    return _decision(equivalent(parse_tree(args.t), parse_tree(args.s)))


def cmd_theta(args) -> int:
    print(theta(parse_tree(args.expr)))
    return 0


def cmd_family(args) -> int:
    print(print_tree(family(parse_ordinal(args.ordinal)), compact_families=args.compact))
    return 0


def cmd_truncate(args) -> int:
    f = truncate(parse_tree(args.expr), args.depth, max_vertices=args.budget)
    if args.format == "json":
        print(json.dumps({"n": f.n, "parent": list(f.parent)}))
    else:
        print(format_finite(f))
    return 0


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(parse_tree(args.expr), args.depth))
    return 0


def _parse_mults(text: str):
    out = []
    for part in text.split(","):
        part = part.strip()
        out.append(W if part in ("w", "ω") else int(part))
    return tuple(out)


def cmd_classify(args) -> int:
    if args.family_grid:
        report = classify_trees([family(a) for a in family_grid()[1:]], args.threads,
                                {"family_grid": True})
    elif args.corpus:
        with open(args.corpus, encoding="utf-8") as fh:
            trees = read_corpus(fh.read())
        report = classify_trees(trees, args.threads, {"corpus": args.corpus})
    else:
        segments = tuple(parse_ordinal(x) for x in args.segments.split(",") if x.strip())
        report = classify_corpus(args.size, _parse_mults(args.mults), segments,
                                 threads=args.threads, budget=args.budget or MAX_ENUM_SIZE)
    out = {"tsv": report.to_tsv, "json": report.to_json}.get(args.format, report.to_text)
    sys.stdout.write(out())
    return 0


def cmd_verify(args) -> int:
    result = run_suite(args.suite, seed=args.seed)
    sys.stdout.write(result.to_json() if args.format == "json" else result.to_text())
    return result.exit_status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--depth", type=int, default=2)
    common.add_argument("--format", choices=("text", "tsv", "json"), default="text")

    p = argparse.ArgumentParser(prog="ttt", description="Topological types of rayless trees.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common], help="canonicalize an expression")
    sp.add_argument("expr")
    sp.add_argument("--compact", action="store_true", help="print family(a) where possible")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("rank", parents=[common], help="Schmidt and/or NW rank")
    sp.add_argument("expr")
    sp.add_argument("--schmidt", action="store_true")
    sp.add_argument("--nw", action="store_true")
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("embed", parents=[common], help="decide T <= S")
    sp.add_argument("t")
    sp.add_argument("s")
    sp.add_argument("--finite", action="store_true",
                    help="truncate at --depth and run the finite engine")
    sp.add_argument("--oracle", action="store_true",
                    help="with --finite, also run the brute-force oracle")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("equiv", parents=[common], help="decide T == S (same type)")
    sp.add_argument("t")
    sp.add_argument("s")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("theta", parents=[common], help="print the theta invariant")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("family", parents=[common], help="print family(a)")
    sp.add_argument("ordinal")
    sp.add_argument("--compact", action="store_true")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("truncate", parents=[common], help="finite truncation")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_truncate)

    sp = sub.add_parser("dot", parents=[common], help="DOT text of a truncation")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_dot)

    sp = sub.add_parser("classify", parents=[common], help="census of topological types")
    sp.add_argument("--size", type=int, default=3, help="max expression size")
    sp.add_argument("--mults", default="1,2,w")
    sp.add_argument("--segments", default="")
    sp.add_argument("--family-grid", action="store_true")
    sp.add_argument("--corpus", help="corpus file, one expression per line")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    sp.add_argument("suite", choices=list(SUITES) + ["all"])
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "truncate" and args.budget is None:
        args.budget = 200_000
    try:
        return args.func(args)
    except DslError as e:
        print(e.render(), file=sys.stderr)
    except (CorpusBudgetExceeded, TruncationBudgetExceeded, OracleBudgetExceeded,
            UnknownSuite, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
