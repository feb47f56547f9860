"""Command line front end.

Subcommands: normalise, classify, socle, base, oracle-check, bench.
Results go to stdout as ``key: value`` lines (or JSON with --json);
diagnostics go to stderr.  Exit codes: 0 success, 1 file or parse error,
2 precondition failure (imprimitive input, with a block witness), 3 budget
exceeded, 64 usage error, 70 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .backtrack import base_size_bound, normaliser_small, small_base
from .errors import (
    BudgetExceeded,
    GroupFileError,
    ImprimitiveInput,
    IntransitiveInput,
    PermnormError,
)
from .group import GeneratedGroup, equal_groups
from .groupfile import fmt_generator, load_group_file, shipped_corpus_dir
from .large import (
    NormaliserRun,
    normaliser_in_subgroup,
    normaliser_in_sym_run,
    normaliser_large,
)
from .oracle import brute_force_intersection, brute_force_normaliser
from .structure import (
    classify,
    is_simple_nonabelian,
    minimal_normal_subgroups,
    small_order_bound,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64
EXIT_MISMATCH = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ensure_primitive(group: GeneratedGroup) -> None:
    if not group.is_transitive():
        raise IntransitiveInput(group.orbits())
    blocks = group.nontrivial_block_system()
    if blocks is not None:
        raise ImprimitiveInput(blocks)


def _load(path: str):
    gf = load_group_file(path)
    return gf, gf.group(), gf.name or Path(path).stem


def _resolve_budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("PERMNORM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise PermnormError(f"PERMNORM_BUDGET is not a number: {env!r}")
    return None


def _emit(record: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(record, indent=2))
        return
    for key, value in record.items():
        if key == "generators":
            for g in value:
                print(f"generator: {g}")
        else:
            print(f"{key}: {value}")


# -- subcommands --------------------------------------------------------


def cmd_normalise(args) -> int:
    budget = _resolve_budget(args)
    gf, group, name = _load(args.file)
    _ensure_primitive(group)
    start = time.perf_counter()
    if args.force_small:
        res = normaliser_small(group)
        run = NormaliserRun(res.group, "small", nodes=res.nodes)
    elif args.force_large:
        cls = classify(group)
        try:
            result = normaliser_large(group, cls, budget)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        branch = "large-PA" if cls.parameters[2] >= 2 else "large-AS"
        run = NormaliserRun(result, branch, cosets=0)
    else:
        run = normaliser_in_sym_run(group, budget)
    result = run.group
    record = {
        "name": name,
        "degree": group.degree,
        "group-order": str(group.order()),
        "branch": run.branch,
    }
    if args.in_group:
        _, ambient, ambient_name = _load(args.in_group)
        result = normaliser_in_subgroup(group, ambient, budget, full=run.group)
        record["within"] = ambient_name
    record["normaliser-order"] = str(result.order())
    record["backtrack-nodes"] = run.nodes
    record["cosets"] = run.cosets
    record["wall-time-s"] = f"{time.perf_counter() - start:.3f}"
    if args.oracle:
        try:
            want = brute_force_normaliser(group)
            if args.in_group:
                want = brute_force_intersection(want, ambient)
            if not equal_groups(result, want):
                print(
                    f"oracle mismatch: computed order {result.order()}, "
                    f"oracle order {want.order()}",
                    file=sys.stderr,
                )
                return EXIT_MISMATCH
            record["oracle"] = "agree"
        except BudgetExceeded as exc:
            print(f"oracle skipped: {exc}", file=sys.stderr)
            record["oracle"] = "skipped"
    record["generators"] = [fmt_generator(g) for g in result.generators]
    _emit(record, args.json)
    return EXIT_OK


def cmd_classify(args) -> int:
    gf, group, name = _load(args.file)
    cls = classify(group)
    bound = small_order_bound(group.degree)
    rel = "<" if cls.within_small_bound else ">="
    normals = minimal_normal_subgroups(group)
    almost_simple = len(normals) == 1 and is_simple_nonabelian(normals[0])
    record = {
        "name": name,
        "degree": group.degree,
        "order": str(cls.order),
        "kind": cls.kind,
        "small-bound": str(bound),
        "small": f"{'yes' if cls.within_small_bound else 'no'}"
                 f" ({cls.order} {rel} {bound})",
        "large-parameters": (
            "({},{},{})".format(*cls.parameters) if cls.parameters else "none"
        ),
        "almost-simple": "yes" if almost_simple else "no",
        "mathieu": cls.mathieu or "no",
    }
    _emit(record, args.json)
    return EXIT_OK


def cmd_socle(args) -> int:
    from .structure import socle

    gf, group, name = _load(args.file)
    normals = minimal_normal_subgroups(group)
    soc = socle(group)
    record = {
        "name": name,
        "degree": group.degree,
        "order": str(group.order()),
        "socle-order": str(soc.order()),
        "minimal-normal-subgroups": len(normals),
        "socle-simple": "yes" if is_simple_nonabelian(soc) else "no",
        "generators": [fmt_generator(g) for g in soc.generators],
    }
    _emit(record, args.json)
    return EXIT_OK


def cmd_base(args) -> int:
    gf, group, name = _load(args.file)
    base = small_base(group)
    chain_base = list(group.chain.base)
    record = {
        "name": name,
        "degree": group.degree,
        "order": str(group.order()),
        "base": ",".join(str(b + 1) for b in base),
        "base-size": len(base),
        "size-bound": base_size_bound(group.degree),
        "chain-base": ",".join(str(b + 1) for b in chain_base),
        "chain-base-size": len(chain_base),
    }
    _emit(record, args.json)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    budget = _resolve_budget(args)
    gf, group, name = _load(args.file)
    _ensure_primitive(group)
    computed = normaliser_in_sym_run(group, budget).group
    want = brute_force_normaliser(group)
    agree = equal_groups(computed, want)
    record = {
        "name": name,
        "degree": group.degree,
        "group-order": str(group.order()),
        "computed-order": str(computed.order()),
        "oracle-order": str(want.order()),
        "agree": "yes" if agree else "no",
    }
    _emit(record, args.json)
    if not agree:
        print("oracle mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_bench(args) -> int:
    from .report import run_bench, write_bench_csv, write_bench_figures

    budget = _resolve_budget(args)
    corpus = Path(args.corpus_dir) if args.corpus_dir else shipped_corpus_dir()
    if not corpus.is_dir():
        print(f"error: not a directory: {corpus}", file=sys.stderr)
        return EXIT_PARSE
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = run_bench(corpus, budget, threads=args.threads)
    csv_path = write_bench_csv(rows, out_dir / "bench.csv")
    for row in rows:
        if row.error:
            print(f"{row.file}: error: {row.error}", file=sys.stderr)
    errors = sum(1 for r in rows if r.error)
    print(f"wrote {csv_path} ({len(rows)} rows, {errors} errors)")
    if not args.no_plots:
        for path in write_bench_figures(rows, out_dir):
            print(f"wrote {path}")
    return EXIT_OK


# -- wiring -------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="permnorm",
        description="Normalisers of primitive permutation groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def common(p, with_budget=True):
        p.add_argument("file", help="group file to read")
        p.add_argument("--json", action="store_true",
                       help="emit a JSON record instead of key: value lines")
        if with_budget:
            p.add_argument("--budget", type=int, default=None,
                           help="enumeration cap (default $PERMNORM_BUDGET)")

    p = sub.add_parser("normalise", help="normaliser in the symmetric group")
    common(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--force-small", action="store_true",
                      help="use the backtrack regardless of classification")
    mode.add_argument("--force-large", action="store_true",
                      help="require the transport route; error without a certificate")
    mode.add_argument("--in-group", metavar="FILE",
                      help="intersect the normaliser with this group")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against exhaustive search when feasible")
    p.set_defaults(func=cmd_normalise)

    p = sub.add_parser("classify", help="which computation route fits")
    common(p, with_budget=False)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("socle", help="product of the minimal normal subgroups")
    common(p, with_budget=False)
    p.set_defaults(func=cmd_socle)

    p = sub.add_parser("base", help="a base within the guaranteed bound")
    common(p, with_budget=False)
    p.set_defaults(func=cmd_base)

    p = sub.add_parser("oracle-check",
                       help="compare against the exhaustive normaliser")
    common(p)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("bench", help="run every group file in a directory")
    p.add_argument("corpus_dir", nargs="?", default=None,
                   help="directory of .grp files (default: shipped corpus)")
    p.add_argument("--out", default="bench_out",
                   help="output directory for the CSV and figures")
    p.add_argument("--budget", type=int, default=None,
                   help="enumeration cap (default $PERMNORM_BUDGET)")
    p.add_argument("--threads", type=int, default=1,
                   help="process the files with this many workers")
    p.add_argument("--no-plots", action="store_true",
                   help="skip the matplotlib figures")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GroupFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ImprimitiveInput, IntransitiveInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PermnormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
