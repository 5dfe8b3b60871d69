"""Command-line interface.

Exit codes: 0 success (or all checks passed), 1 a check or validation
failed, 2 usage or parse errors.  Data goes to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, fixtures, formats, search as search_mod, verify as verify_mod
from .codes import (
    BudgetExceededError,
    ExhaustiveLimitError,
    exact_weight_profile,
    graph_code,
    sampled_weight_bound,
    type_class_from_degrees,
    type_class_from_spec,
)
from .graphs import InvalidSpecError, border, build_metacirculant, metrics


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise formats.ParseError(f"cannot read {path}: {exc}") from exc


def _load_spec(path: str):
    return formats.parse_spec(_read(path))


def _load_graph(path: str):
    return formats.parse_edge_table(_read(path))


def _load_code(path: str):
    return formats.parse_generator_matrix(_read(path))


def cmd_validate(args) -> int:
    spec = _load_spec(args.specfile)
    violations = spec.violations()
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return 1
    print(f"ok: {spec}")
    return 0


def cmd_build_graph(args) -> int:
    spec = _load_spec(args.specfile)
    g = build_metacirculant(spec, order=args.order)
    if args.bordered:
        g = border(g)
    sys.stdout.write(formats.format_edge_table(g, comment=str(spec)))
    return 0


def cmd_metrics(args) -> int:
    g = _load_graph(args.graphfile)
    m = metrics(g, compute_clique=not args.no_clique, clique_budget=args.clique_budget)
    print(m.describe())
    return 0


def cmd_code(args) -> int:
    g = _load_graph(args.graphfile)
    sys.stdout.write(formats.format_generator_matrix(graph_code(g)))
    return 0


def cmd_distance(args) -> int:
    code = _load_code(args.codefile)
    try:
        if args.sample is not None:
            profile = sampled_weight_bound(code, samples=args.sample, seed=args.seed)
        else:
            profile = exact_weight_profile(code, budget=args.budget, threads=args.threads)
    except (ExhaustiveLimitError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(formats.profile_json_str(profile) + "\n")
    return 0


def cmd_classify(args) -> int:
    spec = _load_spec(args.specfile)
    violations = spec.violations()
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return 1
    by_spec = type_class_from_spec(spec)
    by_deg = type_class_from_degrees(border(build_metacirculant(spec)))
    if by_spec != by_deg:
        print(f"error: parameter rule says {by_spec} but degrees say {by_deg}",
              file=sys.stderr)
        return 1
    print(str(by_spec))
    return 0


def cmd_search(args) -> int:
    cfg = search_mod.parse_search_config(_read(args.configfile))
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        records = search_mod.run_search(cfg, checkpoint_path=args.checkpoint,
                                        resume=args.resume,
                                        progress_every=args.progress_every)
    except search_mod.CheckpointError as exc:
        print(f"error: {exc} ({len(exc.records)} records preserved)", file=sys.stderr)
        return 1
    if args.results:
        search_mod.write_results_jsonl(args.results, records)
    for rec in records:
        d = rec.to_json_dict()
        print(json.dumps(d, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    names = fixtures.names() if args.fixture == "all" else [args.fixture]
    level = "full" if args.full else "structural"
    all_passed = True
    reports = []
    for name in names:
        try:
            report = verify_mod.verify_fixture(
                name, level=level, clique_budget=args.clique_budget,
                floor_samples=args.samples, floor_seed=args.seed,
                threads=args.threads)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return 2
        reports.append(report)
        all_passed &= report.passed
    if args.json:
        payload = [r.to_json_dict() for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    else:
        print("\n\n".join(r.format_text() for r in reports))
    return 0 if all_passed else 1


def cmd_export(args) -> int:
    fx = fixtures.get(args.fixture)
    if args.what == "spec":
        sys.stdout.write(formats.format_spec(fx.spec))
    elif args.what == "edge-table":
        g = fx.build(order=args.order or fx.table_order)
        if args.bordered:
            g = border(g)
        sys.stdout.write(formats.format_edge_table(g, comment=str(fx.spec)))
    elif args.what == "generators":
        g = fx.build(order=args.order or "block")
        if args.bordered:
            g = border(g)
        sys.stdout.write(formats.format_generator_matrix(graph_code(g)))
    elif args.what == "report":
        report = verify_mod.verify_fixture(fx.name, level="structural")
        print(json.dumps(report.to_json_dict(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metacirc",
        description="Self-dual additive GF(4) codes from bordered metacirculant graphs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a spec file against the closure conditions")
    p.add_argument("specfile")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("build-graph", help="build a graph and print its edge table")
    p.add_argument("specfile")
    p.add_argument("--bordered", action="store_true", help="add the universal vertex")
    p.add_argument("--order", choices=("block", "interleaved"), default="block")
    p.set_defaults(fn=cmd_build_graph)

    p = sub.add_parser("metrics", help="degree/diameter/girth/clique of an edge-table graph")
    p.add_argument("graphfile")
    p.add_argument("--no-clique", action="store_true")
    p.add_argument("--clique-budget", type=int, default=50_000_000)
    p.set_defaults(fn=cmd_metrics)

    p = sub.add_parser("code", help="print the generator matrix of a graph's code")
    p.add_argument("graphfile")
    p.set_defaults(fn=cmd_code)

    p = sub.add_parser("distance", help="weight profile of a generator-matrix code")
    p.add_argument("codefile")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", default=True,
                       help="exhaustive sweep (default)")
    group.add_argument("--sample", type=int, metavar="N",
                       help="sampled upper bound from N random codewords")
    p.add_argument("--seed", type=int, default=verify_mod.DEFAULT_FLOOR_SEED)
    p.add_argument("--budget", type=int, default=None, help="iteration cap for the sweep")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=cmd_distance)

    p = sub.add_parser("classify", help="type I/II classification of a spec's bordered code")
    p.add_argument("specfile")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("search", help="run a randomized parameter search")
    p.add_argument("configfile")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--results", default=None, help="write ranked records as JSON lines")
    p.add_argument("--progress-every", type=int, default=0)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("verify", help="check a fixture against its published values")
    p.add_argument("fixture", help="fixture name or 'all'")
    p.add_argument("--full", action="store_true", help="include distance computations")
    p.add_argument("--clique-budget", type=int, default=50_000_000)
    p.add_argument("--samples", type=int, default=verify_mod.DEFAULT_FLOOR_SAMPLES)
    p.add_argument("--seed", type=int, default=verify_mod.DEFAULT_FLOOR_SEED)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export", help="print fixture artifacts")
    p.add_argument("what", choices=("spec", "edge-table", "generators", "report"))
    p.add_argument("fixture")
    p.add_argument("--bordered", action="store_true")
    p.add_argument("--order", choices=("block", "interleaved"), default=None)
    p.set_defaults(fn=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except formats.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InvalidSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
