#!/usr/bin/env python3
"""Randomized search experiment at n = 29 (bordered, graph order 28).

The default configuration reproduces the known record: with seed 42 the
10^4-trial search over G(2, 14, ...) candidates finds a (29, 2^29, 10)
code; the best bordered-circulant construction at this length stops at
d = 9.  Results and a resumable checkpoint land in --outdir.
"""

import argparse
import logging
import sys
from pathlib import Path

from metacirc import enumeration
from metacirc.search import (
    SearchConfig,
    format_search_config,
    run_search,
    write_results_jsonl,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--n", type=int, default=29)
    parser.add_argument("--density", type=float, nargs=2, default=(0.25, 0.55))
    parser.add_argument("--filter-weight", type=int, default=9)
    parser.add_argument("--factorizations", nargs="*", default=["2x14"],
                        help="m x ell pairs, e.g. 2x14 4x7; empty string = all")
    parser.add_argument("--top-k", type=int, default=5)
    parser.add_argument("--outdir", type=Path, default=Path("search_out"))
    parser.add_argument("--resume", action="store_true")
    args = parser.parse_args()

    factorizations = None
    if args.factorizations and args.factorizations != [""]:
        factorizations = tuple(
            (int(m), int(ell)) for m, _, ell in
            (tok.partition("x") for tok in args.factorizations))
    cfg = SearchConfig(n=args.n, trials=args.trials, seed=args.seed,
                       factorizations=factorizations,
                       density=tuple(args.density),
                       filter_weight=args.filter_weight, top_k=args.top_k)

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    enumeration.warm_up()
    args.outdir.mkdir(parents=True, exist_ok=True)
    (args.outdir / "search.cfg").write_text(format_search_config(cfg))
    records = run_search(cfg, checkpoint_path=args.outdir / "search.ckpt",
                         resume=args.resume, progress_every=1000)
    write_results_jsonl(args.outdir / "results.jsonl", records)

    if not records:
        print("no candidate survived the filter")
        return 1
    print(f"\ntop {len(records)} of {cfg.trials} trials "
          f"(config fingerprint {cfg.fingerprint()}):")
    for rec in records:
        p = rec.profile
        print(f"  d={p.min_weight:>2}  A_d={p.count_at(p.min_weight):>6}  "
              f"trial={rec.trial:>6}  {rec.spec}")
    best = records[0]
    if best.distance >= 10:
        print("record reproduced: d = 10 at length 29")
    return 0


if __name__ == "__main__":
    sys.exit(main())
