"""Time the witness-first search for noncoherent orders across parameters."""

import argparse
import logging
import time
from dataclasses import dataclass

from extgb.formats import example1_witness
from extgb.search import SearchStats, search_qualifying_order
from extgb.theorem import certify


@dataclass
class Config:
    n: int = 6
    degree: int = 3
    n_max: int = 4
    budget: int = 100_000
    example_first: bool = False


def run(cfg: Config) -> None:
    first = example1_witness() if cfg.example_first and cfg.n == 6 else None
    stats = SearchStats()
    start = time.perf_counter()
    found = search_qualifying_order(cfg.n, cfg.n_max, cfg.degree, cfg.budget, first=first, stats=stats)
    elapsed = time.perf_counter() - start
    print(f"{cfg}: {elapsed:.1f}s, {stats.nodes} nodes, {stats.candidates} candidates, "
          f"{stats.completions} completions")
    if found is None:
        print("  nothing found")
        return
    o, wit = found
    print("  witness:", "; ".join(f"{a} < {b}" for a, b in wit.pairs))
    print("  certificate valid:", certify(wit, o).valid)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=Config.n)
    p.add_argument("--degree", type=int, default=Config.degree)
    p.add_argument("--n-max", dest="n_max", type=int, default=Config.n_max)
    p.add_argument("--budget", type=int, default=Config.budget)
    p.add_argument("--example-first", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")
    args = vars(p.parse_args())
    logging.basicConfig(level=logging.INFO if args.pop("verbose") else logging.WARNING)
    run(Config(**args))
