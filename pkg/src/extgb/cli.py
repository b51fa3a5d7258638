"""Command-line front end.

Exit codes: 0 success, 1 semantic negative (invalid order, noncoherent,
failed certificate), 2 input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import report
from .coherence import InvalidOrderError, expand_certificate, is_coherent, verify_witness
from .formats import (
    FIXTURES,
    FormatError,
    fixture_text,
    format_order,
    format_witness,
    parse_ideal,
    parse_monomial_list,
    parse_order,
    parse_witness,
)
from .groebner import IdealSpec, NonHomogeneousError, complete, initial_ideal, member
from .orders import validate_axioms
from .search import MAX_SEARCH_N, SearchStats, search_qualifying_order
from .theorem import HypothesisError, certify, compare_with_coherent

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

ENV_MAX_N = "EXTGB_MAX_N"


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    order: str | None = None
    ideal: str | None = None
    witness: str | None = None
    initial: str | None = None
    seed: int = 0
    count: int = 100
    budget: int = 100_000
    n: int = 6
    degree: int | None = None
    n_max: int = 4
    example_witness: bool = False
    sample: int | None = None
    out_order: str | None = None
    out_witness: str | None = None
    format: str = "human"
    max_n: int = field(default_factory=lambda: int(os.environ.get(ENV_MAX_N, MAX_SEARCH_N)))


def _load(path: str | None, what: str) -> tuple[str, str]:
    """Text of a file, falling back to a bundled fixture of the same name."""
    if path is None:
        raise InputError(f"--{what} is required")
    p = Path(path)
    if p.is_file():
        return p.read_text(), str(p)
    if p.name in FIXTURES and not p.exists():
        return fixture_text(p.name), p.name
    raise InputError(f"cannot read {what} file {path}")


def _order(cfg: RunConfig):
    text, name = _load(cfg.order, "order")
    return parse_order(text, name)


def _emit(cfg: RunConfig, data: dict, human: Callable[[dict], str], out) -> None:
    out.write(report.dumps(data) if cfg.format == "structured" else human(data))


def cmd_validate_order(cfg: RunConfig, out) -> int:
    o = _order(cfg)
    if o.n > cfg.max_n and cfg.sample is None:
        raise InputError(f"n={o.n} exceeds the cap {cfg.max_n}; use --sample")
    rep = validate_axioms(o, sample=cfg.sample, seed=cfg.seed)
    _emit(cfg, report.axiom_report(o, rep), report.human_axioms, out)
    return EXIT_OK if rep.valid else EXIT_NEGATIVE


def cmd_coherence(cfg: RunConfig, out) -> int:
    o = _order(cfg)
    try:
        v = is_coherent(o)
    except InvalidOrderError as e:
        raise InputError(str(e)) from e
    _emit(cfg, report.verdict(o, v), report.human_verdict, out)
    return EXIT_OK if v.coherent else EXIT_NEGATIVE


def _ideal(cfg: RunConfig, n: int) -> IdealSpec:
    text, name = _load(cfg.ideal, "ideal")
    m, gens = parse_ideal(text, name)
    if m != n:
        raise InputError(f"ideal has n={m} but order has n={n}")
    try:
        return IdealSpec(n, tuple(gens))
    except NonHomogeneousError as e:
        raise InputError(f"{name}: {e}") from e


def cmd_groebner(cfg: RunConfig, out) -> int:
    o = _order(cfg)
    rep = validate_axioms(o, max_violations=1)
    if not rep.valid:
        raise InputError(f"order is not a term order: {rep.violations[0]}")
    spec = _ideal(cfg, o.n)
    gb = complete(spec, o)
    _emit(cfg, report.groebner(gb, initial_ideal(gb)), report.human_groebner, out)
    return EXIT_OK


def cmd_certify(cfg: RunConfig, out) -> int:
    o = _order(cfg)
    text, name = _load(cfg.witness, "witness")
    wit = parse_witness(text, name)
    if wit.n != o.n:
        raise InputError(f"witness has n={wit.n} but order has n={o.n}")
    try:
        cert = certify(wit, o)
    except HypothesisError as e:
        data = {"kind": "certificate", "valid": False, "hypotheses": report.hypotheses(e.report)}
        if cfg.format == "structured":
            out.write(report.dumps(data))
        else:
            out.write(f"hypotheses fail: {', '.join(e.report.failed())}\n")
        return EXIT_NEGATIVE
    _emit(cfg, report.certificate(cert), report.human_certificate, out)
    return EXIT_OK if cert.valid else EXIT_NEGATIVE


def cmd_compare_coherent(cfg: RunConfig, out) -> int:
    """Initial ideals under random coherent orders.

    With --witness, each must contain some lower monomial a_j; with --order,
    none may equal the initial ideal under that order.  Exit 1 otherwise.
    """
    text, name = _load(cfg.ideal, "ideal")
    n, gens = parse_ideal(text, name)
    try:
        spec = IdealSpec(n, tuple(gens))
    except NonHomogeneousError as e:
        raise InputError(f"{name}: {e}") from e
    if cfg.count < 0:
        raise InputError("--count must be >= 0")
    lower = None
    if cfg.witness:
        wit = parse_witness(*_load(cfg.witness, "witness"))
        if wit.n != n:
            raise InputError(f"witness has n={wit.n} but ideal has n={n}")
        lower = wit.lower
    reference = None
    if cfg.order:
        o = _order(cfg)
        if o.n != n:
            raise InputError(f"order has n={o.n} but ideal has n={n}")
        reference = initial_ideal(complete(spec, o)).bits()
    results = compare_with_coherent(spec, cfg.count, cfg.seed)
    rows, ok = [], True
    for w, ii in results:
        row = {"weights": [report.q(x) for x in w.weights], "initial_ideal": report.initial(ii)}
        if lower is not None:
            hits = [str(a) for a in lower if member(a, ii)]
            row["lower_members"] = hits
            ok &= bool(hits)
        if reference is not None:
            row["equals_reference"] = ii.bits() == reference
            ok &= not row["equals_reference"]
        rows.append(row)
    data = {"kind": "compare-coherent", "n": n, "count": cfg.count, "seed": cfg.seed,
            "distinct": len(rows), "ok": ok, "results": rows}
    if cfg.format == "structured":
        out.write(report.dumps(data))
    else:
        out.write(f"{len(rows)} distinct initial ideal(s) from {cfg.count} coherent orders\n")
        for i, r in enumerate(rows, 1):
            extra = ""
            if "lower_members" in r:
                extra += "  contains " + (", ".join(r["lower_members"]) or "NONE")
            if r.get("equals_reference"):
                extra += "  EQUALS reference"
            out.write(f"  {i}: <{', '.join(r['initial_ideal'])}>{extra}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_verify_example(cfg: RunConfig, out) -> int:
    """Bundled example end to end; fixture paths may be overridden for mutation tests."""
    files = {
        "order": cfg.order or "example1.order",
        "ideal": cfg.ideal or "example1.ideal",
        "witness": cfg.witness or "example1.witness",
        "initial": cfg.initial or "example1.initial",
    }
    stages: list[dict] = []

    def stage(name: str, ok: bool, detail: str = "") -> bool:
        stages.append({"stage": name, "ok": ok, "detail": detail})
        return ok

    def finish(code: int) -> int:
        data = {"kind": "verify-example", "ok": code == EXIT_OK, "stages": stages}
        if cfg.format == "structured":
            out.write(report.dumps(data))
        else:
            for s in stages:
                out.write(f"[{'PASS' if s['ok'] else 'FAIL'}] {s['stage']}" + (f": {s['detail']}" if s["detail"] else "") + "\n")
        return code

    start = time.perf_counter()
    o = parse_order(*_load(files["order"], "order"))
    ok = stage("order", len(o.listing) == 64, f"{len(o.listing)} ranks")
    rep = validate_axioms(o)
    if not stage("axioms", ok and rep.valid, f"{len(rep.violations)} violations"):
        return finish(EXIT_NEGATIVE)
    v = is_coherent(o)
    ok = not v.coherent and verify_witness(o, expand_certificate(o, v.certificate))
    if not stage("noncoherence", ok, "" if v.coherent else f"C_{v.certificate.total} failure from LP duals"):
        return finish(EXIT_NEGATIVE)
    wit = parse_witness(*_load(files["witness"], "witness"))
    sa, sb = wit.sums()
    if not stage("witness", verify_witness(o, wit), f"exponent sums {sa} / {sb}"):
        return finish(EXIT_NEGATIVE)
    spec = _ideal(RunConfig("", ideal=files["ideal"]), o.n)
    gb = complete(spec, o)
    ii = initial_ideal(gb)
    stage("groebner", True, f"{len(gb.basis)} basis elements")
    _, expected = parse_monomial_list(*_load(files["initial"], "initial"))
    got = {m.bits for m in ii.generators}
    if not stage("initial-ideal", got == {m.bits for m in expected}, ", ".join(str(m) for m in ii.generators)):
        return finish(EXIT_NEGATIVE)
    try:
        cert = certify(wit, o)
        ok, detail = cert.valid, f"{len(cert.checks)} divisibility checks"
    except HypothesisError as e:
        ok, detail = False, str(e)
    if not stage("certificate", ok, detail):
        return finish(EXIT_NEGATIVE)
    code = finish(EXIT_OK)
    # timing goes to stderr so stdout stays byte-identical across runs
    if cfg.format == "human":
        out.flush()
        print(f"verify-example: {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return code


def cmd_search(cfg: RunConfig, out) -> int:
    if cfg.n < 1 or cfg.n > cfg.max_n:
        raise InputError(f"n must be in 1..{cfg.max_n}")
    degree = cfg.degree if cfg.degree is not None else cfg.n // 2
    if not 0 < degree < cfg.n or cfg.n_max < 2 or cfg.budget < 0:
        raise InputError("need 0 < degree < n, N_max >= 2 and budget >= 0")
    first = None
    if cfg.example_witness:
        first = parse_witness(fixture_text("example1.witness"))
    elif cfg.witness:
        first = parse_witness(*_load(cfg.witness, "witness"))
    if first is not None and first.n != cfg.n:
        raise InputError(f"seed witness has n={first.n}, search has n={cfg.n}")
    stats = SearchStats()
    found = search_qualifying_order(cfg.n, cfg.n_max, degree, cfg.budget, first=first, stats=stats,
                                    prefer=_preference(cfg.n, cfg.seed))
    if found is None:
        data = {"kind": "search", "found": False, "nodes": stats.nodes, "candidates": stats.candidates}
        if cfg.format == "structured":
            out.write(report.dumps(data))
        else:
            out.write(f"no qualifying order found ({stats.nodes} nodes, {stats.candidates} candidates)\n")
        return EXIT_BUDGET
    o, wit = found
    if cfg.out_order:
        Path(cfg.out_order).write_text(format_order(o))
    if cfg.out_witness:
        Path(cfg.out_witness).write_text(format_witness(wit))
    cert = certify(wit, o)
    data = {
        "kind": "search",
        "found": True,
        "nodes": stats.nodes,
        "candidates": stats.candidates,
        "order": [str(m) for m in o.monomials()],
        "certificate": report.certificate(cert),
    }
    if cfg.format == "structured":
        out.write(report.dumps(data))
    else:
        out.write(f"found after {stats.nodes} nodes, {stats.candidates} candidate witness(es)\n")
        out.write("order: " + " < ".join(data["order"]) + "\n")
        out.write(report.human_certificate(data["certificate"]))
    return EXIT_OK if cert.valid else EXIT_NEGATIVE


def _preference(n: int, seed: int):
    """Branching preference: lighter side first under weights 1..n, shuffled by seed."""
    ws = list(range(1, n + 1))
    if seed:
        random.Random(seed).shuffle(ws)
    wt = [sum(ws[j] for j in range(n) if b >> j & 1) for b in range(1 << n)]
    return lambda p, q: (wt[p], p) < (wt[q], q)


COMMANDS = {
    "validate-order": cmd_validate_order,
    "coherence": cmd_coherence,
    "groebner": cmd_groebner,
    "certify": cmd_certify,
    "compare-coherent": cmd_compare_coherent,
    "verify-example": cmd_verify_example,
    "search": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extgb", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("validate-order", parents=[common], help="check the term-order axioms")
    s.add_argument("--order", required=True)
    s.add_argument("--sample", type=int, help="check this many random triples instead of all")

    s = sub.add_parser("coherence", parents=[common], help="decide coherence with a certificate")
    s.add_argument("--order", required=True)

    s = sub.add_parser("groebner", parents=[common], help="Gröbner basis and initial ideal")
    s.add_argument("--order", required=True)
    s.add_argument("--ideal", required=True)

    s = sub.add_parser("certify", parents=[common], help="certify a noncoherent initial ideal")
    s.add_argument("--order", required=True)
    s.add_argument("--witness", required=True)

    s = sub.add_parser("compare-coherent", parents=[common], help="initial ideals under random coherent orders")
    s.add_argument("--ideal", required=True)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--witness", help="require some lower monomial in each initial ideal")
    s.add_argument("--order", help="require each initial ideal to differ from this order's")

    s = sub.add_parser("verify-example", parents=[common], help="run the bundled example end to end")
    for name in ("order", "ideal", "witness", "initial"):
        s.add_argument(f"--{name}", help=f"override the bundled example1.{name}")

    s = sub.add_parser("search", parents=[common], help="search for a qualifying noncoherent order")
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--degree", type=int)
    s.add_argument("--n-max", dest="n_max", type=int, default=4)
    s.add_argument("--budget", type=int, default=100_000, help="node limit")
    s.add_argument("--witness", help="witness file to try first")
    s.add_argument("--example-witness", action="store_true", help="try the bundled example1.witness first")
    s.add_argument("--out-order")
    s.add_argument("--out-witness")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if v is not None or k in ("degree",)})
    try:
        return COMMANDS[cfg.subcommand](cfg, out)
    except (InputError, FormatError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
