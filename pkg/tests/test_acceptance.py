"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python -m tests.test_acceptance``.
Every check is exact; the only tolerances are the wall-clock limits below.
"""

from __future__ import annotations

import io
import itertools
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from extgb import report
from extgb.cli import main as cli_main
from extgb.coherence import expand_certificate, is_coherent, verify_witness
from extgb.exterior import ExteriorPolynomial, Monomial, merge_sign, mul, mul_monomials
from extgb.formats import (
    example1_ideal,
    example1_initial,
    example1_order,
    example1_witness,
    fixture_text,
    parse_order,
)
from extgb.groebner import IdealSpec, complete, initial_ideal, member, reduce
from extgb.oracle import graded_components, is_member, monomials_of_degree
from extgb.orders import validate_axioms
from extgb.theorem import certify, coherent_samples

from tests.oracles import word_product

LIMIT_FIXTURE_S = 1.0
LIMIT_COMPLETE_S = 5.0
LIMIT_COHERENT_SCAN_S = 60.0
LIMIT_SEARCH_S = 60.0
COHERENT_SAMPLES = 100
RANDOM_MEMBERS = 200
RANDOM_SIGN_CASES = 10_000

LOWER = ("x1x2x5", "x1x3x5", "x2x3x4", "x1x4x6")
EXPECTED_INITIAL = {"x1x3x4", "x1x2x6", "x1x4x5", "x2x3x5", "x1x3x5x6", "x2x3x4x6"}
WITNESS_SUM = (3, 2, 2, 2, 2, 1)


def _spec():
    n, gens = example1_ideal()
    return IdealSpec(n, tuple(gens))


def _cli(*argv):
    buf = io.StringIO()
    code = cli_main(list(argv), out=buf)
    return code, buf.getvalue()


def criterion_1():
    start = time.perf_counter()
    text = fixture_text("example1.order")
    body = [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#")]
    prefix = body[body.index("self-dual") + 1:]
    o = parse_order(text)
    x146, x235 = Monomial.from_indices([1, 4, 6], 6), Monomial.from_indices([2, 3, 5], 6)
    overlap = (
        o.rank_of(x146) == 31
        and o.rank_of(x235) == 32
        and x146.complement() == x235
        and len(prefix) == 33
    )
    rep = validate_axioms(o)
    elapsed = time.perf_counter() - start
    ok = len(o.listing) == 64 and overlap and rep.valid and elapsed < LIMIT_FIXTURE_S
    return ok, f"{len(prefix)}-entry prefix -> {len(o.listing)} ranks, overlap={overlap}, " \
               f"axioms valid={rep.valid}, {elapsed:.3f}s < {LIMIT_FIXTURE_S}s"


def criterion_2():
    o = example1_order()
    v = is_coherent(o)
    lp_ok = not v.coherent and v.certificate.verifies(o)
    expanded = expand_certificate(o, v.certificate) if not v.coherent else None
    exp_ok = expanded is not None and verify_witness(o, expanded)
    fixture_wit = example1_witness()
    sa, sb = fixture_wit.sums()
    fixture_ok = (
        verify_witness(o, fixture_wit)
        and tuple(sa) == tuple(sb) == WITNESS_SUM
        and all(o.less(a.bits, b.bits) for a, b in fixture_wit.pairs)
    )
    ok = lp_ok and exp_ok and fixture_ok
    n_exp = len(expanded) if expanded is not None else 0
    return ok, f"LP certificate verifies={lp_ok}, expanded C_{n_exp} verifies={exp_ok}, " \
               f"fixture C_4 sums {tuple(sa)}={tuple(sb)} verifies={fixture_ok}"


def criterion_3():
    o, spec = example1_order(), _spec()
    start = time.perf_counter()
    ii = initial_ideal(complete(spec, o))
    elapsed = time.perf_counter() - start
    got = {str(m) for m in ii.generators}
    fixture = {str(m) for m in example1_initial()}
    ok = got == EXPECTED_INITIAL == fixture and elapsed < LIMIT_COMPLETE_S
    return ok, f"initial ideal {sorted(got)}, exact match={got == EXPECTED_INITIAL}, " \
               f"{elapsed:.3f}s < {LIMIT_COMPLETE_S}s"


def criterion_4():
    cert = certify(example1_witness(), example1_order())
    targets = {str(a) for _, a, _ in cert.checks}
    ok = (
        cert.valid
        and len(cert.checks) == 24
        and targets == set(LOWER)
        and not any(d for _, _, d in cert.checks)
    )
    hits = [(str(g), str(a)) for g, a, d in cert.checks if d]
    return ok, f"{len(cert.checks)} divisibility checks, divisions found={hits}, certificate valid={cert.valid}"


def criterion_5():
    o, wit = example1_order(), example1_witness()
    cert = certify(wit, o)
    facts = {}
    for g, facs in cert.structure:
        facts[str(g)] = [(str(f.cofactor), str(f.target), f.sign) for f in facs]
    product_ok = True
    for g, facs in cert.structure:
        for f in facs:
            t = mul_monomials(f.cofactor, f.target)
            product_ok &= t is not None and t.mono == f.monomial and int(t.coeff) == f.sign
            product_ok &= not f.cofactor.is_one()
    expected = {"x1x3x5x6": ("x6", "x1x3x5"), "x2x3x4x6": ("x6", "x2x3x4")}
    shape_ok = set(facts) == set(expected) and all(
        len(facts[k]) == 1 and facts[k][0][:2] == v for k, v in expected.items()
    )
    ok = cert.structure_ok and cert.raw_structure_ok and product_ok and shape_ok
    shown = ", ".join(
        f"{k} = {'+' if s > 0 else '-'}{c}*{t}" for k, fs in sorted(facts.items()) for c, t, s in fs
    )
    return ok, f"{shown}; all extra elements factor={cert.structure_ok and cert.raw_structure_ok}"


def criterion_6():
    spec, wit = _spec(), example1_witness()
    noncoherent = initial_ideal(complete(spec, example1_order())).bits()
    start = time.perf_counter()
    contains = differs = coherent = 0
    distinct = set()
    for _, o, ii in coherent_samples(spec, COHERENT_SAMPLES, seed=0):
        contains += any(member(a, ii) for a in wit.lower)
        differs += ii.bits() != noncoherent
        coherent += is_coherent(o).coherent
        distinct.add(ii.bits())
    elapsed = time.perf_counter() - start
    ok = contains == differs == coherent == COHERENT_SAMPLES and elapsed < LIMIT_COHERENT_SCAN_S
    return ok, f"{COHERENT_SAMPLES} weight vectors: contain some a_j {contains}, differ {differs}, " \
               f"coherent {coherent}, {len(distinct)} distinct ideals, {elapsed:.1f}s < {LIMIT_COHERENT_SCAN_S}s"


def _random_member(spec, rng, degree):
    f = ExteriorPolynomial.zero(spec.n)
    for _ in range(rng.randint(1, 5)):
        g = rng.choice(spec.generators)
        c = Monomial(rng.choice(monomials_of_degree(spec.n, degree - g.degree())), spec.n)
        q = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        f = f + q * mul(ExteriorPolynomial.monomial(c), g)
    return f


def criterion_7():
    o, spec = example1_order(), _spec()
    gb = complete(spec, o)
    ii = initial_ideal(gb)
    comps = graded_components(spec)
    mono_agree = 0
    for b in range(64):
        f = ExteriorPolynomial.monomial(Monomial(b, 6))
        mono_agree += (not reduce(f, gb.basis, o)) == is_member(f, comps)
    rng = random.Random(7)
    member_agree = nonmember_agree = 0
    for _ in range(RANDOM_MEMBERS):
        f = _random_member(spec, rng, rng.randint(3, 6))
        member_agree += (not reduce(f, gb.basis, o)) and is_member(f, comps)
        # perturb by one monomial of the same degree to exercise the negative side
        d = rng.randint(3, 6)
        h = _random_member(spec, rng, d) + ExteriorPolynomial.monomial(
            Monomial(rng.choice(monomials_of_degree(6, d)), 6))
        nonmember_agree += (not reduce(h, gb.basis, o)) == is_member(h, comps)
    counts = {d: sum(1 for m in monomials_of_degree(6, d) if member(Monomial(m, 6), ii)) for d in range(7)}
    dims = {d: c.dim for d, c in comps.items()}
    ok = mono_agree == 64 and member_agree == nonmember_agree == RANDOM_MEMBERS and counts == dims
    return ok, f"monomials agree {mono_agree}/64, members {member_agree}/{RANDOM_MEMBERS}, " \
               f"perturbed {nonmember_agree}/{RANDOM_MEMBERS}, counts per degree {counts} == dims {dims}"


def _sign_case(a, b, c, n):
    """Anticommutativity of (a, b), cocycle and associativity of (a, b, c); True if all hold."""
    A, B, C = Monomial(a, n), Monomial(b, n), Monomial(c, n)
    ab, ba = mul_monomials(A, B), mul_monomials(B, A)
    if a & b:
        ok = ab is None and ba is None
    else:
        ok = ab.mono == ba.mono and ab.coeff == (-1) ** (A.degree * B.degree) * ba.coeff
    if not (a & b or b & c or a & c):
        ok &= merge_sign(A, B) * merge_sign(Monomial(a | b, n), C) == \
            merge_sign(B, C) * merge_sign(A, Monomial(b | c, n))
    sign, idx = word_product(A.indices, B.indices, C.indices)
    pa, pb, pc = (ExteriorPolynomial.monomial(x) for x in (A, B, C))
    left, right = mul(mul(pa, pb), pc), mul(pa, mul(pb, pc))
    ok &= left == right
    if sign == 0:
        ok &= left.is_zero()
    else:
        ok &= {m.indices: v for m, v in left.items()} == {idx: sign}
    return ok


def criterion_8():
    exhaustive = failures = 0
    for n in range(1, 6):
        size = 1 << n
        for a, b, c in itertools.product(range(size), repeat=3):
            exhaustive += 1
            failures += not _sign_case(a, b, c, n)
    rng = random.Random(8)
    for _ in range(RANDOM_SIGN_CASES):
        failures += not _sign_case(rng.randrange(64), rng.randrange(64), rng.randrange(64), 6)
    ok = failures == 0
    return ok, f"{exhaustive} exhaustive triples (n<=5) + {RANDOM_SIGN_CASES} random (n=6), {failures} failures"


def criterion_9():
    start = time.perf_counter()
    code, text = _cli("search", "--n", "6", "--degree", "3", "--n-max", "4", "--example-witness",
                      "--format", "structured")
    elapsed = time.perf_counter() - start
    data = json.loads(text)
    found_ok = code == 0 and data["found"] and data["certificate"]["valid"]
    if found_ok:
        o = parse_order("n=6\n" + "\n".join(data["order"]) + "\n")
        found_ok = validate_axioms(o).valid and not is_coherent(o).coherent
    code3, _ = _cli("search", "--n", "3")
    ok = found_ok and elapsed < LIMIT_SEARCH_S and code3 == 3
    return ok, f"n=6 with example witness first: exit {code}, certified={found_ok}, " \
               f"{data.get('nodes')} nodes, {elapsed:.2f}s < {LIMIT_SEARCH_S}s; n=3: exit {code3}"


DETERMINISM_COMMANDS = [
    ("validate-order", "--order", "example1.order"),
    ("coherence", "--order", "example1.order"),
    ("groebner", "--order", "example1.order", "--ideal", "example1.ideal"),
    ("certify", "--order", "example1.order", "--witness", "example1.witness"),
    ("compare-coherent", "--ideal", "example1.ideal", "--witness", "example1.witness",
     "--order", "example1.order", "--count", str(COHERENT_SAMPLES), "--seed", "0"),
    ("verify-example",),
    ("search", "--n", "6", "--degree", "3", "--n-max", "4", "--example-witness"),
    ("search", "--n", "3"),
]


def _library_digest() -> str:
    """Structured summaries of the library-level criteria (7, 8) for byte comparison."""
    o, spec = example1_order(), _spec()
    gb = complete(spec, o)
    ii = initial_ideal(gb)
    comps = graded_components(spec)
    data = {
        "groebner": report.groebner(gb, ii),
        "dims": {str(d): c.dim for d, c in comps.items()},
        "members": [b for b in range(64) if not reduce(ExteriorPolynomial.monomial(Monomial(b, 6)), gb.basis, o)],
        "signs": [str(mul_monomials(Monomial(a, 6), Monomial(b, 6))) for a in range(64) for b in range(64)],
    }
    return report.dumps(data)


def criterion_10():
    mismatches = []
    env = dict(os.environ)
    for argv in DETERMINISM_COMMANDS:
        args = [*argv, "--format", "structured"]
        first = _cli(*args)
        second = _cli(*args)
        runs = {first, second}
        # a fresh interpreter with a different hash seed must print the same bytes
        env["PYTHONHASHSEED"] = "12345"
        p = subprocess.run([sys.executable, "-m", "extgb.cli", *args], capture_output=True, text=True, env=env)
        runs.add((p.returncode, p.stdout))
        if len(runs) != 1:
            mismatches.append(argv[0])
    if _library_digest() != _library_digest():
        mismatches.append("library")
    ok = not mismatches
    return ok, f"{len(DETERMINISM_COMMANDS)} CLI commands x 3 runs (one fresh process) + library digest, " \
               f"mismatches={mismatches}"


CRITERIA = [
    (1, "fixture integrity", criterion_1),
    (2, "noncoherence", criterion_2),
    (3, "initial ideal equality", criterion_3),
    (4, "noncoherent-initial-ideal certificate", criterion_4),
    (5, "structural invariant", criterion_5),
    (6, "coherent-order contrapositive at scale", criterion_6),
    (7, "oracle equivalence", criterion_7),
    (8, "sign/arithmetic properties", criterion_8),
    (9, "search reproduction", criterion_9),
    (10, "determinism", criterion_10),
]


def _line(k, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {k} ({name}): {detail}"


@pytest.mark.parametrize("k,name,check", CRITERIA, ids=[f"criterion_{k}" for k, _, _ in CRITERIA])
def test_criterion(k, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(k, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, name, check in CRITERIA:
        ok, detail = check()
        print(_line(k, name, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
