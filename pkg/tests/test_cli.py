import io
import json

import pytest

from extgb.cli import main
from extgb.exterior import parse_monomial
from extgb.formats import (
    fixture_text,
    format_order,
    parse_ideal,
    parse_monomial_list,
    parse_order,
    parse_witness,
)
from extgb.orders import binary_order, from_weights, random_weights
from extgb.search import MAX_SEARCH_N


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def structured(*argv):
    code, text = run(*argv, "--format", "structured")
    return code, json.loads(text), text


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


# validate-order


def test_validate_fixture():
    code, out = run("validate-order", "--order", "example1.order")
    assert code == 0 and out.startswith("valid")


def test_validate_duplicate_monomial(write):
    lines = fixture_text("example1.order").splitlines()
    idx = next(i for i, l in enumerate(lines) if l.strip() == "x1x2")
    lines.insert(idx + 1, "x1x2")
    assert run("validate-order", "--order", write("dup.order", "\n".join(lines)))[0] == 2


def test_validate_swapped_pair(write, ex_order):
    listing = list(ex_order.listing)
    listing[10], listing[11] = listing[11], listing[10]
    from extgb.orders import TermOrder

    bad = format_order(TermOrder(6, listing))
    code, data, _ = structured("validate-order", "--order", write("bad.order", bad))
    assert code == 1
    assert not data["valid"]
    assert any(v["axiom"] == "ii" and len(v["monomials"]) == 3 for v in data["violations"])


def test_validate_missing_file():
    assert run("validate-order", "--order", "/nonexistent/x.order")[0] == 2


def test_bad_arguments():
    assert run("no-such-command")[0] == 2
    assert run("coherence")[0] == 2


# coherence


def test_coherence_fixture():
    code, data, _ = structured("coherence", "--order", "example1.order")
    assert code == 1 and data["coherent"] is False
    o = parse_order(fixture_text("example1.order"))
    from extgb.coherence import CancellationWitness, verify_witness

    wit = CancellationWitness(tuple(
        (parse_monomial(a, 6), parse_monomial(b, 6)) for a, b in data["witness"]))
    assert len(wit) == data["N"]
    assert verify_witness(o, wit)
    assert all(m["lambda"] > 0 for m in data["multipliers"])


def test_coherence_binary(write):
    code, data, _ = structured("coherence", "--order", write("b.order", format_order(binary_order(6))))
    assert code == 0 and data["coherent"]
    from fractions import Fraction

    w = [Fraction(x) for x in data["weights"]]
    o = binary_order(6)
    ms = o.monomials()
    for lo, hi in zip(ms, ms[1:]):
        assert sum(w[i - 1] for i in lo.indices) < sum(w[i - 1] for i in hi.indices)


@pytest.mark.parametrize("seed", range(3))
def test_coherence_weight_generated(write, seed):
    import random

    o = from_weights(random_weights(6, random.Random(seed)))
    assert run("coherence", "--order", write("w.order", format_order(o)))[0] == 0


def test_coherence_invalid_order(write, ex_order):
    listing = list(ex_order.listing)
    listing[0], listing[1] = listing[1], listing[0]
    from extgb.orders import TermOrder

    assert run("coherence", "--order", write("x.order", format_order(TermOrder(6, listing))))[0] == 2


# groebner


def test_groebner_fixture():
    code, data, _ = structured("groebner", "--order", "example1.order", "--ideal", "example1.ideal")
    assert code == 0
    _, expected = parse_monomial_list(fixture_text("example1.initial"))
    assert sorted(data["initial_ideal"]) == sorted(str(m) for m in expected)
    assert data["generators_per_degree"] == {"3": 4, "4": 2}


def test_groebner_single_monomial(write):
    code, out = run("groebner", "--order", "example1.order", "--ideal", write("m.ideal", "n=6\nx1x2\n"))
    assert code == 0
    assert "basis:\n  x1x2\ninitial ideal generators:\n  x1x2\n" in out


def test_groebner_non_homogeneous(write, capsys):
    path = write("nh.ideal", "n=6\nx1x2 - x3x4\nx1 - x2x3\n")
    assert run("groebner", "--order", "example1.order", "--ideal", path)[0] == 2
    err = capsys.readouterr().err
    assert "generator 2 is not homogeneous: x1 - x2x3" in err


def test_groebner_binary_order(write):
    code, data, _ = structured("groebner", "--order", write("b.order", format_order(binary_order(6))),
                               "--ideal", "example1.ideal")
    assert code == 0
    lower = {"x1x2x5", "x1x3x5", "x2x3x4", "x1x4x6"}
    assert lower & set(data["initial_ideal"])


def test_groebner_structured_round_trip():
    _, data, _ = structured("groebner", "--order", "example1.order", "--ideal", "example1.ideal")
    text = "n=6\n" + "\n".join(data["basis"]) + "\n"
    _, polys = parse_ideal(text)
    assert len(polys) == len(data["basis"])
    _, mons = parse_monomial_list("n=6\n" + "\n".join(data["initial_ideal"]) + "\n")
    assert [str(m) for m in mons] == data["initial_ideal"]


# certify


def test_certify_fixture():
    code, data, _ = structured("certify", "--order", "example1.order", "--witness", "example1.witness")
    assert code == 0 and data["valid"]
    assert len(data["divisibility"]) == 24
    assert not any(d["divides"] for d in data["divisibility"])
    targets = sorted((e["factors"][0]["cofactor"], e["factors"][0]["target"])
                     for e in data["extra_basis_elements"])
    assert targets == [("x6", "x1x3x5"), ("x6", "x2x3x4")]
    wit = parse_witness("n=6\n" + "\n".join(f"{a} < {b}" for a, b in data["witness"]) + "\n")
    assert wit == parse_witness(fixture_text("example1.witness"))


def test_certify_coherent_order(write):
    code, data, _ = structured("certify", "--order", write("b.order", format_order(binary_order(6))),
                               "--witness", "example1.witness")
    assert code == 1
    assert data["hypotheses"]["witness_valid"] is False


def test_certify_mixed_degrees(write):
    wit = write("mixed.witness", "n=6\nx1 < x2x3\nx2x3 < x1x4\n")
    code, data, _ = structured("certify", "--order", "example1.order", "--witness", wit)
    assert code == 1
    assert data["hypotheses"]["equal_degrees"] is False


# compare-coherent


def test_compare_coherent_fixture():
    code, data, _ = structured("compare-coherent", "--ideal", "example1.ideal", "--witness",
                               "example1.witness", "--order", "example1.order", "--count", "20")
    assert code == 0 and data["ok"]
    assert all(r["lower_members"] and not r["equals_reference"] for r in data["results"])


def test_compare_coherent_counts():
    code, data, _ = structured("compare-coherent", "--ideal", "example1.ideal", "--witness",
                               "example1.witness", "--count", "5")
    assert code == 0
    assert data["count"] == 5 and 1 <= data["distinct"] <= 5
    assert run("compare-coherent", "--ideal", "example1.ideal", "--count", "0")[1].startswith("0 distinct")


# verify-example


def test_verify_example():
    code, out = run("verify-example")
    assert code == 0
    for stage in ("order", "axioms", "noncoherence", "witness", "groebner", "initial-ideal", "certificate"):
        assert f"[PASS] {stage}" in out


def test_verify_example_flipped_witness(write):
    text = fixture_text("example1.witness").replace("x1x2x5 < x1x3x4", "x1x3x4 < x1x2x5")
    code, data, _ = structured("verify-example", "--witness", write("f.witness", text))
    assert code != 0
    assert data["stages"][-1]["stage"] == "witness" and not data["stages"][-1]["ok"]


def test_verify_example_tampered_initial(write):
    text = fixture_text("example1.initial").replace("x2x3x4x6", "x2x3x5x6")
    code, data, _ = structured("verify-example", "--initial", write("t.initial", text))
    assert code != 0
    assert data["stages"][-1]["stage"] == "initial-ideal" and not data["stages"][-1]["ok"]


# search


def test_search_with_example_witness(tmp_path):
    o_path, w_path = tmp_path / "found.order", tmp_path / "found.witness"
    code, data, _ = structured("search", "--n", "6", "--degree", "3", "--n-max", "4",
                               "--example-witness", "--out-order", str(o_path),
                               "--out-witness", str(w_path))
    assert code == 0 and data["found"]
    assert data["certificate"]["valid"]
    assert run("certify", "--order", str(o_path), "--witness", str(w_path))[0] == 0
    assert run("coherence", "--order", str(o_path))[0] == 1
    assert run("validate-order", "--order", str(o_path))[0] == 0


def test_compare_coherent_flags_failure(write):
    # sample 0 with seed 0 draws from Random("0:0"); using its own order as reference must fail
    import random

    o = from_weights(random_weights(6, random.Random("0:0")))
    code, data, _ = structured("compare-coherent", "--ideal", "example1.ideal", "--count", "1",
                               "--order", write("c.order", format_order(o)))
    assert code == 1 and data["results"][0]["equals_reference"]


def test_search_n3():
    assert run("search", "--n", "3")[0] == 3


def test_search_zero_budget():
    code, data, _ = structured("search", "--example-witness", "--budget", "0")
    assert code == 3 and data["nodes"] == 0


@pytest.mark.parametrize("argv", [
    ("--n", "0"),
    ("--n", str(MAX_SEARCH_N + 1)),
    ("--n", "6", "--degree", "6"),
    ("--n-max", "1"),
    ("--budget", "-1"),
    ("--n", "5", "--example-witness"),
])
def test_search_bad_params(argv):
    assert run("search", *argv)[0] == 2


def test_search_env_cap(monkeypatch):
    monkeypatch.setenv("EXTGB_MAX_N", "4")
    assert run("search", "--n", "5")[0] == 2


# determinism


@pytest.mark.parametrize("argv", [
    ("validate-order", "--order", "example1.order"),
    ("coherence", "--order", "example1.order"),
    ("groebner", "--order", "example1.order", "--ideal", "example1.ideal"),
    ("certify", "--order", "example1.order", "--witness", "example1.witness"),
    ("compare-coherent", "--ideal", "example1.ideal", "--count", "10", "--seed", "4"),
    ("search", "--example-witness", "--seed", "2"),
])
def test_byte_identical(argv):
    a = run(*argv, "--format", "structured")
    b = run(*argv, "--format", "structured")
    assert a == b
