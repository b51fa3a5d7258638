"""Rebuild the bundled n = 6 example from its fixtures and print each step."""

from extgb import report
from extgb.coherence import expand_certificate, is_coherent, verify_witness
from extgb.formats import example1_ideal, example1_order, example1_witness
from extgb.groebner import IdealSpec, complete, initial_ideal
from extgb.orders import validate_axioms
from extgb.theorem import certify


def main() -> None:
    o = example1_order()
    print("order:", " < ".join(str(m) for m in o.monomials()))
    print(report.human_axioms(report.axiom_report(o, validate_axioms(o))), end="")

    v = is_coherent(o)
    print(report.human_verdict(report.verdict(o, v)), end="")
    assert verify_witness(o, expand_certificate(o, v.certificate))

    n, gens = example1_ideal()
    gb = complete(IdealSpec(n, tuple(gens)), o)
    print(report.human_groebner(report.groebner(gb, initial_ideal(gb))), end="")

    cert = certify(example1_witness(), o)
    print(report.human_certificate(report.certificate(cert)), end="")


if __name__ == "__main__":
    main()
