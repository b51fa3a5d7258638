"""Plain-data (JSON-ready) views of results, and their human renderings.

Monomials and polynomials are written in the text grammar, rationals as
``"p/q"`` strings, so every structured block parses back losslessly.
"""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from typing import Any

from .coherence import CancellationWitness, CoherenceVerdict, expand_certificate
from .exterior import format_monomial_bits, format_poly
from .groebner import GroebnerBasis, InitialIdeal
from .orders import AxiomReport, TermOrder, covering_pairs
from .theorem import NoncoherenceCertificate, TheoremHypothesisReport


def q(x: Fraction) -> str:
    return str(x)


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)


def axiom_report(o: TermOrder, rep: AxiomReport) -> dict:
    return {
        "kind": "axioms",
        "n": o.n,
        "valid": rep.valid,
        "violations": [
            {"axiom": tag, "monomials": [str(m) for m in mons]} for tag, mons in rep.violations
        ],
    }


def witness(wit: CancellationWitness) -> list[list[str]]:
    return [[str(a), str(b)] for a, b in wit.pairs]


def verdict(o: TermOrder, v: CoherenceVerdict) -> dict:
    if v.coherent:
        return {
            "kind": "coherence",
            "n": o.n,
            "coherent": True,
            "weights": [q(w) for w in v.weights.weights],
            "epsilon": q(v.epsilon),
        }
    cover = covering_pairs(o)
    wit = expand_certificate(o, v.certificate)
    sa, _ = wit.sums()
    return {
        "kind": "coherence",
        "n": o.n,
        "coherent": False,
        "multipliers": [
            {"rank": k, "lambda": lam, "pair": [_m(cover[k][0]), _m(cover[k][1])]}
            for k, lam in v.certificate.multipliers
        ],
        "N": len(wit),
        "witness": witness(wit),
        "exponent_sum": list(sa),
    }


def _m(bits: int) -> str:
    return format_monomial_bits(bits)


def initial(ii: InitialIdeal) -> list[str]:
    return [str(m) for m in ii.generators]


def degree_counts(ii: InitialIdeal) -> dict[str, int]:
    """Number of monomials of each degree in the initial ideal."""
    n = ii.order.n
    gens = [g.bits for g in ii.generators]
    counts: Counter[int] = Counter()
    for m in range(1 << n):
        if any(not g & ~m for g in gens):
            counts[m.bit_count()] += 1
    return {str(d): counts[d] for d in range(n + 1)}


def groebner(gb: GroebnerBasis, ii: InitialIdeal) -> dict:
    return {
        "kind": "groebner",
        "n": gb.order.n,
        "basis": [format_poly(g) for g in gb.basis],
        "initial_ideal": initial(ii),
        "generators_per_degree": dict(sorted(Counter(str(m.degree) for m in ii.generators).items())),
        "monomials_per_degree": degree_counts(ii),
    }


def hypotheses(rep: TheoremHypothesisReport) -> dict:
    return {
        "witness_valid": rep.witness_valid,
        "equal_degrees": rep.equal_degrees,
        "antichain": rep.antichain,
        "all_pairs_distinct": rep.all_pairs_distinct,
    }


def certificate(cert: NoncoherenceCertificate) -> dict:
    return {
        "kind": "certificate",
        "n": cert.witness.n,
        "valid": cert.valid,
        "hypotheses": hypotheses(cert.hypotheses),
        "witness": witness(cert.witness),
        "initial_ideal": initial(cert.initial_gens),
        "divisibility": [
            {"generator": str(g), "target": str(a), "divides": d} for g, a, d in cert.checks
        ],
        "extra_basis_elements": [
            {
                "element": format_poly(g),
                "factors": [
                    {
                        "monomial": str(f.monomial),
                        "cofactor": str(f.cofactor),
                        "target": str(f.target),
                        "index": f.index + 1,
                        "sign": f.sign,
                    }
                    for f in facs
                ],
            }
            for g, facs in cert.structure
        ],
        "structure_ok": cert.structure_ok and cert.raw_structure_ok,
    }


# ---------------------------------------------------------------------------
# human renderings


def human_axioms(d: dict) -> str:
    if d["valid"]:
        return f"valid term order on {1 << d['n']} monomials\n"
    lines = [f"NOT a term order: {len(d['violations'])} violation(s)"]
    for v in d["violations"][:20]:
        if v["axiom"] == "i":
            lines.append(f"  (i): minimum is {v['monomials'][0]}, not 1")
        else:
            a, b, c = v["monomials"]
            lines.append(f"  (ii): {a} < {b} but {b}*{c} < {a}*{c}")
    if len(d["violations"]) > 20:
        lines.append(f"  ... {len(d['violations']) - 20} more")
    return "\n".join(lines) + "\n"


def human_verdict(d: dict) -> str:
    if d["coherent"]:
        return f"coherent; weight vector w = ({', '.join(d['weights'])})\n"
    lines = ["noncoherent; Farkas multipliers on covering pairs (rank: lambda):"]
    for m in d["multipliers"]:
        lines.append(f"  {m['rank']}: {m['lambda']}   {m['pair'][0]} < {m['pair'][1]}")
    lines.append(f"C_{d['N']} failure (exponent sums both {tuple(d['exponent_sum'])}):")
    lines.extend(f"  {a} < {b}" for a, b in d["witness"])
    return "\n".join(lines) + "\n"


def human_groebner(d: dict) -> str:
    lines = ["basis:"]
    lines.extend(f"  {g}" for g in d["basis"])
    lines.append("initial ideal generators:")
    lines.extend(f"  {m}" for m in d["initial_ideal"])
    lines.append("monomials in initial ideal per degree: " + ", ".join(
        f"{k}:{v}" for k, v in d["monomials_per_degree"].items()))
    return "\n".join(lines) + "\n"


def human_certificate(d: dict) -> str:
    lines = ["hypotheses: " + ", ".join(f"{k}={'yes' if v else 'NO'}" for k, v in d["hypotheses"].items())]
    lines.append("initial ideal: " + ", ".join(d["initial_ideal"]))
    hits = [x for x in d["divisibility"] if x["divides"]]
    lines.append(
        f"divisibility: {len(d['divisibility'])} checks, "
        + ("none divides any lower monomial" if not hits else
           "; ".join(f"{x['generator']} divides {x['target']}" for x in hits))
    )
    for e in d["extra_basis_elements"]:
        facs = ", ".join(
            f"{f['monomial']} = {'+' if f['sign'] > 0 else '-'}{f['cofactor']}*{f['target']}" for f in e["factors"]
        )
        lines.append(f"extra element {e['element']}: {facs or 'NOT of the form x^c x^a_i'}")
    lines.append("certificate " + ("VALID" if d["valid"] else "INVALID"))
    return "\n".join(lines) + "\n"
