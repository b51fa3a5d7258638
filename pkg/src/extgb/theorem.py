"""Noncoherent initial ideals from cancellation failures.

Given a term order with a C_N failure a_i < b_i (equal degrees, all 2N
exponent vectors an antichain), the binomial ideal <x^b_i - x^a_i> has an
initial ideal that no coherent order reproduces: a coherent order must put
some x^a_i into its initial ideal, while here no initial generator divides
any x^a_j.  This module checks the hypotheses and certifies the conclusion
instance by instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .coherence import CancellationWitness, verify_witness
from .exterior import ExteriorPolynomial, Monomial, sign_bits
from .groebner import GroebnerBasis, IdealSpec, InitialIdeal, complete, divides, initial_ideal
from .orders import TermOrder, WeightVector, from_weights, random_weights


@dataclass(frozen=True)
class TheoremHypothesisReport:
    witness_valid: bool
    equal_degrees: bool
    antichain: bool
    all_pairs_distinct: bool

    @property
    def ok(self) -> bool:
        return self.witness_valid and self.equal_degrees and self.antichain and self.all_pairs_distinct

    def failed(self) -> list[str]:
        return [k for k, v in vars(self).items() if not v]


class HypothesisError(ValueError):
    def __init__(self, report: TheoremHypothesisReport):
        self.report = report
        super().__init__("theorem hypotheses fail: " + ", ".join(report.failed()))


@dataclass(frozen=True)
class Factorization:
    """One term of a basis element written as sign * x^c * x^a_i."""

    monomial: Monomial
    cofactor: Monomial
    target: Monomial  # the x^a_i it is a multiple of
    index: int  # i, 0-based
    sign: int  # sign of x^c * x^a_i relative to the canonical monomial


@dataclass
class NoncoherenceCertificate:
    witness: CancellationWitness
    initial_gens: InitialIdeal
    basis: GroebnerBasis
    checks: list[tuple[Monomial, Monomial, bool]]  # (generator, a_j, divides)
    structure: list[tuple[ExteriorPolynomial, list[Factorization]]]
    structure_ok: bool
    raw_structure_ok: bool
    hypotheses: TheoremHypothesisReport

    @property
    def divisibility_ok(self) -> bool:
        return not any(d for _, _, d in self.checks)

    @property
    def valid(self) -> bool:
        return self.divisibility_ok and self.structure_ok and self.raw_structure_ok

    @property
    def lower_in_initial_ideal(self) -> list[Monomial]:
        return sorted({a for _, a, d in self.checks if d}, key=lambda m: m.bits)


def check_hypotheses(wit: CancellationWitness, o: TermOrder) -> TheoremHypothesisReport:
    monos = [m for pair in wit.pairs for m in pair]
    distinct = sorted({m.bits for m in monos})
    antichain = all(
        not (x & ~y == 0 or y & ~x == 0) for i, x in enumerate(distinct) for y in distinct[i + 1:]
    )
    return TheoremHypothesisReport(
        witness_valid=verify_witness(o, wit),
        equal_degrees=all(a.degree == b.degree for a, b in wit.pairs),
        antichain=antichain,
        all_pairs_distinct=len(distinct) == len(monos),
    )


def build_ideal(wit: CancellationWitness) -> IdealSpec:
    """Binomials x^b_i - x^a_i."""
    if not wit.pairs:
        raise ValueError("empty witness")
    gens = []
    for i, (a, b) in enumerate(wit.pairs):
        if a == b:
            raise ValueError(f"pair {i + 1} is degenerate ({a} < {b}): zero generator")
        gens.append(ExteriorPolynomial(a.n, {b.bits: 1, a.bits: -1}))
    return IdealSpec(wit.n, tuple(gens))


def _monic(f: ExteriorPolynomial, o: TermOrder) -> ExteriorPolynomial:
    lead = max(f.terms, key=o.rank.__getitem__)
    return (1 / f.terms[lead]) * f


def factor_terms(
    f: ExteriorPolynomial, lower: list[Monomial]
) -> list[Factorization] | None:
    """Write each term of f as +-x^c x^a_i with c != 1; None if some term can't be."""
    out = []
    for m, _ in f.items():
        for i, a in enumerate(lower):
            if divides(a, m) and a != m:
                c = m.bits ^ a.bits
                out.append(Factorization(m, Monomial(c, m.n), a, i, sign_bits(c, a.bits)))
                break
        else:
            return None
    return out


def _structure(elems, inputs, lower, o):
    ok = True
    table = []
    for g in elems:
        if _monic(g, o) in inputs:
            continue
        fac = factor_terms(g, lower)
        table.append((g, fac or []))
        if fac is None:
            ok = False
    return ok, table


def certify(wit: CancellationWitness, o: TermOrder) -> NoncoherenceCertificate:
    """Complete the binomial ideal and check no initial generator divides any x^a_j."""
    report = check_hypotheses(wit, o)
    if not report.ok:
        raise HypothesisError(report)
    return _certify(wit, o, report)


def _certify(wit, o, report) -> NoncoherenceCertificate:
    spec = build_ideal(wit)
    gb = complete(spec, o)
    ii = initial_ideal(gb)
    lower = wit.lower
    checks = [(g, a, divides(g, a)) for g in ii.generators for a in lower]
    inputs = {_monic(g, o) for g in spec.generators}
    ok, table = _structure(gb.basis, inputs, lower, o)
    raw_ok, _ = _structure(gb.raw, inputs, lower, o)
    return NoncoherenceCertificate(wit, ii, gb, checks, table, ok, raw_ok, report)


def evaluate(wit: CancellationWitness, o: TermOrder) -> NoncoherenceCertificate:
    """Like :func:`certify` but never rejects; useful to show the certificate
    breaking under orders that violate the hypotheses (e.g. coherent ones)."""
    return _certify(wit, o, check_hypotheses(wit, o))


def coherent_samples(
    spec: IdealSpec, count: int, seed: int = 0
) -> Iterator[tuple[WeightVector, TermOrder, InitialIdeal]]:
    """Sample i draws a positive weight vector from its own generator seeded by (seed, i)."""
    for i in range(count):
        rng = random.Random(f"{seed}:{i}")
        w = random_weights(spec.n, rng)
        o = from_weights(w)
        yield w, o, initial_ideal(complete(spec, o))


def compare_with_coherent(
    spec: IdealSpec, count: int, seed: int = 0
) -> list[tuple[WeightVector, InitialIdeal]]:
    """Distinct initial ideals of ``spec`` under ``count`` random coherent orders,
    each with the first weight vector that produced it."""
    out = []
    seen: set[frozenset[int]] = set()
    for w, _, ii in coherent_samples(spec, count, seed):
        key = ii.bits()
        if key not in seen:
            seen.add(key)
            out.append((w, ii))
    return out
