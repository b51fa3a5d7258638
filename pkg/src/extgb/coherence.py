"""Coherence of term orders via exact LP, with Farkas / cancellation certificates.

An order is coherent when some weight vector w has w.(b - a) > 0 on every
covering pair a < b.  We maximise eps subject to w.d_k >= eps and 0 <= w <= 1.
A positive optimum gives w directly.  A zero optimum comes with dual
multipliers lambda >= 0 whose combination of the d_k is <= 0; topping up with
the chains 1 < ... < x_j (which telescope to unit vectors) makes it exactly
zero, and repeating each covering pair lambda_k times yields a failed
cancellation condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exterior import Monomial
from .orders import (
    TermOrder,
    WeightVector,
    covering_differences,
    covering_pairs,
    validate_axioms,
)
from .simplex import maximize


class InvalidOrderError(ValueError):
    """The order fails the term-order axioms."""


@dataclass(frozen=True)
class FarkasCertificate:
    """Nonnegative integer multipliers on covering pairs, keyed by lower rank."""

    multipliers: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if any(lam < 0 for _, lam in self.multipliers):
            raise ValueError("Farkas multipliers must be nonnegative")

    @property
    def total(self) -> int:
        return sum(lam for _, lam in self.multipliers)

    def combination(self, o: TermOrder) -> tuple[int, ...]:
        diffs = covering_differences(o)
        acc = [0] * o.n
        for k, lam in self.multipliers:
            for j, v in enumerate(diffs[k]):
                acc[j] += lam * v
        return tuple(acc)

    def verifies(self, o: TermOrder) -> bool:
        return self.total > 0 and not any(self.combination(o))


@dataclass(frozen=True)
class CancellationWitness:
    """Pairs (a_i, b_i) with sum a_i = sum b_i; a C_N failure when every a_i < b_i."""

    pairs: tuple[tuple[Monomial, Monomial], ...]

    @property
    def n(self) -> int:
        return self.pairs[0][0].n

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def lower(self) -> list[Monomial]:
        return [a for a, _ in self.pairs]

    @property
    def upper(self) -> list[Monomial]:
        return [b for _, b in self.pairs]

    def sums(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        n = self.n
        sa = [0] * n
        sb = [0] * n
        for a, b in self.pairs:
            for j in range(n):
                sa[j] += a.bits >> j & 1
                sb[j] += b.bits >> j & 1
        return tuple(sa), tuple(sb)


@dataclass(frozen=True)
class CoherenceVerdict:
    coherent: bool
    weights: WeightVector | None = None
    certificate: FarkasCertificate | None = None
    epsilon: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.coherent != (self.weights is not None) or self.coherent == (self.certificate is not None):
            raise ValueError("verdict must carry exactly one of weights / certificate")


def _chain_to_singletons(o: TermOrder) -> list[int]:
    """rank of each x_j: d_0 + ... + d_{rank-1} telescopes to e_j."""
    return [o.rank[1 << j] for j in range(o.n)]


def is_coherent(o: TermOrder, check_axioms: bool = True) -> CoherenceVerdict:
    if check_axioms:
        report = validate_axioms(o, max_violations=1)
        if not report.valid:
            raise InvalidOrderError(f"not a term order: {report.violations[0]}")
    n = o.n
    diffs = covering_differences(o)
    # variables: w_1..w_n, eps ; rows: eps - d_k.w <= 0, w_j <= 1
    A: list[list[int]] = []
    for d in diffs:
        A.append([-v for v in d] + [1])
    for j in range(n):
        row = [0] * (n + 1)
        row[j] = 1
        A.append(row)
    b = [0] * len(diffs) + [1] * n
    c = [0] * n + [1]
    res = maximize(c, A, b)
    if res.value > 0:
        w = WeightVector(tuple(res.x[:n]))
        return CoherenceVerdict(True, weights=w, epsilon=res.value)

    lam = res.duals[: len(diffs)]
    den = math.lcm(*(q.denominator for q in lam)) if lam else 1
    ints = [int(q * den) for q in lam]
    acc = [0] * n
    for k, l in enumerate(ints):
        if l:
            for j, v in enumerate(diffs[k]):
                acc[j] += l * v
    for j, top in enumerate(_chain_to_singletons(o)):
        if acc[j] > 0:  # dual feasibility gives acc <= 0
            raise AssertionError("dual multipliers do not certify infeasibility")
        extra = -acc[j]
        if extra:
            for k in range(top):
                ints[k] += extra
    cert = FarkasCertificate(tuple((k, l) for k, l in enumerate(ints) if l))
    if not cert.verifies(o):
        raise AssertionError("Farkas certificate failed to verify")
    return CoherenceVerdict(False, certificate=cert)


def expand_certificate(o: TermOrder, cert: FarkasCertificate) -> CancellationWitness:
    if cert.total == 0:
        raise ValueError("certificate has all multipliers zero")
    if any(cert.combination(o)):
        raise ValueError("certificate multipliers do not sum the covering differences to zero")
    cover = covering_pairs(o)
    pairs = []
    for k, lam in cert.multipliers:
        a, b = cover[k]
        pairs.extend([(Monomial(a, o.n), Monomial(b, o.n))] * lam)
    return CancellationWitness(tuple(pairs))


def verify_witness(o: TermOrder, wit: CancellationWitness) -> bool:
    """True iff the pairs balance and every a_i < b_i: a proof that o is noncoherent."""
    if len(wit) < 2:
        return False
    if any(m.n != o.n for pair in wit.pairs for m in pair):
        return False
    sa, sb = wit.sums()
    if sa != sb:
        return False
    return all(o.less(a.bits, b.bits) for a, b in wit.pairs)


def weight_separates_all(o: TermOrder, w: WeightVector | Sequence[Fraction]) -> bool:
    """Exhaustive check that w.a < w.b for every pair a < b (not just covering pairs)."""
    ws = w.weights if isinstance(w, WeightVector) else tuple(w)
    vals = [sum((ws[j] for j in range(o.n) if bits >> j & 1), Fraction(0)) for bits in range(1 << o.n)]
    seq = [vals[b] for b in o.listing]
    return all(x < y for x, y in zip(seq, seq[1:]))
