"""Left Gröbner bases in the exterior algebra.

Polynomials are reduced by left multiplication: to clear the lead x^m of f
against g with in(g) | x^m, subtract (LT(f) / LT(g)) * (-1)^d * x^(m - in g) * g,
where (-1)^d is the sign picked up by x^(m - in g) * in(g).  Besides the
usual S-polynomials, the exterior algebra needs T-polynomials x^c * g for
every x^c that annihilates in(g).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exterior import ExteriorPolynomial, Monomial, Term, mul_bits_terms, sign_bits
from .orders import TermOrder


class NonHomogeneousError(ValueError):
    def __init__(self, index: int, poly: ExteriorPolynomial):
        self.index = index
        self.poly = poly
        super().__init__(f"generator {index + 1} is not homogeneous: {poly}")


@dataclass(frozen=True)
class IdealSpec:
    n: int
    generators: tuple[ExteriorPolynomial, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        for i, g in enumerate(self.generators):
            if g.n != self.n:
                raise ValueError(f"generator {i + 1} lives in n={g.n}, expected n={self.n}")
            if not g.is_homogeneous():
                raise NonHomogeneousError(i, g)


@dataclass(frozen=True)
class InitialIdeal:
    generators: tuple[Monomial, ...]
    order: TermOrder

    def __contains__(self, m: Monomial) -> bool:
        return member(m, self)

    def bits(self) -> frozenset[int]:
        return frozenset(g.bits for g in self.generators)


@dataclass
class GroebnerBasis:
    basis: list[ExteriorPolynomial]
    order: TermOrder
    source: IdealSpec
    raw: list[ExteriorPolynomial] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# monomial divisibility


def divides(a: Monomial, b: Monomial) -> bool:
    return not a.bits & ~b.bits


def quotient(b: Monomial, a: Monomial) -> Monomial:
    """x^b / x^a as the monomial x^(b - a)."""
    if not divides(a, b):
        raise ValueError(f"{a} does not divide {b}")
    return Monomial(b.bits ^ a.bits, b.n)


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return Monomial(a.bits | b.bits, a.n)


# ---------------------------------------------------------------------------
# lead terms


def _lead_bits(terms, rank) -> int:
    return max(terms, key=rank.__getitem__)


def initial_monomial(f: ExteriorPolynomial, o: TermOrder) -> Monomial:
    if not f:
        raise ValueError("zero polynomial has no initial monomial")
    return Monomial(_lead_bits(f.terms, o.rank), f.n)


def lead_term(f: ExteriorPolynomial, o: TermOrder) -> Term:
    m = initial_monomial(f, o)
    return Term(f.terms[m.bits], m)


def t_polynomial(g: ExteriorPolynomial, c: Monomial, o: TermOrder) -> ExteriorPolynomial:
    """x^c * g, defined when x^c (c != 1) annihilates in(g)."""
    lead = initial_monomial(g, o)
    if c.is_one() or not c.bits & lead.bits:
        raise ValueError(f"{c} does not annihilate the initial monomial {lead}")
    return ExteriorPolynomial._wrap(g.n, mul_bits_terms(c.bits, g.terms))


def _s_terms(f_terms, f_lead, g_terms, g_lead) -> dict[int, Fraction]:
    m = f_lead | g_lead
    q1, q2 = m ^ f_lead, m ^ g_lead
    s1 = sign_bits(q1, f_lead) / f_terms[f_lead]
    s2 = sign_bits(q2, g_lead) / g_terms[g_lead]
    out = {b: s1 * c for b, c in mul_bits_terms(q1, f_terms).items()}
    if out[m] != 1:
        raise AssertionError("S-polynomial cofactor does not produce +lcm")
    for b, c in mul_bits_terms(q2, g_terms).items():
        v = out.get(b, 0) - s2 * c
        if v:
            out[b] = v
        else:
            out.pop(b, None)
    if m in out:
        raise AssertionError("S-polynomial leads failed to cancel")
    return out


def s_polynomial(g1: ExteriorPolynomial, g2: ExteriorPolynomial, o: TermOrder) -> ExteriorPolynomial:
    """(-1)^d1 (m/LT g1) g1 - (-1)^d2 (m/LT g2) g2 with m the monic lcm of the leads."""
    if not g1 or not g2:
        raise ValueError("S-polynomial of a zero polynomial")
    l1 = _lead_bits(g1.terms, o.rank)
    l2 = _lead_bits(g2.terms, o.rank)
    return ExteriorPolynomial._wrap(g1.n, _s_terms(g1.terms, l1, g2.terms, l2))


# ---------------------------------------------------------------------------
# reduction


class _Divisors:
    """Basis elements with cached leads, in insertion order."""

    def __init__(self, rank):
        self.rank = rank
        self.leads: list[int] = []
        self.coeffs: list[Fraction] = []
        self.terms: list[dict[int, Fraction]] = []

    def append(self, terms: dict[int, Fraction]) -> None:
        lead = _lead_bits(terms, self.rank)
        self.leads.append(lead)
        self.coeffs.append(terms[lead])
        self.terms.append(terms)

    def find(self, m: int) -> int:
        for i, lead in enumerate(self.leads):
            if not lead & ~m:
                return i
        return -1

    def reduce(self, terms: dict[int, Fraction], full: bool = False) -> dict[int, Fraction]:
        terms = dict(terms)
        rank = self.rank
        done: dict[int, Fraction] = {}
        while terms:
            m = max(terms, key=rank.__getitem__)
            i = self.find(m)
            if i < 0:
                if not full:
                    break
                done[m] = terms.pop(m)
                continue
            lead = self.leads[i]
            q = m ^ lead
            factor = terms[m] * sign_bits(q, lead) / self.coeffs[i]
            for b, c in self.terms[i].items():
                if b & q:
                    continue
                key = b | q
                v = terms.get(key, 0) - factor * sign_bits(q, b) * c
                if v:
                    terms[key] = v
                else:
                    terms.pop(key, None)
        if full:
            terms.update(done)
        return terms


def reduce(
    f: ExteriorPolynomial,
    G: Sequence[ExteriorPolynomial],
    o: TermOrder,
    full: bool = False,
) -> ExteriorPolynomial:
    """Remainder of f by G, always dividing by the lowest-index usable element.

    Stops once in(f) is irreducible; with ``full`` every term is reduced.
    """
    div = _Divisors(o.rank)
    for g in G:
        if not g:
            raise ValueError("cannot reduce by the zero polynomial")
        div.append(g.terms)
    return ExteriorPolynomial._wrap(f.n, div.reduce(f.terms, full))


# ---------------------------------------------------------------------------
# completion


def complete(spec: IdealSpec, o: TermOrder) -> GroebnerBasis:
    """Extend the generators to a reduced left Gröbner basis.

    Every T-polynomial of every element and every x^e * S of every pair is
    reduced against the growing basis; nonzero remainders join it.  Pending
    T-polynomials are handled before S-pairs, S-pairs by (lcm degree, i, j).
    """
    if spec.n != o.n:
        raise ValueError(f"ideal has n={spec.n} but order has n={o.n}")
    n = spec.n
    size = 1 << n
    div = _Divisors(o.rank)
    pending_t: list[int] = []
    pairs: list[tuple[int, int, int]] = []
    stats = {"t_polynomials": 0, "s_multiples": 0, "added": 0}

    def add(terms: dict[int, Fraction]) -> None:
        div.append(terms)
        k = len(div.leads) - 1
        pending_t.append(k)
        for i in range(k):
            heapq.heappush(pairs, ((div.leads[i] | div.leads[k]).bit_count(), i, k))

    for g in spec.generators:
        if g:
            add(dict(g.terms))

    while pending_t or pairs:
        if pending_t:
            k = pending_t.pop(0)
            lead, terms = div.leads[k], div.terms[k]
            for c in range(1, size):
                if not c & lead:
                    continue
                t = mul_bits_terms(c, terms)
                stats["t_polynomials"] += 1
                if t:
                    r = div.reduce(t)
                    if r:
                        add(r)
                        stats["added"] += 1
            continue
        _, i, j = heapq.heappop(pairs)
        s = _s_terms(div.terms[i], div.leads[i], div.terms[j], div.leads[j])
        if not s:
            continue
        for e in range(size):
            p = mul_bits_terms(e, s) if e else s
            if not p:
                continue
            stats["s_multiples"] += 1
            r = div.reduce(p)
            if r:
                add(r)
                stats["added"] += 1

    raw = [ExteriorPolynomial._wrap(n, t) for t in div.terms]
    basis = interreduce(raw, o)
    return GroebnerBasis(basis, o, spec, raw, stats)


def interreduce(G: Iterable[ExteriorPolynomial], o: TermOrder) -> list[ExteriorPolynomial]:
    """Drop elements whose lead is divisible by an earlier-kept or other lead,
    tail-reduce the rest and make them monic."""
    elems = [g for g in G if g]
    leads = [_lead_bits(g.terms, o.rank) for g in elems]
    keep = []
    for i, li in enumerate(leads):
        redundant = False
        for j, lj in enumerate(leads):
            if j == i or lj & ~li:
                continue
            # lj divides li: drop i unless the leads coincide and i comes first
            if lj != li or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    out = []
    for i in keep:
        div = _Divisors(o.rank)
        for j in keep:
            if j != i:
                div.append(elems[j].terms)
        lead = leads[i]
        tail = {b: c for b, c in elems[i].terms.items() if b != lead}
        tail = div.reduce(tail, full=True)
        c0 = elems[i].terms[lead]
        terms = {b: c / c0 for b, c in tail.items()}
        terms[lead] = Fraction(1)
        out.append(ExteriorPolynomial._wrap(elems[i].n, terms))
    return out


def initial_ideal(gb: GroebnerBasis) -> InitialIdeal:
    o = gb.order
    leads = {_lead_bits(g.terms, o.rank) for g in gb.basis if g}
    minimal = [m for m in leads if not any(l != m and not l & ~m for l in leads)]
    minimal.sort(key=lambda b: (b.bit_count(), o.rank[b]))
    return InitialIdeal(tuple(Monomial(b, o.n) for b in minimal), o)


def member(m: Monomial, ii: InitialIdeal) -> bool:
    return any(divides(g, m) for g in ii.generators)
