"""Witness-first backtracking search for term orders with a cancellation failure.

A term order is determined by its comparisons of disjoint pairs: a < b iff
(a - b) < (b - a).  The search fixes the witness comparisons a_i < b_i,
closes the relation under transitivity and translation by disjoint
monomials, then branches on undecided disjoint pairs until the relation is
total.  Any completion that keeps every a_i < b_i is noncoherent.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator

from .coherence import CancellationWitness, is_coherent
from .exterior import Monomial
from .oracle import monomials_of_degree
from .orders import TermOrder

log = logging.getLogger(__name__)

MAX_SEARCH_N = 7


class Contradiction(Exception):
    pass


class PartialOrder:
    """Strict order on bitmasks closed under transitivity and translation."""

    __slots__ = ("n", "full", "succ", "pred", "classes")

    def __init__(self, n: int):
        self.n = n
        self.full = (1 << n) - 1
        size = 1 << n
        self.succ = [0] * size
        self.pred = [0] * size
        self.classes: set[tuple[int, int]] = set()

    def copy(self) -> "PartialOrder":
        new = PartialOrder.__new__(PartialOrder)
        new.n, new.full = self.n, self.full
        new.succ = self.succ[:]
        new.pred = self.pred[:]
        new.classes = set(self.classes)
        return new

    def known(self, a: int, b: int) -> bool:
        return bool(self.succ[a] >> b & 1)

    def decided(self, a: int, b: int) -> bool:
        return bool(self.succ[a] >> b & 1 or self.succ[b] >> a & 1)

    def add(self, a: int, b: int) -> None:
        """Assert a < b with all consequences; raises Contradiction."""
        succ, pred, full = self.succ, self.pred, self.full
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            if succ[x] >> y & 1:
                continue
            if x == y or succ[y] >> x & 1:
                raise Contradiction((x, y))
            froms = pred[x] | (1 << x)
            tos = succ[y] | (1 << y)
            if froms & tos:
                raise Contradiction((x, y))
            f = froms
            while f:
                low = f & -f
                s = low.bit_length() - 1
                f ^= low
                new = tos & ~succ[s]
                if not new:
                    continue
                succ[s] |= new
                while new:
                    lt = new & -new
                    t = lt.bit_length() - 1
                    new ^= lt
                    pred[t] |= low
                    key = (s & ~t, t & ~s)
                    if key in self.classes:
                        continue
                    self.classes.add(key)
                    p, q = key
                    free = full ^ (p | q)
                    c = free
                    while True:
                        stack.append((p | c, q | c))
                        if c == 0:
                            break
                        c = (c - 1) & free

    def is_total(self) -> bool:
        size = 1 << self.n
        return all((self.succ[x] | self.pred[x]).bit_count() == size - 1 for x in range(size))

    def to_order(self) -> TermOrder:
        size = 1 << self.n
        listing = sorted(range(size), key=lambda x: self.pred[x].bit_count())
        return TermOrder(self.n, listing)


def disjoint_pairs(n: int) -> list[tuple[int, int]]:
    """Unordered pairs of nonempty disjoint monomials, small ones first."""
    full = (1 << n) - 1
    out = []
    for p in range(1, full + 1):
        for q in range(p + 1, full + 1):
            if not p & q:
                out.append((p, q))
    out.sort(key=lambda pq: (pq[0].bit_count() + pq[1].bit_count(), pq[1], pq[0]))
    return out


def base_order(n: int) -> PartialOrder:
    po = PartialOrder(n)
    for j in range(n):
        po.add(0, 1 << j)
    return po


@dataclass
class SearchStats:
    nodes: int = 0
    candidates: int = 0
    completions: int = 0


class _Budget(Exception):
    pass


def extend_to_orders(
    po: PartialOrder, budget: int, stats: SearchStats, prefer=None
) -> Iterator[TermOrder]:
    """Depth-first completions of ``po``; each branch attempt costs one node.

    ``prefer(p, q)`` says whether to try p < q before q < p (default: the
    lighter monomial under weights 1, 2, ..., n first).
    """
    n = po.n
    pairs = disjoint_pairs(n)
    if prefer is None:
        wt = [sum(j + 1 for j in range(n) if b >> j & 1) for b in range(1 << n)]

        def prefer(p: int, q: int) -> bool:
            return (wt[p], p) < (wt[q], q)

    def rec(state: PartialOrder, start: int) -> Iterator[TermOrder]:
        i = start
        while i < len(pairs) and state.decided(*pairs[i]):
            i += 1
        if i == len(pairs):
            yield state.to_order()
            return
        p, q = pairs[i]
        first = (p, q) if prefer(p, q) else (q, p)
        for lo, hi in (first, first[::-1]):
            if stats.nodes >= budget:
                raise _Budget
            stats.nodes += 1
            child = state.copy()
            try:
                child.add(lo, hi)
            except Contradiction:
                continue
            yield from rec(child, i + 1)

    yield from rec(po, 0)


def candidate_witnesses(n: int, degree: int, n_max: int) -> Iterator[CancellationWitness]:
    """Balanced pairs of distinct degree-``degree`` monomials, N = 2..n_max.

    Order: by N, then the lower side A (lexicographic on bitmasks), then the
    upper side B, then the matching of B to the sorted A.  Each unordered
    pair list appears once.
    """
    monos = monomials_of_degree(n, degree)

    def vec(ms: Iterable[int]) -> tuple[int, ...]:
        return tuple(sum(m >> j & 1 for m in ms) for j in range(n))

    for N in range(2, n_max + 1):
        if 2 * N > len(monos):
            break
        for A in itertools.combinations(monos, N):
            target = vec(A)
            rest = [m for m in monos if m not in A]
            for B in itertools.combinations(rest, N):
                if vec(B) != target:
                    continue
                for perm in itertools.permutations(B):
                    yield CancellationWitness(
                        tuple((Monomial(a, n), Monomial(b, n)) for a, b in zip(A, perm))
                    )


def _canonical(wit: CancellationWitness) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((a.bits, b.bits) for a, b in wit.pairs))


def search_qualifying_order(
    n: int,
    n_max: int,
    degree: int,
    budget: int,
    first: CancellationWitness | None = None,
    stats: SearchStats | None = None,
    prefer=None,
) -> tuple[TermOrder, CancellationWitness] | None:
    """First noncoherent order found for the first workable witness, or None.

    ``budget`` caps the total number of branch nodes across all candidates.
    """
    if n > MAX_SEARCH_N:
        raise ValueError(f"search is limited to n <= {MAX_SEARCH_N}")
    stats = stats if stats is not None else SearchStats()
    if budget <= 0:
        return None
    seen: set[tuple[tuple[int, int], ...]] = set()

    def candidates() -> Iterator[CancellationWitness]:
        if first is not None:
            if first.n != n:
                raise ValueError("seed witness lives in a different algebra")
            yield first
        yield from candidate_witnesses(n, degree, n_max)

    try:
        for wit in candidates():
            key = _canonical(wit)
            if key in seen:
                continue
            seen.add(key)
            stats.candidates += 1
            po = base_order(n)
            try:
                for a, b in wit.pairs:
                    po.add(a.bits, b.bits)
            except Contradiction:
                continue
            for order in extend_to_orders(po, budget, stats, prefer):
                stats.completions += 1
                if not is_coherent(order).coherent:
                    log.info("found order after %d nodes, %d candidates", stats.nodes, stats.candidates)
                    return order, wit
    except _Budget:
        log.info("budget of %d nodes exhausted", budget)
    return None
