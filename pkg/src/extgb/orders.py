"""Term orders on the square-free monomials of the exterior algebra.

A :class:`TermOrder` is stored densely as a rank table over all ``2**n``
bitmasks.  Orders come from positive weight vectors (coherent by
construction), from full explicit listings, or from a self-dual prefix.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exterior import Monomial, Rational, _check_n, format_monomial_bits

MAX_TABLE_N = 24


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class OrderError(ValueError):
    """A listing that cannot be turned into a total order."""


class TermOrder:
    """Total order on M_n given by ranks; rank 0 is the minimum."""

    __slots__ = ("n", "listing", "rank")

    def __init__(self, n: int, listing: Sequence[int]):
        _check_n(n)
        if n > MAX_TABLE_N:
            raise ValueError(f"table orders are limited to n <= {MAX_TABLE_N}")
        size = 1 << n
        if len(listing) != size:
            raise OrderError(f"listing has {len(listing)} monomials, expected {size}")
        rank = [-1] * size
        for r, bits in enumerate(listing):
            if not 0 <= bits < size:
                raise OrderError(f"monomial bits {bits:#x} out of range for n={n}")
            if rank[bits] != -1:
                raise OrderError(f"duplicate monomial {format_monomial_bits(bits)}")
            rank[bits] = r
        self.n = n
        self.listing = tuple(listing)
        self.rank = tuple(rank)

    @classmethod
    def from_monomials(cls, monomials: Sequence[Monomial]) -> "TermOrder":
        if not monomials:
            raise OrderError("empty listing")
        n = monomials[0].n
        if any(m.n != n for m in monomials):
            raise OrderError("listing mixes algebras of different order")
        return cls(n, [m.bits for m in monomials])

    def compare(self, a: Monomial, b: Monomial) -> Cmp:
        if a.n != self.n or b.n != self.n:
            raise ValueError("monomial does not belong to this order's algebra")
        ra, rb = self.rank[a.bits], self.rank[b.bits]
        return Cmp.LESS if ra < rb else Cmp.GREATER if ra > rb else Cmp.EQUAL

    def less(self, a: int, b: int) -> bool:
        """Bitmask comparison, no checks."""
        return self.rank[a] < self.rank[b]

    def rank_of(self, m: Monomial) -> int:
        return self.rank[m.bits]

    def monomials(self) -> list[Monomial]:
        return [Monomial(b, self.n) for b in self.listing]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TermOrder):
            return NotImplemented
        return self.n == other.n and self.listing == other.listing

    def __hash__(self) -> int:
        return hash((self.n, self.listing))

    def __repr__(self) -> str:
        head = " < ".join(format_monomial_bits(b) for b in self.listing[:6])
        return f"TermOrder(n={self.n}: {head} < ...)"


def binary_order(n: int) -> TermOrder:
    """rank(m) = binary value of the exponent vector (x1 least significant)."""
    return TermOrder(n, range(1 << n))


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ws = tuple(Fraction(w) for w in self.weights)
        if not ws:
            raise ValueError("empty weight vector")
        for j, w in enumerate(ws, 1):
            if w <= 0:
                raise ValueError(f"weight w{j} = {w} is not strictly positive")
        object.__setattr__(self, "weights", ws)

    @property
    def n(self) -> int:
        return len(self.weights)

    def dot_bits(self, bits: int) -> Fraction:
        return sum((w for j, w in enumerate(self.weights) if bits >> j & 1), Fraction(0))

    def dot(self, vec: Sequence[int]) -> Fraction:
        return sum((w * v for w, v in zip(self.weights, vec)), Fraction(0))

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


def weights(values: Iterable[Rational]) -> WeightVector:
    return WeightVector(tuple(Fraction(v) for v in values))


def from_weights(w: WeightVector | Sequence[Rational]) -> TermOrder:
    """a < b iff w.a < w.b; ties by ascending bitmask (translation invariant)."""
    if not isinstance(w, WeightVector):
        w = weights(w)
    n = w.n
    key = [w.dot_bits(b) for b in range(1 << n)]
    return TermOrder(n, sorted(range(1 << n), key=lambda b: (key[b], b)))


def random_weights(n: int, rng: random.Random, hi: int = 1000) -> WeightVector:
    """Strictly positive rationals p/q with 1 <= p, q <= hi."""
    return WeightVector(tuple(Fraction(rng.randint(1, hi), rng.randint(1, hi)) for _ in range(n)))


def complete_self_dual(prefix: Sequence[Monomial]) -> TermOrder:
    """Extend a prefix listing to the full order with rank(1-m) = 2^n - 1 - rank(m)."""
    if not prefix:
        raise OrderError("empty prefix")
    n = prefix[0].n
    if any(m.n != n for m in prefix):
        raise OrderError("prefix mixes algebras of different order")
    size = 1 << n
    full = size - 1
    if len(prefix) > size:
        raise OrderError(f"prefix longer than {size} monomials")
    slots: list[int | None] = [None] * size
    seen: dict[int, int] = {}
    for r, m in enumerate(prefix):
        if m.bits in seen:
            raise OrderError(f"duplicate monomial {m} at ranks {seen[m.bits]} and {r}")
        seen[m.bits] = r
        slots[r] = m.bits
    for r, m in enumerate(prefix):
        dual_rank, dual = full - r, full ^ m.bits
        cur = slots[dual_rank]
        if cur is None:
            if dual in seen and seen[dual] != dual_rank:
                raise OrderError(
                    f"self-duality conflict: {m} at rank {r} forces {format_monomial_bits(dual)} "
                    f"to rank {dual_rank}, but it is listed at rank {seen[dual]}"
                )
            slots[dual_rank] = dual
            seen[dual] = dual_rank
        elif cur != dual:
            raise OrderError(
                f"self-duality conflict: {m} at rank {r} and {format_monomial_bits(cur)} "
                f"at rank {dual_rank} are not complementary"
            )
    missing = [r for r, b in enumerate(slots) if b is None]
    if missing:
        raise OrderError(f"prefix too short: ranks {missing[0]}..{missing[-1]} undetermined")
    return TermOrder(n, slots)  # type: ignore[arg-type]


@dataclass
class AxiomReport:
    valid: bool
    violations: list[tuple[str, tuple[Monomial, ...]]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate_axioms(
    o: TermOrder,
    sample: int | None = None,
    seed: int = 0,
    max_violations: int | None = None,
) -> AxiomReport:
    """Check 1 is minimal and a < b  =>  a+c < b+c for every c disjoint from a, b.

    Exhaustive by default: for each c the monomials disjoint from c, in rank
    order, must stay in rank order after multiplying by c.  Every offending
    pair is reported as ``("ii", (a, b, c))`` with a < b but b+c < a+c.
    With ``sample`` set, that many random triples are checked instead.
    """
    n, rank = o.n, o.rank
    full = (1 << n) - 1
    violations: list[tuple[str, tuple[Monomial, ...]]] = []

    def mono(b: int) -> Monomial:
        return Monomial(b, n)

    if rank[0] != 0:
        violations.append(("i", (mono(o.listing[0]),)))

    def full_up() -> bool:
        return max_violations is not None and len(violations) >= max_violations

    if sample is None:
        for c in range(1, full + 1):
            seq = [b for b in o.listing if not b & c]
            shifted = [rank[b | c] for b in seq]
            if all(x < y for x, y in zip(shifted, shifted[1:])):
                continue
            for i in range(len(seq)):
                ri = shifted[i]
                for j in range(i + 1, len(seq)):
                    if shifted[j] < ri:
                        violations.append(("ii", (mono(seq[i]), mono(seq[j]), mono(c))))
                        if full_up():
                            return AxiomReport(False, violations)
    else:
        rng = random.Random(seed)
        for _ in range(sample):
            c = rng.randint(1, full)
            free = full ^ c
            a, b = rng.randint(0, full) & free, rng.randint(0, full) & free
            if a == b:
                continue
            if rank[a] > rank[b]:
                a, b = b, a
            if rank[a | c] > rank[b | c]:
                violations.append(("ii", (mono(a), mono(b), mono(c))))
                if full_up():
                    break
    return AxiomReport(not violations, violations)


def covering_pairs(o: TermOrder) -> list[tuple[int, int]]:
    """Bitmask pairs (a, b) of consecutive rank, in rank order."""
    return list(zip(o.listing, o.listing[1:]))


def difference_vector(a: int, b: int, n: int) -> tuple[int, ...]:
    """Exponent vector of b minus that of a."""
    return tuple(((b >> j) & 1) - ((a >> j) & 1) for j in range(n))


def covering_differences(o: TermOrder) -> list[tuple[int, ...]]:
    return [difference_vector(a, b, o.n) for a, b in covering_pairs(o)]
