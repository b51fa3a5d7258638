"""Exact arithmetic in the exterior algebra on x1..xn over the rationals.

Monomials are square-free, so they are stored as bitmasks: bit ``i - 1`` set
means ``x_i`` occurs.  The bitmask, read as a binary number with x1 as the
least significant digit, is also the canonical printing order of terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

MAX_N = 64

Rational = Union[int, Fraction]


class ParseError(ValueError):
    """Raised on malformed polynomial or monomial text."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_N:
        raise ValueError(f"algebra order must be an integer in 1..{MAX_N}, got {n!r}")


@dataclass(frozen=True, slots=True)
class Monomial:
    """A square-free monomial x^a of the exterior algebra of order ``n``."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"monomial bits {self.bits:#x} out of range for n={self.n}")

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls(0, n)

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "Monomial":
        bits = 0
        for i in indices:
            if not 1 <= i <= n:
                raise ValueError(f"variable index {i} outside 1..{n}")
            if bits >> (i - 1) & 1:
                raise ValueError(f"repeated variable index {i}")
            bits |= 1 << (i - 1)
        return cls(bits, n)

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Monomial":
        exps = list(exponents)
        if any(e not in (0, 1) for e in exps):
            raise ValueError("exponents must be 0 or 1")
        return cls(sum(1 << i for i, e in enumerate(exps) if e), len(exps))

    @property
    def degree(self) -> int:
        return self.bits.bit_count()

    @property
    def indices(self) -> tuple[int, ...]:
        return bit_indices(self.bits)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def is_one(self) -> bool:
        return self.bits == 0

    def complement(self) -> "Monomial":
        return Monomial(((1 << self.n) - 1) ^ self.bits, self.n)

    def __str__(self) -> str:
        return format_monomial_bits(self.bits)

    def __repr__(self) -> str:
        return f"Monomial({self}, n={self.n})"


def bit_indices(bits: int) -> tuple[int, ...]:
    """1-based variable indices present in ``bits``, ascending."""
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def format_monomial_bits(bits: int) -> str:
    if bits == 0:
        return "1"
    return "".join(f"x{i}" for i in bit_indices(bits))


@lru_cache(maxsize=1 << 16)
def sign_bits(a: int, b: int) -> int:
    """Sign picked up when x^a x^b (disjoint) is sorted into ascending form.

    Parity of the inversion count |{(i, j): i in a, j in b, i > j}|.
    """
    inv = 0
    while b:
        low = b & -b
        inv += (a >> low.bit_length()).bit_count()
        b ^= low
    return -1 if inv & 1 else 1


def merge_sign(a: Monomial, b: Monomial) -> int:
    if a.n != b.n:
        raise ValueError(f"monomials from different algebras (n={a.n} vs n={b.n})")
    if a.bits & b.bits:
        raise ValueError(f"merge_sign needs disjoint supports, got {a} and {b}")
    return sign_bits(a.bits, b.bits)


@dataclass(frozen=True, slots=True)
class Term:
    coeff: Fraction
    mono: Monomial

    def __post_init__(self) -> None:
        if self.coeff == 0:
            raise ValueError("term coefficient must be nonzero")


def mul_monomials(a: Monomial, b: Monomial) -> Term | None:
    """x^a * x^b: ``None`` when the supports overlap (x_i^2 = 0)."""
    if a.n != b.n:
        raise ValueError(f"monomials from different algebras (n={a.n} vs n={b.n})")
    if a.bits & b.bits:
        return None
    return Term(Fraction(sign_bits(a.bits, b.bits)), Monomial(a.bits | b.bits, a.n))


class ExteriorPolynomial:
    """Element of the exterior algebra: a finite map monomial -> nonzero rational.

    Immutable once built. ``terms`` is keyed by monomial bitmask.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, Rational] | None = None):
        _check_n(n)
        clean: dict[int, Fraction] = {}
        for bits, c in (terms or {}).items():
            if bits < 0 or bits >> n:
                raise ValueError(f"monomial bits {bits:#x} out of range for n={n}")
            c = Fraction(c)
            if c:
                clean[bits] = c
        self.n = n
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, n: int, terms: dict[int, Fraction]) -> "ExteriorPolynomial":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "ExteriorPolynomial":
        return cls._wrap(n, {})

    @classmethod
    def monomial(cls, m: Monomial, coeff: Rational = 1) -> "ExteriorPolynomial":
        return cls(m.n, {m.bits: coeff})

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in canonical (ascending bitmask) order."""
        for bits in sorted(self._terms):
            yield Monomial(bits, self.n), self._terms[bits]

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.items()]

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m.bits, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({b.bit_count() for b in self._terms}) <= 1

    def degree(self) -> int | None:
        """Common degree of a nonzero homogeneous polynomial, else ``None``."""
        degs = {b.bit_count() for b in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExteriorPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: "ExteriorPolynomial") -> "ExteriorPolynomial":
        return add(self, other)

    def __sub__(self, other: "ExteriorPolynomial") -> "ExteriorPolynomial":
        return add(self, scale(-1, other))

    def __neg__(self) -> "ExteriorPolynomial":
        return scale(-1, self)

    def __rmul__(self, q: Rational) -> "ExteriorPolynomial":
        if isinstance(q, (int, Fraction)):
            return scale(q, self)
        return NotImplemented

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"ExteriorPolynomial({format_poly(self)!r}, n={self.n})"


def _same_n(f: ExteriorPolynomial, g: ExteriorPolynomial) -> None:
    if f.n != g.n:
        raise ValueError(f"polynomials from different algebras (n={f.n} vs n={g.n})")


def add(f: ExteriorPolynomial, g: ExteriorPolynomial) -> ExteriorPolynomial:
    _same_n(f, g)
    out = dict(f._terms)
    for bits, c in g._terms.items():
        s = out.get(bits, 0) + c
        if s:
            out[bits] = s
        else:
            out.pop(bits, None)
    return ExteriorPolynomial._wrap(f.n, out)


def scale(q: Rational, f: ExteriorPolynomial) -> ExteriorPolynomial:
    q = Fraction(q)
    if not q:
        return ExteriorPolynomial.zero(f.n)
    return ExteriorPolynomial._wrap(f.n, {b: q * c for b, c in f._terms.items()})


def mul_bits_terms(c: int, terms: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Left-multiply a term map by the monomial with bitmask ``c``."""
    out = {}
    for bits, coeff in terms.items():
        if not bits & c:
            out[bits | c] = coeff if sign_bits(c, bits) > 0 else -coeff
    return out


def mul_monomial_poly(c: Monomial, f: ExteriorPolynomial) -> ExteriorPolynomial:
    """x^c * f."""
    if c.n != f.n:
        raise ValueError(f"monomial and polynomial from different algebras (n={c.n} vs n={f.n})")
    return ExteriorPolynomial._wrap(f.n, mul_bits_terms(c.bits, f._terms))


def mul(f: ExteriorPolynomial, g: ExteriorPolynomial) -> ExteriorPolynomial:
    """Full product f * g."""
    _same_n(f, g)
    out: dict[int, Fraction] = {}
    for a, ca in f._terms.items():
        for b, cb in g._terms.items():
            if a & b:
                continue
            key = a | b
            s = out.get(key, 0) + sign_bits(a, b) * ca * cb
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return ExteriorPolynomial._wrap(f.n, out)


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<idx>\d+))|(?P<num>\d+(?:/\d+)?)|(?P<op>[+-]))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            # report the first non-space character
            bad = pos + len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise ParseError(f"unexpected character {stripped[bad]!r}", text, bad)
        start = m.end() - len(m.group(0).lstrip())
        if m.group("var"):
            toks.append(("var", m.group("idx"), start))
        elif m.group("num"):
            toks.append(("num", m.group("num"), start))
        else:
            toks.append(("op", m.group("op"), start))
        pos = m.end()
    return toks


def _parse_monomial_tokens(toks, i, n, text) -> tuple[int, int]:
    bits = 0
    last = 0
    while i < len(toks) and toks[i][0] == "var":
        idx = int(toks[i][1])
        if not 1 <= idx <= n:
            raise ParseError(f"variable index {idx} outside 1..{n}", text, toks[i][2])
        if idx <= last:
            raise ParseError("variable indices must be strictly increasing", text, toks[i][2])
        bits |= 1 << (idx - 1)
        last = idx
        i += 1
    return bits, i


def parse_poly(text: str, n: int) -> ExteriorPolynomial:
    """Parse ``term (("+"|"-") term)*`` with ``term := [rational] monomial``."""
    _check_n(n)
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty polynomial", text, 0)
    out: dict[int, Fraction] = {}
    i = 0
    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] == "op":
            if toks[i][1] == "-":
                sign = -1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-'", text, toks[i][2])
        first = False
        if i >= len(toks):
            raise ParseError("dangling operator", text, len(text))
        coeff = Fraction(1)
        kind, val, pos = toks[i]
        if kind == "num":
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", text, pos)
            coeff = Fraction(int(num), int(den) if den else 1)
            i += 1
            if i < len(toks) and toks[i][0] == "var":
                bits, i = _parse_monomial_tokens(toks, i, n, text)
            else:
                bits = 0
        elif kind == "var":
            bits, i = _parse_monomial_tokens(toks, i, n, text)
        else:
            raise ParseError("expected a term", text, pos)
        s = out.get(bits, 0) + sign * coeff
        if s:
            out[bits] = s
        else:
            out.pop(bits, None)
    return ExteriorPolynomial._wrap(n, out)


def parse_monomial(text: str, n: int) -> Monomial:
    """Parse ``"1"`` or ``x<i>x<j>...`` with strictly increasing indices."""
    toks = _tokens(text)
    if len(toks) == 1 and toks[0][:2] == ("num", "1"):
        return Monomial.one(n)
    if not toks or toks[0][0] != "var":
        raise ParseError(f"not a monomial: {text.strip()!r}", text, 0)
    bits, i = _parse_monomial_tokens(toks, 0, n, text)
    if i != len(toks):
        raise ParseError("trailing input after monomial", text, toks[i][2])
    return Monomial(bits, n)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: ExteriorPolynomial) -> str:
    if not f._terms:
        return "0"
    parts = []
    for k, bits in enumerate(sorted(f._terms)):
        c = f._terms[bits]
        mag = abs(c)
        if bits == 0:
            body = _format_coeff(mag)
        elif mag == 1:
            body = format_monomial_bits(bits)
        else:
            body = f"{_format_coeff(mag)} {format_monomial_bits(bits)}"
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
