"""Line-oriented file formats: orders, ideals, witnesses, monomial lists.

All files start with a header line ``n=<int>``.  Blank lines and lines
starting with ``#`` are ignored.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Iterable

from .coherence import CancellationWitness
from .exterior import ExteriorPolynomial, Monomial, ParseError, format_poly, parse_monomial, parse_poly
from .orders import OrderError, TermOrder, complete_self_dual

FIXTURES = ("example1.order", "example1.ideal", "example1.witness", "example1.initial")


class FormatError(ValueError):
    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((no, line))
    return out


def _header(lines: list[tuple[int, str]], path: str | None) -> tuple[int, list[tuple[int, str]]]:
    if not lines:
        raise FormatError("empty file", path)
    no, head = lines[0]
    key, _, val = head.replace(" ", "").partition("=")
    if key != "n" or not val.isdigit():
        raise FormatError(f"expected header 'n=<int>', got {head!r}", path, no)
    n = int(val)
    if not 1 <= n <= 64:
        raise FormatError(f"n={n} out of range", path, no)
    return n, lines[1:]


def _read(source: str | Path) -> tuple[str, str]:
    p = Path(source)
    return p.read_text(), str(p)


def parse_order(text: str, path: str | None = None) -> TermOrder:
    n, body = _header(_content_lines(text), path)
    self_dual = False
    if body and body[0][1] == "self-dual":
        self_dual = True
        body = body[1:]
    monos = []
    for no, line in body:
        try:
            monos.append(parse_monomial(line, n))
        except ParseError as e:
            raise FormatError(str(e), path, no) from e
    try:
        if self_dual:
            return complete_self_dual(monos)
        return TermOrder.from_monomials(monos) if monos else TermOrder(n, [])
    except OrderError as e:
        raise FormatError(str(e), path) from e


def read_order(source: str | Path) -> TermOrder:
    return parse_order(*_read(source))


def format_order(o: TermOrder, self_dual: bool = False) -> str:
    lines = [f"n={o.n}"]
    listing = o.monomials()
    if self_dual:
        lines.append("self-dual")
        listing = listing[: (1 << (o.n - 1)) + 1]
    lines.extend(str(m) for m in listing)
    return "\n".join(lines) + "\n"


def parse_ideal(text: str, path: str | None = None) -> tuple[int, list[ExteriorPolynomial]]:
    n, body = _header(_content_lines(text), path)
    gens = []
    for no, line in body:
        try:
            gens.append(parse_poly(line, n))
        except ParseError as e:
            raise FormatError(str(e), path, no) from e
    return n, gens


def read_ideal(source: str | Path) -> tuple[int, list[ExteriorPolynomial]]:
    return parse_ideal(*_read(source))


def format_ideal(n: int, gens: Iterable[ExteriorPolynomial]) -> str:
    return "\n".join([f"n={n}", *(format_poly(g) for g in gens)]) + "\n"


def parse_witness(text: str, path: str | None = None) -> CancellationWitness:
    n, body = _header(_content_lines(text), path)
    pairs = []
    for no, line in body:
        left, sep, right = line.partition("<")
        if not sep:
            raise FormatError("expected 'a-monomial < b-monomial'", path, no)
        try:
            pairs.append((parse_monomial(left, n), parse_monomial(right, n)))
        except ParseError as e:
            raise FormatError(str(e), path, no) from e
    if not pairs:
        raise FormatError("witness has no pairs", path)
    return CancellationWitness(tuple(pairs))


def read_witness(source: str | Path) -> CancellationWitness:
    return parse_witness(*_read(source))


def format_witness(wit: CancellationWitness) -> str:
    return "\n".join([f"n={wit.n}", *(f"{a} < {b}" for a, b in wit.pairs)]) + "\n"


def parse_monomial_list(text: str, path: str | None = None) -> tuple[int, list[Monomial]]:
    n, body = _header(_content_lines(text), path)
    out = []
    for no, line in body:
        try:
            out.append(parse_monomial(line, n))
        except ParseError as e:
            raise FormatError(str(e), path, no) from e
    return n, out


def read_monomial_list(source: str | Path) -> tuple[int, list[Monomial]]:
    return parse_monomial_list(*_read(source))


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return resources.files("extgb.data").joinpath(name).read_text()


def fixture_path(name: str):
    """Traversable for a bundled fixture (a real path for a normal install)."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return resources.files("extgb.data").joinpath(name)


def example1_order() -> TermOrder:
    return parse_order(fixture_text("example1.order"), "example1.order")


def example1_ideal() -> tuple[int, list[ExteriorPolynomial]]:
    return parse_ideal(fixture_text("example1.ideal"), "example1.ideal")


def example1_witness() -> CancellationWitness:
    return parse_witness(fixture_text("example1.witness"), "example1.witness")


def example1_initial() -> list[Monomial]:
    return parse_monomial_list(fixture_text("example1.initial"), "example1.initial")[1]
