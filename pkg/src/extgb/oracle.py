"""Independent membership oracle: exact row reduction per graded component.

For a homogeneous ideal, the degree-d part I_d is spanned by x^c * g over
generators g and monomials c with deg c + deg g = d.  No term order is
involved, so this cross-checks Gröbner reduction.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exterior import ExteriorPolynomial, mul_bits_terms
from .groebner import IdealSpec


def monomials_of_degree(n: int, d: int) -> list[int]:
    return sorted(sum(1 << i for i in c) for c in combinations(range(n), d))


class GradedComponent:
    """Row-echelon basis of I_d, rows keyed by pivot monomial."""

    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d
        self.rows: dict[int, dict[int, Fraction]] = {}

    def _eliminate(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        vec = dict(vec)
        # pivots are the largest bitmask in each row; clear from the top down
        while vec:
            top = max(vec)
            row = self.rows.get(top)
            if row is None:
                return vec
            f = vec[top]
            for b, c in row.items():
                v = vec.get(b, 0) - f * c
                if v:
                    vec[b] = v
                else:
                    vec.pop(b, None)
        return vec

    def insert(self, vec: dict[int, Fraction]) -> bool:
        r = self._eliminate(vec)
        if not r:
            return False
        top = max(r)
        c0 = r[top]
        self.rows[top] = {b: c / c0 for b, c in r.items()}
        return True

    def contains(self, vec: dict[int, Fraction]) -> bool:
        return not self._eliminate(vec)

    @property
    def dim(self) -> int:
        return len(self.rows)


def graded_components(spec: IdealSpec) -> dict[int, GradedComponent]:
    n = spec.n
    comps = {d: GradedComponent(n, d) for d in range(n + 1)}
    for g in spec.generators:
        if not g:
            continue
        dg = g.degree()
        for d in range(dg, n + 1):
            for c in monomials_of_degree(n, d - dg):
                t = mul_bits_terms(c, g.terms)
                if t:
                    comps[d].insert(t)
    return comps


def is_member(f: ExteriorPolynomial, comps: dict[int, GradedComponent]) -> bool:
    """Membership of an arbitrary (possibly inhomogeneous) polynomial."""
    by_degree: dict[int, dict[int, Fraction]] = {}
    for b, c in f.terms.items():
        by_degree.setdefault(b.bit_count(), {})[b] = c
    return all(comps[d].contains(v) for d, v in by_degree.items())


def ideal_dimensions(spec: IdealSpec) -> dict[int, int]:
    return {d: comp.dim for d, comp in graded_components(spec).items()}
