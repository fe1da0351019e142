"""Coloring enumeration and the untwisted/twisted state sums.

A coloring assigns to every canonically directed edge an arrow of the
parcel typed by the stratum dimensions of its endpoints, so that for
every triangle the two short arrows compose to the long one.  The
untwisted invariant counts colorings; the twisted invariant weights each
coloring by a product of cocycle values over the tetrahedra.  All
arithmetic is exact: rationals for the untwisted sum, integer vectors of
root-of-unity coefficients with an explicit denominator for the twisted
sum.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cocycle import CycValue, PartialCocycle
from .parcel import Arrow, Parcel
from .stratified_complex import (
    DirectedEdge,
    StratifiedTriangulation,
    edge_direction,
    epsilon,
    longest_path,
    reorder_vertices,
)

__all__ = [
    "CyclotomicSum",
    "enumerate_colorings",
    "count_colorings",
    "untwisted_invariant",
    "weight",
    "twisted_invariant",
    "reorder_vertices",
]


@dataclass(frozen=True)
class CyclotomicSum:
    """sum_i coeffs[i] * zeta_order**i, divided by denominator.

    Stored unreduced in the group ring of Z/order; equality is decided by
    cross-multiplying denominators, never by division."""

    order: int
    coeffs: tuple
    denominator: int

    def __post_init__(self):
        if len(self.coeffs) != self.order or self.denominator <= 0:
            raise ValueError("need one coefficient per exponent and a positive denominator")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclotomicSum) or self.order != other.order:
            return NotImplemented
        return tuple(c * other.denominator for c in self.coeffs) == tuple(
            c * self.denominator for c in other.coeffs
        )

    def __hash__(self):
        from math import gcd

        g = gcd(self.denominator, *self.coeffs) if any(self.coeffs) else self.denominator
        return hash((self.order, tuple(c // g for c in self.coeffs), self.denominator // g))

    @property
    def approx(self) -> complex:
        zeta = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * zeta**i for i, c in enumerate(self.coeffs)) / self.denominator

    def as_rational(self) -> Fraction:
        """The exact value when only the zeta^0 coefficient is nonzero."""
        if any(self.coeffs[1:]):
            raise ValueError("value is not manifestly rational")
        return Fraction(self.coeffs[0], self.denominator)

    def __str__(self) -> str:
        inner = ",".join(str(c) for c in self.coeffs)
        return f"({self.order}; {inner})/{self.denominator}"


def _triangle_roles(t: StratifiedTriangulation, tri):
    """Order a triangle's vertices x0 -> x1 -> x2 along the canonical edge
    directions; returns the directed edges (short, short, long)."""
    heads = [edge_direction(t, pair).head for pair in itertools.combinations(sorted(tri), 2)]
    sink = max(set(heads), key=heads.count)
    tails = [v for v in tri if v != sink]
    mid = edge_direction(t, tails).head
    x0 = next(v for v in tri if v not in (mid, sink))
    return DirectedEdge(x0, mid), DirectedEdge(mid, sink), DirectedEdge(x0, sink)


class _Search:
    """Shared preparation for the backtracking enumeration: the fixed edge
    order, per-position triangle constraints, and per-position tetrahedron
    weight attachments."""

    def __init__(self, t: StratifiedTriangulation, p: Parcel, a: PartialCocycle | None):
        self.t, self.p, self.alpha = t, p, a
        self.edges = sorted(
            (edge_direction(t, e) for e in t.edge_set),
            key=lambda d: (min(t.dims[d.tail], t.dims[d.head]), tuple(sorted(d))),
        )
        pos = {e: q for q, e in enumerate(self.edges)}
        self.typing = [(t.dims[e.tail], t.dims[e.head]) for e in self.edges]

        # constraints[q] = (role, q_other1, q_other2, chain); role is which
        # slot of compose(e1, e2) = e3 the edge at q fills.
        self.constraints: list = [[] for _ in self.edges]
        self.solve_left: dict = {}
        self.solve_right: dict = {}
        for tri in t.triangle_tets:
            e1, e2, e3 = _triangle_roles(t, tri)
            chain = (t.dims[e1.tail], t.dims[e1.head], t.dims[e2.head])
            q1, q2, q3 = pos[e1], pos[e2], pos[e3]
            last = max(q1, q2, q3)
            if last == q3:
                self.constraints[last].append(("e3", q1, q2, chain))
            elif last == q2:
                self.constraints[last].append(("e2", q1, q3, chain))
                self._index_right(chain)
            else:
                self.constraints[last].append(("e1", q2, q3, chain))
                self._index_left(chain)

        # attachments[q] = list of (eps, q1, q2, q3) for tetrahedra whose
        # longest-path edges are all assigned once position q is set.
        self.attachments: list = [[] for _ in self.edges]
        for tet in t.tetrahedra:
            v0, v1, v2, v3 = longest_path(t, tet)
            qs = (pos[DirectedEdge(v0, v1)], pos[DirectedEdge(v1, v2)], pos[DirectedEdge(v2, v3)])
            self.attachments[max(qs)].append((epsilon(t, tet), *qs))

    def _index_left(self, chain):
        # x with table[x][b] == c, per (b, c)
        if chain in self.solve_left:
            return
        table = self.p.tables[chain]
        i, j, k = chain
        sols = [[[] for _ in range(self.p.hom_sizes[(i, k)])] for _ in range(self.p.hom_sizes[(j, k)])]
        for x, row in enumerate(table):
            for b, c in enumerate(row):
                sols[b][c].append(Arrow(i, j, x))
        self.solve_left[chain] = sols

    def _index_right(self, chain):
        # x with table[a][x] == c, per (a, c)
        if chain in self.solve_right:
            return
        table = self.p.tables[chain]
        i, j, k = chain
        sols = [[[] for _ in range(self.p.hom_sizes[(i, k)])] for _ in range(self.p.hom_sizes[(i, j)])]
        for a, row in enumerate(table):
            for x, c in enumerate(row):
                sols[a][c].append(Arrow(j, k, x))
        self.solve_right[chain] = sols

    def candidates(self, q: int, chosen: list):
        """Arrows allowed at position q given the earlier assignments."""
        i, j = self.typing[q]
        cands = None
        for role, qa, qb, chain in self.constraints[q]:
            if role == "e3":
                forced = self.p.compose(chosen[qa], chosen[qb])
                new = (forced,)
            elif role == "e2":
                new = self.solve_right[chain][chosen[qa].idx][chosen[qb].idx]
            else:
                new = self.solve_left[chain][chosen[qa].idx][chosen[qb].idx]
            if cands is None:
                cands = new
            else:
                cands = [x for x in cands if x in set(new)]
            if not cands:
                return ()
        if cands is None:
            return tuple(self.p.arrows(i, j))
        return tuple(cands)

    def tet_exponent(self, q: int, chosen: list) -> int:
        total = 0
        for eps, q1, q2, q3 in self.attachments[q]:
            e = self.alpha.table[(chosen[q1], chosen[q2], chosen[q3])]
            total += eps * e
        return total

    def run(self):
        """Yields (coloring list, weight exponent) leaves."""
        m = len(self.edges)
        chosen: list = [None] * m
        n_alpha = self.alpha.order if self.alpha else 1

        def rec(q, exp):
            if q == m:
                yield chosen, exp
                return
            for arrow in self.candidates(q, chosen):
                chosen[q] = arrow
                e2 = exp
                if self.alpha is not None:
                    e2 = (exp + self.tet_exponent(q, chosen)) % n_alpha
                yield from rec(q + 1, e2)
            chosen[q] = None

        yield from rec(0, 0)


def enumerate_colorings(t: StratifiedTriangulation, p: Parcel):
    """Yields every coloring exactly once, as a dict from canonical
    directed edges to arrows, in a deterministic order."""
    search = _Search(t, p, None)
    for chosen, _ in search.run():
        yield dict(zip(search.edges, chosen))


def count_colorings(t: StratifiedTriangulation, p: Parcel) -> int:
    return sum(1 for _ in _Search(t, p, None).run())


def _denominator(t: StratifiedTriangulation, p: Parcel) -> int:
    counts = t.stratum_counts()
    d = 1
    for i in (1, 2, 3):
        d *= p.hom_sizes[(i, i)] ** counts[i]
    return d


def untwisted_invariant(t: StratifiedTriangulation, p: Parcel) -> Fraction:
    return Fraction(count_colorings(t, p), _denominator(t, p))


def weight(t: StratifiedTriangulation, coloring: dict, a: PartialCocycle) -> CycValue:
    """Product over tetrahedra of the cocycle value at the longest-path
    arrow triple, raised to the orientation sign."""
    total = 0
    for tet in t.tetrahedra:
        v0, v1, v2, v3 = longest_path(t, tet)
        triple = (
            coloring[DirectedEdge(v0, v1)],
            coloring[DirectedEdge(v1, v2)],
            coloring[DirectedEdge(v2, v3)],
        )
        total += epsilon(t, tet) * a.table[triple]
    return CycValue(a.order, total)


def twisted_invariant(
    t: StratifiedTriangulation, p: Parcel, a: PartialCocycle
) -> CyclotomicSum:
    if a.parcel is not p and a.parcel != p:
        raise ValueError("cocycle belongs to a different parcel")
    counts = [0] * a.order
    for _, exp in _Search(t, p, a).run():
        counts[exp] += 1
    return CyclotomicSum(a.order, tuple(counts), _denominator(t, p))
