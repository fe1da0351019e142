"""Root-of-unity coefficients on a parcel.

Coefficient values are N-th roots of unity stored as exponents mod N, so
all identities are checked with exact integer arithmetic.  A partial
cocycle is defined only on composable arrow triples whose last arrow
ends at object 3 and does not start at object 1; those are exactly the
triples that can label a tetrahedron's longest path.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

from .groups import cyclic_table
from .parcel import OBJECTS, Arrow, Parcel
from .validation import ValidationReport


@dataclass(frozen=True)
class CycValue:
    """The root of unity zeta_order ** exponent."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def __mul__(self, other: "CycValue") -> "CycValue":
        if self.order != other.order:
            raise ValueError("mismatched orders")
        return CycValue(self.order, self.exponent + other.exponent)

    def inverse(self) -> "CycValue":
        return CycValue(self.order, -self.exponent)

    @property
    def approx(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.exponent / self.order)


def object_chains(length: int):
    return itertools.combinations_with_replacement(OBJECTS, length)


def composable_triples(p: Parcel):
    for i, j, k, l in object_chains(4):
        yield from itertools.product(p.arrows(i, j), p.arrows(j, k), p.arrows(k, l))


def admissible_triples(p: Parcel):
    """Triples (f, g, h) with fgh defined, t(h) = 3 and s(h) != 1."""
    for i, j, k in object_chains(3):
        if k >= 2:
            yield from itertools.product(p.arrows(i, j), p.arrows(j, k), p.arrows(k, 3))


@dataclass(eq=True)
class PartialCocycle:
    parcel: Parcel
    order: int
    table: dict  # (f, g, h) -> exponent mod order

    def exponent(self, f: Arrow, g: Arrow, h: Arrow) -> int:
        return self.table[(f, g, h)]

    def value(self, f: Arrow, g: Arrow, h: Arrow) -> CycValue:
        return CycValue(self.order, self.table[(f, g, h)])


@dataclass(eq=True)
class FullCocycle:
    parcel: Parcel
    order: int
    table: dict  # all composable (f, g, h) -> exponent mod order

    def exponent(self, f: Arrow, g: Arrow, h: Arrow) -> int:
        return self.table[(f, g, h)]


def trivial_partial_cocycle(p: Parcel, order: int = 1) -> PartialCocycle:
    return PartialCocycle(p, order, {triple: 0 for triple in admissible_triples(p)})


def check_domain(a: PartialCocycle) -> ValidationReport:
    """The table must cover the admissible triples exactly."""
    rep = ValidationReport()
    want = set(admissible_triples(a.parcel))
    have = set(a.table)
    for triple in sorted(want - have):
        rep.add("missing-entry", f"no value for {triple}")
    for triple in sorted(have - want):
        rep.add("extra-entry", f"value outside the admissible domain: {triple}")
    return rep


def check_condition_1(a: PartialCocycle) -> ValidationReport:
    """Pentagon identity on quadruples (f, g, h, k) with k an endomorphism
    of 3 and the middle object >= 2."""
    p, n = a.parcel, a.order
    rep = ValidationReport()
    for i, j, m in object_chains(3):
        if m < 2:
            continue
        for f, g, h in itertools.product(p.arrows(i, j), p.arrows(j, m), p.arrows(m, 3)):
            for k in p.arrows(3, 3):
                total = (
                    a.table[(g, h, k)]
                    - a.table[(p.compose(f, g), h, k)]
                    + a.table[(f, p.compose(g, h), k)]
                    - a.table[(f, g, p.compose(h, k))]
                    + a.table[(f, g, h)]
                ) % n
                if total:
                    rep.add("condition-1", f"quadruple {(f, g, h, k)} gives exponent {total}")
    return rep


def _cond2_exponent(a: PartialCocycle, x, b, c, d) -> int:
    p = a.parcel
    return (
        a.table[(x, p.compose(b, c), d)]
        + a.table[(b, c, d)]
        - a.table[(x, b, p.compose(c, d))]
        - a.table[(p.compose(x, b), c, d)]
    ) % a.order


def check_condition_2(a: PartialCocycle) -> ValidationReport:
    """For composable (a0, b, c) ending at object 2, the four-factor
    combination with a final arrow d into 3 must not depend on d."""
    p = a.parcel
    rep = ValidationReport()
    for i, j in ((1, 1), (1, 2), (2, 2)):
        for a0, b, c in itertools.product(p.arrows(i, j), p.arrows(j, 2), p.arrows(2, 2)):
            exps = {d: _cond2_exponent(a, a0, b, c, d) for d in p.arrows(2, 3)}
            distinct = set(exps.values())
            if len(distinct) > 1:
                rep.add(
                    "condition-2",
                    f"triple {(a0, b, c)} gives exponents {sorted(distinct)} over hom(2,3)",
                )
    return rep


def check_condition_3(a: PartialCocycle) -> ValidationReport:
    """Compatibility of the knot-stratum values: for a0 in G1, b: 1->2,
    c: 2->3, d in G3, every e: 2->3 with be = bcd, and every factorization
    a0 = f g in G1, the six-factor identity must hold."""
    p, n = a.parcel, a.order
    rep = ValidationReport()
    g1 = list(p.arrows(1, 1))
    factorizations: dict = {}
    for f, g in itertools.product(g1, repeat=2):
        factorizations.setdefault(p.compose(f, g), []).append((f, g))
    for a0, b, c in itertools.product(g1, p.arrows(1, 2), p.arrows(2, 3)):
        bc = p.compose(b, c)
        for d in p.arrows(3, 3):
            bcd = p.compose(bc, d)
            for e in p.arrows(2, 3):
                if p.compose(b, e) != bcd:
                    continue
                lhs = (a.table[(a0, b, c)] - a.table[(a0, b, e)] + a.table[(a0, bc, d)]) % n
                for f, g in factorizations.get(a0, []):
                    gb = p.compose(g, b)
                    rhs = (
                        a.table[(f, gb, c)]
                        - a.table[(f, gb, e)]
                        + a.table[(f, p.compose(gb, c), d)]
                        + a.table[(g, b, c)]
                        - a.table[(g, b, e)]
                        + a.table[(g, bc, d)]
                    ) % n
                    if lhs != rhs:
                        rep.add(
                            "condition-3",
                            f"a={a0} b={b} c={c} d={d} e={e} f={f} g={g}: {lhs} != {rhs}",
                        )
    return rep


def check_full_cocycle(b: FullCocycle) -> ValidationReport:
    """Pentagon identity over every composable quadruple."""
    p, n = b.parcel, b.order
    rep = ValidationReport()
    for i, j, k, l, m in object_chains(5):
        for f, g, h, kk in itertools.product(
            p.arrows(i, j), p.arrows(j, k), p.arrows(k, l), p.arrows(l, m)
        ):
            total = (
                b.table[(g, h, kk)]
                - b.table[(p.compose(f, g), h, kk)]
                + b.table[(f, p.compose(g, h), kk)]
                - b.table[(f, g, p.compose(h, kk))]
                + b.table[(f, g, h)]
            ) % n
            if total:
                rep.add("cocycle", f"quadruple {(f, g, h, kk)} gives exponent {total}")
    return rep


def restrict(b: FullCocycle) -> PartialCocycle:
    """Restriction to the admissible domain.  The full identity is checked
    first; the three partial conditions are then verified on the result."""
    rep = check_full_cocycle(b)
    if not rep.ok:
        raise ValueError(f"not a 3-cocycle:\n{rep}")
    a = PartialCocycle(
        b.parcel, b.order, {t: b.table[t] for t in admissible_triples(b.parcel)}
    )
    for check in (check_condition_1, check_condition_2, check_condition_3):
        got = check(a)
        if not got.ok:
            raise AssertionError(f"restriction violates a partial condition:\n{got}")
    return a


# ---------------------------------------------------------------------------
# group cocycles and their pullback


@dataclass(frozen=True)
class GroupCocycle:
    """3-cocycle on a finite group, as exponents of zeta_order."""

    order: int
    table: tuple  # table[a][b][c] -> exponent

    @property
    def group_size(self) -> int:
        return len(self.table)

    def exponent(self, a: int, b: int, c: int) -> int:
        return self.table[a][b][c]


def check_group_cocycle(gc: GroupCocycle, group_table) -> ValidationReport:
    rep = ValidationReport()
    n = len(group_table)
    for a, b, c, d in itertools.product(range(n), repeat=4):
        total = (
            gc.table[b][c][d]
            - gc.table[group_table[a][b]][c][d]
            + gc.table[a][group_table[b][c]][d]
            - gc.table[a][b][group_table[c][d]]
            + gc.table[a][b][c]
        ) % gc.order
        if total:
            rep.add("group-cocycle", f"quadruple ({a},{b},{c},{d}) gives exponent {total}")
    return rep


def standard_cyclic_cocycle(n: int, p: int) -> GroupCocycle:
    """exponent(a, b, c) = p * a * carry(b, c) mod n, the standard
    representative of degree-3 cyclic group cohomology."""
    if n < 1:
        raise ValueError("n must be >= 1")
    table = tuple(
        tuple(tuple(p * a * ((b + c) // n) % n for c in range(n)) for b in range(n))
        for a in range(n)
    )
    gc = GroupCocycle(n, table)
    if n <= 12:
        rep = check_group_cocycle(gc, cyclic_table(n))
        if not rep.ok:
            raise AssertionError(f"standard cocycle failed its identity:\n{rep}")
    return gc


def pullback_group_cocycle(p: Parcel, gc: GroupCocycle) -> FullCocycle:
    """Full cocycle on a group-spec parcel obtained by evaluating a group
    cocycle on the ambient elements of the arrows."""
    if p.ambient_labels is None:
        raise ValueError("parcel lacks ambient-element labels; build it with from_group_spec")

    def elt(f: Arrow) -> int:
        return p.ambient_labels[(f.src, f.tgt)][f.idx]

    table = {
        (f, g, h): gc.exponent(elt(f), elt(g), elt(h)) for f, g, h in composable_triples(p)
    }
    return FullCocycle(p, gc.order, table)
