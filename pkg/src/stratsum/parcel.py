"""Finite gauge categories over the chain 1 < 2 < 3.

A parcel stores six finite hom-sets (the endomorphism groups G1, G2, G3
and the defect sets X12, X23, X13) together with full composition tables.
Elements are indices; arrows carry their typing.  Construction from an
ambient group with chosen subgroups/subsets, and the universal
construction from components with a gluing map, are both provided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .groups import check_group_table, group_inverse
from .validation import ValidationReport

OBJECTS = (1, 2, 3)
HOM_PAIRS = ((1, 1), (2, 2), (3, 3), (1, 2), (2, 3), (1, 3))
CHAINS = tuple(
    (i, j, k) for i in OBJECTS for j in OBJECTS for k in OBJECTS if i <= j <= k
)


class Arrow(NamedTuple):
    src: int
    tgt: int
    idx: int


@dataclass(eq=True)
class Parcel:
    """hom_sizes maps (i,j) with i <= j to the hom-set size; tables maps a
    chain (i,j,k) to a matrix with tables[(i,j,k)][a][b] = index of the
    composite in hom(i,k); identities gives the identity index of each
    endomorphism group.  ambient_labels, when present, names each hom-set
    element as an element index of an ambient group (set by
    from_group_spec, needed to pull cocycles back)."""

    hom_sizes: dict
    tables: dict
    identities: dict
    ambient_labels: dict | None = field(default=None, compare=False)

    def hom_size(self, i: int, j: int) -> int:
        return self.hom_sizes[(i, j)]

    def arrows(self, i: int, j: int):
        return (Arrow(i, j, a) for a in range(self.hom_sizes[(i, j)]))

    def all_arrows(self):
        return itertools.chain.from_iterable(self.arrows(i, j) for i, j in HOM_PAIRS)

    def identity(self, i: int) -> Arrow:
        return Arrow(i, i, self.identities[i])

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        if f.tgt != g.src:
            raise ValueError(f"{f} and {g} are not composable")
        return Arrow(f.src, g.tgt, self.tables[(f.src, f.tgt, g.tgt)][f.idx][g.idx])


def inverse(p: Parcel, g: Arrow) -> Arrow:
    """Two-sided inverse of an endomorphism."""
    if g.src != g.tgt:
        raise ValueError(f"{g} is not an endomorphism")
    e = p.identities[g.src]
    table = p.tables[(g.src, g.src, g.src)]
    for b in range(p.hom_sizes[(g.src, g.src)]):
        if table[g.idx][b] == e and table[b][g.idx] == e:
            return Arrow(g.src, g.src, b)
    raise ValueError(f"{g} has no inverse")


def validate_parcel(p: Parcel) -> ValidationReport:
    """Empty report iff p is a well-formed parcel: total tables of the
    right shapes, two-sided identities, associativity on every composable
    triple, and invertible endomorphisms."""
    rep = ValidationReport()
    if set(p.hom_sizes) != set(HOM_PAIRS):
        rep.add("hom-keys", f"hom_sizes keys {sorted(p.hom_sizes)} != {sorted(HOM_PAIRS)}")
        return rep
    if set(p.tables) != set(CHAINS):
        rep.add("table-keys", f"tables keys {sorted(p.tables)} != {sorted(CHAINS)}")
        return rep
    if set(p.identities) != set(OBJECTS):
        rep.add("identity-keys", f"identities keys {sorted(p.identities)}")
        return rep
    for (i, j, k), table in p.tables.items():
        na, nb, nc = p.hom_sizes[(i, j)], p.hom_sizes[(j, k)], p.hom_sizes[(i, k)]
        if len(table) != na or any(len(row) != nb for row in table):
            rep.add("table-shape", f"table {(i, j, k)} is not {na}x{nb}")
            return rep
        for a, b in itertools.product(range(na), range(nb)):
            if not 0 <= table[a][b] < nc:
                rep.add("table-range", f"table {(i, j, k)}[{a}][{b}] out of range")
                return rep
    for i in OBJECTS:
        e = p.identities[i]
        if not 0 <= e < p.hom_sizes[(i, i)]:
            rep.add("identity-range", f"identity of {i} out of range")
            return rep
    for i in OBJECTS:
        e = p.identities[i]
        for j in (j for j in OBJECTS if i <= j):
            for a in range(p.hom_sizes[(i, j)]):
                if p.tables[(i, i, j)][e][a] != a:
                    rep.add("identity", f"e_{i} not a left identity on hom({i},{j})")
                    break
        for h in (h for h in OBJECTS if h <= i):
            for a in range(p.hom_sizes[(h, i)]):
                if p.tables[(h, i, i)][a][e] != a:
                    rep.add("identity", f"e_{i} not a right identity on hom({h},{i})")
                    break
    for i, j, k in CHAINS:
        for l in (l for l in OBJECTS if k <= l):
            t1, t2 = p.tables[(i, j, k)], p.tables[(i, k, l)]
            t3, t4 = p.tables[(j, k, l)], p.tables[(i, j, l)]
            for a, b, c in itertools.product(
                range(p.hom_sizes[(i, j)]),
                range(p.hom_sizes[(j, k)]),
                range(p.hom_sizes[(k, l)]),
            ):
                if t2[t1[a][b]][c] != t4[a][t3[b][c]]:
                    rep.add(
                        "associativity",
                        f"({i},{j},{k},{l}) indices ({a},{b},{c}) associate differently",
                    )
    for i in OBJECTS:
        table = p.tables[(i, i, i)]
        e = p.identities[i]
        for a in range(p.hom_sizes[(i, i)]):
            if not any(
                table[a][b] == e and table[b][a] == e
                for b in range(p.hom_sizes[(i, i)])
            ):
                rep.add("non-invertible-endomorphism", f"element {a} of G_{i}")
    return rep


def trivial_parcel() -> Parcel:
    """All hom-sets singletons."""
    return Parcel(
        hom_sizes={pair: 1 for pair in HOM_PAIRS},
        tables={chain: ((0,),) for chain in CHAINS},
        identities={i: 0 for i in OBJECTS},
    )


# ---------------------------------------------------------------------------
# construction from an ambient group


@dataclass(frozen=True)
class GroupParcelSpec:
    """Ambient group with chosen hom-set element subsets: g1, g2, g3 must
    be subgroups, x12 closed under left-g1/right-g2 multiplication, x23
    under left-g2/right-g3."""

    table: tuple
    g1: tuple
    g2: tuple
    g3: tuple
    x12: tuple
    x23: tuple


def full_group_spec(table) -> GroupParcelSpec:
    """Every hom-set equals the whole group."""
    everything = tuple(range(len(table)))
    return GroupParcelSpec(tuple(table), *([everything] * 5))


def _check_subgroup(table, elems, name):
    elems = set(elems)
    if 0 not in elems:
        raise ValueError(f"{name} does not contain the identity")
    for a, b in itertools.product(elems, repeat=2):
        if table[a][b] not in elems:
            raise ValueError(f"{name} is not closed: {a}*{b} escapes")
    for a in elems:
        if group_inverse(table, a) not in elems:
            raise ValueError(f"{name} is not closed under inverse: {a}")


def _check_biset_closure(table, x, left, right, name):
    for g, v in itertools.product(left, x):
        if table[g][v] not in x:
            raise ValueError(f"{name} not closed under left multiplication: {g}*{v}")
    for v, g in itertools.product(x, right):
        if table[v][g] not in x:
            raise ValueError(f"{name} not closed under right multiplication: {v}*{g}")


def from_group_spec(s: GroupParcelSpec) -> Parcel:
    """Parcel whose hom-sets are the chosen subsets of the ambient group,
    with hom(1,3) the product set x12*x23 and all composition given by the
    group law.  The ambient element of each hom-set index is retained in
    ambient_labels."""
    check_group_table(s.table)
    _check_subgroup(s.table, s.g1, "g1")
    _check_subgroup(s.table, s.g2, "g2")
    _check_subgroup(s.table, s.g3, "g3")
    _check_biset_closure(s.table, set(s.x12), s.g1, s.g2, "x12")
    _check_biset_closure(s.table, set(s.x23), s.g2, s.g3, "x23")

    x13 = tuple(sorted({s.table[x][y] for x in s.x12 for y in s.x23}))
    labels = {
        (1, 1): tuple(sorted(set(s.g1))),
        (2, 2): tuple(sorted(set(s.g2))),
        (3, 3): tuple(sorted(set(s.g3))),
        (1, 2): tuple(sorted(set(s.x12))),
        (2, 3): tuple(sorted(set(s.x23))),
        (1, 3): x13,
    }
    index = {pair: {g: a for a, g in enumerate(elems)} for pair, elems in labels.items()}
    tables = {}
    for i, j, k in CHAINS:
        rows = []
        for a in labels[(i, j)]:
            row = []
            for b in labels[(j, k)]:
                prod = s.table[a][b]
                if prod not in index[(i, k)]:
                    raise ValueError(
                        f"product {a}*{b} lands outside the chosen hom({i},{k})"
                    )
                row.append(index[(i, k)][prod])
            rows.append(tuple(row))
        tables[(i, j, k)] = tuple(rows)
    return Parcel(
        hom_sizes={pair: len(elems) for pair, elems in labels.items()},
        tables=tables,
        identities={i: index[(i, i)][0] for i in OBJECTS},
        ambient_labels=labels,
    )


# ---------------------------------------------------------------------------
# universal construction from components


@dataclass(frozen=True)
class Biset:
    """Finite set acted on by a group on the left and a group on the right;
    left[g][x] and right[x][g] are the translated elements."""

    size: int
    left: tuple
    right: tuple


def check_biset(gl_table, gr_table, b: Biset) -> None:
    """Raise ValueError unless the two actions are genuine and commute."""
    nl, nr = len(gl_table), len(gr_table)
    if len(b.left) != nl or any(len(row) != b.size for row in b.left):
        raise ValueError("left action table has the wrong shape")
    if len(b.right) != b.size or any(len(row) != nr for row in b.right):
        raise ValueError("right action table has the wrong shape")
    for x in range(b.size):
        if b.left[0][x] != x or b.right[x][0] != x:
            raise ValueError("identity does not act trivially")
    for g, h, x in itertools.product(range(nl), range(nl), range(b.size)):
        if b.left[gl_table[g][h]][x] != b.left[g][b.left[h][x]]:
            raise ValueError(f"left action not associative at ({g},{h},{x})")
    for x, g, h in itertools.product(range(b.size), range(nr), range(nr)):
        if b.right[x][gr_table[g][h]] != b.right[b.right[x][g]][h]:
            raise ValueError(f"right action not associative at ({x},{g},{h})")
    for g, x, h in itertools.product(range(nl), range(b.size), range(nr)):
        if b.left[g][b.right[x][h]] != b.right[b.left[g][x]][h]:
            raise ValueError(f"actions do not commute at ({g},{x},{h})")


def pair_classes(g2, x12: Biset, x23: Biset):
    """Classes of X12 x X23 under (x*g, y) ~ (x, g*y).  Returns the map
    pair -> class index and the class count; classes are numbered by their
    lexicographically smallest pair."""
    parent = {p: p for p in itertools.product(range(x12.size), range(x23.size))}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for x, y in list(parent):
        for g in range(len(g2)):
            q = (x12.right[x][g], x23.left[g][y])
            ra, rb = find((x, y)), find(q)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    reps = sorted({find(p) for p in parent})
    number = {r: i for i, r in enumerate(reps)}
    return {p: number[find(p)] for p in parent}, len(reps)


def quotient_biset(g1, g2, g3, x12: Biset, x23: Biset):
    """The quotient X12 x X23 / ~ as a (G1, G3)-biset; second return value
    is the pair -> class map (usable as phi = identity)."""
    class_of, n = pair_classes(g2, x12, x23)
    rep = [None] * n
    for p in sorted(class_of):
        if rep[class_of[p]] is None:
            rep[class_of[p]] = p
    left = tuple(
        tuple(class_of[(x12.left[g][rep[c][0]], rep[c][1])] for c in range(n))
        for g in range(len(g1))
    )
    right = tuple(
        tuple(class_of[(rep[c][0], x23.right[rep[c][1]][g])] for g in range(len(g3)))
        for c in range(n)
    )
    return Biset(n, left, right), class_of


def from_components(
    g1, g2, g3, x12: Biset, x23: Biset, x13: Biset, phi: Sequence[int]
) -> Parcel:
    """General parcel from three groups, the two adjacent bisets, the far
    biset, and a gluing map phi from classes of X12 x X23 (as numbered by
    pair_classes) to X13.  phi must be equivariant for the outer actions;
    the result is validated exhaustively."""
    for table in (g1, g2, g3):
        check_group_table(table)
    check_biset(g1, g2, x12)
    check_biset(g2, g3, x23)
    check_biset(g1, g3, x13)
    class_of, n_classes = pair_classes(g2, x12, x23)
    phi = tuple(phi)
    if len(phi) != n_classes or any(not 0 <= v < x13.size for v in phi):
        raise ValueError(f"phi must map the {n_classes} classes into X13")
    for (x, y), c in class_of.items():
        for g in range(len(g1)):
            if phi[class_of[(x12.left[g][x], y)]] != x13.left[g][phi[c]]:
                raise ValueError(f"phi not left-equivariant at g={g}, pair=({x},{y})")
        for g in range(len(g3)):
            if phi[class_of[(x, x23.right[y][g])]] != x13.right[phi[c]][g]:
                raise ValueError(f"phi not right-equivariant at pair=({x},{y}), g={g}")

    sizes = {
        (1, 1): len(g1), (2, 2): len(g2), (3, 3): len(g3),
        (1, 2): x12.size, (2, 3): x23.size, (1, 3): x13.size,
    }
    tables = {
        (1, 1, 1): tuple(map(tuple, g1)),
        (2, 2, 2): tuple(map(tuple, g2)),
        (3, 3, 3): tuple(map(tuple, g3)),
        (1, 1, 2): tuple(tuple(x12.left[g][x] for x in range(x12.size)) for g in range(len(g1))),
        (1, 2, 2): tuple(tuple(x12.right[x][g] for g in range(len(g2))) for x in range(x12.size)),
        (2, 2, 3): tuple(tuple(x23.left[g][y] for y in range(x23.size)) for g in range(len(g2))),
        (2, 3, 3): tuple(tuple(x23.right[y][g] for g in range(len(g3))) for y in range(x23.size)),
        (1, 1, 3): tuple(tuple(x13.left[g][z] for z in range(x13.size)) for g in range(len(g1))),
        (1, 3, 3): tuple(tuple(x13.right[z][g] for g in range(len(g3))) for z in range(x13.size)),
        (1, 2, 3): tuple(
            tuple(phi[class_of[(x, y)]] for y in range(x23.size)) for x in range(x12.size)
        ),
    }
    p = Parcel(hom_sizes=sizes, tables=tables, identities={1: 0, 2: 0, 3: 0})
    rep = validate_parcel(p)
    if not rep.ok:
        raise ValueError(f"components do not form a parcel:\n{rep}")
    return p
