"""Finite groups as explicit multiplication tables.

Elements are indices 0..n-1; table[a][b] is the product a*b.  Only the
small named constructions needed by the CLI and the example builders are
provided.
"""

from __future__ import annotations

import itertools


def cyclic_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Addition table of Z/n."""
    if n < 1:
        raise ValueError("group order must be >= 1")
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def symmetric_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Multiplication table of S_n; elements are permutations of 0..n-1
    in lexicographic order, composed left-to-right (p then q)."""
    if not 1 <= n <= 5:
        raise ValueError("symmetric groups supported for 1 <= n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            row.append(index[tuple(q[p[i]] for i in range(n))])
        table.append(tuple(row))
    return tuple(table)


def direct_product_table(ta, tb) -> tuple[tuple[int, ...], ...]:
    na, nb = len(ta), len(tb)
    table = []
    for a1, b1 in itertools.product(range(na), range(nb)):
        row = []
        for a2, b2 in itertools.product(range(na), range(nb)):
            row.append(ta[a1][a2] * nb + tb[b1][b2])
        table.append(tuple(row))
    return tuple(table)


def check_group_table(table) -> None:
    """Raise ValueError unless table is a group with identity 0."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise ValueError("table is not square")
    if any(table[0][a] != a or table[a][0] != a for a in range(n)):
        raise ValueError("element 0 is not a two-sided identity")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ValueError(f"associativity fails at ({a},{b},{c})")
    for a in range(n):
        if not any(table[a][b] == 0 and table[b][a] == 0 for b in range(n)):
            raise ValueError(f"element {a} has no inverse")


def group_inverse(table, a: int) -> int:
    for b in range(len(table)):
        if table[a][b] == 0 and table[b][a] == 0:
            return b
    raise ValueError(f"element {a} has no inverse")


def subgroup_closure(table, gens) -> tuple[int, ...]:
    """Smallest subgroup containing gens (always contains the identity)."""
    seen = {0}
    frontier = set(gens) | {0}
    while frontier:
        seen |= frontier
        frontier = {
            table[a][b] for a in seen for b in seen
        } - seen
    return tuple(sorted(seen))


def biset_closure(table, seed, left, right) -> tuple[int, ...]:
    """Smallest subset of the ambient group containing seed that is closed
    under left multiplication by `left` and right multiplication by `right`."""
    seen = set(seed)
    frontier = set(seed)
    while frontier:
        new = set()
        for x in frontier:
            new |= {table[g][x] for g in left}
            new |= {table[x][g] for g in right}
        frontier = new - seen
        seen |= frontier
    return tuple(sorted(seen))
