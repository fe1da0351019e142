"""Shared fixtures and the brute-force coloring oracle."""

from __future__ import annotations

import itertools

import pytest

from stratsum import (
    Parcel,
    StratifiedTriangulation,
    VertexTable,
    edge_direction,
    from_group_spec,
    full_group_spec,
    s3_join_fixture,
)
from stratsum.groups import cyclic_table
from stratsum.stratified_complex import orient_component


@pytest.fixture
def fixture():
    return s3_join_fixture()


@pytest.fixture
def z2_parcel():
    return from_group_spec(full_group_spec(cyclic_table(2)))


@pytest.fixture
def z3_parcel():
    return from_group_spec(full_group_spec(cyclic_table(3)))


def boundary_delta4() -> StratifiedTriangulation:
    """Boundary of the 4-simplex: S^3 with empty knot and surface, 5
    vertices and 10 edges."""
    tets = orient_component([frozenset({0, 1, 2, 3, 4}) - {v} for v in range(5)])
    return StratifiedTriangulation(
        VertexTable((3,) * 5),
        tuple(tets),
        frozenset(),
        (),
        (),
        tuple(range(5)),
    )


def brute_force_colorings(t: StratifiedTriangulation, p: Parcel):
    """Every assignment of arrows to canonical directed edges satisfying
    all triangle relations, by full enumeration."""
    edges = sorted(
        (edge_direction(t, e) for e in t.edge_set),
        key=lambda d: (min(t.dims[d.tail], t.dims[d.head]), tuple(sorted(d))),
    )
    triangles = []
    for tri in t.triangle_tets:
        by_out = {v: 0 for v in tri}
        for pair in itertools.combinations(sorted(tri), 2):
            by_out[edge_direction(t, pair).tail] += 1
        x0 = max(by_out, key=by_out.get)
        x2 = min(by_out, key=by_out.get)
        (x1,) = tri - {x0, x2}
        triangles.append(((x0, x1), (x1, x2), (x0, x2)))

    choices = [list(p.arrows(t.dims[e.tail], t.dims[e.head])) for e in edges]
    for combo in itertools.product(*choices):
        coloring = dict(zip(edges, combo))
        if all(
            p.compose(coloring[e1], coloring[e2]) == coloring[e3]
            for e1, e2, e3 in triangles
        ):
            yield coloring
