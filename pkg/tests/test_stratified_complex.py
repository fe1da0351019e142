"""Structural model: validation, edge directions, paths, subdivisions."""

from __future__ import annotations

import itertools
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratsum import (
    DirectedEdge,
    StratifiedTriangulation,
    VertexTable,
    barycentric_subdivision,
    edge_direction,
    epsilon,
    longest_path,
    reorder_vertices,
    s3_join_fixture,
    stellar_subdivide,
    validate,
)
from stratsum.stratified_complex import canonical_form

from .conftest import boundary_delta4


class TestValidate:
    def test_fixture_is_valid(self, fixture):
        assert validate(fixture).ok

    def test_boundary_delta4_is_valid(self):
        assert validate(boundary_delta4()).ok

    def test_single_tetrahedron_has_boundary(self):
        t = StratifiedTriangulation(
            VertexTable((3, 3, 3, 3)),
            ((0, 1, 2, 3),),
            frozenset(),
            (),
            (),
            (0, 1, 2, 3),
        )
        assert "triangle-in-one-tetrahedron" in validate(t).codes()

    def test_redimmed_knot_vertex_is_flagged(self, fixture):
        bad = replace(fixture, vertices=VertexTable((3,) + fixture.dims[1:]))
        codes = validate(bad).codes()
        assert codes & {"dim-mismatch", "knot-dim", "flag"}

    def test_duplicate_tetrahedron_is_flagged(self, fixture):
        bad = replace(fixture, tetrahedra=fixture.tetrahedra + fixture.tetrahedra[:1])
        assert "duplicate-tetrahedron" in validate(bad).codes()

    def test_reversed_orientation_is_flagged(self, fixture):
        first = fixture.tetrahedra[0]
        flipped = (first[0], first[1], first[3], first[2])
        bad = replace(fixture, tetrahedra=(flipped,) + fixture.tetrahedra[1:])
        assert "orientation" in validate(bad).codes()

    def test_short_knot_cycle_is_flagged(self):
        # two-edge knot cycle on an otherwise well-formed complex shell
        t = s3_join_fixture()
        bad = replace(t, knot_edges=((0, 1), (1, 0), (2, 2)))
        assert not validate(bad).ok

    def test_out_of_range_id_is_reported(self, fixture):
        bad = replace(fixture, tetrahedra=fixture.tetrahedra + ((0, 1, 2, 99),))
        assert "bad-id" in validate(bad).codes()


class TestEdgeDirection:
    def test_lower_dim_first(self, fixture):
        assert edge_direction(fixture, (4, 0)) == DirectedEdge(0, 4)
        assert edge_direction(fixture, (3, 0)) == DirectedEdge(0, 3)
        assert edge_direction(fixture, (4, 3)) == DirectedEdge(3, 4)

    def test_knot_edges_follow_knot_orientation(self, fixture):
        assert edge_direction(fixture, (1, 0)) == DirectedEdge(0, 1)
        assert edge_direction(fixture, (0, 2)) == DirectedEdge(2, 0)

    def test_bulk_edges_follow_bulk_order(self, fixture):
        assert edge_direction(fixture, (5, 4)) == DirectedEdge(4, 5)

    def test_antisymmetric_and_total(self, fixture):
        for e in fixture.edge_set:
            u, v = sorted(e)
            assert edge_direction(fixture, (u, v)) == edge_direction(fixture, (v, u))

    def test_non_edge_rejected(self, fixture):
        with pytest.raises(ValueError):
            edge_direction(fixture, (0, 0))


class TestLongestPath:
    def test_ends_in_bulk(self, fixture):
        for tet in fixture.tetrahedra:
            path = longest_path(fixture, tet)
            assert fixture.dims[path[3]] == 3
            assert fixture.dims[path[2]] >= 2

    def test_every_edge_goes_forward(self, fixture):
        for tet in fixture.tetrahedra:
            path = longest_path(fixture, tet)
            for i, j in itertools.combinations(range(4), 2):
                assert edge_direction(fixture, (path[i], path[j])) == (path[i], path[j])

    def test_bulk_tetrahedron_uses_bulk_order(self):
        t = boundary_delta4()
        assert longest_path(t, (0, 1, 2, 3)) == (0, 1, 2, 3)
        assert longest_path(t, (1, 0, 3, 2)) == (0, 1, 2, 3)


class TestEpsilon:
    def test_identity_permutation(self, fixture):
        for tet in fixture.tetrahedra:
            path = longest_path(fixture, tet)
            aligned = replace(
                fixture, tetrahedra=tuple(path if t == tet else t for t in fixture.tetrahedra)
            )
            assert epsilon(aligned, path) == 1

    def test_transposition_flips_sign(self, fixture):
        for tet in fixture.tetrahedra:
            swapped = (tet[1], tet[0], tet[2], tet[3])
            assert epsilon(fixture, swapped) == -epsilon(fixture, tet)

    def test_global_reversal_negates_all(self, fixture):
        reversed_t = replace(
            fixture,
            tetrahedra=tuple((a, b, d, c) for a, b, c, d in fixture.tetrahedra),
        )
        for tet, rev in zip(fixture.tetrahedra, reversed_t.tetrahedra):
            assert epsilon(reversed_t, rev) == -epsilon(fixture, tet)


def simplexes_of(t):
    out = set()
    for tet in t.tetrahedra:
        for k in (2, 3, 4):
            out.update(frozenset(c) for c in itertools.combinations(tet, k))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


class TestBarycentric:
    def test_output_is_valid(self, fixture):
        assert validate(barycentric_subdivision(fixture)).ok

    def test_vertex_count_is_simplex_count(self, fixture):
        bt = barycentric_subdivision(fixture)
        n_simplexes = fixture.vertices.count + len(simplexes_of(fixture))
        assert bt.vertices.count == n_simplexes

    def test_barycenter_dims(self, fixture):
        bt = barycentric_subdivision(fixture)
        # knot edge barycenters come first among the new vertices of dim 1
        knot_mid = [v for v in range(6, bt.vertices.count) if bt.dims[v] == 1]
        assert len(knot_mid) == len(fixture.knot_edges)
        surface_new = [v for v in range(6, bt.vertices.count) if bt.dims[v] == 2]
        # one per non-knot surface edge plus one per surface triangle
        assert len(surface_new) == 3 + len(fixture.surface_triangles)

    def test_tetrahedron_count(self, fixture):
        bt = barycentric_subdivision(fixture)
        assert len(bt.tetrahedra) == 24 * len(fixture.tetrahedra)

    def test_works_without_flag_likeness(self):
        assert validate(barycentric_subdivision(boundary_delta4())).ok


class TestStellar:
    def test_every_site_gives_valid_output(self, fixture):
        for s in simplexes_of(fixture):
            out = stellar_subdivide(fixture, s)
            assert validate(out).ok, f"site {sorted(s)}: {validate(out)}"

    def test_knot_edge_subdivision_doubles_its_star(self, fixture):
        before = sum(1 for ts in fixture.tet_sets if {0, 1} <= ts)
        out = stellar_subdivide(fixture, (0, 1))
        assert len(out.tetrahedra) == len(fixture.tetrahedra) + before
        assert len(out.knot_edges) == len(fixture.knot_edges) + 1

    def test_tetrahedron_site_adds_three(self, fixture):
        out = stellar_subdivide(fixture, fixture.tetrahedra[0])
        assert len(out.tetrahedra) == len(fixture.tetrahedra) + 3

    def test_euler_characteristic_preserved(self, fixture):
        def euler(t):
            tris = len(t.triangle_tets)
            return t.vertices.count - len(t.edge_set) + tris - len(t.tetrahedra)

        for s in simplexes_of(fixture):
            assert euler(stellar_subdivide(fixture, s)) == euler(fixture) == 0

    def test_missing_simplex_rejected(self, fixture):
        with pytest.raises(ValueError):
            stellar_subdivide(fixture, (0, 4, 5))

    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_iterated_subdivision_stays_valid(self, data):
        t = s3_join_fixture()
        for _ in range(data.draw(st.integers(1, 3))):
            site = data.draw(st.sampled_from(simplexes_of(t)))
            t = stellar_subdivide(t, site)
        assert validate(t).ok


class TestReorder:
    def test_identity(self, fixture):
        same = reorder_vertices(fixture, fixture.sigma_order, fixture.bulk_order)
        assert canonical_form(same) == canonical_form(fixture)

    def test_non_permutation_rejected(self, fixture):
        with pytest.raises(ValueError):
            reorder_vertices(fixture, (4,), fixture.bulk_order)
