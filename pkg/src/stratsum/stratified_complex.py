"""Flag-like triangulations of knot / spanning-surface / 3-manifold triples.

A triple K in Sigma in M is stored as a closed oriented simplicial
3-complex together with the subcomplexes carrying the strata.  Vertex
stratum dimensions are stored explicitly (1 = on the knot, 2 = in the
open surface, 3 = in the bulk) and cross-checked against subcomplex
membership by `validate`.

All values are treated as immutable; subdivision operations return new
triangulations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, NamedTuple

from .validation import ValidationReport


class DirectedEdge(NamedTuple):
    tail: int
    head: int


@dataclass(frozen=True)
class VertexTable:
    """Vertices 0..count-1 with their stratum dimensions."""

    dims: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.dims)

    def dim(self, v: int) -> int:
        return self.dims[v]


def _perm_sign(seq, ref) -> int:
    pos = {v: i for i, v in enumerate(ref)}
    perm = [pos[v] for v in seq]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _induced_face_sign(tet: tuple[int, int, int, int], face: frozenset) -> int:
    """Sign of the orientation the ordered tetrahedron induces on `face`,
    relative to the sorted vertex order of the face."""
    (omit,) = set(tet) - face
    i = tet.index(omit)
    rest = [v for v in tet if v != omit]
    return (-1) ** i * _perm_sign(rest, sorted(face))


@dataclass(eq=True)
class StratifiedTriangulation:
    vertices: VertexTable
    tetrahedra: tuple[tuple[int, int, int, int], ...]
    surface_triangles: frozenset  # of frozenset[int] (3 vertices each)
    knot_edges: tuple[tuple[int, int], ...]  # directed along the knot
    sigma_order: tuple[int, ...]
    bulk_order: tuple[int, ...]

    # -- derived structure (cached; the value is immutable by convention) --

    @property
    def dims(self) -> tuple[int, ...]:
        return self.vertices.dims

    @cached_property
    def tet_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(t) for t in self.tetrahedra)

    @cached_property
    def triangle_tets(self) -> dict:
        """triangle (frozenset) -> indices of tetrahedra containing it."""
        out: dict = {}
        for i, t in enumerate(self.tetrahedra):
            for face in itertools.combinations(sorted(t), 3):
                out.setdefault(frozenset(face), []).append(i)
        return out

    @cached_property
    def edge_set(self) -> frozenset:
        edges = set()
        for t in self.tetrahedra:
            for e in itertools.combinations(t, 2):
                edges.add(frozenset(e))
        return frozenset(edges)

    @cached_property
    def undirected_knot(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.knot_edges)

    @cached_property
    def surface_edge_set(self) -> frozenset:
        edges = set()
        for tri in self.surface_triangles:
            for e in itertools.combinations(sorted(tri), 2):
                edges.add(frozenset(e))
        return frozenset(edges)

    @cached_property
    def knot_next(self) -> dict:
        return {a: b for a, b in self.knot_edges}

    @cached_property
    def sigma_pos(self) -> dict:
        return {v: i for i, v in enumerate(self.sigma_order)}

    @cached_property
    def bulk_pos(self) -> dict:
        return {v: i for i, v in enumerate(self.bulk_order)}

    @cached_property
    def vertex_star(self) -> dict:
        out: dict = {v: [] for v in range(self.vertices.count)}
        for i, t in enumerate(self.tetrahedra):
            for v in t:
                out[v].append(i)
        return out

    def stratum_counts(self) -> dict:
        counts = {1: 0, 2: 0, 3: 0}
        for d in self.dims:
            counts[d] += 1
        return counts


def edge_direction(t: StratifiedTriangulation, e) -> DirectedEdge:
    """Canonical direction of an edge: away from the knot, away from the
    surface, along the knot on the knot, and by the stored linear orders
    within a stratum."""
    u, v = e
    if frozenset((u, v)) not in t.edge_set:
        raise ValueError(f"{{{u},{v}}} is not an edge of the complex")
    du, dv = t.dims[u], t.dims[v]
    if du > dv:
        u, v, du, dv = v, u, dv, du
    if du != dv:
        return DirectedEdge(u, v)
    if du == 1:
        if t.knot_next.get(u) == v:
            return DirectedEdge(u, v)
        if t.knot_next.get(v) == u:
            return DirectedEdge(v, u)
        raise ValueError(f"edge {{{u},{v}}} joins knot vertices but is not a knot edge")
    pos = t.sigma_pos if du == 2 else t.bulk_pos
    if pos[u] > pos[v]:
        u, v = v, u
    return DirectedEdge(u, v)


def longest_path(t: StratifiedTriangulation, tet) -> tuple[int, int, int, int]:
    """The unique source-to-sink ordering of a tetrahedron's vertices under
    the canonical edge directions."""
    by_dim: dict = {1: [], 2: [], 3: []}
    for v in tet:
        by_dim[t.dims[v]].append(v)
    if len(by_dim[1]) == 2:
        a, b = by_dim[1]
        if t.knot_next.get(b) == a:
            by_dim[1] = [b, a]
        elif t.knot_next.get(a) != b:
            raise ValueError(f"knot vertices {a},{b} of {tet} not joined by a knot edge")
    elif len(by_dim[1]) > 2:
        raise ValueError(f"tetrahedron {tet} has {len(by_dim[1])} knot vertices")
    by_dim[2].sort(key=t.sigma_pos.__getitem__)
    by_dim[3].sort(key=t.bulk_pos.__getitem__)
    order = tuple(by_dim[1] + by_dim[2] + by_dim[3])
    for i, j in itertools.combinations(range(4), 2):
        if edge_direction(t, (order[i], order[j])) != (order[i], order[j]):
            raise ValueError(f"edge directions cyclic on tetrahedron {tet}")
    return order


def epsilon(t: StratifiedTriangulation, tet) -> int:
    """+1 when the longest-path ordering agrees with the stored positive
    orientation of the tetrahedron, -1 otherwise."""
    return _perm_sign(longest_path(t, tet), tet)


def validate(t: StratifiedTriangulation) -> ValidationReport:
    """Check every structural invariant of a knot/surface/manifold triple.

    Returns an empty report iff `t` is a valid flag-like oriented triple.
    """
    rep = ValidationReport()
    n = t.vertices.count

    def ids_ok(vs, what) -> bool:
        vs = list(vs)
        if any(not isinstance(v, int) or not 0 <= v < n for v in vs):
            rep.add("bad-id", f"{what} {vs} has an out-of-range vertex id")
            return False
        if len(set(vs)) != len(vs):
            rep.add("repeated-vertex", f"{what} {vs} repeats a vertex")
            return False
        return True

    shape_ok = True
    for v, d in enumerate(t.dims):
        if d not in (1, 2, 3):
            rep.add("bad-dim", f"vertex {v} has dim {d}")
            shape_ok = False

    def sized(vs, k, what) -> bool:
        if len(vs) != k:
            rep.add("bad-arity", f"{what} {sorted(vs)} does not have {k} vertices")
            return False
        return ids_ok(vs, what)

    for tet in t.tetrahedra:
        shape_ok &= sized(tet, 4, "tetrahedron")
    for tri in t.surface_triangles:
        shape_ok &= sized(tri, 3, "surface triangle")
    for e in t.knot_edges:
        shape_ok &= sized(e, 2, "knot edge")
    shape_ok &= ids_ok(t.sigma_order, "sigma_order") and ids_ok(t.bulk_order, "bulk_order")
    if not shape_ok:
        return rep
    if len(set(t.tet_sets)) != len(t.tet_sets):
        rep.add("duplicate-tetrahedron", "two tetrahedra span the same vertices")
        return rep

    # Closed pseudo-3-manifold and orientation consistency.
    for tri, tets in t.triangle_tets.items():
        if len(tets) == 1:
            rep.add("triangle-in-one-tetrahedron", f"{sorted(tri)} is a boundary face")
        elif len(tets) > 2:
            rep.add("triangle-overused", f"{sorted(tri)} lies in {len(tets)} tetrahedra")
        else:
            s0 = _induced_face_sign(t.tetrahedra[tets[0]], tri)
            s1 = _induced_face_sign(t.tetrahedra[tets[1]], tri)
            if s0 == s1:
                rep.add("orientation", f"inconsistent orientation across {sorted(tri)}")

    # Strata are subcomplexes of the right kind.
    for tri in t.surface_triangles:
        if tri not in t.triangle_tets:
            rep.add("surface-not-subcomplex", f"{sorted(tri)} is not a triangle of M")
        if any(t.dims[v] > 2 for v in tri):
            rep.add("surface-dim", f"surface triangle {sorted(tri)} has a bulk vertex")
    if len(t.undirected_knot) != len(t.knot_edges):
        rep.add("knot-duplicate-edge", "knot edges repeat or oppose on the same pair")
    for a, b in t.knot_edges:
        if frozenset((a, b)) not in t.edge_set:
            rep.add("knot-not-subcomplex", f"({a},{b}) is not an edge of M")
        if t.dims[a] != 1 or t.dims[b] != 1:
            rep.add("knot-dim", f"knot edge ({a},{b}) has a vertex of dim != 1")

    # Vertex dims match subcomplex membership.
    on_knot = {v for e in t.knot_edges for v in e}
    on_surface = {v for tri in t.surface_triangles for v in tri}
    for v in range(n):
        d = t.dims[v]
        want = 1 if v in on_knot else 2 if v in on_surface else 3
        if d != want:
            rep.add("dim-mismatch", f"vertex {v} has dim {d} but lies in stratum {want}")

    # Boundary of the surface equals the knot.
    edge_count: dict = {}
    for tri in t.surface_triangles:
        for e in itertools.combinations(sorted(tri), 2):
            edge_count[frozenset(e)] = edge_count.get(frozenset(e), 0) + 1
    boundary = {e for e, c in edge_count.items() if c == 1}
    if any(c > 2 for c in edge_count.values()):
        rep.add("surface-not-surface", "a surface edge lies in more than two surface triangles")
    if boundary != t.undirected_knot:
        rep.add(
            "boundary-mismatch",
            f"surface boundary {sorted(map(sorted, boundary))} != knot "
            f"{sorted(map(sorted, t.undirected_knot))}",
        )

    # The knot is a union of disjoint directed cycles of length >= 3.
    outs: dict = {}
    ins: dict = {}
    for a, b in t.knot_edges:
        outs[a] = outs.get(a, 0) + 1
        ins[b] = ins.get(b, 0) + 1
    for v in on_knot:
        if outs.get(v, 0) != 1 or ins.get(v, 0) != 1:
            rep.add("knot-not-cycle", f"knot vertex {v} has in/out degree != 1")
    if not rep.codes() & {"knot-not-cycle", "knot-duplicate-edge"}:
        seen = set()
        for start in sorted(on_knot):
            if start in seen:
                continue
            length, v = 0, start
            while True:
                seen.add(v)
                v = t.knot_next[v]
                length += 1
                if v == start:
                    break
            if length < 3:
                rep.add("knot-short-cycle", f"knot component through {start} has length {length}")

    # Flag-likeness, simplex by simplex.
    def check_flag(simplex, what):
        k1 = [v for v in simplex if t.dims[v] == 1]
        k2 = [v for v in simplex if t.dims[v] <= 2]
        if len(k1) > 2:
            rep.add("flag", f"{what} {sorted(simplex)} has {len(k1)} knot vertices")
        elif len(k1) == 2 and frozenset(k1) not in t.undirected_knot:
            rep.add("flag", f"{what} {sorted(simplex)}: knot vertices {k1} span no knot edge")
        if len(k2) == 4:
            rep.add("flag", f"{what} {sorted(simplex)} lies entirely in the surface strata")
        elif len(k2) == 3 and frozenset(k2) not in t.surface_triangles:
            rep.add("flag", f"{what} {sorted(simplex)}: face {sorted(k2)} is not a surface triangle")
        elif len(k2) == 2:
            f = frozenset(k2)
            if f not in t.surface_edge_set and f not in t.undirected_knot:
                rep.add("flag", f"{what} {sorted(simplex)}: face {sorted(k2)} is not a surface edge")

    for tet in t.tetrahedra:
        check_flag(tet, "tetrahedron")
    for tri in t.triangle_tets:
        check_flag(tri, "triangle")
    for e in t.edge_set:
        check_flag(e, "edge")

    # Linear orders cover their strata exactly.
    for name, order, d in (("sigma_order", t.sigma_order, 2), ("bulk_order", t.bulk_order, 3)):
        want = {v for v in range(n) if t.dims[v] == d}
        if set(order) != want or len(order) != len(want):
            rep.add("order-not-permutation", f"{name} is not a permutation of the dim-{d} vertices")

    # Links of knot edges are polygons with >= 3 edges.
    if rep.ok:
        for a, b in t.knot_edges:
            opposite = [ts - {a, b} for ts in t.tet_sets if {a, b} <= ts]
            degree: dict = {}
            for e in opposite:
                for v in e:
                    degree[v] = degree.get(v, 0) + 1
            if len(opposite) < 3 or any(c != 2 for c in degree.values()):
                rep.add("knot-link", f"link of knot edge ({a},{b}) is not a polygon of >= 3 edges")
    return rep


# ---------------------------------------------------------------------------
# subdivision utilities


def _interior_dim(t: StratifiedTriangulation, s: frozenset) -> int:
    """Stratum of the interior of simplex s."""
    if len(s) == 1:
        return t.dims[next(iter(s))]
    if s in t.undirected_knot:
        return 1
    if s in t.surface_triangles or s in t.surface_edge_set:
        return 2
    return 3


def _with_new_vertex(t, new_dim):
    """Append one vertex of the given dim; returns (new index, dims, orders)."""
    c = t.vertices.count
    dims = t.dims + (new_dim,)
    sigma = t.sigma_order + ((c,) if new_dim == 2 else ())
    bulk = t.bulk_order + ((c,) if new_dim == 3 else ())
    return c, dims, sigma, bulk


def stellar_subdivide(t: StratifiedTriangulation, s) -> StratifiedTriangulation:
    """Alexander subdivision at the simplex s: the star of s is replaced by
    the cone from a new vertex over its boundary.  The new vertex inherits
    the stratum of the interior of s and is appended to its linear order."""
    s = frozenset(s)
    if len(s) == 2 and s not in t.edge_set:
        raise ValueError(f"{sorted(s)} is not an edge of the complex")
    if len(s) == 3 and s not in t.triangle_tets:
        raise ValueError(f"{sorted(s)} is not a triangle of the complex")
    if len(s) == 4 and s not in t.tet_sets:
        raise ValueError(f"{sorted(s)} is not a tetrahedron of the complex")
    if len(s) not in (2, 3, 4):
        raise ValueError("stellar subdivision expects an edge, triangle or tetrahedron")

    c, dims, sigma, bulk = _with_new_vertex(t, _interior_dim(t, s))

    tets = []
    for tet in t.tetrahedra:
        if s <= frozenset(tet):
            for v in sorted(s):
                tets.append(tuple(c if w == v else w for w in tet))
        else:
            tets.append(tet)

    surface = set()
    for tri in t.surface_triangles:
        if s <= tri:
            for v in sorted(s):
                surface.add(tri - {v} | {c})
        else:
            surface.add(tri)

    knot = []
    for a, b in t.knot_edges:
        if s == frozenset((a, b)):
            knot += [(a, c), (c, b)]
        else:
            knot.append((a, b))

    return StratifiedTriangulation(
        VertexTable(dims), tuple(tets), frozenset(surface), tuple(knot), sigma, bulk
    )


def barycentric_subdivision(t: StratifiedTriangulation) -> StratifiedTriangulation:
    """Full barycentric subdivision.  Requires the strata to be subcomplexes
    (flag-likeness of the input is not needed); the output is flag-like."""
    for e in t.knot_edges:
        if frozenset(e) not in t.edge_set:
            raise ValueError(f"knot edge {e} is not an edge of the complex")
    for tri in t.surface_triangles:
        if tri not in t.triangle_tets:
            raise ValueError(f"surface triangle {sorted(tri)} is not a triangle of the complex")

    simplexes = set()
    for tet in t.tetrahedra:
        for k in (2, 3, 4):
            for f in itertools.combinations(sorted(tet), k):
                simplexes.add(frozenset(f))
    bary: dict = {}
    dims = list(t.dims)
    sigma = list(t.sigma_order)
    bulk = list(t.bulk_order)
    for size in (2, 3, 4):
        for s in sorted((s for s in simplexes if len(s) == size), key=sorted):
            bary[s] = len(dims)
            d = _interior_dim(t, s)
            dims.append(d)
            if d == 2:
                sigma.append(bary[s])
            elif d == 3:
                bulk.append(bary[s])

    def b(vs) -> int:
        vs = frozenset(vs)
        return next(iter(vs)) if len(vs) == 1 else bary[vs]

    tets = []
    for tet in t.tetrahedra:
        for perm in itertools.permutations(tet):
            chain = (b(perm[:1]), b(perm[:2]), b(perm[:3]), b(perm))
            if _perm_sign(perm, tet) == 1:
                tets.append(chain)
            else:
                tets.append((chain[0], chain[1], chain[3], chain[2]))

    surface = set()
    for tri in t.surface_triangles:
        for perm in itertools.permutations(sorted(tri)):
            surface.add(frozenset((perm[0], b(perm[:2]), b(perm))))

    knot = []
    for a, e in t.knot_edges:
        m = bary[frozenset((a, e))]
        knot += [(a, m), (m, e)]

    return StratifiedTriangulation(
        VertexTable(tuple(dims)), tuple(tets), frozenset(surface), tuple(knot),
        tuple(sigma), tuple(bulk),
    )


def reorder_vertices(t: StratifiedTriangulation, sigma_order, bulk_order) -> StratifiedTriangulation:
    """Same complex with new linear orders on the surface and bulk vertices."""
    sigma_order = tuple(sigma_order)
    bulk_order = tuple(bulk_order)
    if sorted(sigma_order) != sorted(t.sigma_order):
        raise ValueError("sigma_order is not a permutation of the surface vertices")
    if sorted(bulk_order) != sorted(t.bulk_order):
        raise ValueError("bulk_order is not a permutation of the bulk vertices")
    return replace(t, sigma_order=sigma_order, bulk_order=bulk_order)


# ---------------------------------------------------------------------------
# orientation helpers shared with the move engine


def orient_component(tet_sets) -> list[tuple[int, int, int, int]]:
    """Pick a consistent orientation for a closed connected complex given as
    vertex sets, deterministically (seeded at the first set, sorted)."""
    tet_sets = list(tet_sets)
    first = tuple(sorted(tet_sets[0]))
    return [first] + extend_orientation([first], tet_sets[1:])


def extend_orientation(oriented, new_sets) -> list[tuple[int, int, int, int]]:
    """Orient `new_sets` consistently with the already-oriented tetrahedra,
    propagating across shared triangles.  Returns tuples in input order."""
    pending = {frozenset(s): i for i, s in enumerate(new_sets)}
    result: dict = {}
    face_sign: dict = {}

    def record(tup):
        for face in itertools.combinations(sorted(tup), 3):
            face_sign.setdefault(frozenset(face), []).append(_induced_face_sign(tup, frozenset(face)))

    for tup in oriented:
        record(tup)
    frontier = True
    while pending and frontier:
        frontier = False
        for ts in sorted(pending, key=sorted):
            tup = None
            for face in itertools.combinations(sorted(ts), 3):
                signs = face_sign.get(frozenset(face))
                if signs:
                    base = tuple(sorted(ts))
                    cand = base if _induced_face_sign(base, frozenset(face)) != signs[0] else (
                        base[0], base[1], base[3], base[2])
                    tup = cand
                    break
            if tup is not None:
                result[ts] = tup
                record(tup)
                del pending[ts]
                frontier = True
    if pending:
        raise ValueError("could not orient tetrahedra: not attached to the oriented region")
    return [result[frozenset(s)] for s in new_sets]


# ---------------------------------------------------------------------------
# fixture


def s3_join_fixture() -> StratifiedTriangulation:
    """S^3 as the join of two triangle boundaries; the knot is the first
    circle (vertices 0,1,2), the surface its cone to vertex 3, and vertices
    4,5 complete the second circle in the bulk."""
    k_cycle = [(0, 1), (1, 2), (2, 0)]
    l_cycle = [(3, 4), (4, 5), (5, 3)]
    tet_sets = [frozenset(a + b) for a in k_cycle for b in l_cycle]
    tets = orient_component(tet_sets)
    surface = frozenset(frozenset((a, b, 3)) for a, b in k_cycle)
    return StratifiedTriangulation(
        VertexTable((1, 1, 1, 2, 3, 3)),
        tuple(tets),
        surface,
        tuple(k_cycle),
        (3,),
        (4, 5),
    )


def canonical_form(t: StratifiedTriangulation):
    """Hashable form identifying the triple up to reordering of simplex
    lists (orientation classes of tetrahedra are preserved)."""
    tets = frozenset(
        (tuple(sorted(tet)), _perm_sign(tet, sorted(tet))) for tet in t.tetrahedra
    )
    return (
        t.dims,
        tets,
        t.surface_triangles,
        frozenset(t.knot_edges),
        t.sigma_order,
        t.bulk_order,
    )
