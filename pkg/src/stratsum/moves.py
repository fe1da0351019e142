"""Local rewrites preserving the triple up to homeomorphism.

Supported kinds:

- P14 / P41: Pachner subdivision of a tetrahedron and its inverse weld.
- P23 / P32: the two-three Pachner flip and its inverse.
- X26 / X62: subdivision of a surface triangle together with its two
  adjacent tetrahedra, and the inverse weld.
- X44: the surface-edge flip (self-inverse on the flipped edge).
- K36 / K63: subdivision of a knot edge whose link has exactly three
  edges, and the inverse weld.
- STELLAR: Alexander subdivision at an arbitrary simplex.

apply is a pure function; applicability is decided by structural
preconditions plus full validation of the rewritten complex, so a move
that would break flag-likeness or create a collision is simply rejected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .stratified_complex import (
    StratifiedTriangulation,
    VertexTable,
    extend_orientation,
    stellar_subdivide,
    validate,
)
from .statesum import twisted_invariant, untwisted_invariant

KINDS = ("P14", "P41", "P23", "P32", "X26", "X62", "X44", "K36", "K63", "STELLAR")
EXPANDING = {"P14", "X26", "K36", "STELLAR"}


@dataclass(frozen=True)
class MoveDescriptor:
    kind: str
    site: tuple  # vertex ids; meaning depends on kind

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind}")


def _rebuild(keep_tets, new_tet_sets, surface, knot, dims, sigma, bulk):
    new_tets = extend_orientation(keep_tets, new_tet_sets)
    return StratifiedTriangulation(
        VertexTable(tuple(dims)),
        tuple(keep_tets) + tuple(new_tets),
        frozenset(surface),
        tuple(knot),
        tuple(sigma),
        tuple(bulk),
    )


def _drop_vertex(built: StratifiedTriangulation, a: int) -> StratifiedTriangulation:
    """Relabel ids above a down by one and delete vertex a."""

    def r(v):
        return v - 1 if v > a else v

    return StratifiedTriangulation(
        VertexTable(built.dims[:a] + built.dims[a + 1:]),
        tuple(tuple(r(v) for v in tet) for tet in built.tetrahedra),
        frozenset(frozenset(r(v) for v in tri) for tri in built.surface_triangles),
        tuple((r(x), r(y)) for x, y in built.knot_edges),
        tuple(r(v) for v in built.sigma_order if v != a),
        tuple(r(v) for v in built.bulk_order if v != a),
    )


def _weld_vertex(t: StratifiedTriangulation, a: int, s: frozenset):
    """Inverse of stellar subdivision: collapse the star of vertex a back
    onto the simplex s.  Returns (triangulation, reason) with one of the
    two None."""
    star = [i for i, ts in enumerate(t.tet_sets) if a in ts]
    merged = {}
    for i in star:
        missing = s - t.tet_sets[i]
        if len(missing) != 1:
            return None, f"tetrahedron {t.tetrahedra[i]} does not fit the cone over {sorted(s)}"
        t0 = t.tet_sets[i] - {a} | missing
        if len(t0) != 4:
            return None, f"collapsing {t.tetrahedra[i]} degenerates"
        merged[t0] = merged.get(t0, 0) + 1
    if any(c != len(s) for c in merged.values()):
        return None, f"star of {a} is not the cone over the boundary of {sorted(s)}"
    if any(t0 in set(t.tet_sets) for t0 in merged):
        return None, "weld would duplicate an existing tetrahedron"

    surface = set()
    for tri in t.surface_triangles:
        if a not in tri:
            surface.add(tri)
            continue
        missing = s - tri
        if len(missing) != 1:
            return None, f"surface triangle {sorted(tri)} does not fit the cone over {sorted(s)}"
        surface.add(tri - {a} | missing)

    knot = list(t.knot_edges)
    if t.dims[a] == 1:
        into = [e for e in knot if e[1] == a]
        outof = [e for e in knot if e[0] == a]
        if len(into) != 1 or len(outof) != 1:
            return None, f"knot vertex {a} does not split a single edge"
        p, q = into[0][0], outof[0][1]
        if s != frozenset((p, q)):
            return None, f"weld target {sorted(s)} is not the knot edge ({p},{q})"
        knot = [e for e in knot if a not in e] + [(p, q)]

    keep = [t.tetrahedra[i] for i in range(len(t.tetrahedra)) if i not in set(star)]
    try:
        built = _rebuild(keep, sorted(merged, key=sorted), surface, knot,
                         t.dims, t.sigma_order, t.bulk_order)
    except ValueError as exc:
        return None, str(exc)
    return _drop_vertex(built, a), None


def _try_p23(t: StratifiedTriangulation, tri: frozenset):
    tets = t.triangle_tets.get(tri)
    if tets is None or len(tets) != 2:
        return None, f"{sorted(tri)} is not an interior triangle"
    if tri in t.surface_triangles:
        return None, f"{sorted(tri)} lies in the surface"
    (p,) = t.tet_sets[tets[0]] - tri
    (q,) = t.tet_sets[tets[1]] - tri
    if frozenset((p, q)) in t.edge_set:
        return None, f"apexes {p},{q} are already joined by an edge"
    keep = [t.tetrahedra[i] for i in range(len(t.tetrahedra)) if i not in tets]
    new = [tri - {v} | {p, q} for v in sorted(tri)]
    try:
        built = _rebuild(keep, new, t.surface_triangles, t.knot_edges,
                         t.dims, t.sigma_order, t.bulk_order)
    except ValueError as exc:
        return None, str(exc)
    return built, None


def _try_p32(t: StratifiedTriangulation, e: frozenset):
    if e not in t.edge_set:
        return None, f"{sorted(e)} is not an edge"
    if e in t.surface_edge_set or e in t.undirected_knot:
        return None, f"{sorted(e)} lies in a stratum"
    around = [i for i, ts in enumerate(t.tet_sets) if e <= ts]
    if len(around) != 3:
        return None, f"edge {sorted(e)} lies in {len(around)} tetrahedra, need 3"
    link = frozenset().union(*(t.tet_sets[i] - e for i in around))
    if len(link) != 3:
        return None, f"link of {sorted(e)} is not a triangle"
    if link in t.triangle_tets:
        return None, f"triangle {sorted(link)} already exists"
    keep = [t.tetrahedra[i] for i in range(len(t.tetrahedra)) if i not in set(around)]
    new = [link | {v} for v in sorted(e)]
    try:
        built = _rebuild(keep, new, t.surface_triangles, t.knot_edges,
                         t.dims, t.sigma_order, t.bulk_order)
    except ValueError as exc:
        return None, str(exc)
    return built, None


def _try_x44(t: StratifiedTriangulation, e: frozenset):
    if e not in t.surface_edge_set or e in t.undirected_knot:
        return None, f"{sorted(e)} is not an interior surface edge"
    tris = [tri for tri in t.surface_triangles if e <= tri]
    if len(tris) != 2:
        return None, f"{sorted(e)} does not separate two surface triangles"
    (a,) = tris[0] - e
    (c,) = tris[1] - e
    around = [i for i, ts in enumerate(t.tet_sets) if e <= ts]
    if len(around) != 4:
        return None, f"edge {sorted(e)} lies in {len(around)} tetrahedra, need 4"
    link_edges = [t.tet_sets[i] - e for i in around]
    if frozenset((a, c)) in link_edges:
        return None, f"{a} and {c} are adjacent in the link"
    others = frozenset().union(*link_edges) - {a, c}
    if len(others) != 2:
        return None, f"link of {sorted(e)} is not a square through {a} and {c}"
    if frozenset((a, c)) in t.edge_set:
        return None, f"{a} and {c} are already joined by an edge"
    b, d = sorted(e)
    keep = [t.tetrahedra[i] for i in range(len(t.tetrahedra)) if i not in set(around)]
    new = [frozenset((a, c, u, w)) for u in (b, d) for w in sorted(others)]
    surface = set(t.surface_triangles) - set(tris)
    surface |= {frozenset((a, c, b)), frozenset((a, c, d))}
    try:
        built = _rebuild(keep, new, surface, t.knot_edges,
                         t.dims, t.sigma_order, t.bulk_order)
    except ValueError as exc:
        return None, str(exc)
    return built, None


def _try_apply(t: StratifiedTriangulation, m: MoveDescriptor):
    kind, site = m.kind, m.site
    result, reason = None, None
    try:
        if kind in ("P14", "X26", "K36", "STELLAR"):
            s = frozenset(site)
            if kind == "P14" and s not in set(t.tet_sets):
                return None, f"{sorted(s)} is not a tetrahedron"
            if kind == "X26" and s not in t.surface_triangles:
                return None, f"{sorted(s)} is not a surface triangle"
            if kind == "K36":
                if tuple(site) not in t.knot_edges:
                    return None, f"{tuple(site)} is not a directed knot edge"
                if sum(1 for ts in t.tet_sets if s <= ts) != 3:
                    return None, f"link of knot edge {tuple(site)} does not have 3 edges"
            result = stellar_subdivide(t, s)
        elif kind in ("P41", "X62", "K63"):
            (a,) = site
            want_dim = {"P41": 3, "X62": 2, "K63": 1}[kind]
            if not 0 <= a < t.vertices.count or t.dims[a] != want_dim:
                return None, f"vertex {a} does not have dim {want_dim}"
            if kind == "P41":
                link = frozenset().union(*(ts - {a} for ts in t.tet_sets if a in ts))
                if len(link) != 4:
                    return None, f"link of {a} has {len(link)} vertices, need 4"
                s = link
            elif kind == "X62":
                tris = [tri - {a} for tri in t.surface_triangles if a in tri]
                s = frozenset().union(*tris) if tris else frozenset()
                if len(tris) != 3 or len(s) != 3:
                    return None, f"vertex {a} is not the apex of a subdivided surface triangle"
            else:
                into = [e for e in t.knot_edges if e[1] == a]
                outof = [e for e in t.knot_edges if e[0] == a]
                if len(into) != 1 or len(outof) != 1:
                    return None, f"vertex {a} is not an interior knot subdivision point"
                s = frozenset((into[0][0], outof[0][1]))
                if len(s) != 2:
                    return None, f"welding {a} would close a two-edge knot loop"
            result, reason = _weld_vertex(t, a, s)
        elif kind == "P23":
            result, reason = _try_p23(t, frozenset(site))
        elif kind == "P32":
            result, reason = _try_p32(t, frozenset(site))
        elif kind == "X44":
            result, reason = _try_x44(t, frozenset(site))
        else:
            raise AssertionError(kind)
    except ValueError as exc:
        return None, str(exc)
    if result is None:
        return None, reason
    rep = validate(result)
    if not rep.ok:
        return None, f"result fails validation: {'; '.join(sorted(rep.codes()))}"
    return result, None


def applicable(t: StratifiedTriangulation, m: MoveDescriptor):
    """(True, '') when the move applies, else (False, reason)."""
    result, reason = _try_apply(t, m)
    return (True, "") if result is not None else (False, reason or "inapplicable")


def apply_move(t: StratifiedTriangulation, m: MoveDescriptor) -> StratifiedTriangulation:
    result, reason = _try_apply(t, m)
    if result is None:
        raise ValueError(f"{m.kind} at {m.site}: {reason}")
    return result


def candidate_sites(t: StratifiedTriangulation, kind: str):
    """All site tuples worth testing for a move kind (superset of the
    applicable ones)."""
    if kind in ("P14", "P41"):
        return (
            [tuple(sorted(ts)) for ts in t.tet_sets]
            if kind == "P14"
            else [(v,) for v in range(t.vertices.count) if t.dims[v] == 3]
        )
    if kind == "P23":
        return [tuple(sorted(tri)) for tri in t.triangle_tets if tri not in t.surface_triangles]
    if kind == "P32":
        return [
            tuple(sorted(e))
            for e in t.edge_set
            if e not in t.surface_edge_set and e not in t.undirected_knot
        ]
    if kind == "X26":
        return [tuple(sorted(tri)) for tri in t.surface_triangles]
    if kind == "X62":
        return [(v,) for v in range(t.vertices.count) if t.dims[v] == 2]
    if kind == "X44":
        return [tuple(sorted(e)) for e in t.surface_edge_set if e not in t.undirected_knot]
    if kind == "K36":
        return [e for e in t.knot_edges]
    if kind == "K63":
        return [(v,) for v in range(t.vertices.count) if t.dims[v] == 1]
    if kind == "STELLAR":
        return (
            [tuple(sorted(e)) for e in t.edge_set]
            + [tuple(sorted(tri)) for tri in t.triangle_tets]
            + [tuple(sorted(ts)) for ts in t.tet_sets]
        )
    raise ValueError(f"unknown move kind {kind}")


def random_walk(
    t: StratifiedTriangulation,
    parcel,
    alpha,
    steps: int,
    seed: int,
    kinds=None,
    max_vertices: int | None = None,
    max_attempts: int = 500,
):
    """Performs `steps` random applicable moves, recomputing the invariant
    after each.  Returns a list of (descriptor or None, value); the first
    entry is the starting value.  Deterministic given the seed.  When
    max_vertices is set, moves that add a vertex are skipped at the cap so
    exact enumeration stays feasible."""
    rng = random.Random(seed)
    kinds = tuple(kinds) if kinds is not None else tuple(k for k in KINDS if k != "STELLAR")

    def value(tri):
        if alpha is None:
            return untwisted_invariant(tri, parcel)
        return twisted_invariant(tri, parcel, alpha)

    trace = [(None, value(t))]
    current = t
    for _ in range(steps):
        placed = False
        for _ in range(max_attempts):
            kind = rng.choice(kinds)
            if (
                max_vertices is not None
                and kind in EXPANDING
                and current.vertices.count >= max_vertices
            ):
                continue
            sites = candidate_sites(current, kind)
            if not sites:
                continue
            site = tuple(rng.choice(sites))
            m = MoveDescriptor(kind, site)
            result, _ = _try_apply(current, m)
            if result is not None:
                current = result
                trace.append((m, value(current)))
                placed = True
                break
        if not placed:
            raise RuntimeError("no applicable move found within the attempt budget")
    return trace
