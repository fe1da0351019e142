"""JSON document formats for triangulations, parcels and cocycles.

One document per object; unknown fields are rejected so typos surface as
errors instead of being silently ignored.  Cocycle documents may omit
admissible entries, which default to exponent 0 with a warning.
"""

from __future__ import annotations

import json
import warnings

from .cocycle import PartialCocycle, admissible_triples
from .parcel import CHAINS, HOM_PAIRS, OBJECTS, Arrow, GroupParcelSpec, Parcel, from_group_spec
from .stratified_complex import StratifiedTriangulation, VertexTable


class DocumentError(ValueError):
    """Malformed input document."""


def _require_keys(doc: dict, required, optional=(), what="document"):
    if not isinstance(doc, dict):
        raise DocumentError(f"{what} must be an object, got {type(doc).__name__}")
    unknown = set(doc) - set(required) - set(optional)
    if unknown:
        raise DocumentError(f"{what} has unknown fields {sorted(unknown)}")
    missing = set(required) - set(doc)
    if missing:
        raise DocumentError(f"{what} is missing fields {sorted(missing)}")


# ---------------------------------------------------------------------------
# triangulations


def triangulation_to_doc(t: StratifiedTriangulation) -> dict:
    return {
        "vertices": [{"id": v, "dim": d} for v, d in enumerate(t.dims)],
        "tetrahedra": [list(tet) for tet in t.tetrahedra],
        "surface": [sorted(tri) for tri in sorted(t.surface_triangles, key=sorted)],
        "knot": [list(e) for e in t.knot_edges],
        "sigma_order": list(t.sigma_order),
        "bulk_order": list(t.bulk_order),
    }


def triangulation_from_doc(doc: dict) -> StratifiedTriangulation:
    _require_keys(
        doc,
        ("vertices", "tetrahedra", "surface", "knot", "sigma_order", "bulk_order"),
        what="triangulation",
    )
    seen: dict = {}
    for entry in doc["vertices"]:
        _require_keys(entry, ("id", "dim"), what="vertex entry")
        if entry["id"] in seen:
            raise DocumentError(f"vertex id {entry['id']} repeated")
        seen[entry["id"]] = entry["dim"]
    if sorted(seen) != list(range(len(seen))):
        raise DocumentError("vertex ids must be exactly 0..count-1")
    return StratifiedTriangulation(
        VertexTable(tuple(seen[v] for v in range(len(seen)))),
        tuple(tuple(tet) for tet in doc["tetrahedra"]),
        frozenset(frozenset(tri) for tri in doc["surface"]),
        tuple(tuple(e) for e in doc["knot"]),
        tuple(doc["sigma_order"]),
        tuple(doc["bulk_order"]),
    )


# ---------------------------------------------------------------------------
# parcels


def _pair_key(pair) -> str:
    return ",".join(str(x) for x in pair)


def parcel_to_doc(p: Parcel) -> dict:
    return {
        "hom": {_pair_key(pair): p.hom_sizes[pair] for pair in HOM_PAIRS},
        "compose": {_pair_key(chain): [list(row) for row in p.tables[chain]] for chain in CHAINS},
        "identity": {str(i): p.identities[i] for i in OBJECTS},
    }


def _parse_key(key: str, length: int, what: str):
    try:
        parts = tuple(int(x) for x in key.split(","))
    except ValueError:
        raise DocumentError(f"bad {what} key {key!r}") from None
    if len(parts) != length or any(x not in OBJECTS for x in parts):
        raise DocumentError(f"bad {what} key {key!r}")
    return parts


def parcel_from_doc(doc: dict) -> Parcel:
    _require_keys(doc, (), ("hom", "compose", "identity", "group_spec"), what="parcel")
    if "group_spec" in doc:
        if set(doc) != {"group_spec"}:
            raise DocumentError("group_spec excludes the explicit-table fields")
        spec = doc["group_spec"]
        _require_keys(spec, ("table", "g1", "g2", "g3", "x12", "x23"), what="group_spec")
        return from_group_spec(
            GroupParcelSpec(
                tuple(tuple(row) for row in spec["table"]),
                tuple(spec["g1"]),
                tuple(spec["g2"]),
                tuple(spec["g3"]),
                tuple(spec["x12"]),
                tuple(spec["x23"]),
            )
        )
    _require_keys(doc, ("hom", "compose", "identity"), what="parcel")
    hom = {_parse_key(k, 2, "hom"): v for k, v in doc["hom"].items()}
    tables = {
        _parse_key(k, 3, "compose"): tuple(tuple(row) for row in v)
        for k, v in doc["compose"].items()
    }
    identities = {int(k): v for k, v in doc["identity"].items()}
    return Parcel(hom, tables, identities)


# ---------------------------------------------------------------------------
# cocycles


def cocycle_to_doc(a: PartialCocycle) -> dict:
    entries = [
        {
            "chain": [f.src, f.tgt, g.tgt, h.tgt],
            "idx": [f.idx, g.idx, h.idx],
            "exponent": e,
        }
        for (f, g, h), e in sorted(a.table.items())
    ]
    return {"order": a.order, "entries": entries}


def cocycle_from_doc(doc: dict, p: Parcel) -> PartialCocycle:
    _require_keys(doc, ("order", "entries"), what="cocycle")
    order = doc["order"]
    if not isinstance(order, int) or order < 1:
        raise DocumentError(f"order must be a positive integer, got {order!r}")
    admissible = set(admissible_triples(p))
    table: dict = {}
    for entry in doc["entries"]:
        _require_keys(entry, ("chain", "idx", "exponent"), what="cocycle entry")
        i, j, k, l = entry["chain"]
        a, b, c = entry["idx"]
        triple = (Arrow(i, j, a), Arrow(j, k, b), Arrow(k, l, c))
        if triple not in admissible:
            raise DocumentError(f"entry {entry} is outside the admissible domain")
        if triple in table:
            raise DocumentError(f"entry {entry} repeats a triple")
        table[triple] = entry["exponent"] % order
    missing = admissible - set(table)
    if missing:
        warnings.warn(
            f"cocycle document omits {len(missing)} admissible entries; defaulting to exponent 0",
            stacklevel=2,
        )
        for triple in missing:
            table[triple] = 0
    return PartialCocycle(p, order, table)


# ---------------------------------------------------------------------------
# files


def load_doc(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def save_doc(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
