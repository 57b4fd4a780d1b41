"""JSON documents for lattices, cones, polytopes, nef-partitions and reports.

Every number is written as an exact string (``"3"``, ``"-1/2"``). On input,
JSON integers are accepted too, floats never are. Errors carry a JSON
pointer to the offending value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cone import Cone, LatticePolytope, cone_from_rays
from .errors import DocumentError, GconeError
from .lattice import Lattice
from .nefpart import NefPartition, make_nef_partition

SCHEMA_VERSION = "1"
KINDS = ("lattice", "cone", "polytope", "nef_partition", "report")


@dataclass(frozen=True)
class Document:
    kind: str
    payload: object
    schema_version: str = SCHEMA_VERSION


# ---------------------------------------------------------------------------
# writing
# ---------------------------------------------------------------------------

def number(x) -> str:
    return str(Fraction(x))


def _vectors(vs) -> list:
    return [[number(x) for x in v] for v in vs]


def lattice_json(L: Lattice) -> dict:
    return {"ambient_dim": L.ambient_dim, "basis": _vectors(L.basis)}


def cone_json(c: Cone) -> dict:
    out = {"lattice": lattice_json(c.lattice_M), "rays": _vectors(c.rays)}
    if c.lineality:
        out["lineality"] = _vectors(c.lineality)
    out["facets"] = _vectors(c.facets)
    if c.equations:
        out["equations"] = _vectors(c.equations)
    return out


def polytope_json(P: LatticePolytope) -> dict:
    return {"lattice": lattice_json(P.lattice), "vertices": _vectors(P.vertices)}


def nef_partition_json(np_: NefPartition) -> dict:
    return {
        "delta": polytope_json(np_.delta),
        "rays": _vectors(np_.rays),
        "partition": [[j + 1 for j in block] for block in np_.partition],
    }


def to_json(obj) -> dict:
    """The document for ``obj``, with ``kind`` and ``schema_version``."""
    if isinstance(obj, Document):
        kind, payload = obj.kind, obj.payload
    elif isinstance(obj, Lattice):
        kind, payload = "lattice", obj
    elif isinstance(obj, Cone):
        kind, payload = "cone", obj
    elif isinstance(obj, LatticePolytope):
        kind, payload = "polytope", obj
    elif isinstance(obj, NefPartition):
        kind, payload = "nef_partition", obj
    elif isinstance(obj, list):
        kind, payload = "report", obj
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    body = {
        "lattice": lattice_json,
        "cone": cone_json,
        "polytope": polytope_json,
        "nef_partition": nef_partition_json,
        "report": lambda entries: {"entries": [dict(e) for e in entries]},
    }[kind](payload)
    return {"kind": kind, "schema_version": SCHEMA_VERSION, **body}


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_json(obj), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# reading
# ---------------------------------------------------------------------------

def _at(ptr: str, key) -> str:
    key = str(key).replace("~", "~0").replace("/", "~1")
    return f"{ptr}/{key}"


def _field(doc: dict, key: str, ptr: str, required: bool = True):
    if key not in doc:
        if required:
            raise DocumentError(f"missing field {key!r}", ptr or "/")
        return None
    return doc[key]


def parse_number(x, ptr: str) -> Fraction:
    if isinstance(x, bool):
        raise DocumentError("expected a number, got a boolean", ptr)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"not an exact rational: {x!r}", ptr) from None
    if isinstance(x, float):
        raise DocumentError("floats are not allowed; write exact rationals as strings", ptr)
    raise DocumentError(f"expected a number, got {type(x).__name__}", ptr)


def _object(x, ptr: str) -> dict:
    if not isinstance(x, dict):
        raise DocumentError("expected an object", ptr or "/")
    return x


def _list(x, ptr: str) -> list:
    if not isinstance(x, list):
        raise DocumentError("expected an array", ptr)
    return x


def parse_vectors(x, ptr: str, dim: int | None = None) -> list[tuple]:
    out = []
    for i, row in enumerate(_list(x, ptr)):
        p = _at(ptr, i)
        vals = tuple(parse_number(v, _at(p, j)) for j, v in enumerate(_list(row, p)))
        if dim is not None and len(vals) != dim:
            raise DocumentError(f"dimension mismatch: expected length {dim}, got {len(vals)}", p)
        out.append(vals)
    return out


def _wrap(ptr: str, fn, *args):
    """Run a constructor, turning library errors into pointer-tagged errors."""
    try:
        return fn(*args)
    except DocumentError:
        raise
    except GconeError as exc:
        raise DocumentError(str(exc), ptr or "/") from None


def parse_lattice(doc, ptr: str = "") -> Lattice:
    doc = _object(doc, ptr)
    basis = parse_vectors(_field(doc, "basis", ptr), _at(ptr, "basis"))
    dim = _field(doc, "ambient_dim", ptr, required=False)
    if dim is None:
        dim = len(basis)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise DocumentError("ambient_dim must be a nonnegative integer", _at(ptr, "ambient_dim"))
    for i, row in enumerate(basis):
        if len(row) != dim:
            raise DocumentError(f"dimension mismatch: expected length {dim}, got {len(row)}",
                                _at(_at(ptr, "basis"), i))
    return _wrap(_at(ptr, "basis"), Lattice, tuple(basis), dim)


def parse_cone(doc, ptr: str = "") -> Cone:
    doc = _object(doc, ptr)
    L = parse_lattice(_field(doc, "lattice", ptr), _at(ptr, "lattice"))
    n = L.ambient_dim
    rays = parse_vectors(_field(doc, "rays", ptr), _at(ptr, "rays"), n)
    lin = parse_vectors(doc.get("lineality", []), _at(ptr, "lineality"), n)
    gens = rays + lin + [tuple(-x for x in v) for v in lin]
    c = _wrap(_at(ptr, "rays"), cone_from_rays, L, gens)
    # optional redundant descriptions must agree with the recomputed ones
    for key, have in (("facets", c.facets), ("equations", c.equations)):
        if key in doc:
            given = parse_vectors(doc[key], _at(ptr, key), n)
            if sorted(set(given)) != sorted(have):
                raise DocumentError(f"{key} do not match the rays", _at(ptr, key))
    return c


def parse_polytope(doc, ptr: str = "") -> LatticePolytope:
    doc = _object(doc, ptr)
    L = parse_lattice(_field(doc, "lattice", ptr), _at(ptr, "lattice"))
    verts = parse_vectors(_field(doc, "vertices", ptr), _at(ptr, "vertices"), L.ambient_dim)
    if not verts:
        raise DocumentError("a polytope needs at least one vertex", _at(ptr, "vertices"))
    return _wrap(_at(ptr, "vertices"), LatticePolytope, L, tuple(verts))


def parse_partition(x, ptr: str) -> list[tuple]:
    """1-based blocks, from a nested array or a ``"1,2/3,4"`` string."""
    if isinstance(x, str):
        try:
            return [tuple(int(j) - 1 for j in block.split(",")) for block in x.split("/")]
        except ValueError:
            raise DocumentError(f"malformed partition {x!r}", ptr) from None
    blocks = []
    for i, block in enumerate(_list(x, ptr)):
        p = _at(ptr, i)
        row = []
        for j, v in enumerate(_list(block, p)):
            if isinstance(v, bool) or not isinstance(v, int):
                raise DocumentError("partition entries must be integers", _at(p, j))
            row.append(v - 1)
        blocks.append(tuple(row))
    return blocks


def parse_nef_partition(doc, ptr: str = "") -> NefPartition:
    doc = _object(doc, ptr)
    delta = parse_polytope(_field(doc, "delta", ptr), _at(ptr, "delta"))
    rays = None
    if "rays" in doc:
        rays = parse_vectors(doc["rays"], _at(ptr, "rays"), delta.ambient_dim)
    blocks = parse_partition(_field(doc, "partition", ptr), _at(ptr, "partition"))
    return _wrap(_at(ptr, "partition"), make_nef_partition, delta, blocks, rays)


def parse_report(doc, ptr: str = "") -> list[dict]:
    doc = _object(doc, ptr)
    out = []
    for i, e in enumerate(_list(_field(doc, "entries", ptr), _at(ptr, "entries"))):
        p = _at(_at(ptr, "entries"), i)
        e = _object(e, p)
        entry = {}
        for key in ("fixture", "status", "detail"):
            v = _field(e, key, p)
            if not isinstance(v, str):
                raise DocumentError(f"{key} must be a string", _at(p, key))
            entry[key] = v
        if entry["status"] not in ("pass", "fail"):
            raise DocumentError("status must be 'pass' or 'fail'", _at(p, "status"))
        out.append(entry)
    return out


_PARSERS = {
    "lattice": parse_lattice,
    "cone": parse_cone,
    "polytope": parse_polytope,
    "nef_partition": parse_nef_partition,
    "report": parse_report,
}


def from_json(doc) -> Document:
    doc = _object(doc, "")
    kind = _field(doc, "kind", "")
    if kind not in _PARSERS:
        raise DocumentError(f"unknown kind {kind!r}", "/kind")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if not isinstance(version, str) or not version.isdigit():
        raise DocumentError(f"malformed schema_version {version!r}", "/schema_version")
    if int(version) > int(SCHEMA_VERSION):
        raise DocumentError(f"unsupported future schema_version {version}", "/schema_version")
    return Document(kind, _PARSERS[kind](doc), version)


def parse(data: bytes | str) -> Document:
    """Parse a UTF-8 JSON document into a typed :class:`Document`."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"input is not UTF-8: {exc}", "/") from None
    try:
        doc = json.loads(data, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}", "/") from None
    return from_json(doc)


class _Float(float):
    """Marker for floats in the raw JSON, rejected by :func:`parse_number`."""


def _reject_float(text: str):
    return _Float(text)


def loads(data: bytes | str):
    """The payload of a document."""
    return parse(data).payload
