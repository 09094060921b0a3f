"""JSON documents for posets and maps, DOT export, and JSON views of results.

Poset document::

    {"name": "DIAMOND", "elements": ["bot", "l", "r", "top"],
     "relation_kind": "cover", "pairs": [["bot", "l"], ["bot", "r"], ...]}

``relation_kind`` is ``"cover"`` (closed on load) or ``"leq"`` (validated as
given, reflexive pairs optional).  Map document::

    {"name": "climb", "assignment": {"bot": "l", "l": "top", ...}}
"""

from __future__ import annotations

import json
from typing import Any

from .errors import SchemaError
from .maps import SelfMap
from .ordinal import Ordinal, ord_format
from .poset import FinitePoset, close_covers, validate_poset
from .tower import FixedPointCertificate, SegmentRelation, TowerCheck, TowerTrace

RELATION_KINDS = ("cover", "leq")


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"invalid JSON: {exc.msg} (line {exc.lineno})") from None


def _label(value, path: str) -> str:
    if not isinstance(value, str) or not value or any(ch.isspace() for ch in value):
        raise SchemaError(path, "labels must be nonempty strings without whitespace")
    return value


def parse_poset_doc(text: str) -> FinitePoset:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise SchemaError("/", "document must be a JSON object")
    for key in ("elements", "relation_kind", "pairs"):
        if key not in doc:
            raise SchemaError(f"/{key}", "required key is missing")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError("/name", "must be a string")
    if not isinstance(doc["elements"], list):
        raise SchemaError("/elements", "must be a list of labels")
    elements = [_label(e, f"/elements/{i}") for i, e in enumerate(doc["elements"])]
    if len(set(elements)) != len(elements):
        raise SchemaError("/elements", "labels must be unique")
    kind = doc["relation_kind"]
    if kind not in RELATION_KINDS:
        raise SchemaError("/relation_kind", f"must be one of {list(RELATION_KINDS)}")
    if not isinstance(doc["pairs"], list):
        raise SchemaError("/pairs", "must be a list of [x, y] pairs")
    declared = set(elements)
    pairs = []
    for i, pair in enumerate(doc["pairs"]):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError(f"/pairs/{i}", "must be a 2-element list")
        for j, label in enumerate(pair):
            if _label(label, f"/pairs/{i}/{j}") not in declared:
                raise SchemaError(f"/pairs/{i}/{j}", f"undeclared label {label!r}")
        pairs.append((pair[0], pair[1]))
    if kind == "cover":
        return close_covers(elements, pairs, name=name)
    return validate_poset(elements, pairs, name=name)


def poset_to_doc(p: FinitePoset) -> dict:
    doc = {"name": p.name} if p.name else {}
    doc.update(elements=list(p.elements), relation_kind="leq", pairs=[list(pair) for pair in p.pairs()])
    return doc


def serialize_poset(p: FinitePoset) -> str:
    return json.dumps(poset_to_doc(p), indent=2)


def parse_map_doc(text: str, p: FinitePoset) -> SelfMap:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise SchemaError("/", "document must be a JSON object")
    if "assignment" not in doc:
        raise SchemaError("/assignment", "required key is missing")
    assignment = doc["assignment"]
    if not isinstance(assignment, dict):
        raise SchemaError("/assignment", "must be an object mapping labels to labels")
    for x, y in assignment.items():
        _label(y, f"/assignment/{x}")
        if x not in p:
            raise SchemaError(f"/assignment/{x}", f"undeclared label {x!r}")
        if y not in p:
            raise SchemaError(f"/assignment/{x}", f"undeclared label {y!r}")
    missing = [x for x in p.elements if x not in assignment]
    if missing:
        raise SchemaError("/assignment", f"map is not total, missing {missing}")
    name = doc.get("name")
    return SelfMap.from_table(p, assignment, name=name if isinstance(name, str) else None)


def serialize_map(f: SelfMap) -> str:
    if f.table is None:
        raise ValueError("only explicit finite maps can be serialized")
    doc = {"name": f.name} if f.name else {}
    doc["assignment"] = dict(f.table)
    return json.dumps(doc, indent=2)


def _dot_id(label: str) -> str:
    return json.dumps(label)


def export_dot(p: FinitePoset) -> str:
    """Hasse diagram in DOT syntax: one node per element, one edge per cover."""
    lines = [f"digraph {_dot_id(p.name or 'poset')} {{", "  rankdir=BT;"]
    lines += [f"  {_dot_id(x)};" for x in p.elements]
    lines += [f"  {_dot_id(x)} -> {_dot_id(y)};" for x, y in p.cover_pairs()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def element_to_json(x):
    if isinstance(x, Ordinal):
        return ord_format(x)
    if isinstance(x, tuple):
        return list(x)
    return x


def trace_to_json(trace: TowerTrace) -> dict:
    return {
        "base": element_to_json(trace.base),
        "stages": [
            {"index": ord_format(s.index), "element": element_to_json(s.element), "kind": s.kind.value}
            for s in trace.stages
        ],
    }


def certificate_to_json(cert: FixedPointCertificate) -> dict:
    return {
        "omega": element_to_json(cert.omega),
        "tower": trace_to_json(cert.tower),
        "checks": {
            "omega_in_tower": cert.checks.omega_in_tower,
            "fixed": cert.checks.fixed,
            "omega_is_lub": cert.checks.omega_is_lub,
        },
        "valid": cert.valid,
    }


def check_to_json(check: TowerCheck) -> dict:
    if check.valid:
        return {"valid": True}
    return {
        "valid": False,
        "condition": check.condition,
        "witness": [element_to_json(w) for w in check.witness or ()],
    }


def relation_to_json(rel: SegmentRelation) -> dict:
    return {"relation": rel.relation, "common_prefix": [element_to_json(x) for x in rel.common_prefix]}
