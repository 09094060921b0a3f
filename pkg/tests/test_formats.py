import json
import re

import networkx as nx
import pytest
from hypothesis import given

from _strategies import posets
from bourbaki.errors import AxiomViolation, CycleDetected, SchemaError
from bourbaki.fixtures import ANTICHAIN2
from bourbaki.maps import SelfMap
from bourbaki.formats import (
    certificate_to_json,
    export_dot,
    parse_map_doc,
    parse_poset_doc,
    serialize_map,
    serialize_poset,
)
from bourbaki.ordinal import ord_parse
from bourbaki.providers import clamped_successor, make_ordinal_interval
from bourbaki.tower import build_tower_transfinite


def test_parse_leq_chain():
    p = parse_poset_doc('{"elements":["a","b"],"relation_kind":"leq","pairs":[["a","b"]]}')
    assert p.leq("a", "b") and not p.leq("b", "a")


def test_parse_cover_antichain():
    assert parse_poset_doc('{"elements":["x","y"],"relation_kind":"cover","pairs":[]}') == ANTICHAIN2


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"relation_kind": "leq", "pairs": []}, "/elements"),
        ({"elements": ["a"], "pairs": []}, "/relation_kind"),
        ({"elements": ["a"], "relation_kind": "order", "pairs": []}, "/relation_kind"),
        ({"elements": ["a", "a"], "relation_kind": "leq", "pairs": []}, "/elements"),
        ({"elements": ["a b"], "relation_kind": "leq", "pairs": []}, "/elements/0"),
        ({"elements": ["a"], "relation_kind": "leq", "pairs": [["a"]]}, "/pairs/0"),
        ({"elements": ["a"], "relation_kind": "leq", "pairs": [["a", "z"]]}, "/pairs/0/1"),
        ([], "/"),
    ],
)
def test_schema_errors(doc, path):
    with pytest.raises(SchemaError) as exc:
        parse_poset_doc(json.dumps(doc))
    assert exc.value.path == path


def test_invalid_json():
    with pytest.raises(SchemaError):
        parse_poset_doc("{")


def test_axiom_errors_propagate():
    with pytest.raises(AxiomViolation):
        parse_poset_doc('{"elements":["a","b"],"relation_kind":"leq","pairs":[["a","b"],["b","a"]]}')
    with pytest.raises(CycleDetected):
        parse_poset_doc('{"elements":["a","b"],"relation_kind":"cover","pairs":[["a","b"],["b","a"]]}')


@given(posets())
def test_poset_round_trip(p):
    doc = json.loads(serialize_poset(p))
    assert doc["relation_kind"] == "leq"
    assert parse_poset_doc(serialize_poset(p)) == p


def test_map_round_trip(diamond, diamond_climb):
    assert parse_map_doc(serialize_map(diamond_climb), diamond) == diamond_climb


def test_map_must_be_total(diamond):
    with pytest.raises(SchemaError) as exc:
        parse_map_doc('{"assignment": {"bot": "l"}}', diamond)
    assert exc.value.path == "/assignment"
    with pytest.raises(SchemaError):
        parse_map_doc('{"assignment": {"bot": "zz", "l": "l", "r": "r", "top": "top"}}', diamond)


def test_serialize_map_needs_table():
    with pytest.raises(ValueError):
        serialize_map(SelfMap(lambda x: x))


def _dot_edges(text):
    return set(re.findall(r'"([^"]+)" -> "([^"]+)"', text))


def _dot_nodes(text):
    return set(re.findall(r'^\s*"([^"]+)";$', text, re.M))


@pytest.mark.parametrize(
    "poset, edges",
    [
        ("chain3", {("a", "b"), ("b", "c")}),
        ("antichain2", set()),
        ("diamond", {("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")}),
    ],
)
def test_export_dot_examples(request, poset, edges):
    p = request.getfixturevalue(poset)
    text = export_dot(p)
    assert text.startswith("digraph")
    assert _dot_edges(text) == edges
    assert _dot_nodes(text) == set(p.elements)


@given(posets(max_size=7))
def test_export_dot_is_transitive_reduction(p):
    g = nx.DiGraph()
    g.add_nodes_from(p.elements)
    g.add_edges_from(p.pairs())
    assert _dot_edges(export_dot(p)) == set(nx.transitive_reduction(g).edges())


def test_certificate_json_uses_ordinal_grammar():
    interval = make_ordinal_interval(ord_parse("w+2"))
    cert = build_tower_transfinite(interval, clamped_successor(interval), ord_parse("0"))
    doc = certificate_to_json(cert)
    kinds = {s["kind"] for s in doc["tower"]["stages"]}
    assert kinds == {"base", "successor", "limit"}
    limit = next(s for s in doc["tower"]["stages"] if s["kind"] == "limit")
    assert limit["index"] == "w" and limit["element"] == "w"
    assert doc["omega"] == "w+2"
    json.dumps(doc)
