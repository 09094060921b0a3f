from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from _oracles import brute_lub
from _strategies import posets
from bourbaki.errors import AxiomViolation, CycleDetected, EmptySubset, HostMismatch, UnknownElement
from bourbaki.poset import (
    ClassifiedSubset,
    ElementKind,
    NotAChain,
    OrderedSubset,
    classify_subset,
    close_covers,
    is_initial_segment,
    leq,
    lub,
    ordered_subset,
    segments,
    strict_upper_cone,
    successor_in,
    validate_poset,
)


def test_validate_chain3_adds_reflexive_pairs():
    p = validate_poset(["a", "b", "c"], {("a", "b"), ("b", "c"), ("a", "c")})
    assert all(p.leq(x, x) for x in p)
    assert sorted(p.pairs()) == [("a", "b"), ("a", "c"), ("b", "c")]


def test_validate_accepts_explicit_reflexive_pairs():
    p = validate_poset(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b")])
    assert p == validate_poset(["a", "b"], [("a", "b")])


def test_validate_antisymmetry_violation():
    with pytest.raises(AxiomViolation) as exc:
        validate_poset(["x", "y"], {("x", "y"), ("y", "x")})
    assert exc.value.axiom == "antisymmetry"
    assert exc.value.witness == ("x", "y")


def test_validate_transitivity_violation_names_missing_pair():
    with pytest.raises(AxiomViolation) as exc:
        validate_poset(["a", "b", "c"], {("a", "b"), ("b", "c")})
    assert exc.value.axiom == "transitivity"
    assert exc.value.witness == ("a", "c")


def test_validate_reflexivity_when_not_auto_added():
    with pytest.raises(AxiomViolation) as exc:
        validate_poset(["a"], [], add_reflexive=False)
    assert exc.value.axiom == "reflexivity"


def test_validate_unknown_element():
    with pytest.raises(UnknownElement):
        validate_poset(["a"], [("a", "z")])


def test_close_covers_diamond_matches_reachability(diamond):
    covers = [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")]
    closure = nx.transitive_closure(nx.DiGraph(covers))
    assert sorted(diamond.pairs()) == sorted(closure.edges())
    assert len(diamond.pairs()) == 5
    assert sum(diamond.leq(x, y) for x in diamond for y in diamond) == 9


def test_close_covers_empty_is_antichain(antichain2):
    assert antichain2.pairs() == []
    assert antichain2 == close_covers(["x", "y"], [])


def test_close_covers_rejects_cycle():
    with pytest.raises(CycleDetected) as exc:
        close_covers(["a", "b"], [("a", "b"), ("b", "a")])
    assert set(exc.value.cycle) == {"a", "b"}


@pytest.mark.parametrize(
    "x, y, expected",
    [("bot", "top", True), ("l", "r", False), ("top", "bot", False), ("l", "l", True)],
)
def test_leq_diamond(diamond, x, y, expected):
    assert leq(diamond, x, y) is expected


def test_leq_reflexive_chain(chain3):
    assert leq(chain3, "b", "b")


def test_leq_unknown(chain3):
    with pytest.raises(UnknownElement):
        leq(chain3, "a", "zz")


def test_strict_upper_cones(diamond, vee):
    assert strict_upper_cone(diamond, "bot") == {y for y in diamond if diamond.lt("bot", y)} == {"l", "r", "top"}
    assert strict_upper_cone(diamond, "top") == frozenset()
    assert strict_upper_cone(vee, "bot") == {"l", "r"}


def test_lub_examples(diamond, vee, chain3):
    assert lub(diamond, {"l", "r"}) == "top" == brute_lub(diamond, {"l", "r"})
    assert lub(vee, {"l", "r"}) is None
    assert brute_lub(vee, {"l", "r"}) is None
    assert lub(chain3, {"a", "b"}) == "b"


def test_lub_of_empty_set_is_rejected(chain3):
    with pytest.raises(EmptySubset):
        lub(chain3, [])


def test_classify_chain_in_diamond(diamond):
    result = classify_subset(diamond, {"top", "bot", "l"})
    assert isinstance(result, ClassifiedSubset)
    assert result.subset.members == ("bot", "l", "top")
    assert result.kinds == (ElementKind("least"), ElementKind("successor", "bot"), ElementKind("successor", "l"))


def test_classify_non_chain(diamond):
    assert classify_subset(diamond, ["l", "r"]) == NotAChain(("l", "r"))


def test_classify_singleton(chain3):
    result = classify_subset(chain3, ["c"])
    assert result.subset.members == ("c",) and result.kinds == (ElementKind("least"),)


def test_classify_empty(chain3):
    with pytest.raises(EmptySubset):
        classify_subset(chain3, [])


def test_segments(chain3, diamond):
    Y = OrderedSubset(chain3, ("a", "b", "c"))
    IS, WIS = segments(Y, "b")
    assert IS.members == ("a",) and WIS.members == ("a", "b")
    IS, WIS = segments(Y, "a")
    assert IS.members == () and WIS.members == ("a",)
    Z = ordered_subset(diamond, ["top", "bot", "l"])
    IS, WIS = segments(Z, "top")
    assert IS.members == ("bot", "l") and WIS.members == ("bot", "l", "top")
    with pytest.raises(UnknownElement):
        segments(Y, "zz")


def test_successor_in(chain3, diamond):
    Y = OrderedSubset(chain3, ("a", "b", "c"))
    assert successor_in(Y, "a") == "b"
    assert successor_in(Y, "c") is None
    assert successor_in(OrderedSubset(diamond, ("bot", "top")), "bot") == "top"


def test_is_initial_segment_examples(diamond, chain3):
    B = ordered_subset(diamond, ["bot", "l", "top"])
    assert is_initial_segment(ordered_subset(diamond, ["bot"]), B)
    assert not is_initial_segment(ordered_subset(diamond, ["bot", "top"]), B)
    ab = ordered_subset(chain3, ["a", "b"])
    assert is_initial_segment(ab, ab)


def test_is_initial_segment_host_mismatch(diamond, chain3):
    with pytest.raises(HostMismatch):
        is_initial_segment(ordered_subset(diamond, ["bot"]), ordered_subset(chain3, ["a"]))


@given(posets())
def test_axioms_hold(p):
    for x in p:
        assert p.leq(x, x)
        for y in p:
            if p.leq(x, y) and p.leq(y, x):
                assert x == y
            for z in p:
                if p.leq(x, y) and p.leq(y, z):
                    assert p.leq(x, z)


@given(posets())
def test_validate_round_trip(p):
    assert validate_poset(p.elements, p.pairs()) == p


@given(posets(max_size=5))
def test_lub_agrees_with_brute_force_and_is_unique(p):
    for r in (1, 2, 3):
        for subset in combinations(p.elements, r):
            u = lub(p, subset)
            assert u == brute_lub(p, subset)
            if u is not None:
                others = [
                    v for v in p
                    if all(p.leq(a, v) for a in subset)
                    and all(p.leq(v, w) for w in p if all(p.leq(a, w) for a in subset))
                ]
                assert others == [u]


@given(posets(max_size=5))
def test_finite_chain_lub_is_max(p):
    for r in range(1, len(p) + 1):
        for subset in combinations(p.elements, r):
            result = classify_subset(p, subset)
            if isinstance(result, ClassifiedSubset):
                assert lub(p, subset) == result.subset.largest
                assert all(k.kind != "limit" for k in result.kinds)


@given(posets(max_size=5))
def test_segment_laws(p):
    for r in range(1, len(p) + 1):
        for subset in combinations(p.elements, r):
            result = classify_subset(p, subset)
            if isinstance(result, NotAChain):
                continue
            Y = result.subset
            assert segments(Y, Y.least)[0].members == ()
            for y in Y:
                IS, WIS = segments(Y, y)
                assert set(WIS.members) == set(IS.members) | {y}


@given(posets(max_size=5))
def test_initial_segment_is_a_partial_order_on_chains(p):
    chains = []
    for r in range(1, len(p) + 1):
        for subset in combinations(p.elements, r):
            result = classify_subset(p, subset)
            if isinstance(result, ClassifiedSubset):
                chains.append(result.subset)
    for A in chains:
        assert is_initial_segment(A, A)
        for B in chains:
            if is_initial_segment(A, B) and is_initial_segment(B, A):
                assert A == B
            for C in chains:
                if is_initial_segment(A, B) and is_initial_segment(B, C):
                    assert is_initial_segment(A, C)
