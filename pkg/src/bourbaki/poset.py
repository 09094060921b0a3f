"""Finite partially ordered sets and the order-theoretic primitives on them.

A :class:`FinitePoset` stores its relation as one integer bitmask per element:
bit ``j`` of ``up[i]`` is set iff ``elements[i] <= elements[j]``.  Elements
keep their declaration index, and every tie-break in the package uses it.
"""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Iterator, Sequence

from .errors import AxiomViolation, CycleDetected, EmptySubset, HostMismatch, UnknownElement

ElementId = str


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """An immutable, validated finite poset.  Build it with :func:`validate_poset`."""

    __slots__ = ("elements", "name", "_index", "_up", "_down")

    def __init__(self, elements: Sequence[ElementId], up: Sequence[int], name: str | None = None):
        self.elements: tuple[ElementId, ...] = tuple(elements)
        self.name = name
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._up: tuple[int, ...] = tuple(up)
        down = [0] * len(self.elements)
        for i, row in enumerate(self._up):
            for j in _bits(row):
                down[j] |= 1 << i
        self._down: tuple[int, ...] = tuple(down)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self) -> int:
        return hash((self.elements, self._up))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FinitePoset{label} {list(self.elements)} covers={self.cover_pairs()}>"

    def index(self, x: ElementId) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownElement(x) from None

    def up_mask(self, x: ElementId) -> int:
        return self._up[self.index(x)]

    def down_mask(self, x: ElementId) -> int:
        return self._down[self.index(x)]

    def labels(self, mask: int) -> list[ElementId]:
        """Labels of the set bits of ``mask``, in declaration order."""
        return [self.elements[i] for i in _bits(mask)]

    def mask(self, xs: Iterable[ElementId]) -> int:
        m = 0
        for x in xs:
            m |= 1 << self.index(x)
        return m

    def leq(self, x: ElementId, y: ElementId) -> bool:
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def lt(self, x: ElementId, y: ElementId) -> bool:
        return x != y and self.leq(x, y)

    def pairs(self) -> list[tuple[ElementId, ElementId]]:
        """All non-reflexive pairs ``(x, y)`` with ``x < y``."""
        return [
            (x, self.elements[j])
            for i, x in enumerate(self.elements)
            for j in _bits(self._up[i] & ~(1 << i))
        ]

    def cover_pairs(self) -> list[tuple[ElementId, ElementId]]:
        """The transitive reduction: ``(x, y)`` with ``x < y`` and nothing strictly between."""
        n = len(self.elements)
        strict = [self._up[i] & ~(1 << i) for i in range(n)]
        covers = []
        for i in range(n):
            implied = 0
            for j in _bits(strict[i]):
                implied |= strict[j]
            covers.extend((self.elements[i], self.elements[j]) for j in _bits(strict[i] & ~implied))
        return covers


def _check_labels(elements: Sequence[ElementId]) -> dict[ElementId, int]:
    index: dict[ElementId, int] = {}
    for e in elements:
        if not isinstance(e, str) or not e:
            raise ValueError(f"element labels must be nonempty strings, got {e!r}")
        if e in index:
            raise ValueError(f"duplicate element label {e!r}")
        index[e] = len(index)
    return index


def validate_poset(
    elements: Sequence[ElementId],
    leq_pairs: Iterable[tuple[ElementId, ElementId]],
    *,
    add_reflexive: bool = True,
    name: str | None = None,
) -> FinitePoset:
    """Validate an explicit order relation and return the poset.

    Reflexive pairs are added automatically unless ``add_reflexive`` is false,
    in which case a missing ``(x, x)`` raises ``AxiomViolation('reflexivity')``.
    """
    index = _check_labels(elements)
    n = len(index)
    up = [0] * n
    for x, y in leq_pairs:
        if x not in index:
            raise UnknownElement(x)
        if y not in index:
            raise UnknownElement(y)
        up[index[x]] |= 1 << index[y]

    for i in range(n):
        if not up[i] >> i & 1:
            if not add_reflexive:
                raise AxiomViolation("reflexivity", (elements[i], elements[i]))
            up[i] |= 1 << i

    for i in range(n):
        for j in _bits(up[i]):
            if j > i and up[j] >> i & 1:
                raise AxiomViolation("antisymmetry", (elements[i], elements[j]))

    for i in range(n):
        for j in _bits(up[i]):
            missing = up[j] & ~up[i]
            if missing:
                k = (missing & -missing).bit_length() - 1
                x, y, z = elements[i], elements[j], elements[k]
                raise AxiomViolation(
                    "transitivity",
                    (x, z),
                    f"transitivity violated: {x} <= {y} and {y} <= {z} but ({x}, {z}) is missing",
                )
    return FinitePoset(elements, up, name=name)


def close_covers(
    elements: Sequence[ElementId],
    cover_pairs: Iterable[tuple[ElementId, ElementId]],
    *,
    name: str | None = None,
) -> FinitePoset:
    """Reflexive-transitive closure of a Hasse diagram."""
    index = _check_labels(elements)
    succ: dict[ElementId, set[ElementId]] = {e: set() for e in elements}
    preds: dict[ElementId, set[ElementId]] = {e: set() for e in elements}
    for x, y in cover_pairs:
        if x not in index:
            raise UnknownElement(x)
        if y not in index:
            raise UnknownElement(y)
        succ[x].add(y)
        preds[y].add(x)
    try:
        # static_order() lists predecessors first; reversed, every node follows its successors
        order = list(TopologicalSorter(preds).static_order())
    except CycleError as exc:
        raise CycleDetected(tuple(exc.args[1])) from None

    up = [0] * len(index)
    for x in reversed(order):
        i = index[x]
        row = 1 << i
        for y in succ[x]:
            row |= up[index[y]]
        up[i] = row
    closed = FinitePoset(elements, up)
    return validate_poset(elements, closed.pairs(), name=name)


def leq(p: FinitePoset, x: ElementId, y: ElementId) -> bool:
    return p.leq(x, y)


def lt(p: FinitePoset, x: ElementId, y: ElementId) -> bool:
    return p.lt(x, y)


def strict_upper_cone(p: FinitePoset, x: ElementId) -> frozenset[ElementId]:
    """``{y | x < y}``; empty exactly when ``x`` is maximal."""
    i = p.index(x)
    return frozenset(p.labels(p.up_mask(x) & ~(1 << i)))


def maximal_elements(p: FinitePoset) -> list[ElementId]:
    return [x for x in p.elements if not strict_upper_cone(p, x)]


def lub(p: FinitePoset, subset: Iterable[ElementId]) -> ElementId | None:
    """Least upper bound of a nonempty subset, or ``None`` when it does not exist."""
    members = list(subset)
    if not members:
        raise EmptySubset("lub of the empty set is not defined here")
    bounds = -1
    for a in members:
        bounds &= p.up_mask(a)
    for i in _bits(bounds):
        if bounds & ~p._up[i] == 0:
            return p.elements[i]
    return None


@dataclass(frozen=True)
class OrderedSubset:
    """A chain of ``host``, with ``members`` strictly ascending."""

    host: FinitePoset
    members: tuple[ElementId, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __repr__(self) -> str:
        return f"OrderedSubset({list(self.members)})"

    @property
    def least(self) -> ElementId:
        return self.members[0]

    @property
    def largest(self) -> ElementId:
        return self.members[-1]


def ordered_subset(host: FinitePoset, members: Iterable[ElementId]) -> OrderedSubset:
    """Sort a chain of ``host`` ascending.  Raises ``ValueError`` for non-chains."""
    members = list(members)
    if not members:
        return OrderedSubset(host, ())
    result = classify_subset(host, members)
    if isinstance(result, NotAChain):
        raise ValueError(f"not a chain: {result.witness} are incomparable")
    return result.subset


@dataclass(frozen=True)
class ElementKind:
    """``least``, ``successor`` (with its predecessor) or ``limit``."""

    kind: str
    pred: ElementId | None = None

    def __str__(self) -> str:
        return f"successor-of({self.pred})" if self.kind == "successor" else self.kind


@dataclass(frozen=True)
class NotAChain:
    witness: tuple[ElementId, ElementId]


@dataclass(frozen=True)
class ClassifiedSubset:
    subset: OrderedSubset
    kinds: tuple[ElementKind, ...]

    def kind_of(self, x: ElementId) -> ElementKind:
        return self.kinds[self.subset.members.index(x)]


def classify_subset(p: FinitePoset, subset: Iterable[ElementId]) -> ClassifiedSubset | NotAChain:
    members = list(dict.fromkeys(subset))
    if not members:
        raise EmptySubset("cannot classify the empty subset")
    for x in members:
        p.index(x)
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            x, y = members[a], members[b]
            if not (p.leq(x, y) or p.leq(y, x)):
                return NotAChain((x, y))
    chosen = p.mask(members)
    # in a chain, an element's rank is the number of members below it
    ordered = sorted(members, key=lambda x: bin(p.down_mask(x) & chosen).count("1"))
    # a finite chain has no limit elements: everything past the minimum has an immediate predecessor
    kinds = [ElementKind("least")] + [ElementKind("successor", prev) for prev in ordered[:-1]]
    return ClassifiedSubset(OrderedSubset(p, tuple(ordered)), tuple(kinds))


def segments(Y: OrderedSubset, y: ElementId) -> tuple[OrderedSubset, OrderedSubset]:
    """``(IS_Y(y), WIS_Y(y))``."""
    if y not in Y.members:
        raise UnknownElement(y)
    k = Y.members.index(y)
    return OrderedSubset(Y.host, Y.members[:k]), OrderedSubset(Y.host, Y.members[: k + 1])


def successor_in(Y: OrderedSubset, y: ElementId) -> ElementId | None:
    if y not in Y.members:
        raise UnknownElement(y)
    k = Y.members.index(y)
    return Y.members[k + 1] if k + 1 < len(Y.members) else None


def is_initial_segment(A: OrderedSubset, B: OrderedSubset) -> bool:
    """True iff ``A`` is a subset of ``B`` closed downward inside ``B``."""
    if A.host != B.host:
        raise HostMismatch("subsets belong to different posets")
    p = A.host
    if not set(A.members) <= set(B.members):
        return False
    return all(b in A.members for a in A.members for b in B.members if p.lt(b, a))
