"""Bourbaki towers: checking, building, enumerating and comparing them.

A tower based at ``x0`` is a well-ordered ascent whose successor stages apply
``f`` and whose limit stages are least upper bounds of everything before them.
On a finite poset no limit stage can occur (a nonempty finite chain always has
a largest element), so the largest tower is just the orbit of ``x0`` up to its
first repetition.  Over providers with limit stages the builder runs blocks of
successor steps and, when a block runs out, jumps to the provider's closed-form
lub of the remaining orbit at index ``i + w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import pairwise
from typing import Any, Sequence

from .errors import (
    AccelerationUnavailable,
    BaseMismatch,
    BudgetExhausted,
    NotAscending,
    NotProgressive,
    TooLarge,
)
from .maps import SelfMap
from .ordinal import ZERO, Ordinal, ord_add_omega, ord_classify, ord_format, ord_successor
from .poset import FinitePoset, NotAChain, OrderedSubset, classify_subset
from .providers import FiniteAdapter, PosetProvider


class StageKind(str, Enum):
    BASE = "base"
    SUCCESSOR = "successor"
    LIMIT = "limit"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Stage:
    index: Ordinal
    element: Any
    kind: StageKind


@dataclass(frozen=True)
class TowerTrace:
    base: Any
    stages: tuple[Stage, ...]
    host: Any = field(default=None, compare=False, repr=False)

    @classmethod
    def positional(cls, host, elements: Sequence) -> TowerTrace:
        """A finite trace: first element is the base, the rest are successor stages."""
        stages = tuple(
            Stage(Ordinal.finite(i), x, StageKind.BASE if i == 0 else StageKind.SUCCESSOR)
            for i, x in enumerate(elements)
        )
        return cls(elements[0], stages, host)

    def __len__(self) -> int:
        return len(self.stages)

    @property
    def elements(self) -> tuple:
        return tuple(s.element for s in self.stages)

    @property
    def indices(self) -> tuple[Ordinal, ...]:
        return tuple(s.index for s in self.stages)

    @property
    def limit_stages(self) -> list[Stage]:
        return [s for s in self.stages if s.kind is StageKind.LIMIT]


@dataclass(frozen=True)
class CertificateChecks:
    omega_in_tower: bool
    fixed: bool
    omega_is_lub: bool

    def all(self) -> bool:
        return self.omega_in_tower and self.fixed and self.omega_is_lub


@dataclass(frozen=True)
class FixedPointCertificate:
    omega: Any
    tower: TowerTrace
    checks: CertificateChecks

    @property
    def valid(self) -> bool:
        return self.checks.all()


@dataclass(frozen=True)
class TowerCheck:
    """Outcome of :func:`check_tower`; truthy iff the candidate is a tower."""

    valid: bool
    condition: str | None = None  # "base" | "successor" | "limit"
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.valid


VALID = TowerCheck(True)

EQUAL = "equal"
FIRST_IN_SECOND = "first-initial-in-second"
SECOND_IN_FIRST = "second-initial-in-first"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class SegmentRelation:
    relation: str
    common_prefix: tuple


@dataclass(frozen=True)
class Budget:
    successor_steps_per_block: int = 1024
    max_accelerations: int = 64

    def __post_init__(self):
        if self.successor_steps_per_block < 1 or self.max_accelerations < 0:
            raise ValueError("budget must be positive")


def as_provider(host) -> PosetProvider:
    if isinstance(host, PosetProvider):
        return host
    if isinstance(host, FinitePoset):
        return FiniteAdapter(host)
    raise TypeError(f"cannot use {type(host).__name__} as an order oracle")


def check_tower(
    host,
    f: SelfMap,
    x0,
    candidate: Sequence,
    indices: Sequence[Ordinal] | None = None,
) -> TowerCheck:
    """Decide whether ``candidate`` is a Bourbaki ``f``-tower based at ``x0``.

    Without ``indices`` the stages are positional (base, then successors).
    With ``indices``, an index that is a limit ordinal marks a limit stage: its
    element must equal the lub of everything before it, which covers the
    unrecorded tail of the preceding orbit and is obtained from the provider's
    ``omega_orbit_lub``.
    """
    prov = as_provider(host)
    cand = list(candidate)
    if not cand:
        raise ValueError("candidate must be nonempty")
    for a, b in pairwise(cand):
        if not prov.lt(a, b):
            raise NotAscending((a, b))
    if indices is None:
        idx = [Ordinal.finite(i) for i in range(len(cand))]
    else:
        idx = list(indices)
        if len(idx) != len(cand) or idx[0] != ZERO or any(a >= b for a, b in pairwise(idx)):
            raise ValueError("indices must start at 0, increase strictly and match the candidate")

    if cand[0] != x0:
        return TowerCheck(False, "base", (cand[0], x0))

    for i in range(1, len(cand)):
        prev, y = cand[i - 1], cand[i]
        kind = ord_classify(idx[i])
        if kind.kind == "successor":
            if kind.predecessor != idx[i - 1]:
                return TowerCheck(False, "successor", (prev, y, f"stage {ord_format(kind.predecessor)} missing"))
            image = f(prev)
            if image != y:
                return TowerCheck(False, "successor", (prev, y, image))
        else:
            if idx[i] != ord_add_omega(idx[i - 1]):
                return TowerCheck(False, "limit", (y, f"index {ord_format(idx[i])} skips a limit"))
            if prov.orbit_terminates(prev, f):
                return TowerCheck(False, "limit", (y, "orbit stabilizes before a limit"))
            expected = prov.omega_orbit_lub(prev, f)
            if expected is None:
                expected = prov.lub_of_ascent(cand[:i])
            if expected != y:
                return TowerCheck(False, "limit", (y, expected))
    return VALID


def _certify(trace: TowerTrace, f: SelfMap, prov: PosetProvider) -> FixedPointCertificate:
    elements = trace.elements
    omega = prov.lub_of_ascent(elements)
    checks = CertificateChecks(
        omega_in_tower=omega is not None and omega in elements,
        fixed=omega is not None and f(omega) == omega,
        omega_is_lub=omega is not None
        and omega == elements[-1]
        and all(prov.leq(x, omega) for x in elements),
    )
    return FixedPointCertificate(omega, trace, checks)


def build_tower_finite(p: FinitePoset, f: SelfMap, x0) -> FixedPointCertificate:
    """The largest tower based at ``x0`` and the fixed point at its top."""
    witness = f.progressive_witness(p)
    if witness is not None:
        raise NotProgressive(witness, f(witness))
    p.index(x0)
    elements = [x0]
    x = x0
    while (y := f(x)) != x:
        elements.append(y)
        x = y
        if len(elements) > len(p):
            raise AssertionError("progressive orbit longer than the poset")
    trace = TowerTrace.positional(p, elements)
    return _certify(trace, f, FiniteAdapter(p))


def build_tower_transfinite(provider, f: SelfMap, x0, budget: Budget | None = None) -> FixedPointCertificate:
    """Transfinite tower construction with w-acceleration.

    Each block runs at most ``successor_steps_per_block`` successor stages.  When
    a block is used up the builder either starts another block (the provider
    knows the orbit stabilizes finitely) or emits a limit stage at the next
    limit index holding the provider's orbit lub.  Both count against
    ``max_accelerations``.
    """
    prov = as_provider(provider)
    budget = budget or Budget()
    stages = [Stage(ZERO, x0, StageKind.BASE)]
    x, idx = x0, ZERO
    steps = jumps = 0

    def trace() -> TowerTrace:
        return TowerTrace(x0, tuple(stages), prov)

    while True:
        y = f(x)
        if y == x:
            return _certify(trace(), f, prov)
        if not prov.leq(x, y):
            raise NotProgressive(x, y)
        if steps == budget.successor_steps_per_block:
            if jumps == budget.max_accelerations:
                raise BudgetExhausted(trace())
            jumps += 1
            steps = 0
            if not prov.orbit_terminates(x, f):
                u = prov.omega_orbit_lub(x, f)
                if u is None:
                    raise AccelerationUnavailable(trace())
                idx = ord_add_omega(idx)
                stages.append(Stage(idx, u, StageKind.LIMIT))
                x = u
                continue
        idx = ord_successor(idx)
        stages.append(Stage(idx, y, StageKind.SUCCESSOR))
        x = y
        steps += 1


def _members(tower) -> tuple:
    if isinstance(tower, TowerTrace):
        return tower.elements
    if isinstance(tower, OrderedSubset):
        return tower.members
    return tuple(tower)


def compare_towers(first, second) -> SegmentRelation:
    """Initial-segment relation between two ascents sharing a least element.

    ``common_prefix`` is the longest common prefix of the two ascending
    sequences; for towers this is the set of elements where both weak initial
    segments agree.
    """
    a, b = _members(first), _members(second)
    if not a or not b:
        raise ValueError("towers must be nonempty")
    if a[0] != b[0]:
        raise BaseMismatch(f"bases differ: {a[0]!r} vs {b[0]!r}")
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    prefix = a[:k]
    if k == len(a) == len(b):
        relation = EQUAL
    elif k == len(a):
        relation = FIRST_IN_SECOND
    elif k == len(b):
        relation = SECOND_IN_FIRST
    else:
        relation = INCOMPARABLE
    return SegmentRelation(relation, prefix)


ENUMERATION_LIMIT = 12


def enumerate_towers(p: FinitePoset, f: SelfMap, x0) -> list[TowerTrace]:
    """Every subset of ``p`` that is an ``f``-tower based at ``x0``, by size."""
    if len(p) > ENUMERATION_LIMIT:
        raise TooLarge(len(p), ENUMERATION_LIMIT)
    p.index(x0)
    towers = []
    for mask in range(1, 1 << len(p)):
        classified = classify_subset(p, p.labels(mask))
        if isinstance(classified, NotAChain):
            continue
        members = classified.subset.members
        if check_tower(p, f, x0, members):
            towers.append(TowerTrace.positional(p, members))
    towers.sort(key=len)
    return towers
