"""Maximal elements from choice selectors on strict upper cones.

A selector picks one element of each nonempty cone ``U_x = {y | x < y}``.
Fixing the maximal elements (where the cone is empty) turns it into a total
progressive map, and the fixed point of its largest tower is maximal: if its
cone were nonempty, the selector would move it strictly upward.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import TooLarge
from .maps import SelfMap
from .poset import ElementId, FinitePoset, strict_upper_cone
from .tower import TowerTrace, build_tower_finite

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    """One SplitMix64 output for ``state`` (Steele, Lea & Flood 2014)."""
    z = (state + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class ChoiceSelector:
    """``least-id`` takes the first cone element in declaration order.

    ``seeded-random`` takes the cone element at position
    ``splitmix64((seed + i * GOLDEN_GAMMA) mod 2**64) mod |U_x|`` where ``i`` is
    the declaration index of ``x`` and the cone is listed in declaration order.
    Each choice depends only on (seed, x), so results are reproducible
    bit-for-bit on any platform.
    """

    host: FinitePoset
    strategy: str = "least-id"
    seed: int = 0

    def __post_init__(self):
        if self.strategy not in ("least-id", "seeded-random"):
            raise ValueError(f"unknown selector strategy {self.strategy!r}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def __call__(self, x: ElementId) -> ElementId | None:
        p = self.host
        i = p.index(x)
        cone = p.labels(p.up_mask(x) & ~(1 << i))
        if not cone:
            return None
        if self.strategy == "least-id":
            return cone[0]
        return cone[splitmix64((self.seed + i * GOLDEN_GAMMA) & MASK64) % len(cone)]


def selector_map(p: FinitePoset, sel: ChoiceSelector) -> SelfMap:
    """``f(x) = sel(x)`` on non-maximal ``x`` and ``f(x) = x`` on maximal ones."""
    table = {}
    for x in p.elements:
        choice = sel(x)
        table[x] = x if choice is None else choice
    return SelfMap.from_table(p, table, name=f"selector:{sel.strategy}")


@dataclass(frozen=True)
class MaximalityOutcome:
    maximal: ElementId
    certificate: bool  # strict upper cone of ``maximal`` re-checked empty
    trace: TowerTrace


def find_maximal(p: FinitePoset, sel: ChoiceSelector, x0: ElementId) -> MaximalityOutcome:
    cert = build_tower_finite(p, selector_map(p, sel), x0)
    m = cert.omega
    # scan the whole poset rather than trusting the selector or the cone helper
    above = [y for y in p.elements if y != m and p.leq(m, y)]
    return MaximalityOutcome(m, not above, cert.tower)


STRICT_ENUMERATION_LIMIT = 8


def enumerate_strictly_progressive(p: FinitePoset) -> list[SelfMap]:
    """All maps with ``x < f(x)`` everywhere; empty on every nonempty finite poset."""
    if len(p) > STRICT_ENUMERATION_LIMIT:
        raise TooLarge(len(p), STRICT_ENUMERATION_LIMIT)
    cones = [sorted(strict_upper_cone(p, x), key=p.index) for x in p.elements]
    return [
        SelfMap.from_table(p, dict(zip(p.elements, images)), name="strict")
        for images in product(*cones)
    ]
