"""Exhaustive and seeded-random verification over small labeled posets.

Every labeled poset on ``n <= 4`` elements is enumerated, and every progressive
map and base point on each of them is checked:

* the largest tower yields a valid fixed-point certificate;
* the transfinite builder (through the finite adapter) agrees with the finite one;
* the towers found by subset enumeration are exactly the nonempty prefixes of
  the largest tower, and no two of them are incomparable;
* no strictly progressive map exists;
* the selector-driven search finds a maximal element for both selector strategies.

Random mode draws posets on 5..8 elements from seeded random DAGs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import AxiomViolation, TooLarge
from .maps import SelfMap
from .maximality import ChoiceSelector, enumerate_strictly_progressive, find_maximal
from .poset import FinitePoset, _bits, close_covers, validate_poset
from .tower import (
    INCOMPARABLE,
    build_tower_finite,
    build_tower_transfinite,
    check_tower,
    compare_towers,
    enumerate_towers,
)

POSET_LIMIT = 5
MAP_LIMIT = 6
RANDOM_RANGE = (5, 8)
SELECTOR_SEEDS = (0, 0x5EED)


def labels(n: int) -> list[str]:
    return [f"e{i}" for i in range(n)]


def enumerate_labeled_posets(n: int) -> Iterator[FinitePoset]:
    """Every partial order on ``e0..e{n-1}``, each exactly once.

    Element ``k`` is added to a poset on the first ``k`` elements by choosing its
    strict down-set ``D`` (down-closed) and strict up-set ``U`` (up-closed, above
    all of ``D``, disjoint from it); every extension arises from exactly one
    restriction.
    """
    if not 0 <= n <= POSET_LIMIT:
        raise TooLarge(n, POSET_LIMIT)
    names = labels(n)

    def extend(up: list[int], down: list[int]) -> Iterator[list[int]]:
        k = len(up)
        if k == n:
            yield up
            return
        full = (1 << k) - 1
        for D in range(1 << k):
            if any(down[d] & ~D for d in _bits(D)):
                continue
            allowed = full & ~D
            for d in _bits(D):
                allowed &= up[d]
            for U in _submasks(allowed):
                if any(up[u] & ~U for u in _bits(U)):
                    continue
                new_bit = 1 << k
                up2 = [row | new_bit if D >> i & 1 else row for i, row in enumerate(up)]
                up2.append(U | new_bit)
                down2 = [row | new_bit if U >> i & 1 else row for i, row in enumerate(down)]
                down2.append(D | new_bit)
                yield from extend(up2, down2)

    for up in extend([], []):
        yield FinitePoset(names, up)


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def count_labeled_posets(n: int) -> int:
    return sum(1 for _ in enumerate_labeled_posets(n))


def filter_all_relations(n: int) -> Iterator[FinitePoset]:
    """Independent path: test every set of off-diagonal pairs with ``validate_poset``."""
    names = labels(n)
    off_diagonal = [(x, y) for x in names for y in names if x != y]
    for chosen in product((False, True), repeat=len(off_diagonal)):
        pairs = [pair for pair, keep in zip(off_diagonal, chosen) if keep]
        try:
            yield validate_poset(names, pairs)
        except AxiomViolation:
            continue


def enumerate_progressive_maps(p: FinitePoset) -> Iterator[SelfMap]:
    """Every total ``f`` with ``x <= f(x)``; there are prod |up(x)| of them."""
    if len(p) > MAP_LIMIT:
        raise TooLarge(len(p), MAP_LIMIT)
    ups = [p.labels(p.up_mask(x)) for x in p.elements]
    for images in product(*ups):
        yield SelfMap.from_table(p, dict(zip(p.elements, images)))


def count_progressive_maps(p: FinitePoset) -> int:
    count = 1
    for x in p.elements:
        count *= bin(p.up_mask(x)).count("1")
    return count


def random_poset(n: int, rng: random.Random) -> FinitePoset:
    """Transitive closure of a random DAG over a shuffled element order."""
    names = labels(n)
    order = names[:]
    rng.shuffle(order)
    density = rng.uniform(0.15, 0.6)
    covers = [(order[i], order[j]) for i, j in combinations(range(n), 2) if rng.random() < density]
    return close_covers(names, covers)


def random_progressive_map(p: FinitePoset, rng: random.Random, climb: float = 0.75) -> SelfMap:
    """Random progressive map; a non-maximal ``x`` moves strictly up with probability ``climb``."""
    table = {}
    for x in p.elements:
        strict = p.labels(p.up_mask(x) & ~(1 << p.index(x)))
        table[x] = rng.choice(strict) if strict and rng.random() < climb else x
    return SelfMap.from_table(p, table)


def describe_poset(p: FinitePoset) -> dict:
    return {"elements": list(p.elements), "pairs": [list(pair) for pair in p.pairs()]}


@dataclass
class CorpusReport:
    per_n: dict[int, dict[str, int]] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    seeds: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def bump(self, n: int, key: str, amount: int = 1) -> None:
        counts = self.per_n.setdefault(n, {})
        counts[key] = counts.get(key, 0) + amount

    def merge(self, other: CorpusReport) -> CorpusReport:
        out = CorpusReport(elapsed=self.elapsed + other.elapsed, seeds=self.seeds + other.seeds)
        for report in (self, other):
            for n, counts in report.per_n.items():
                for key, value in counts.items():
                    out.bump(n, key, value)
        out.failures = self.failures + other.failures
        return out

    def to_dict(self) -> dict:
        return {
            "per_n": {str(n): dict(sorted(c.items())) for n, c in sorted(self.per_n.items())},
            "failures": self.failures,
            "elapsed": round(self.elapsed, 3),
            "seeds": self.seeds,
            "ok": self.ok,
        }


def _fail(report: CorpusReport, p: FinitePoset, check: str, detail: str, f: SelfMap | None = None, x0=None):
    report.failures.append(
        {
            "n": len(p),
            "check": check,
            "poset": describe_poset(p),
            "map": f.table if f is not None else None,
            "base": x0,
            "detail": detail,
        }
    )


def verify_instance(report: CorpusReport, p: FinitePoset, f: SelfMap, x0, *, enumerate_all: bool) -> None:
    n = len(p)
    report.bump(n, "instances")
    cert = build_tower_finite(p, f, x0)
    if not cert.valid:
        _fail(report, p, "fixed-point", f"certificate checks {cert.checks}", f, x0)

    transfinite = build_tower_transfinite(p, f, x0)
    if transfinite != cert:
        _fail(report, p, "cross-builder", f"{transfinite} != {cert}", f, x0)

    omega = cert.tower.elements
    if not check_tower(p, f, x0, omega):
        _fail(report, p, "largest-tower", "the orbit is not a tower", f, x0)
    if not enumerate_all:
        return

    towers = enumerate_towers(p, f, x0)
    report.bump(n, "towers_enumerated", len(towers))
    found = {t.elements for t in towers}
    prefixes = {omega[:k] for k in range(1, len(omega) + 1)}
    if found != prefixes:
        _fail(report, p, "prefix-characterization", f"towers {sorted(found)} vs prefixes {sorted(prefixes)}", f, x0)
    for t1, t2 in combinations(towers, 2):
        report.bump(n, "tower_pairs_compared")
        if compare_towers(t1, t2).relation == INCOMPARABLE:
            _fail(report, p, "comparison", f"{t1.elements} vs {t2.elements}", f, x0)


def verify_poset(report: CorpusReport, p: FinitePoset) -> None:
    n = len(p)
    report.bump(n, "posets")
    if n and enumerate_strictly_progressive(p):
        _fail(report, p, "no-strict-progression", "found a strictly progressive map")
    selectors = [ChoiceSelector(p, "least-id")] + [ChoiceSelector(p, "seeded-random", s) for s in SELECTOR_SEEDS]
    for sel in selectors:
        for x0 in p.elements:
            report.bump(n, "maximality_checks")
            outcome = find_maximal(p, sel, x0)
            if not outcome.certificate or len(outcome.trace) > n:
                _fail(report, p, "maximality", f"{sel.strategy}/{sel.seed}: {outcome}", None, x0)


def verify_corpus(
    n_max: int,
    *,
    tower_enumeration_limit: int = 4,
    random_n: tuple[int, int] | None = None,
    random_seeds: Sequence[int] | int = (),
) -> CorpusReport:
    """Run every check on all posets with ``n <= n_max`` and on seeded random instances.

    ``random_seeds`` is either a list of seeds or a count (seeds ``0..count-1``).
    Each seed fixes one random instance (poset size in ``random_n``, poset, map,
    base), so any failure can be replayed from its seed.
    """
    if n_max > 4:
        raise TooLarge(n_max, 4)
    start = time.perf_counter()
    report = CorpusReport()
    for n in range(n_max + 1):
        for p in enumerate_labeled_posets(n):
            verify_poset(report, p)
            for f in enumerate_progressive_maps(p):
                report.bump(n, "progressive_maps")
                for x0 in p.elements:
                    verify_instance(report, p, f, x0, enumerate_all=n <= tower_enumeration_limit)

    if isinstance(random_seeds, int):
        random_seeds = range(random_seeds)
    lo, hi = random_n or RANDOM_RANGE
    for seed in random_seeds:
        p, f, x0 = random_instance(seed, lo, hi)
        report.seeds.append(seed)
        verify_poset(report, p)
        report.bump(len(p), "progressive_maps")
        verify_instance(report, p, f, x0, enumerate_all=True)
    report.elapsed = time.perf_counter() - start
    return report


def random_instance(seed: int, lo: int, hi: int) -> tuple[FinitePoset, SelfMap, str]:
    rng = random.Random(seed)
    n = rng.randint(lo, hi)
    p = random_poset(n, rng)
    f = random_progressive_map(p, rng)
    return p, f, rng.choice(p.elements)
