"""Order oracles the tower engine runs over.

A provider answers order queries without materializing its carrier: the
finite adapter wraps a :class:`FinitePoset`, the ordinal interval is
``[0, alpha]``, and the powerset product is a finite lattice of bit-set tuples.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from typing import Any, Sequence

from .errors import UnknownElement
from .maps import SelfMap
from .ordinal import ZERO, Ordinal, finite_distance, ord_add_omega, ord_format, ord_successor
from .poset import FinitePoset, lub

SUCCESSOR_CLAMPED = "successor-clamped"


class PosetProvider(ABC):
    @abstractmethod
    def leq(self, x, y) -> bool: ...

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    @abstractmethod
    def lub_of_ascent(self, trace: Sequence) -> Any:
        """Least upper bound of a strictly ascending sequence, or ``None``."""

    def omega_orbit_lub(self, x, f: SelfMap):
        """Lub of ``{f^n(x) : n < w}`` when known in closed form for ``f``."""
        return None

    def orbit_terminates(self, x, f: SelfMap) -> bool:
        """True when the orbit of ``x`` is known to stabilize after finitely many steps."""
        return False

    @abstractmethod
    def describe(self) -> str: ...

    def sample(self, rng: random.Random):
        """A random element, for spot checks."""
        raise NotImplementedError


class FiniteAdapter(PosetProvider):
    def __init__(self, poset: FinitePoset):
        self.poset = poset

    def leq(self, x, y) -> bool:
        return self.poset.leq(x, y)

    def lub_of_ascent(self, trace):
        return lub(self.poset, trace)

    def orbit_terminates(self, x, f) -> bool:
        return True

    def describe(self) -> str:
        name = self.poset.name or "poset"
        return f"finite {name} with {len(self.poset)} elements"

    def sample(self, rng):
        return rng.choice(self.poset.elements)


def make_finite_adapter(p: FinitePoset) -> FiniteAdapter:
    return FiniteAdapter(p)


class OrdinalInterval(PosetProvider):
    """The ordinals ``[0, top]`` under the usual order."""

    def __init__(self, top: Ordinal):
        self.top = top

    def _check(self, x) -> Ordinal:
        if not isinstance(x, Ordinal) or x > self.top:
            raise UnknownElement(x)
        return x

    def leq(self, x, y) -> bool:
        return self._check(x) <= self._check(y)

    def lub_of_ascent(self, trace):
        return self._check(trace[-1]) if trace else None

    def _is_own_successor(self, f: SelfMap) -> bool:
        return f.name == SUCCESSOR_CLAMPED and isinstance(f.host, OrdinalInterval) and f.host.top == self.top

    def omega_orbit_lub(self, x, f):
        if not self._is_own_successor(f):
            return None
        jump = ord_add_omega(self._check(x))
        return jump if jump <= self.top else self.top

    def orbit_terminates(self, x, f) -> bool:
        return self._is_own_successor(f) and finite_distance(self._check(x), self.top) is not None

    def describe(self) -> str:
        return f"ordinal interval [0, {ord_format(self.top)}]"

    def sample(self, rng):
        # a prefix of the top's CNF, possibly lowering the last coefficient, plus an optional finite tail
        terms = self.top.terms
        if not terms:
            return self.top
        k = rng.randrange(len(terms))
        exp, coeff = terms[k]
        head = terms[:k] + ((exp, rng.randint(1, coeff)),)
        if exp.terms and rng.random() < 0.5:
            head += ((ZERO, rng.randint(1, 9)),)
        candidate = Ordinal(head) if rng.random() < 0.9 else ZERO
        return candidate if candidate <= self.top else self.top


def make_ordinal_interval(alpha: Ordinal) -> OrdinalInterval:
    return OrdinalInterval(alpha)


def clamped_successor(interval: OrdinalInterval) -> SelfMap:
    """``x -> min(x + 1, top)``: progressive, and strictly so everywhere except the top."""
    top = interval.top

    def step(x: Ordinal) -> Ordinal:
        return x if x == top else ord_successor(x)

    return SelfMap(step, name=SUCCESSOR_CLAMPED, host=interval)


class PowersetProduct(PosetProvider):
    """Tuples of bit-sets ordered by pointwise inclusion."""

    def __init__(self, sizes: Sequence[int]):
        if len(sizes) < 1 or any(s < 0 for s in sizes):
            raise ValueError("need at least one coordinate with a non-negative universe size")
        self.sizes = tuple(sizes)
        self._full = tuple((1 << s) - 1 for s in self.sizes)

    def _check(self, x) -> tuple[int, ...]:
        if not isinstance(x, tuple) or len(x) != len(self.sizes) or any(
            not isinstance(c, int) or c < 0 or c & ~full for c, full in zip(x, self._full)
        ):
            raise UnknownElement(x)
        return x

    def bottom(self) -> tuple[int, ...]:
        return (0,) * len(self.sizes)

    def top(self) -> tuple[int, ...]:
        return self._full

    def height(self) -> int:
        return sum(self.sizes)

    def leq(self, x, y) -> bool:
        return all(a & ~b == 0 for a, b in zip(self._check(x), self._check(y)))

    def join(self, x, y) -> tuple[int, ...]:
        return tuple(a | b for a, b in zip(self._check(x), self._check(y)))

    def lub_of_ascent(self, trace):
        if not trace:
            return None
        out = self.bottom()
        for x in trace:
            out = self.join(out, x)
        return out

    def orbit_terminates(self, x, f) -> bool:
        return True

    def describe(self) -> str:
        return f"powerset product with universe sizes {list(self.sizes)}"

    def sample(self, rng):
        return tuple(rng.getrandbits(s) if s else 0 for s in self.sizes)


def make_powerset_product(sizes: Sequence[int]) -> PowersetProduct:
    return PowersetProduct(sizes)


def spot_check_partial_order(provider: PosetProvider, rng: random.Random, samples: int = 200) -> tuple | None:
    """Check the order axioms on sampled triples; return a violating triple or ``None``."""
    for _ in range(samples):
        x, y, z = (provider.sample(rng) for _ in range(3))
        if not provider.leq(x, x):
            return (x, x, x)
        if provider.leq(x, y) and provider.leq(y, x) and x != y:
            return (x, y, y)
        if provider.leq(x, y) and provider.leq(y, z) and not provider.leq(x, z):
            return (x, y, z)
    return None


NAMED_MAPS = {SUCCESSOR_CLAMPED: clamped_successor}
