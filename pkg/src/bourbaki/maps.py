"""Self-maps on a poset or provider."""

from __future__ import annotations

from typing import Any, Callable, Mapping

from .errors import NotTotal, UnknownElement
from .poset import FinitePoset


class SelfMap:
    """A total map ``f: X -> X``.

    Finite maps carry an explicit ``table``.  Maps over providers are plain
    callables; ``name`` lets a provider recognize a registered map (for example
    ``"successor-clamped"``) and compute orbit lubs in closed form.
    """

    __slots__ = ("func", "name", "host", "table")

    def __init__(
        self,
        func: Callable[[Any], Any],
        *,
        name: str | None = None,
        host: Any = None,
        table: Mapping | None = None,
    ):
        self.func = func
        self.name = name
        self.host = host
        self.table = dict(table) if table is not None else None

    @classmethod
    def from_table(cls, poset: FinitePoset, assignment: Mapping[str, str], name: str | None = None) -> SelfMap:
        for x, y in assignment.items():
            if x not in poset:
                raise UnknownElement(x)
            if y not in poset:
                raise UnknownElement(y)
        missing = [x for x in poset.elements if x not in assignment]
        if missing:
            raise NotTotal(f"map is undefined on {missing}")
        table = {x: assignment[x] for x in poset.elements}
        return cls(table.__getitem__, name=name, host=poset, table=table)

    @classmethod
    def identity(cls, poset: FinitePoset) -> SelfMap:
        return cls.from_table(poset, {x: x for x in poset.elements}, name="identity")

    def __call__(self, x):
        if self.table is not None and x not in self.table:
            raise UnknownElement(x)
        return self.func(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SelfMap):
            return NotImplemented
        if self.table is not None and other.table is not None:
            return self.table == other.table
        return self is other

    def __hash__(self) -> int:
        if self.table is not None:
            return hash(tuple(self.table.items()))
        return id(self)

    def __repr__(self) -> str:
        if self.table is not None:
            body = ", ".join(f"{x}->{y}" for x, y in self.table.items())
            return f"SelfMap({{{body}}})"
        return f"SelfMap(name={self.name!r})"

    def progressive_witness(self, poset: FinitePoset | None = None):
        """First ``x`` (declaration order) with ``f(x) >= x`` failing, else ``None``."""
        poset = poset or self.host
        for x in poset.elements:
            if not poset.leq(x, self(x)):
                return x
        return None

    def is_progressive(self, poset: FinitePoset | None = None) -> bool:
        return self.progressive_witness(poset) is None

    def is_strictly_progressive(self, poset: FinitePoset | None = None) -> bool:
        poset = poset or self.host
        return all(poset.lt(x, self(x)) for x in poset.elements)
