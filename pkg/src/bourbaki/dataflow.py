"""Reaching definitions solved as the fixed point of a progressive map.

The state is one ``(IN, OUT)`` pair of definition bit-sets per node, living in
a powerset-product provider.  The global step joins the current state with one
sweep of the transfer equations over every node,

    IN(n)  = union of OUT(p) for p in preds(n)
    OUT(n) = gen(n) | (IN(n) - kill(n))

so it is progressive by construction and the tower engine applies directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InvalidCfg
from .maps import SelfMap
from .providers import PowersetProduct
from .tower import Budget, FixedPointCertificate, build_tower_transfinite


@dataclass(frozen=True)
class ControlFlowGraph:
    nodes: tuple[str, ...]
    preds: Mapping[str, tuple[str, ...]]
    gen: Mapping[str, frozenset[str]]
    kill: Mapping[str, frozenset[str]]

    @classmethod
    def build(cls, nodes: Sequence[str], edges: Sequence[tuple[str, str]], gen=None, kill=None) -> ControlFlowGraph:
        gen = gen or {}
        kill = kill or {}
        preds: dict[str, list[str]] = {n: [] for n in nodes}
        for a, b in edges:
            if a not in preds or b not in preds:
                raise InvalidCfg(f"edge {a}->{b} references an undeclared node")
            preds[b].append(a)
        for table in (gen, kill):
            for n in table:
                if n not in preds:
                    raise InvalidCfg(f"gen/kill for undeclared node {n!r}")
        cfg = cls(
            tuple(nodes),
            {n: tuple(ps) for n, ps in preds.items()},
            {n: frozenset(gen.get(n, ())) for n in nodes},
            {n: frozenset(kill.get(n, ())) for n in nodes},
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidCfg("duplicate node ids")
        for n in self.nodes:
            if n not in self.preds or any(p not in self.preds for p in self.preds[n]):
                raise InvalidCfg(f"node {n!r} has undeclared predecessors")
            if self.gen[n] & self.kill[n]:
                raise InvalidCfg(f"gen and kill overlap at {n!r}")

    @property
    def definitions(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for n in self.nodes:
            for d in sorted(self.gen[n]) + sorted(self.kill[n]):
                seen.setdefault(d, None)
        return tuple(seen)


@dataclass(frozen=True)
class AnalysisState:
    IN: Mapping[str, frozenset[str]]
    OUT: Mapping[str, frozenset[str]]


@dataclass(frozen=True)
class DataflowResult:
    state: AnalysisState
    certificate: FixedPointCertificate
    provider: PowersetProduct

    @property
    def trace_length(self) -> int:
        return len(self.certificate.tower)


class _Encoding:
    def __init__(self, cfg: ControlFlowGraph):
        self.cfg = cfg
        self.defs = cfg.definitions
        self.bit = {d: 1 << i for i, d in enumerate(self.defs)}
        self.slot = {n: i for i, n in enumerate(cfg.nodes)}

    def mask(self, ds) -> int:
        m = 0
        for d in ds:
            m |= self.bit[d]
        return m

    def names(self, m: int) -> frozenset[str]:
        return frozenset(d for d in self.defs if m & self.bit[d])

    def decode(self, state: tuple[int, ...]) -> AnalysisState:
        return AnalysisState(
            {n: self.names(state[2 * i]) for n, i in self.slot.items()},
            {n: self.names(state[2 * i + 1]) for n, i in self.slot.items()},
        )


def transfer_step(cfg: ControlFlowGraph, enc: _Encoding | None = None) -> SelfMap:
    """The accumulate-only global step ``S -> S | step(S)``."""
    enc = enc or _Encoding(cfg)
    gen = [enc.mask(cfg.gen[n]) for n in cfg.nodes]
    keep = [~enc.mask(cfg.kill[n]) for n in cfg.nodes]
    preds = [[enc.slot[p] for p in cfg.preds[n]] for n in cfg.nodes]

    def step(state: tuple[int, ...]) -> tuple[int, ...]:
        out = list(state)
        for i in range(len(cfg.nodes)):
            inn = 0
            for j in preds[i]:
                inn |= state[2 * j + 1]
            out[2 * i] |= inn
            out[2 * i + 1] |= gen[i] | (state[2 * i] & keep[i])
        return tuple(out)

    return SelfMap(step, name="reaching-definitions")


def reaching_definitions(cfg: ControlFlowGraph, budget: Budget | None = None) -> DataflowResult:
    cfg.validate()
    if not cfg.nodes:
        raise InvalidCfg("control-flow graph has no nodes")
    enc = _Encoding(cfg)
    provider = PowersetProduct([len(enc.defs)] * (2 * len(cfg.nodes)))
    cert = build_tower_transfinite(provider, transfer_step(cfg, enc), provider.bottom(), budget)
    return DataflowResult(enc.decode(cert.omega), cert, provider)


def worklist_oracle(cfg: ControlFlowGraph) -> AnalysisState:
    """Classic Kleene worklist solution of the reaching-definitions equations."""
    succs: dict[str, list[str]] = {n: [] for n in cfg.nodes}
    for n in cfg.nodes:
        for p in cfg.preds[n]:
            succs[p].append(n)
    in_ = {n: set() for n in cfg.nodes}
    out = {n: set() for n in cfg.nodes}
    worklist = list(cfg.nodes)
    while worklist:
        n = worklist.pop(0)
        in_[n] = set().union(*(out[p] for p in cfg.preds[n]))
        new_out = set(cfg.gen[n]) | (in_[n] - cfg.kill[n])
        if new_out != out[n]:
            out[n] = new_out
            worklist.extend(s for s in succs[n] if s not in worklist)
    return AnalysisState({n: frozenset(v) for n, v in in_.items()}, {n: frozenset(v) for n, v in out.items()})


CFG_FIXTURES = {
    "single": ControlFlowGraph.build(["n1"], [], gen={"n1": {"d1"}}),
    "chain2": ControlFlowGraph.build(["n1", "n2"], [("n1", "n2")], gen={"n1": {"d1"}, "n2": {"d2"}}),
    "diamond": ControlFlowGraph.build(
        ["n1", "n2", "n3", "n4"],
        [("n1", "n2"), ("n1", "n3"), ("n2", "n4"), ("n3", "n4")],
        gen={"n1": {"d1"}, "n4": {"d4"}},
        kill={"n4": {"d1"}},
    ),
}


def random_cfg(rng: random.Random, max_nodes: int = 6, max_defs: int = 6) -> ControlFlowGraph:
    """Random graph (cycles allowed) with disjoint gen/kill sets per node."""
    nodes = [f"n{i}" for i in range(1, rng.randint(1, max_nodes) + 1)]
    defs = [f"d{i}" for i in range(1, rng.randint(1, max_defs) + 1)]
    edges = [(a, b) for a in nodes for b in nodes if rng.random() < 0.3]
    gen, kill = {}, {}
    for n in nodes:
        g = {d for d in defs if rng.random() < 0.3}
        k = {d for d in defs if d not in g and rng.random() < 0.3}
        gen[n], kill[n] = g, k
    return ControlFlowGraph.build(nodes, edges, gen, kill)
