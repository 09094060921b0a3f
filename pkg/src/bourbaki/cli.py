"""Command-line interface.

Exit codes: 0 success, 1 domain error (axiom violation, failed check, failed
corpus), 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .dataflow import CFG_FIXTURES, reaching_definitions
from .errors import BourbakiError, NonCanonical, OrdinalParseError, SchemaError
from .formats import (
    certificate_to_json,
    check_to_json,
    element_to_json,
    export_dot,
    parse_map_doc,
    parse_poset_doc,
    serialize_poset,
    trace_to_json,
)
from .maximality import ChoiceSelector, find_maximal
from .oracle import verify_corpus
from .ordinal import ord_format, ord_parse
from .providers import clamped_successor, make_ordinal_interval
from .tower import Budget, StageKind, build_tower_finite, build_tower_transfinite, check_tower, enumerate_towers


def _read(path: str) -> str:
    if path.startswith("fixture:"):
        name = path.split(":", 1)[1]
        if name not in fixtures.POSETS:
            raise SchemaError(path, f"unknown fixture, choose from {sorted(fixtures.POSETS)}")
        return serialize_poset(fixtures.POSETS[name])
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(path, exc.strerror or str(exc)) from None


def _load_poset(path: str):
    return parse_poset_doc(_read(path))


def _emit(data, as_json: bool, text: str) -> None:
    print(json.dumps(data, indent=2) if as_json else text)


def _stage_table(stages, compress: bool = False) -> str:
    rows = [(ord_format(s.index), s.kind.value, str(element_to_json(s.element))) for s in stages]
    keep = set(range(len(rows)))
    if compress:
        keep = {
            i
            for i, s in enumerate(stages)
            if s.kind is not StageKind.SUCCESSOR
            or i < 3
            or i == len(stages) - 1
            or (i + 1 < len(stages) and stages[i + 1].kind is StageKind.LIMIT)
            or (i >= 1 and stages[i - 1].kind is StageKind.LIMIT)
        }
    width = max(len("stage"), *(len(r[0]) for r in rows))
    lines = [f"{'stage':<{width}}  {'kind':<9}  element"]
    skipped = 0
    for i, (idx, kind, elem) in enumerate(rows):
        if i not in keep:
            skipped += 1
            continue
        if skipped:
            lines.append(f"{'...':<{width}}  ({skipped} successor stage{'' if skipped == 1 else 's'})")
            skipped = 0
        lines.append(f"{idx:<{width}}  {kind:<9}  {elem}")
    return "\n".join(lines)


def _checks_line(cert) -> str:
    yes = lambda b: "yes" if b else "NO"  # noqa: E731
    c = cert.checks
    return f"checks: omega in tower={yes(c.omega_in_tower)}, f(omega)=omega={yes(c.fixed)}, omega=lub={yes(c.omega_is_lub)}"


def cmd_poset_validate(args) -> int:
    p = _load_poset(args.file)
    print(f"valid poset{' ' + p.name if p.name else ''}: {len(p)} elements, {len(p.pairs())} strict pairs, {len(p.cover_pairs())} covers")
    return 0


def cmd_poset_dot(args) -> int:
    sys.stdout.write(export_dot(_load_poset(args.file)))
    return 0


def _poset_and_map(args):
    p = _load_poset(args.poset)
    f = parse_map_doc(_read(args.map), p)
    if args.base not in p:
        raise SchemaError("--base", f"unknown element {args.base!r}")
    return p, f


def cmd_tower_build(args) -> int:
    p, f = _poset_and_map(args)
    cert = build_tower_finite(p, f, args.base)
    text = "\n".join([_stage_table(cert.tower.stages), f"fixed point: {cert.omega}", _checks_line(cert)])
    _emit(certificate_to_json(cert), args.json, text)
    return 0 if cert.valid else 1


def cmd_tower_check(args) -> int:
    p, f = _poset_and_map(args)
    candidate = [c for c in args.candidate.split(",") if c]
    result = check_tower(p, f, args.base, candidate)
    if result:
        text = "valid tower"
    else:
        text = f"violation of the {result.condition} condition, witness {list(result.witness)}"
    _emit(check_to_json(result), args.json, text)
    return 0 if result else 1


def cmd_tower_enumerate(args) -> int:
    p, f = _poset_and_map(args)
    towers = enumerate_towers(p, f, args.base)
    text = "\n".join(f"[{', '.join(t.elements)}]" for t in towers) + f"\n{len(towers)} towers"
    _emit({"towers": [trace_to_json(t) for t in towers]}, args.json, text)
    return 0


def cmd_maximal(args) -> int:
    p = _load_poset(args.poset)
    if not len(p):
        raise SchemaError(args.poset, "poset is empty")
    base = args.base or p.elements[0]
    if base not in p:
        raise SchemaError("--base", f"unknown element {base!r}")
    strategy = "seeded-random" if args.strategy == "random" else "least-id"
    sel = ChoiceSelector(p, strategy, args.seed)
    outcome = find_maximal(p, sel, base)
    data = {
        "maximal": outcome.maximal,
        "certificate": outcome.certificate,
        "trace": trace_to_json(outcome.trace),
        "strategy": strategy,
        "seed": args.seed,
    }
    text = f"maximal element: {outcome.maximal} (cone empty: {outcome.certificate})\nascent: {' < '.join(outcome.trace.elements)}"
    _emit(data, args.json, text)
    return 0 if outcome.certificate else 1


def _random_range(value: str | None, max_n: int):
    if value is None:
        return None
    lo, sep, hi = value.partition("-")
    try:
        bounds = (int(lo), int(hi)) if sep else (max_n + 1, int(lo))
    except ValueError:
        raise SchemaError("--random-n", "expected K or LO-HI") from None
    if not 1 <= bounds[0] <= bounds[1] <= 8:
        raise SchemaError("--random-n", "random sizes must lie in 1..8")
    return bounds


def cmd_oracle_run(args) -> int:
    random_n = _random_range(args.random_n, args.max_n)
    seeds = args.seeds if random_n else 0
    report = verify_corpus(args.max_n, random_n=random_n, random_seeds=seeds)
    lines = []
    for n, counts in sorted(report.per_n.items()):
        lines.append(f"n={n}: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    lines.append(f"failures: {len(report.failures)}  elapsed: {report.elapsed:.2f}s")
    for failure in report.failures[:10]:
        lines.append(f"  {failure['check']}: {failure['detail']}")
    _emit(report.to_dict(), args.json, "\n".join(lines))
    return 0 if report.ok else 1


def _ordinal_arg(flag: str, text: str):
    try:
        return ord_parse(text)
    except (OrdinalParseError, NonCanonical) as exc:
        raise SchemaError(flag, str(exc)) from None


def cmd_ordinal_tower(args) -> int:
    interval = make_ordinal_interval(_ordinal_arg("--alpha", args.alpha))
    base = _ordinal_arg("--base", args.base)
    if base > interval.top:
        raise SchemaError("--base", "base lies above alpha")
    budget = Budget(successor_steps_per_block=args.budget) if args.budget else Budget()
    cert = build_tower_transfinite(interval, clamped_successor(interval), base, budget)
    limits = [ord_format(s.index) for s in cert.tower.limit_stages]
    text = "\n".join(
        [
            interval.describe(),
            _stage_table(cert.tower.stages, compress=True),
            f"limit stages at: {', '.join(limits) or 'none'}",
            f"fixed point: {ord_format(cert.omega)}",
            _checks_line(cert),
        ]
    )
    _emit(certificate_to_json(cert), args.json, text)
    return 0 if cert.valid else 1


def cmd_demo_dataflow(args) -> int:
    cfg = CFG_FIXTURES[args.cfg]
    result = reaching_definitions(cfg)
    fmt = lambda s: "{" + ", ".join(sorted(s)) + "}"  # noqa: E731
    width = max(len(n) for n in cfg.nodes)
    lines = [f"reaching definitions on '{args.cfg}'", f"{'node':<{width}}  IN / OUT"]
    lines += [f"{n:<{width}}  {fmt(result.state.IN[n])} / {fmt(result.state.OUT[n])}" for n in cfg.nodes]
    lines.append(f"tower trace length: {result.trace_length}")
    data = {
        "cfg": args.cfg,
        "IN": {n: sorted(v) for n, v in result.state.IN.items()},
        "OUT": {n: sorted(v) for n, v in result.state.OUT.items()},
        "trace_length": result.trace_length,
    }
    _emit(data, args.json, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bourbaki", description="Bourbaki towers, fixed points and maximal elements.")
    sub = parser.add_subparsers(dest="command", required=True)

    poset = sub.add_parser("poset", help="validate or render a poset document").add_subparsers(dest="action", required=True)
    p = poset.add_parser("validate")
    p.add_argument("file", help="poset JSON file, or fixture:NAME")
    p.set_defaults(func=cmd_poset_validate)
    p = poset.add_parser("dot")
    p.add_argument("file")
    p.set_defaults(func=cmd_poset_dot)

    tower = sub.add_parser("tower", help="build, check or enumerate towers").add_subparsers(dest="action", required=True)
    for name, func in (("build", cmd_tower_build), ("check", cmd_tower_check), ("enumerate", cmd_tower_enumerate)):
        p = tower.add_parser(name)
        p.add_argument("--poset", required=True)
        p.add_argument("--map", required=True)
        p.add_argument("--base", required=True)
        if name == "check":
            p.add_argument("--candidate", required=True, help="comma-separated labels, ascending")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("maximal", help="find a maximal element with a choice selector")
    p.add_argument("--poset", required=True)
    p.add_argument("--base")
    p.add_argument("--strategy", choices=("least-id", "random"), default="least-id")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_maximal)

    oracle = sub.add_parser("oracle", help="exhaustive corpus verification").add_subparsers(dest="action", required=True)
    p = oracle.add_parser("run")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--random-n", help="K (sizes max-n+1..K) or LO-HI")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle_run)

    ordinal = sub.add_parser("ordinal", help="transfinite towers on ordinal intervals").add_subparsers(dest="action", required=True)
    p = ordinal.add_parser("tower")
    p.add_argument("--alpha", required=True, help="interval top, e.g. w*2+5")
    p.add_argument("--base", default="0")
    p.add_argument("--budget", type=int, help="successor steps per block (default 1024)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ordinal_tower)

    demo = sub.add_parser("demo", help="applications").add_subparsers(dest="action", required=True)
    p = demo.add_parser("dataflow")
    p.add_argument("--cfg", choices=sorted(CFG_FIXTURES), default="diamond")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_demo_dataflow)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BourbakiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
