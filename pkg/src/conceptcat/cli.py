"""Command-line interface.

Exit codes: 0 success, 1 a falsification was found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import ConceptCatError, ParseError
from .io import (
    concept_lines,
    context_to_json,
    emit_cxt,
    lattice_to_dot,
    lattice_to_json,
    load_context,
    load_pair,
    pair_to_json,
)
from .lattice import build_concept_lattice, dm_completion, purify, reduce, standard_context
from .morphisms import (
    classify,
    is_residual_pair,
    is_residuated_pair,
    lift_backward,
    lift_forward,
)
from .oracle import enumerate_pairs
from .order import Poset
from .verify import CLASSES, DEFAULT_SEED, SuiteConfig, run_all

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_context(ctx, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _write(json.dumps(context_to_json(ctx), indent=2) + "\n", out)
    else:
        _write(emit_cxt(ctx), out)


def _render_lattice(cl, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _write(json.dumps(lattice_to_json(cl), indent=2) + "\n", out)
        return
    text = "\n".join(concept_lines(cl)) + "\n"
    if fmt == "dot":
        text += "\n" + lattice_to_dot(cl)
    _write(text, out)


def cmd_lattice(args) -> int:
    cl = build_concept_lattice(load_context(args.input))
    _render_lattice(cl, args.format, args.out)
    return EXIT_OK


def _load_pair(args):
    k = load_context(args.source)
    l = load_context(args.target)
    return load_pair(args.pair, k, l)


def cmd_classify(args) -> int:
    p = _load_pair(args)
    c = classify(p)
    if args.json:
        print(json.dumps(c.as_dict(), indent=2))
    else:
        width = max(len(k) for k in c.flags)
        for name, value in c.flags.items():
            shown = "n/a" if value is None else str(value).lower()
            print(f"{name:<{width}}  {shown}")
        print()
        for name, forms in c.characterizations.items():
            print(f"{name}: " + ", ".join(f"{k}={str(v).lower()}" for k, v in forms.items()))
        for f in c.falsifications:
            print(f"FALSIFIED {f}")
    return EXIT_OK if c.ok else EXIT_FALSIFIED


def _table(f) -> str:
    src, tgt = f.source.labels, f.target.labels
    return "; ".join(f"{src[x]} -> {tgt[y]}" for x, y in enumerate(f.table))


def cmd_lift(args) -> int:
    p = _load_pair(args)
    fa, fb = lift_forward(p)
    print(f"alpha->: {_table(fa)}")
    print(f"beta->:  {_table(fb)}")
    try:
        ba, bb = lift_backward(p)
    except ConceptCatError as e:
        print(f"backward lifts: {e}")
    else:
        print(f"alpha<-: {_table(ba)}")
        print(f"beta<-:  {_table(bb)}")
    return EXIT_OK


def cmd_transform(args) -> int:
    ctx = load_context(args.input)
    if args.command == "purify":
        out = purify(ctx)
    elif args.command == "reduce":
        out = reduce(ctx)
    else:
        out = standard_context(build_concept_lattice(ctx).lattice)
    _emit_context(out, args.format, args.out)
    return EXIT_OK


def load_poset(path: str) -> Poset:
    """JSON ``{"elements": [...], "leq": [[x, y], ...]}``; the order is the reflexive-transitive closure."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(data, dict) or not isinstance(data.get("elements"), list) or not isinstance(data.get("leq", []), list):
        raise ParseError("poset must be an object with 'elements' and 'leq' lists")
    elements = [str(x) for x in data["elements"]]
    pairs = []
    for item in data.get("leq", []):
        if not (isinstance(item, list) and len(item) == 2 and all(str(x) in elements for x in item)):
            raise ParseError(f"bad order pair {item!r}")
        pairs.append((str(item[0]), str(item[1])))
    try:
        return Poset.from_relation(elements, pairs)
    except ValueError as e:
        raise ParseError(str(e)) from None


def cmd_dm(args) -> int:
    _render_lattice(dm_completion(load_poset(args.input)), args.format, args.out)
    return EXIT_OK


ENUM_CLASSES = {name.replace(" ", "-"): fn for name, fn in CLASSES.items()}
ENUM_CLASSES["residuated"] = is_residuated_pair
ENUM_CLASSES["residual"] = is_residual_pair
ENUM_CLASSES["all"] = lambda p: True


def cmd_enumerate(args) -> int:
    if args.cls not in ENUM_CLASSES:
        raise UsageError(f"unknown class {args.cls!r}; choose from {', '.join(sorted(ENUM_CLASSES))}")
    k = load_context(args.source)
    l = load_context(args.target)
    pred = ENUM_CLASSES[args.cls]
    n = 0
    for p in enumerate_pairs(k, l):
        if pred(p):
            n += 1
            print(json.dumps(pair_to_json(p)))
    print(f"# {n} pairs", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = SuiteConfig(exhaustive_max=args.exhaustive_max, random=args.random, seed=args.seed, lattice_max=args.lattice_max)
    t0 = time.perf_counter()

    def progress(rep):
        if not args.json:
            print(rep.summary(), flush=True)
            if args.verbose:
                for m in rep.messages:
                    print(f"    {m}")

    reports = run_all(cfg, progress)
    failed = sum(1 for r in reports if not r.ok)
    if args.json:
        print(json.dumps([r.as_dict() for r in reports], indent=2))
    else:
        total = sum(r.checked for r in reports)
        print(f"{len(reports)} suites, {total} checks, {failed} suites with falsifications ({time.perf_counter() - t0:.1f}s)")
    return EXIT_FALSIFIED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conceptcat", description="Finite formal concept analysis and context morphisms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="concepts and Hasse diagram of a context")
    p.add_argument("input")
    p.add_argument("--format", choices=("text", "dot", "json"), default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice)

    for name, func, help_ in (
        ("classify", cmd_classify, "classify a mapping pair"),
        ("lift", cmd_lift, "lifted maps of a mapping pair"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("source")
        p.add_argument("target")
        p.add_argument("pair")
        if name == "classify":
            p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    for name, help_ in (
        ("purify", "purified context"),
        ("reduce", "reduced context"),
        ("standard", "standard context of the concept lattice"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input")
        p.add_argument("--format", choices=("cxt", "json"), default="cxt")
        p.add_argument("--out")
        p.set_defaults(func=cmd_transform)

    p = sub.add_parser("dm", help="Dedekind-MacNeille completion of a poset given as JSON")
    p.add_argument("input")
    p.add_argument("--format", choices=("text", "dot", "json"), default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dm)

    p = sub.add_parser("enumerate", help="all mapping pairs of a class between two contexts")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--class", dest="cls", required=True, help=", ".join(sorted(ENUM_CLASSES)))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run every verification suite")
    p.add_argument("--exhaustive-max", type=int, choices=(0, 1, 2), default=2)
    p.add_argument("--random", type=int, default=500)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--lattice-max", type=int, choices=range(1, 7), default=5)
    p.add_argument("--json", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConceptCatError, UsageError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
