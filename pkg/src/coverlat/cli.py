"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 1 negative verdict,
2 input error, 3 size or budget limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from pathlib import Path

from .classical import GroupTable, gen_dowling_lattice, gen_partition_lattice, gen_subspace_lattice
from .classify import CLASSIFIERS, exhaustive_negative_search
from .covering import covering_from_json, simplify
from .errors import BudgetExceeded, InputError, TooLarge
from .iso import lattice_isomorphic
from .lattice import GradedLattice, build_lattice, lattice_from_json
from .matroid import MatroidOracle

GEN_SPEC = re.compile(r"^(partition|subspace|dowling):(\d+(?:,\d+)?)$")


def parse_gen_spec(spec: str) -> GradedLattice:
    """``partition:n``, ``subspace:q,n`` or ``dowling:n,order``."""
    match = GEN_SPEC.match(spec)
    if not match:
        raise InputError(f"bad gen-spec {spec!r}")
    family = match.group(1)
    nums = [int(x) for x in match.group(2).split(",")]
    if family == "partition" and len(nums) == 1:
        return gen_partition_lattice(nums[0])
    if family == "subspace" and len(nums) == 2:
        return gen_subspace_lattice(nums[0], nums[1])
    if family == "dowling" and len(nums) == 2:
        return gen_dowling_lattice(nums[0], nums[1])
    raise InputError(f"wrong number of parameters in {spec!r}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def resolve_lattice(arg: str) -> GradedLattice:
    """A covering file, a lattice JSON file, or a gen-spec."""
    if not os.path.exists(arg) and GEN_SPEC.match(arg):
        return parse_gen_spec(arg)
    text = _read(arg)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {arg}: {exc}") from None
    if isinstance(doc, dict) and "flats" in doc:
        return lattice_from_json(text)
    return build_lattice(MatroidOracle(covering_from_json(text)))


def _emit(lat: GradedLattice, fmt: str) -> None:
    sys.stdout.write(lat.export_dot() if fmt == "dot" else lat.export_json())


def cmd_build(args) -> int:
    c = covering_from_json(_read(args.file))
    if args.simplify:
        c, _ = simplify(c)
    _emit(build_lattice(MatroidOracle(c)), args.format)
    return 0


def cmd_classify(args) -> int:
    c = covering_from_json(_read(args.file))
    families = list(CLASSIFIERS) if args.family == "all" else [args.family]
    any_yes = False
    for fam in families:
        report = CLASSIFIERS[fam](c, cross_check=not args.no_cross_check)
        any_yes |= report.verdict
        sys.stdout.write(report.to_json() + "\n")
    return 0 if any_yes else 1


def cmd_gen(args) -> int:
    if args.family == "partition":
        lat = gen_partition_lattice(args.n)
    elif args.family == "subspace":
        if args.q is None:
            raise InputError("--q is required for the subspace family")
        lat = gen_subspace_lattice(args.q, args.n)
    else:
        if args.cayley:
            group = GroupTable.from_json(_read(args.cayley))
        elif args.group_order is not None:
            group = GroupTable.cyclic(args.group_order)
        else:
            raise InputError("--group-order or --cayley is required for the dowling family")
        lat = gen_dowling_lattice(args.n, group)
    _emit(lat, args.format)
    return 0


def cmd_iso(args) -> int:
    a = resolve_lattice(args.a)
    b = resolve_lattice(args.b)
    f = lattice_isomorphic(a, b, budget=args.budget)
    if f is None:
        sys.stdout.write("not isomorphic\n")
        return 1
    for i, j in f.items():
        sys.stdout.write(f"{a.labels[i]}\t{b.labels[j]}\n")
    return 0


def cmd_search(args) -> int:
    target = parse_gen_spec(args.target)
    found = exhaustive_negative_search(args.max_elements, args.max_blocks, target, workers=args.workers)
    sys.stdout.write(json.dumps([c.to_dict() for c in found], sort_keys=True) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coverlat", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="lattice of flats of a covering")
    p.add_argument("file")
    p.add_argument("--format", choices=["dot", "json"], default="json")
    p.add_argument("--simplify", action="store_true", help="apply the quotient reduction first")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("classify", help="closed-form classification of a covering lattice")
    p.add_argument("file")
    p.add_argument("--family", choices=["partition", "subspace", "dowling", "all"], default="all")
    p.add_argument("--no-cross-check", action="store_true", help="skip the isomorphism confirmation")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gen", help="generate a reference lattice")
    p.add_argument("--family", choices=["partition", "subspace", "dowling"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--group-order", type=int)
    group.add_argument("--cayley", help="JSON Cayley table file")
    p.add_argument("--format", choices=["dot", "json"], default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("iso", help="test two lattices for isomorphism")
    p.add_argument("a", help="covering file, lattice JSON file or gen-spec")
    p.add_argument("b")
    p.add_argument("--budget", type=int, default=2000)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("search", help="find coverings whose lattice matches a target")
    p.add_argument("--max-elements", type=int, required=True)
    p.add_argument("--max-blocks", type=int, required=True)
    p.add_argument("--target", required=True, help="gen-spec such as partition:4")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (TooLarge, BudgetExceeded) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
