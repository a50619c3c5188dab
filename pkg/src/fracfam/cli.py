"""Command-line entry point: ``fracfam <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import bounds, certify, construct, search
from .core import (
    FamilyError,
    InstanceParams,
    mask_elements,
    mask_from_elements,
    parse_lspec,
    verify_family,
)
from .fileio import format_family, read_family

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


def _params(args) -> InstanceParams:
    try:
        return InstanceParams(args.r, parse_lspec(args.l))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _load(path: str):
    try:
        return read_family(path)
    except FamilyError as exc:
        raise _UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise _UsageError(str(exc)) from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    family = _load(args.family)
    params = _params(args)
    ok, witness = verify_family(family, params)
    if args.json:
        payload = {"valid": ok, "m": family.m, "r": params.r, "L": str(params.l)}
        if witness is not None:
            payload["witness"] = {
                "indices": list(witness.indices),
                "sets": [mask_elements(family[i]) for i in witness.indices],
                "intersection_size": witness.intersection_size,
            }
        print(json.dumps(payload, indent=2))
    elif ok:
        print(f"valid: m={family.m}, r={params.r}, L={params.l}")
    else:
        sets = "; ".join(",".join(map(str, mask_elements(family[i]))) or "{}" for i in witness.indices)
        print(
            f"invalid: members {list(witness.indices)} ({sets}) meet in "
            f"{witness.intersection_size} elements"
        )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bound(args) -> int:
    try:
        report = bounds.exact_bound(args.n, args.r, args.s)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    data = report.to_dict()
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        for key in ("n", "r", "s", "t", "primes", "p_t", "primorial", "exact_bound",
                    "exact_improved", "improved_case", "asymptotic_bound", "t_estimate",
                    "pt_estimate"):
            print(f"{key}: {data[key]}")
    return EXIT_OK


def cmd_certify(args) -> int:
    family = _load(args.family)
    params = _params(args)
    try:
        report = certify.certify(family, params, dim_cap=args.dim_cap)
    except certify.InvalidFamilyError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    except certify.DimensionCapError as exc:
        raise _UsageError(str(exc)) from None
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    params = _params(args)
    if args.csv:
        rows = search.conjecture_harness(
            params.r, params.l, range(args.n_min, args.n + 1),
            include_empty=args.include_empty, time_limit=args.time_limit,
            deterministic=args.deterministic, seed=args.seed,
        )
        _emit(search.harness_csv(rows), args.out)
        return EXIT_OK
    try:
        config = search.SearchConfig(
            args.n, params, args.include_empty, args.time_limit, args.deterministic, args.seed
        )
        result = (search.naive_max if args.naive else search.branch_and_bound_max)(config)
    except (ValueError, FamilyError) as exc:
        raise _UsageError(str(exc)) from None
    if args.witness_out:
        with open(args.witness_out, "w", encoding="utf-8") as fh:
            fh.write(format_family(result.witness))
    if args.json:
        payload = {
            "n": args.n, "r": params.r, "L": str(params.l),
            "max_size": result.max_size, "status": result.status,
            "nodes_explored": result.nodes_explored,
            "seed": args.seed, "deterministic": args.deterministic,
            "witness": result.witness.to_lists(),
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        text = (
            f"# max_size={result.max_size} status={result.status} "
            f"nodes={result.nodes_explored} seed={args.seed}\n" + format_family(result.witness)
        )
        _emit(text, args.out)
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        if args.type == "all-s-subsets":
            if args.s is None:
                raise _UsageError("--s is required for all-s-subsets")
            family, l = construct.all_s_subsets(args.n, args.s)
        else:
            if args.petals is None or args.petal_size is None:
                raise _UsageError("--petals and --petal-size are required for sunflower")
            core = mask_from_elements(int(x) for x in args.core.split(",") if x)
            family = construct.sunflower_family(args.n, core, args.petals, args.petal_size)
            l = None
    except (ValueError, FamilyError) as exc:
        raise _UsageError(str(exc)) from None
    _emit(format_family(family), args.out)
    if l is not None:
        # keep stdout a clean family file when no --out is given
        print(f"L={l}", file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracfam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the r-wise fractional L-intersecting property")
    p.add_argument("--family", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--l", required=True, help="fractions, e.g. 0/1,1/2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="exact and asymptotic upper bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("certify", help="replay the linear-algebra argument on a family")
    p.add_argument("--family", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--out")
    p.add_argument("--dim-cap", type=int, default=certify.DEFAULT_DIM_CAP)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="exact maximum family search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--include-empty", action="store_true")
    p.add_argument("--time-limit", type=float, default=60.0)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", action="store_true", help="harness table for n-min..n")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--naive", action="store_true", help="exhaustive oracle (n <= 4)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--witness-out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("construct", help="generate families")
    p.add_argument("--type", choices=["all-s-subsets", "sunflower"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--core", default="")
    p.add_argument("--petals", type=int)
    p.add_argument("--petal-size", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"fracfam {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
