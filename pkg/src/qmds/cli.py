"""Command line surface: construct codes, verify artifacts, compare residue
sets against the brute-force oracle, and emit catalogs.

Exit codes: 0 success, 2 usage error or violated hypothesis or malformed
input, 3 construction or catalog failure, 4 failed verification.  Output is
UTF-8; identical flags and seed produce byte-identical files.  The
environment variable QMDS_TABLE_BUDGET overrides the q^2 table bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .gf import DEFAULT_TABLE_BUDGET, FieldContext, TableBudgetExceeded, make_context
from .grs import GrsCode, MdsBudgetExceeded, QuantumParams, quantum_params
from .linalg import NonzeroSolutionNotFound
from .constructions import (
    CATALOG_CSV_HEADER,
    CatalogVerificationError,
    ConstructionParams,
    HypothesisViolated,
    SolvabilityRouteFailed,
    build_catalog,
    construct,
    is_odd_prime_power,
    make_params,
    residue_set,
)
from . import oracle

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3
EXIT_VERIFICATION = 4


def _table_budget() -> int:
    raw = os.environ.get("QMDS_TABLE_BUDGET")
    return int(raw) if raw else DEFAULT_TABLE_BUDGET


def _context_for(q: int) -> FieldContext:
    pe = is_odd_prime_power(q)
    if pe is None:
        raise HypothesisViolated(f"q = {q} is not an odd prime power")
    return make_context(pe[0], pe[1], _table_budget())


def artifact_dict(params: ConstructionParams, code: GrsCode, qp: QuantumParams, seed: int) -> dict:
    ctx = code.ctx
    s = ctx.element_to_json
    return {
        "field": {"p": ctx.p, "e": ctx.e, "modulus": list(ctx.modulus)},
        "code": {
            "n": code.n,
            "k": code.k,
            "locators": [s(a) for a in code.locators],
            "multipliers": [s(v) for v in code.multipliers],
        },
        "construction": {
            "family": params.family,
            "case": params.case,
            "h": params.h,
            "r": params.r,
            "t": params.t,
            "coset_exponents": list(params.coset_exponents),
            "seed": seed,
        },
        "quantum": qp.to_dict(),
    }


class MalformedArtifact(ValueError):
    pass


def load_artifact(path: str) -> tuple[GrsCode, QuantumParams]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as ex:
        raise MalformedArtifact(f"cannot parse {path}: {ex}") from ex
    try:
        fld = doc["field"]
        ctx = make_context(int(fld["p"]), int(fld["e"]), _table_budget())
        if list(ctx.modulus) != [int(c) for c in fld["modulus"]]:
            raise MalformedArtifact(
                f"modulus {fld['modulus']} does not match the deterministic modulus "
                f"{list(ctx.modulus)} for p={ctx.p}, e={ctx.e}"
            )
        codedoc = doc["code"]
        locators = tuple(ctx.element_from_json(x) for x in codedoc["locators"])
        multipliers = tuple(ctx.element_from_json(x) for x in codedoc["multipliers"])
        code = GrsCode(ctx=ctx, locators=locators, multipliers=multipliers, k=int(codedoc["k"]))
        if code.n != int(codedoc["n"]):
            raise MalformedArtifact(f"declared n={codedoc['n']} but found {code.n} locators")
        qdoc = doc["quantum"]
        claimed = QuantumParams(n=int(qdoc["n"]), k=int(qdoc["k"]), d=int(qdoc["d"]), q=int(qdoc["q"]))
    except MalformedArtifact:
        raise
    except (KeyError, TypeError, ValueError) as ex:
        raise MalformedArtifact(f"bad artifact structure: {ex}") from ex
    return code, claimed


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        ctx = _context_for(args.q)
        params = make_params(ctx, args.family, args.case, getattr(args, "h"), args.r, args.k)
    except (HypothesisViolated, TableBudgetExceeded) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code = construct(params, seed=args.seed)
    except (SolvabilityRouteFailed, NonzeroSolutionNotFound) as ex:
        print(f"construction failed: {ex}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    qp = quantum_params(code, skip_check=True)
    doc = artifact_dict(params, code, qp, args.seed)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    print(f"{qp}  (classical [{code.n},{code.k}]_{ctx.order} over GF({ctx.order}))")
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        code, claimed = load_artifact(getattr(args, "in"))
    except MalformedArtifact as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.mode == "exhaustive":
            budget = 10**12  # explicit request; mds_check still enforces its own cap
            report = oracle.full_verify(
                code, claimed, mds_trials=args.trials, seed=args.seed, subset_budget=budget
            )
        elif args.mode == "sampled":
            report = oracle.full_verify(
                code, claimed, mds_trials=args.trials, seed=args.seed, subset_budget=0
            )
        else:
            report = oracle.full_verify(code, claimed, mds_trials=args.trials, seed=args.seed)
    except MdsBudgetExceeded as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_json())
    return EXIT_OK if report.all_pass else EXIT_VERIFICATION


def cmd_sset(args: argparse.Namespace) -> int:
    variant = {1: "A", 2: "B"}.get(args.lemma)
    try:
        if variant is None or (args.family in (1, 2) and variant != "A"):
            raise HypothesisViolated(f"family {args.family} has no lemma {args.lemma}")
        closed = residue_set(args.family, variant, args.q, getattr(args, "h"), args.t, args.k)
    except HypothesisViolated as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    try:
        brute = oracle.brute_force_residue_set(args.q, getattr(args, "h"), args.k, closed.shift)
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    agree = closed.witnesses == brute
    fmt = lambda ws: "{" + ", ".join(f"{s}:(i={i},j={j})" for s, (i, j) in sorted(ws.items())) + "}"
    print(f"closed form: {fmt(closed.witnesses)}")
    print(f"brute force: {fmt(brute)}")
    print("AGREE" if agree else "DISAGREE")
    return EXIT_OK if agree else EXIT_VERIFICATION


def cmd_catalog(args: argparse.Namespace) -> int:
    try:
        entries = build_catalog(
            args.qmax,
            seed=args.seed,
            verify=args.verify_all,
            mds_trials=args.trials,
            table_budget=_table_budget(),
        )
    except (TableBudgetExceeded, HypothesisViolated) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except CatalogVerificationError as ex:
        print(f"catalog verification failed: {ex}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    if args.format == "json":
        text = json.dumps([e.to_dict() for e in entries], indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CATALOG_CSV_HEADER.split(","))
        for e in entries:
            writer.writerow(e.csv_row())
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmds",
        description="Construct and verify Hermitian self-orthogonal GRS codes "
        "over GF(q^2) and the quantum MDS parameters they yield.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build one code and write its artifact JSON")
    p.add_argument("--q", type=int, required=True, help="odd prime power")
    p.add_argument("--family", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--case", type=int, default=1)
    p.add_argument("--h", type=int, required=True, dest="h")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="dimension (default: maximal)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="artifact path (default: stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run every oracle on an artifact")
    p.add_argument("--in", required=True, dest="in")
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sset", help="closed-form residue set vs brute force")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--h", type=int, required=True, dest="h")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--family", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--lemma", type=int, default=1, choices=(1, 2),
                   help="lemma variant for families 3 and 4")
    p.set_defaults(func=cmd_sset)

    p = sub.add_parser("catalog", help="emit verified parameter catalog")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--verify-all", action=argparse.BooleanOptionalAction, default=True,
                   dest="verify_all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000, help="sampled subsets per entry")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
