"""Command-line front end.  Exit codes: 0 ok, 1 verification mismatch, 2 usage/input error."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from sympy import isprime

from . import finite_quadratic as fq
from .fibrations import compare_with_golden, generate_table
from .hyperbolic import ChamberSpec, interior_point_check, wall_verdict
from .lattice import Lattice, LatticeError, classify, dual_rescale_p, vector_to_json
from .surfaces import ModelVerificationError, build_S21, build_S31

TSV_HEADER = ["No.", "R_N", "R_phi", "MW_tor", "MW_rank", "R_phi_prime", "QE_sigma1", "QE_sigma10"]


class UsageError(Exception):
    pass


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def cmd_tables(args) -> int:
    rows = generate_table(args.char)
    _out("\t".join(TSV_HEADER))
    for i, r in enumerate(rows, 1):
        _out("\t".join([str(i)] + r.tsv_fields()))
    diff = compare_with_golden(rows, args.char)
    if diff is None:
        _out(f"PASS\t{len(rows)} rows match the reference table")
        return 0
    _out(f"FAIL\t{diff}")
    return 1


def cmd_duality(args) -> int:
    data = _load_json(args.input)
    try:
        L = Lattice.from_json(data)
        D = dual_rescale_p(L, args.p)
    except (LatticeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    for name, M in (("L", L), (f"L_dual({args.p})", D)):
        _out(f"# {name}")
        for line in classify(M).lines():
            _out(line)
    back = dual_rescale_p(D, args.p)
    ok = back.gram == L.gram
    _out(f"double_dual_rescale_identity\t{str(ok).lower()}")
    return 0 if ok else 1


def cmd_models(args) -> int:
    try:
        model = build_S21() if args.char == 2 else build_S31()
    except ModelVerificationError as exc:
        _out(json.dumps({"verification": {"passed": False, "failure": str(exc)}}))
        return 1
    prof = classify(model.lattice)
    out = model.to_json()
    out["verification"] = {"passed": True, "report": prof.lines()}
    _out(json.dumps(out, sort_keys=True))
    return 0


def cmd_walls(args) -> int:
    data = _load_json(args.spec)
    try:
        C = ChamberSpec.from_json(data)
    except (LatticeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    _out("index\tvector\tis_wall\tduplicates\tmethod")
    for i, v in enumerate(C.delta):
        w = wall_verdict(C, i)
        _out(f"{i}\t{json.dumps(vector_to_json(v))}\t{str(w.is_wall).lower()}\t"
             f"{','.join(map(str, w.duplicates)) or '-'}\t{w.method}")
    _out(f"interior\t{json.dumps(vector_to_json(C.base))}\t{str(interior_point_check(C, C.base)).lower()}")
    return 0


def _require_odd_prime(p: int) -> None:
    if p < 3 or not isprime(p):
        raise UsageError("--p must be an odd prime")


def _stabilizer_summary(fn, p: int, sigma: int) -> tuple[str, Optional[fq.StabilizerResult]]:
    try:
        r = fn(p, sigma)
    except fq.StabilizerTooLarge as exc:
        return f"too large ({exc})", None
    return str(r.order), r


def cmd_periods(args) -> int:
    p, sigma = args.p, args.sigma
    _require_odd_prime(p)
    if not 1 <= sigma <= 10:
        raise UsageError("--sigma must be between 1 and 10")
    B, family = fq.characteristic_family(p, sigma)
    ok = True
    _out(f"p\t{p}")
    _out(f"sigma\t{sigma}")
    _out(f"c\t{B.c}")
    _out("# pairing table b0(b_i^(e), b_j^(f)) with F_{p^2} elements as (a, b) = a + b*alpha")
    for k1, k2, val in fq.pairing_table(B):
        _out(f"b{k1[0]}^({k1[1]:+d})\tb{k2[0]}^({k2[1]:+d})\t{B.field.coords(val)}")
    _out("# characteristic subspaces K_e")
    for e, K in family.items():
        verdict = fq.is_characteristic(B, K)
        ok &= verdict
        parity = "E+" if fq.SignVector(e).parity == 1 else "E-"
        _out(f"{','.join(f'{x:+d}' for x in e)}\t{parity}\t{str(verdict).lower()}")
    for e, K in family.items():
        for i in range(sigma):
            e2 = fq.SignVector(e).flip(i).e
            ok &= fq.intersection_dim(B.field, K, family[e2]) == sigma - 1
    if sigma >= 3:
        xi, eta = fq.solve_xi_eta(p)
        _out(f"xi_eta\t{xi},{eta}")
    order, _ = _stabilizer_summary(fq.family_stabilizer, p, sigma)
    _out(f"stabilizer_E_plus_order\t{order}")
    _out(f"diagonal_torus_order\t{fq.torus_order(p, sigma)}")
    if sigma >= 3:
        order, r = _stabilizer_summary(fq.genericity_stabilizer, p, sigma)
        _out(f"stabilizer_with_eigenlines_order\t{order}")
        ok &= r is not None and r.is_plus_minus_identity()
    return 0 if ok else 1


def _parse_epsilon(s: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "plus": 1, "-": -1, "-1": -1, "minus": -1}
    if s not in table:
        raise argparse.ArgumentTypeError("epsilon must be + or -")
    return table[s]


def cmd_group_order(args) -> int:
    _require_odd_prime(args.p)
    if args.dim <= 0 or args.dim % 2:
        raise UsageError("--dim must be a positive even integer")
    n = fq.orthogonal_group_order(args.p, args.dim, args.epsilon)
    _out(f"order\t{n}")
    _out(f"factorization\t{fq.format_factorization(fq.factorization(n))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="k3lattice")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tables", help="reproduce the fibration tables")
    s.add_argument("--char", type=int, choices=[2, 3], required=True)
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("duality", help="classify L and its dual rescale")
    s.add_argument("--input", required=True)
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_duality)

    s = sub.add_parser("models", help="dump a verified rank-22 model")
    s.add_argument("--char", type=int, choices=[2, 3], required=True)
    s.set_defaults(func=cmd_models)

    s = sub.add_parser("walls", help="wall verdicts for a chamber")
    s.add_argument("--spec", required=True)
    s.set_defaults(func=cmd_walls)

    s = sub.add_parser("periods", help="characteristic subspaces and stabilizers")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--sigma", type=int, required=True)
    s.set_defaults(func=cmd_periods)

    s = sub.add_parser("group-order", help="order of a finite orthogonal group")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--epsilon", type=_parse_epsilon, required=True)
    s.set_defaults(func=cmd_group_order)
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
