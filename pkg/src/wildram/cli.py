"""Command line front end.

Every subcommand prints one machine-readable report on stdout (JSON by
default, CSV or plain text via --format) and writes diagnostics to stderr.
Exit codes: 0 success, 1 a mathematical check failed, 2 usage or
precondition error.  Rationals cross the boundary as exact strings 'n/d';
no floating point is used anywhere.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import gcd

from .checks import REGISTRY, run_check
from .exactmath import format_rational, parse_rational, vp
from .psl2 import (
    InertiaType,
    group_params,
    inertia_candidates,
    select_triple,
    verify_subgroup_claims,
)
from .ramification import (
    JumpSequence,
    base_sigma,
    enumerate_admissible,
    genus,
    is_admissible,
)
from .tails import infer_inertia, solve_tail_configs
from .towers import (
    deform,
    inertia_type_of,
    oracle_jumps,
    oracle_supported,
    predicted_jumps,
    read_tower_spec,
    validate_spec,
    verify_deformation,
    write_tower_spec,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _parse_jumps(text: str) -> JumpSequence:
    return JumpSequence.from_strings([part for part in text.split(",") if part.strip()])


def _inertia_from_args(args, r: int) -> InertiaType:
    m_I = args.mI if args.mI is not None else gcd(args.m, args.p - 1)
    return InertiaType(p=args.p, r=r, m=args.m, m_I=m_I)


# ---------------------------------------------------------------------------
# Handlers: each returns (payload, rows, exit_code)


def _cmd_params(args):
    gp = group_params(args.p, args.ell)
    payload = {
        "command": "params",
        "check": "group-invariants",
        "statement": "order = ell(ell^2 - 1)/2; a = v_p(ell^2 - 1); m_G = 2 when a >= 1",
        "p": gp.p,
        "ell": gp.ell,
        "order": gp.order,
        "a": gp.a,
        "m_G": gp.m_G,
    }
    return payload, None, EXIT_OK


def _cmd_triple(args):
    triple = select_triple(args.p, args.ell)
    payload = {
        "command": "triple",
        "check": "class-triple",
        "statement": "three classes whose quotient-group orders have p-valuations (0, a-1, a)",
        "p": args.p,
        "ell": args.ell,
        **triple.to_dict(),
        "vp_chain": [vp(e, args.p) for e in triple.psl2_indices],
    }
    rows = [c.to_dict() for c in triple.classes]
    return payload, rows, EXIT_OK


def _cmd_candidates(args):
    gp = group_params(args.p, args.ell)
    cands = inertia_candidates(gp)
    payload = {
        "command": "candidates",
        "check": "inertia-candidates",
        "statement": "cyclic Z/p^r and dihedral D_{p^r} for 1 <= r <= a",
        "p": args.p,
        "ell": args.ell,
        "a": gp.a,
        "candidates": [c.to_dict() for c in cands],
    }
    return payload, [c.to_dict() for c in cands], EXIT_OK


def _cmd_admissible(args):
    seq = _parse_jumps(args.jumps)
    inertia = _inertia_from_args(args, r=len(seq))
    verdict = is_admissible(inertia, seq)
    payload = {
        "command": "admissible",
        "check": "admissibility-conditions-a-d",
        "statement": "jumps in (1/m)N; gcd(m, m u_1) = m/m_I; growth by p or prime-to-p; "
        "constant class mod m",
        "inertia": inertia.to_dict(),
        "jumps": seq.to_strings(),
        **verdict.to_dict(),
    }
    return payload, verdict.to_dict()["conditions"], EXIT_OK


def _cmd_enumerate(args):
    inertia = InertiaType(
        p=args.p,
        r=args.r,
        m=args.m,
        m_I=args.mI if args.mI is not None else gcd(args.m, args.p - 1),
    )
    bound = parse_rational(args.bound)
    seqs = enumerate_admissible(inertia, bound)
    payload = {
        "command": "enumerate",
        "check": "admissible-enumeration",
        "statement": "all admissible sequences with u_r <= bound, lexicographic",
        "inertia": inertia.to_dict(),
        "bound": format_rational(bound),
        "count": len(seqs),
        "sequences": [s.to_strings() for s in seqs],
    }
    rows = [{"index": i, "jumps": ",".join(s.to_strings())} for i, s in enumerate(seqs)]
    return payload, rows, EXIT_OK


def _cmd_genus(args):
    seq = _parse_jumps(args.jumps)
    inertia = _inertia_from_args(args, r=args.r if args.r is not None else len(seq))
    result = genus(args.order, inertia, seq)
    payload = {
        "command": "genus",
        "check": "genus-and-divisor-degree",
        "statement": "deg R = m p^r - 1 + (p-1) m sum(p^(i-1) u_i); "
        "genus = 1 - N + N deg(R)/(2 m p^r)",
        "order": args.order,
        "inertia": inertia.to_dict(),
        "jumps": seq.to_strings(),
        **result.to_dict(),
    }
    return payload, None, EXIT_OK


def _cmd_base_sigma(args):
    inertia = InertiaType(
        p=args.p,
        r=args.r,
        m=args.m,
        m_I=args.mI if args.mI is not None else gcd(args.m, args.p - 1),
    )
    sigma = base_sigma(inertia, args.ell)
    payload = {
        "command": "base-sigma",
        "check": "base-filtration",
        "statement": "(3/2) for D_p; (2) or (3) for Z/p depending on ell mod 8; otherwise unknown",
        "inertia": inertia.to_dict(),
        "ell": args.ell,
        "sigma": sigma.to_strings() if sigma is not None else "unknown",
    }
    return payload, None, EXIT_OK


def _cmd_tower_predict(args):
    spec = read_tower_spec(args.spec)
    verdict = validate_spec(spec)
    payload = {
        "command": "tower-predict",
        "check": "tower-jump-recurrence",
        "statement": "u_1 = deg(x_1)/m; u_i = max(deg(x_i)/m, p u_{i-1})",
        "spec": spec.to_dict(),
        **verdict.to_dict(),
    }
    if verdict.valid:
        payload["jumps"] = predicted_jumps(spec).to_strings()
        payload["inertia"] = inertia_type_of(spec).to_dict()
        payload["oracle_supported"] = oracle_supported(spec)
        if not oracle_supported(spec):
            payload["note"] = "recurrence output for r >= 3 is unverified by the oracle"
    return payload, None, EXIT_OK


def _cmd_tower_oracle(args):
    spec = read_tower_spec(args.spec)
    jumps = oracle_jumps(spec)
    payload = {
        "command": "tower-oracle",
        "check": "tower-jump-oracle",
        "statement": "lower jumps from layerwise reduction, converted to upper numbering",
        "spec": spec.to_dict(),
        "jumps": jumps.to_strings(),
    }
    code = EXIT_OK
    if validate_spec(spec).valid:
        predicted = predicted_jumps(spec)
        payload["agrees_with_recurrence"] = predicted == jumps
        if predicted != jumps:
            payload["recurrence_jumps"] = predicted.to_strings()
            code = EXIT_CHECK_FAILED
    return payload, None, code


def _cmd_deform(args):
    spec = read_tower_spec(args.spec)
    target = _parse_jumps(args.target)
    verdict = verify_deformation(spec, target, args.scale)
    deformed = deform(spec, target, args.scale)
    if args.out:
        write_tower_spec(deformed, args.out)
    payload = {
        "command": "deform",
        "check": "jump-deformation",
        "statement": "add scale*x^(m u_i') to x_i when u_i' > p u_{i-1}' and u_i' > u_i",
        "spec": spec.to_dict(),
        "deformed": deformed.to_dict(),
        **verdict.to_dict(),
    }
    return payload, None, EXIT_OK if verdict.ok else EXIT_CHECK_FAILED


def _cmd_tails(args):
    bound = parse_rational(args.bound) if args.bound else None
    configs = solve_tail_configs(
        args.mG,
        n_prim=args.prim,
        n_new_min=args.new_min,
        n_new_max=args.new_max,
        sigma_bound=bound,
    )
    payload = {
        "command": "tails",
        "check": "tail-configurations",
        "statement": "sum over new tails (sigma - 1) plus sum over primitive tails sigma = 1",
        "m_G": args.mG,
        "count": len(configs),
        "configurations": [c.to_dict() for c in configs],
    }
    rows = [
        {"index": i, "tails": ";".join(f"{t['kind']}:{t['sigma']}" for t in c.to_dict())}
        for i, c in enumerate(configs)
    ]
    return payload, rows, EXIT_OK


def _cmd_infer(args):
    sigma = parse_rational(args.sigma)
    inference = infer_inertia(sigma, args.p, args.mG)
    payload = {
        "command": "infer",
        "check": "inertia-from-invariant",
        "statement": "r allowed when p^(r-1)/m_G <= sigma; integer sigma permits abelian inertia",
        "sigma": format_rational(sigma),
        "p": args.p,
        "m_G": args.mG,
        **inference.to_dict(),
    }
    return payload, None, EXIT_OK


def _cmd_verify_group(args):
    report = verify_subgroup_claims(args.p, args.ell, budget=args.budget)
    payload = {
        "command": "verify-group",
        "check": "subgroup-claims",
        "statement": "dihedral existence, dihedral uniqueness among semidirect forms, "
        "quasi-p subgroups above a dihedral",
        **report.to_dict(),
    }
    rows = [c.to_dict() for c in report.claims] if report.status == "checked" else None
    code = EXIT_OK if report.status == "refused" or report.all_passed else EXIT_CHECK_FAILED
    return payload, rows, code


def _cmd_check_all(args):
    results = [run_check(spec, budget_subgroup=args.budget_subgroup) for spec in REGISTRY]
    for r in results:
        print(f"{r.status:>4}  {r.check_id}  ({r.seconds:.2f}s)", file=sys.stderr)
    # timings go to stderr only, keeping the data stream deterministic
    reports = []
    for r in results:
        d = r.to_dict()
        d.pop("seconds")
        reports.append(d)
    payload = {
        "command": "check-all",
        "check": "verification-suites",
        "statement": "every registered suite within its budget",
        "results": reports,
        "passed": sum(r.status == "pass" for r in results),
        "failed": sum(r.status == "fail" for r in results),
        "skipped": sum(r.status == "skip" for r in results),
    }
    rows = [{"check": r.check_id, "status": r.status} for r in results]
    code = EXIT_OK if payload["failed"] == 0 else EXIT_CHECK_FAILED
    return payload, rows, code


# ---------------------------------------------------------------------------
# Output formatting


def _flatten(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return value


def emit(payload: dict, rows, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
        return
    if fmt == "csv":
        records = rows if rows is not None else [payload]
        keys = sorted({k for rec in records for k in rec})
        print(",".join(keys))
        for rec in records:
            print(",".join(str(_flatten(rec.get(k, ""))) for k in keys))
        return
    for key in sorted(payload):
        print(f"{key}: {_flatten(payload[key])}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wildram",
        description="exact computations for wildly ramified one-point covers",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv", "plain"), default="json", help="output format"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, configure):
        p = sub.add_parser(name, parents=[common])
        configure(p)
        p.set_defaults(handler=handler)

    add("params", _cmd_params, lambda p: [
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--ell", type=int, required=True),
    ])
    add("triple", _cmd_triple, lambda p: [
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--ell", type=int, required=True),
    ])
    add("candidates", _cmd_candidates, lambda p: [
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--ell", type=int, required=True),
    ])
    add("admissible", _cmd_admissible, lambda p: [
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--m", type=int, required=True),
        p.add_argument("--mI", type=int, default=None),
        p.add_argument("--jumps", required=True, help="comma separated rationals, e.g. 3/2"),
    ])
    add("enumerate", _cmd_enumerate, lambda p: [
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--m", type=int, required=True),
        p.add_argument("--mI", type=int, default=None),
        p.add_argument("--r", type=int, required=True),
        p.add_argument("--bound", required=True),
    ])
    add("genus", _cmd_genus, lambda p: [
        p.add_argument("--order", type=int, required=True),
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--m", type=int, required=True),
        p.add_argument("--mI", type=int, default=None),
        p.add_argument("--r", type=int, default=None),
        p.add_argument("--jumps", required=True),
    ])
    add("base-sigma", _cmd_base_sigma, lambda p: [
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--ell", type=int, required=True),
        p.add_argument("--m", type=int, required=True),
        p.add_argument("--mI", type=int, default=None),
        p.add_argument("--r", type=int, default=1),
    ])
    add("tower-predict", _cmd_tower_predict, lambda p: [
        p.add_argument("--spec", required=True, help="path to a tower file"),
    ])
    add("tower-oracle", _cmd_tower_oracle, lambda p: [
        p.add_argument("--spec", required=True),
    ])
    add("deform", _cmd_deform, lambda p: [
        p.add_argument("--spec", required=True),
        p.add_argument("--target", required=True, help="target jumps, comma separated"),
        p.add_argument("--scale", type=int, default=1),
        p.add_argument("--out", default=None, help="write the deformed tower here"),
    ])
    add("tails", _cmd_tails, lambda p: [
        p.add_argument("--mG", type=int, required=True),
        p.add_argument("--prim", type=int, required=True),
        p.add_argument("--new-min", type=int, default=0),
        p.add_argument("--new-max", type=int, default=None),
        p.add_argument("--bound", default=None),
    ])
    add("infer", _cmd_infer, lambda p: [
        p.add_argument("--sigma", required=True),
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--mG", type=int, required=True),
    ])
    add("verify-group", _cmd_verify_group, lambda p: [
        p.add_argument("--p", type=int, required=True),
        p.add_argument("--ell", type=int, required=True),
        p.add_argument("--budget", type=int, default=2000),
    ])
    add("check-all", _cmd_check_all, lambda p: [
        p.add_argument("--budget-subgroup", type=int, default=2000),
    ])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        payload, rows, code = args.handler(args)
    except (ValueError, NotImplementedError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(payload, rows, args.format)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
