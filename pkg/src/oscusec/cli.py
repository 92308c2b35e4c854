"""Command-line front end.

Subcommands: dim, terracini, horace, tables, special. Exit codes: 0 success,
2 malformed input, 3 internal invariant breach (cross-oracle disagreement),
4 certificate failure. Output is deterministic for a fixed configuration:
JSON is emitted with sorted keys, CSV with frozen column orders (documented
in schemas/tables.schema.json).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from math import comb

from . import config
from .errors import CertificateError, ConditionNotMet, OscusecError, StepFailed
from .horace import (
    CERTIFIED_BY_A,
    HoraceCertificate,
    build_certificate,
    check_A,
    check_B,
    corollary1_verdict,
    hirzebruch_exceptional,
    p2_exceptional,
    theorem2_verdict,
    verify_certificate,
)
from .interpolation import (
    CERTIFIED_NON_SPECIAL,
    FatPoint,
    FatPointScheme,
    Hirzebruch,
    Projective,
    basis_size,
    load_scheme,
    spec_to_json,
    speciality,
)
from .terracini import laplace_count, secant_osculating_dim, terracini_triple

SCHEMA_VERSION = 1

# Caps keeping table sweeps fast.
MAX_D_P3 = 15
MAX_D_P2 = 25

TABLE_COLUMNS = {
    "theorem2": ["d", "h", "verdict", "predicted", "observed", "match"],
    "corollary1": ["h", "m", "d", "verdict", "predicted", "observed", "match"],
    "corollary2": ["n", "a", "b", "m", "s", "exceptional", "family", "predicted", "observed", "match"],
    "laplace": ["n", "h", "K", "T", "rewritten_ok", "curve_excess"],
}


def _emit(payload, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2))
        out.write("\n")
    elif fmt == "csv":
        rows = payload["rows"] if isinstance(payload, dict) and "rows" in payload else [payload]
        cols = payload.get("columns") if isinstance(payload, dict) else None
        if cols is None:
            cols = sorted(rows[0].keys()) if rows else []
        writer = csv.DictWriter(out, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    else:  # pretty
        if isinstance(payload, dict) and "rows" in payload:
            cols = payload.get("columns") or (sorted(payload["rows"][0]) if payload["rows"] else [])
            out.write("  ".join(cols) + "\n")
            for row in payload["rows"]:
                out.write("  ".join(str(row.get(c, "")) for c in cols) + "\n")
        else:
            for key in sorted(payload):
                out.write(f"{key}: {payload[key]}\n")


def _parse_range(text: str) -> list[int]:
    """'4..6' -> [4,5,6]; '5' -> [5]; '1,3,7' -> [1,3,7]."""
    vals: list[int] = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            vals.extend(range(int(lo), int(hi) + 1))
        else:
            vals.append(int(part))
    return vals


def _spec_from_args(args):
    if args.hirzebruch is not None:
        n, a, b = args.hirzebruch
        return Hirzebruch(n, a, b)
    if args.pn is None or args.d is None:
        raise ValueError("need --pn N --d D or --hirzebruch N A B")
    return Projective(args.pn, args.d)


def _scheme_from_args(args) -> FatPointScheme:
    return FatPointScheme.of(triple=args.triple, double=args.double, simple=args.simple)


def cmd_dim(args, out) -> int:
    if args.scheme:
        spec, scheme = load_scheme(args.scheme)
    else:
        spec = _spec_from_args(args)
        scheme = _scheme_from_args(args)
    report, verdict = speciality(spec, scheme, args.trials, args.seed)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "dim",
        "spec": spec_to_json(spec),
        "conditions": report.rows,
        "basis": report.cols,
        "observed_rank": report.observed_rank,
        "dimension": report.cols - report.observed_rank - 1,
        "verdict": verdict.kind,
        "deficiency": verdict.deficiency,
        "trials": report.trials,
        "prime": config.get_prime(),
        "seed": report.master_seed,
    }
    _emit(payload, args.format, out)
    return 0


def cmd_terracini(args, out) -> int:
    spec = _spec_from_args(args)
    sec, join, interp = terracini_triple(spec, args.m, args.h, args.trials, args.seed)
    agree = sec == join == interp
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "terracini",
        "spec": spec_to_json(spec),
        "m": args.m,
        "h": args.h,
        "secant_frame_dim": sec,
        "join_dim": join,
        "interpolation_dim": interp,
        "agree": agree,
        "prime": config.get_prime(),
        "seed": config.get_seed() if args.seed is None else args.seed,
    }
    _emit(payload, args.format, out)
    if not agree:
        print("invariant breach: oracle disagreement", file=sys.stderr)
        return 3
    return 0


def cmd_horace(args, out) -> int:
    if args.action == "check":
        k, a, b = args.k, args.a, args.b
        va = check_A(k, a, b)
        vb = check_B(k, a, b)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "horace-check",
            "k": k,
            "a": a,
            "b": b,
            "check_A": {"verdict": va.kind, "lhs": va.lhs, "rhs": va.rhs, "gamma": va.gamma},
            "check_B": {"verdict": vb.kind, "lhs": vb.lhs, "rhs": vb.rhs, "gamma": vb.gamma},
        }
        _emit(payload, args.format, out)
        return 0
    if args.action == "build":
        cert = build_certificate(args.k, args.a, args.b, args.seed)
        if args.out_file:
            cert.dump(args.out_file)
            _emit({"command": "horace-build", "written": args.out_file, "steps": len(cert.steps)}, args.format, out)
        else:
            _emit(cert.to_json(), args.format, out)
        return 0
    # verify
    cert = HoraceCertificate.load(args.cert_file)
    report = verify_certificate(cert, args.trials, args.seed)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "horace-verify",
        "degree": cert.degree,
        "triples": cert.triples,
        "doubles": cert.doubles,
        "steps": [
            {
                "degree": s.degree,
                "trace": list(s.trace),
                "trace_length": s.trace_length,
                "capacity": s.capacity,
                "ok": s.ok,
            }
            for s in report.steps
        ],
        "terminal_degree": report.terminal_degree,
        "terminal_conditions": report.terminal_conditions,
        "terminal_rank": report.terminal_rank,
        "ok": report.ok,
    }
    _emit(payload, args.format, out)
    return 0


def _theorem2_row(d: int, h: int, trials: int, seed: int) -> dict:
    verdict = theorem2_verdict(d, h)
    observed = secant_osculating_dim(Projective(3, d), 2, h, trials, seed)
    predicted = None
    if verdict.kind == CERTIFIED_BY_A:
        predicted = 10 * (h + 1) - 1
    elif verdict:
        predicted = comb(d + 3, 3) - 1
    return {
        "d": d,
        "h": h,
        "verdict": verdict.kind,
        "predicted": predicted,
        "observed": observed,
        "match": predicted == observed if predicted is not None else None,
    }


def _corollary1_row(h: int, m: int, d: int, trials: int, seed: int) -> dict:
    if h == 3:
        return {"h": h, "m": m, "d": d, "verdict": "outside paper's table",
                "predicted": None, "observed": None, "match": None}
    ok = corollary1_verdict(d, m, h)
    subabundant = (h + 1) * comb(m + 1, 2) <= comb(d + 2, 2)
    predicted = (h + 1) * comb(m + 1, 2) - 1 if ok and subabundant else None
    observed = secant_osculating_dim(Projective(2, d), m - 1, h, trials, seed)
    return {
        "h": h,
        "m": m,
        "d": d,
        "verdict": "NonSpecial" if ok else "NotCertified",
        "predicted": predicted,
        "observed": observed,
        "match": predicted == observed if predicted is not None else None,
    }


def _corollary2_row(n: int, a: int, b: int, m: int, s: int, trials: int, seed: int) -> dict:
    match = hirzebruch_exceptional(n, a, b, m, s)
    spec = Hirzebruch(n, a, b)
    cols = basis_size(spec)
    subabundant = s * comb(m + 1, 2) <= cols
    predicted = s * comb(m + 1, 2) - 1 if (not match and subabundant) else None
    observed = secant_osculating_dim(spec, m - 1, s - 1, trials, seed)
    family = match.family
    if match.interpretation_dependent:
        family = f"{family} [interpretation-dependent]"
    return {
        "n": n,
        "a": a,
        "b": b,
        "m": m,
        "s": s,
        "exceptional": bool(match),
        "family": family,
        "predicted": predicted,
        "observed": observed,
        "match": predicted == observed if predicted is not None else None,
    }


def _laplace_row(n: int, h: int) -> dict:
    lc = laplace_count(n, h)
    return {
        "n": n,
        "h": h,
        "K": lc.K,
        "T": lc.T,
        "rewritten_ok": lc.T == lc.rewritten,
        "curve_excess": lc.curve_excess,
    }


def cmd_tables(args, out) -> int:
    trials, seed = args.trials, config.get_seed() if args.seed is None else args.seed
    which = args.which
    if which == "theorem2":
        ds = _parse_range(args.d or "4..6")
        hs = _parse_range(args.h or "1..8")
        if max(ds) > MAX_D_P3:
            raise ValueError(f"degree cap for P^3 tables is {MAX_D_P3}")
        tasks = [(d, h) for d in ds for h in hs]
        fn = lambda t: _theorem2_row(t[0], t[1], trials, seed)
    elif which == "corollary1":
        hs = _parse_range(args.h or "1,2,4,5,6,7")
        ms = _parse_range(args.m or "1..5")
        ds = _parse_range(args.d or "1..10")
        if max(ds) > MAX_D_P2:
            raise ValueError(f"degree cap for P^2 tables is {MAX_D_P2}")
        tasks = [(h, m, d) for h in hs for m in ms for d in ds]
        fn = lambda t: _corollary1_row(t[0], t[1], t[2], trials, seed)
    elif which == "corollary2":
        ns = _parse_range(args.n or "0..2")
        as_ = _parse_range(args.a or "1..4")
        bs = _parse_range(args.b or "0..4")
        ms = _parse_range(args.m or "1..3")
        ss = _parse_range(args.s or "2..4")
        tasks = [(n, a, b, m, s) for n in ns for a in as_ for b in bs for m in ms for s in ss]
        fn = lambda t: _corollary2_row(*t, trials, seed)
    elif which == "laplace":
        ns = _parse_range(args.n or "1..4")
        hs = _parse_range(args.h or "1..4")
        tasks = [(n, h) for n in ns for h in hs]
        fn = lambda t: _laplace_row(*t)
    else:
        raise ValueError(f"unknown table {which!r}")
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        rows = list(pool.map(fn, tasks))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": f"tables-{which}",
        "columns": TABLE_COLUMNS[which],
        "rows": rows,
        "prime": config.get_prime(),
        "seed": seed,
        "trials": trials,
    }
    _emit(payload, args.format, out)
    return 0


def cmd_special(args, out) -> int:
    if args.surface == "p2":
        k, a, b = args.params
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "special-p2",
            "k": k,
            "a": a,
            "b": b,
            "exceptional": p2_exceptional(k, a, b),
        }
    else:
        n, a, b, m, s = args.params
        match = hirzebruch_exceptional(n, a, b, m, s)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "special-hirzebruch",
            "n": n,
            "a": a,
            "b": b,
            "m": m,
            "s": s,
            "exceptional": bool(match),
            "family": match.family,
            "interpretation_dependent": match.interpretation_dependent,
        }
    _emit(payload, args.format, out)
    return 0


def _add_common(parser, suppress: bool):
    # Global flags are accepted both before and after the subcommand; the
    # subparser copies use SUPPRESS so they never clobber earlier values.
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--prime", type=int, default=d(None),
                        help="prime modulus (default env OSCUSEC_PRIME or 1000003)")
    parser.add_argument("--seed", type=int, default=d(None), help="master seed (default env OSCUSEC_SEED)")
    parser.add_argument("--trials", type=int, default=d(3), help="independent trials per rank (default 3)")
    parser.add_argument("--format", choices=["json", "csv", "pretty"], default=d("json"))
    parser.add_argument("--out", default=d(None), help="write output to this file instead of stdout")
    parser.add_argument("--jobs", type=int, default=d(4), help="worker threads for table sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscusec",
        description="Exact osculating-space dimensions for secant varieties",
    )
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", parents=[common],
                           help="dimension and speciality of a fat-point system")
    p_dim.add_argument("--pn", type=int, help="projective ambient dimension n")
    p_dim.add_argument("--d", type=int, help="degree")
    p_dim.add_argument("--hirzebruch", nargs=3, type=int, metavar=("N", "A", "B"))
    p_dim.add_argument("--triple", type=int, default=0)
    p_dim.add_argument("--double", type=int, default=0)
    p_dim.add_argument("--simple", type=int, default=0)
    p_dim.add_argument("--scheme", help="JSON scheme document (see schemas/scheme.schema.json)")
    p_dim.set_defaults(func=cmd_dim)

    p_ter = sub.add_parser("terracini", parents=[common], help="three-way osculating-dimension oracle comparison")
    p_ter.add_argument("--pn", type=int)
    p_ter.add_argument("--d", type=int)
    p_ter.add_argument("--hirzebruch", nargs=3, type=int, metavar=("N", "A", "B"))
    p_ter.add_argument("--m", type=int, required=True)
    p_ter.add_argument("--h", type=int, required=True)
    p_ter.set_defaults(func=cmd_terracini)

    p_hor = sub.add_parser("horace", parents=[common], help="check/build/verify degree-descent certificates")
    hor_sub = p_hor.add_subparsers(dest="action", required=True)
    for act in ("check", "build"):
        pa = hor_sub.add_parser(act, parents=[common])
        pa.add_argument("k", type=int)
        pa.add_argument("a", type=int)
        pa.add_argument("b", type=int)
        if act == "build":
            pa.add_argument("-o", "--out-file", default=None)
    pv = hor_sub.add_parser("verify", parents=[common])
    pv.add_argument("cert_file")
    p_hor.set_defaults(func=cmd_horace)

    p_tab = sub.add_parser("tables", parents=[common], help="parameter sweeps as CSV/JSON tables")
    p_tab.add_argument("which", choices=["theorem2", "corollary1", "corollary2", "laplace"])
    for flag in ("--d", "--h", "--m", "--n", "--a", "--b", "--s"):
        p_tab.add_argument(flag, default=None, help="range like 4..6 or list like 1,2,4")
    p_tab.set_defaults(func=cmd_tables)

    p_spe = sub.add_parser("special", parents=[common], help="exceptional-list membership")
    p_spe.add_argument("surface", choices=["p2", "hirzebruch"])
    p_spe.add_argument("params", nargs="+", type=int,
                       help="p2: K A B; hirzebruch: N A B M S")
    p_spe.set_defaults(func=cmd_special)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.prime is not None:
            config.set_prime(args.prime)
        if args.command == "special":
            want = 3 if args.surface == "p2" else 5
            if len(args.params) != want:
                raise ValueError(f"'special {args.surface}' takes {want} integers")
        buf = io.StringIO()
        code = args.func(args, buf)
        text = buf.getvalue()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return code
    except (StepFailed, CertificateError, ConditionNotMet) as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 4
    except (OscusecError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
