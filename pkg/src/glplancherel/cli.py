"""Command-line front end.

Exit status: 0 success, 1 a verification reported ``ok: false``, 2 usage or
domain error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from collections import Counter
from fractions import Fraction

from . import ensembles, measures, sampler
from .collection import PartitionCollection
from .errors import ResourceLimitError
from .fieldpolys import enumerate_irreducibles, render_polynomial
from .partitions import Partition, enumerate_partitions
from .rationals import RationalSyntaxError, format_rational, parse_rational

DEFAULTS = {
    "order": 30,
    "tol": "1e-9",
    "tail_eps": "1e-6",
    "samples": 1,
    "size_cap": 60,
    "n_enum": 5,
}

_SLOT_RE = re.compile(r"^(\d+):(\d+)=([0-9,]*)$")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except RationalSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _slot(text: str):
    m = _SLOT_RE.match(text)
    if m is None:
        raise argparse.ArgumentTypeError(f"slot {text!r} is not of the form degree:index=partition")
    return (int(m.group(1)), int(m.group(2))), _partition(m.group(3))


def _int_q(q: Fraction) -> int:
    if q.denominator != 1 or q < 2:
        raise UsageError("this subcommand needs an integer --q >= 2")
    return int(q)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required here")


# -- subcommands -------------------------------------------------------------------


def _cmd_weight(args):
    _need(args, "q")
    if args.measure == "schur":
        _need(args, "partition")
        d = args.d or 1
        return {
            "measure": "schur",
            "q": format_rational(args.q),
            "d": d,
            "partition": str(args.partition),
            "value": format_rational(measures.schur_special(args.partition, d, args.q)),
        }
    if args.measure == "m":
        _need(args, "partition", "v")
        w = measures.m_weight(args.partition, args.v, args.q, args.tol)
        return {
            "measure": "m",
            "q": format_rational(args.q),
            "v": format_rational(args.v),
            "partition": str(args.partition),
            "exact_part": format_rational(w.exact_part),
            "prefactor": w.prefactor.to_dict(),
            "value": w.value.to_dict(),
        }
    q = _int_q(args.q)
    coll = PartitionCollection.of(args.slots or [])
    out = {"measure": args.measure, "q": str(q), "collection": coll.to_dict(q, with_poly=True)}
    if args.measure == "plancherel":
        out["value"] = format_rational(measures.plancherel_weight(coll, q))
    else:
        _need(args, "v")
        out["v"] = format_rational(args.v)
        out["value"] = measures.grand_weight(coll, args.v, q, args.tol).to_dict()
    return out


def _cmd_degree(args):
    _need(args, "q")
    q = _int_q(args.q)
    coll = PartitionCollection.of(args.slots or [])
    return {
        "q": str(q),
        "n": coll.total,
        "collection": coll.to_dict(q, with_poly=True),
        "degree": measures.irrep_degree(coll, q),
        "gl_order": measures.gl_order(coll.total, q),
    }


def _cmd_marginal(args):
    _need(args, "q", "n")
    q = _int_q(args.q)
    slots = args.slots or []
    value = ensembles.marginal(args.n, q, slots)
    return {
        "q": str(q),
        "n": args.n,
        "slots": [f"{d}:{i}={lam}" for (d, i), lam in slots],
        "marginal": format_rational(value),
    }


def _cmd_limit(args):
    _need(args, "q", "partition")
    q = _int_q(args.q)
    d = args.d or 1
    value = ensembles.limit_weight(args.partition, d, q, args.tol)
    return {"q": str(q), "d": d, "partition": str(args.partition), "limit": value.to_dict()}


def _convergence_constraints(args):
    if args.slots:
        return ensembles.MarginalConstraint(tuple(args.slots))
    _need(args, "partition")
    return ensembles.MarginalConstraint.by_degree([(args.d or 1, args.partition)])


def _cmd_converge(args):
    _need(args, "q")
    q = _int_q(args.q)
    cons = _convergence_constraints(args)
    if args.n_from < 0 or args.n_to < args.n_from:
        raise UsageError("need 0 <= --n-from <= --n-to")
    rows = ensembles.convergence_table(q, cons, range(args.n_from, args.n_to + 1), args.tol)
    if args.format == "csv":
        return _csv(
            ["n", "exact_marginal", "exact_marginal_approx", "limit_value", "limit_err", "abs_error", "abs_error_err"],
            (
                [
                    r.n,
                    format_rational(r.exact_marginal),
                    f"{float(r.exact_marginal):.17g}",
                    r.limit_value.to_dict()["value"],
                    r.limit_value.to_dict()["err"],
                    r.abs_error.to_dict()["value"],
                    r.abs_error.to_dict()["err"],
                ]
                for r in rows
            ),
        )
    return {
        "q": str(q),
        "slots": [f"{lab.degree}:{lab.index}={lam}" for lab, lam in cons.slots],
        "rows": [r.to_dict() for r in rows],
    }


def _cmd_verify(args):
    _need(args, "q", "kind")
    report = ensembles.verify_identity(args.kind, args.q, args.order, args.n)
    return report.to_dict()


def _cmd_sample(args):
    _need(args, "q", "seed", "ensemble")
    cfg = sampler.SamplerConfig(
        seed=args.seed, count=args.samples, tail_eps=args.tail_eps, size_cap=args.size_cap
    )
    if args.ensemble == "m":
        _need(args, "v")
        draws = sampler.sample_m_partition(args.v, args.q, cfg)
        sizes = [lam.size for lam in draws]
        lines = [json.dumps({"partition": str(lam), "size": lam.size}) for lam in draws]
    else:
        q = _int_q(args.q)
        if args.ensemble == "plancherel":
            _need(args, "n")
            draws = sampler.sample_plancherel(args.n, q, cfg)
        else:
            _need(args, "v")
            draws = sampler.sample_grand(args.v, q, cfg)
        sizes = [c.total for c in draws]
        lines = [json.dumps(c.to_dict(q, with_poly=args.with_poly)) for c in draws]
    if args.format == "csv":
        hist = Counter(sizes)
        return _csv(["size", "count"], ([k, hist[k]] for k in sorted(hist)))
    return "".join(line + "\n" for line in lines)


def _cmd_enumerate(args):
    if args.what == "partitions":
        _need(args, "n")
        return {"n": args.n, "partitions": [str(lam) for lam in enumerate_partitions(args.n)]}
    _need(args, "q")
    q = _int_q(args.q)
    if args.what == "irreducibles":
        _need(args, "d")
        labels = enumerate_irreducibles(args.d, q)
        return {
            "q": str(q),
            "d": args.d,
            "polynomials": [
                {"index": lab.index, "poly": render_polynomial(lab.coeffs, q)} for lab in labels
            ],
        }
    _need(args, "n")
    colls = ensembles.enumerate_collections(args.n, q)
    return {"q": str(q), "n": args.n, "collections": [c.to_dict(q, with_poly=True) for c in colls]}


COMMANDS = {
    "weight": _cmd_weight,
    "degree": _cmd_degree,
    "marginal": _cmd_marginal,
    "limit": _cmd_limit,
    "converge": _cmd_converge,
    "verify": _cmd_verify,
    "sample": _cmd_sample,
    "enumerate": _cmd_enumerate,
}


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glplancherel",
        description="Plancherel measures of GL(n,q), their limits, identity checks and samplers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--q", type=_rational, help="field size; integer prime power except for schur/m weights and verify")
        p.add_argument("--format", choices=("json", "csv"), default="json", help="output format (default: %(default)s)")
        p.add_argument("--out", help="write the payload to this path instead of stdout")
        p.add_argument("--order", type=int, default=DEFAULTS["order"], help="series truncation order for verify (default: %(default)s)")
        p.add_argument("--tol", type=_rational, default=DEFAULTS["tol"], help="certified absolute tolerance (default: %(default)s)")

    slot_help = "degree:index=partition, e.g. 1:0=2,1 (repeatable)"

    p = sub.add_parser("weight", help="pointwise weights")
    common(p)
    p.add_argument("--measure", choices=("plancherel", "m", "grand", "schur"), default="plancherel", help="(default: %(default)s)")
    p.add_argument("--v", type=_rational, help="fugacity for m and grand")
    p.add_argument("--d", type=int, help="degree for schur (default: 1)")
    p.add_argument("--partition", type=_partition, help='partition for schur and m, e.g. "2,1" or ""')
    p.add_argument("--slots", type=_slot, action="append", help=slot_help)

    p = sub.add_parser("degree", help="irreducible representation degree d_Lambda")
    common(p)
    p.add_argument("--slots", type=_slot, action="append", help=slot_help)

    p = sub.add_parser("marginal", help="exact mu_n marginal")
    common(p)
    p.add_argument("--n", type=int, help="rank n of GL(n,q)")
    p.add_argument("--slots", type=_slot, action="append", help=slot_help)

    p = sub.add_parser("limit", help="certified M_{1,q^d}(lambda)")
    common(p)
    p.add_argument("--d", type=int, default=1, help="degree (default: %(default)s)")
    p.add_argument("--partition", type=_partition, help="partition")

    p = sub.add_parser("converge", help="exact marginals against their limit (csv columns: n, exact_marginal, exact_marginal_approx, limit_value, limit_err, abs_error, abs_error_err)")
    common(p)
    p.add_argument("--d", type=int, default=1, help="degree (default: %(default)s)")
    p.add_argument("--partition", type=_partition, help="partition")
    p.add_argument("--slots", type=_slot, action="append", help="joint constraints; overrides --d/--partition")
    p.add_argument("--n-from", type=int, default=1, help="(default: %(default)s)")
    p.add_argument("--n-to", type=int, default=25, help="(default: %(default)s)")

    p = sub.add_parser("verify", help="coefficientwise identity checks")
    common(p)
    p.add_argument("--kind", choices=ensembles.IDENTITY_KINDS, help="identity to check")
    p.add_argument("--n", type=int, default=DEFAULTS["n_enum"], help="enumeration bound for plancherel_normalization (default: %(default)s)")

    p = sub.add_parser("sample", help="seeded exact samples (JSON lines; csv gives columns size, count)")
    common(p)
    p.add_argument("--ensemble", choices=("m", "plancherel", "grand"), default="plancherel", help="(default: %(default)s)")
    p.add_argument("--seed", type=int, help="64-bit seed (required)")
    p.add_argument("--samples", type=int, default=DEFAULTS["samples"], help="number of draws (default: %(default)s)")
    p.add_argument("--tail-eps", type=_rational, default=DEFAULTS["tail_eps"], help="bound on neglected size mass (default: %(default)s)")
    p.add_argument("--size-cap", type=int, default=DEFAULTS["size_cap"], help="largest size considered (default: %(default)s)")
    p.add_argument("--n", type=int, help="rank for the plancherel ensemble")
    p.add_argument("--v", type=_rational, help="fugacity for m and grand")
    p.add_argument("--with-poly", action="store_true", help="attach explicit polynomials (prime q)")

    p = sub.add_parser("enumerate", help="list partitions, irreducibles or collections")
    common(p)
    p.add_argument("--what", choices=("partitions", "irreducibles", "collections"), default="collections", help="(default: %(default)s)")
    p.add_argument("--n", type=int, help="size")
    p.add_argument("--d", type=int, help="degree for irreducibles")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for key in ("tol", "tail_eps"):
        if isinstance(getattr(args, key, None), str):
            setattr(args, key, parse_rational(getattr(args, key)))
    try:
        payload = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.command == "verify" and not payload["ok"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())
