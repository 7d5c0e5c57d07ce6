"""Command-line driver.

Every subcommand writes JSON lines (or CSV for the flat ones) that echo the
full parameter set, the seed and the library version.  Exit codes: 0 ok,
1 an invariant violation was found, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .adhm2 import (adhm_tangent_dim, eta_embed, forget_j, framed_vs_quot_dims, is_stable_adhm,
                    moment, moment_jacobian_rank)
from .enumerate_oracle import count_quot_points
from .errors import DimensionMismatch, NonIntegralOrbitCount, QuotModelError
from .exactalg import parse_field
from .potential3 import hessian, kernels_equal, potential_gradient, potential_value
from .quiverrep import FramedRep, is_commuting, punctual_point
from .sampling import (random_adhm_solution, random_etale_point, random_rep,
                       random_stable_commuting_rep, task_rng)
from .stability_poly import FramingCase, lemma26_case_check, slope
from .tangent import classify_point, gauge_differential, known_local_dim, relation_jacobian, tangent_dim

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _field_arg(text: str):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _run(fn, tasks, workers: int):
    """Map ``fn`` over ``tasks``; results always come back in task order."""
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


# -- per-sample workers (top level so they pickle) ---------------------------

def _tangent_task(task):
    m, n, r, field_tag, point, expected, seed, index = task
    field = parse_field(field_tag)
    if point == "punctual":
        rep = punctual_point(m, r, field)
    elif point == "etale":
        rep = random_etale_point(m, n, r, field, task_rng(seed, index))
    else:
        rep = random_stable_commuting_rep(m, n, r, field, task_rng(seed, index))
    complex_ok = (relation_jacobian(rep) @ gauge_differential(rep)).is_zero()
    free_ok = gauge_differential(rep).rank() == n * n
    record = {"index": index, "complex_condition": complex_ok, "free_action": free_ok}
    try:
        record.update(classify_point(rep, expected).to_json(seed))
        record["ok"] = complex_ok and free_ok
    except DimensionMismatch as exc:
        record.update({"error": str(exc), "ok": False, "seed": seed})
    return record


def _critcheck_task(task):
    n_min, n_max, r_max, field_tag, seed, index = task
    field = parse_field(field_tag)
    rng = task_rng(seed, index)
    n = int(rng.integers(n_min, n_max + 1))
    r = int(rng.integers(1, r_max + 1))
    rep = random_stable_commuting_rep(3, n, r, field, rng)
    grad_zero = not any(potential_gradient(rep))
    H = hessian(rep)
    J = relation_jacobian(rep)
    equal = kernels_equal(H, J)
    # an arbitrary (usually non-commuting) tuple for the gradient criterion
    probe = random_rep(3, n, r, field, rng)
    iff = (not any(potential_gradient(probe))) == is_commuting(probe)
    record = {"index": index, "n": n, "r": r, "f": str(potential_value(rep)),
              "grad_is_zero": grad_zero, "hessian_rank": H.rank(), "jacobian_rank": J.rank(),
              "kernels_equal": equal, "grad_iff_commuting": iff, "seed": seed}
    record["ok"] = grad_zero and equal and iff
    if not record["ok"]:
        record["rep"] = rep.to_json()
        record["probe"] = probe.to_json()
    return record


# -- subcommands -------------------------------------------------------------

def cmd_tangent(args) -> tuple[list[dict], int]:
    m, n, r = args.m, args.n, args.r
    if args.point == "punctual" and n != r:
        raise _Usage("the punctual point has n = r")
    expected = args.expected if args.expected is not None else known_local_dim(m, n, r)
    samples = 1 if args.point == "punctual" else args.samples
    tasks = [(m, n, r, args.field.tag, args.point, expected, args.seed, k) for k in range(samples)]
    records = _run(_tangent_task, tasks, args.workers)
    return records, EXIT_OK if all(rec["ok"] for rec in records) else EXIT_VIOLATION


def cmd_critcheck(args) -> tuple[list[dict], int]:
    if args.n_min < 1 or args.n_max < args.n_min or args.r_max < 1:
        raise _Usage("need 1 <= n-min <= n-max and r-max >= 1")
    tasks = [(args.n_min, args.n_max, args.r_max, args.field.tag, args.seed, k) for k in range(args.samples)]
    records = _run(_critcheck_task, tasks, args.workers)
    failures = [rec for rec in records if not rec["ok"]]
    summary = {"summary": True, "samples": len(records), "failures": len(failures),
               "failed": failures, "seed": args.seed}
    return records + [summary], EXIT_OK if not failures else EXIT_VIOLATION


def cmd_adhm(args) -> tuple[list[dict], int]:
    n, r = args.n, args.r
    if args.dims:
        framed, quot, codim = framed_vs_quot_dims(n, r)
        return [{"framed_dim": framed, "quot_dim": quot, "codim": codim}], EXIT_OK
    records, status = [], EXIT_OK
    for k in range(args.samples):
        d = random_adhm_solution(n, r, args.field, task_rng(args.seed, k))
        rank = moment_jacobian_rank(d)
        dim = adhm_tangent_dim(d)
        ok = rank == n * n and dim == 2 * n * r
        status = status if ok else EXIT_VIOLATION
        records.append({"index": k, "moment_jacobian_rank": rank, "tangent_dim": dim,
                        "expected_dim": 2 * n * r, "j_is_zero": d.j.is_zero(), "ok": ok, "seed": args.seed})
    return records, status


def cmd_embed(args) -> tuple[list[dict], int]:
    if args.input:
        reps = [FramedRep.from_json(json.loads(Path(args.input).read_text()))]
    else:
        reps = [random_stable_commuting_rep(2, args.n, args.r, args.field, task_rng(args.seed, k))
                for k in range(args.samples)]
    records, status = [], EXIT_OK
    for k, rep in enumerate(reps):
        d = eta_embed(rep)
        checks = {"moment_zero": moment(d).is_zero(), "stable": is_stable_adhm(d),
                  "j_zero": d.j.is_zero(), "round_trip": forget_j(d) == rep}
        framed_td = adhm_tangent_dim(d)
        quot_td = tangent_dim(rep)
        ok = all(checks.values()) and framed_td - quot_td >= 0
        status = status if ok else EXIT_VIOLATION
        records.append({"index": k, "adhm": d.to_json(), **checks, "framed_tangent_dim": framed_td,
                        "quot_tangent_dim": quot_td, "tangent_excess": framed_td - quot_td,
                        "ok": ok, "seed": args.seed})
    return records, status


def cmd_count(args) -> tuple[list[dict], int]:
    res = count_quot_points(args.m, args.n, args.r, args.q, budget=args.budget,
                            workers=args.workers, checkpoint=args.checkpoint)
    return [res.to_json()], EXIT_OK


def cmd_slope(args) -> tuple[list[dict], int]:
    rec = {"slope": str(slope(args.c1H, args.eps, args.delta1, args.rank))}
    if args.r_prime is not None:
        if args.mu is None:
            raise _Usage("--r-prime needs --mu")
        rec["lemma_case"] = args.case
        rec["strictly_below"] = lemma26_case_check(args.rank, args.r_prime, args.delta1, args.mu, args.case)
    return [rec], EXIT_OK


COMMANDS = {"tangent": cmd_tangent, "critcheck": cmd_critcheck, "adhm": cmd_adhm,
            "embed": cmd_embed, "count": cmd_count, "slope": cmd_slope}
FLAT = {"count", "slope", "adhm"}


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quotmodel", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field=True):
        p.add_argument("--seed", type=int, default=0)
        if field:
            p.add_argument("--field", type=_field_arg, default=parse_field("Q"), help='"Q" or "Fp:<p>"')
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--no-timestamp", action="store_true")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("tangent", help="tangent dimension at a Quot point")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--point", choices=("punctual", "etale", "random"), default="etale")
    p.add_argument("--expected", type=int)
    p.add_argument("--samples", type=int, default=1)
    common(p)

    p = sub.add_parser("critcheck", help="compare df = 0 with the commuting locus for m = 3")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--r-max", type=int, default=2)
    common(p)

    p = sub.add_parser("adhm", help="ADHM model of framed sheaves on P^2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--dims", action="store_true", help="print (framed, quot, codim) dimensions")
    p.add_argument("--samples", type=int, default=10)
    common(p)

    p = sub.add_parser("embed", help="embed two-loop Quot points as j = 0 ADHM data")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--input", help="FramedRep JSON file")
    p.add_argument("--samples", type=int, default=1)
    common(p)

    p = sub.add_parser("count", help="brute-force F_q point count")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--budget", type=int, help="maximum number of tuples (env QUOTMODEL_BUDGET)")
    p.add_argument("--checkpoint", help="resume file (shard index + partial count)")
    common(p, field=False)

    p = sub.add_parser("slope", help="(H, delta)-slope of a framed module")
    p.add_argument("--c1H", type=_rational_arg, required=True)
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)
    p.add_argument("--delta1", type=_rational_arg, required=True)
    p.add_argument("--rank", type=_rational_arg, required=True)
    p.add_argument("--r-prime", type=_rational_arg)
    p.add_argument("--mu", type=_rational_arg, help="H-slope of the submodule")
    p.add_argument("--case", choices=[c.value for c in FramingCase], default=FramingCase.FRAMING_SURVIVES.value)
    common(p, field=False)
    return parser


def _params(args) -> dict:
    skip = {"command", "format", "output", "no_timestamp", "workers"}
    out = {}
    for k, v in vars(args).items():
        if k in skip:
            continue
        if isinstance(v, Fraction):
            v = str(v)
        elif hasattr(v, "tag"):
            v = v.tag
        out[k] = v
    return out


def _emit(records: list[dict], args, stream) -> None:
    meta = {"command": args.command, "version": __version__, "params": _params(args), "seed": args.seed}
    if not args.no_timestamp:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat()
    rows = [{**meta, **rec} for rec in records]
    if args.format == "csv":
        if args.command not in FLAT or (args.command == "adhm" and not args.dims):
            raise _Usage(f"csv output is only available for flat commands: {sorted(FLAT)}")
        flat = [{k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                 for k, v in row.items()} for row in rows]
        writer = csv.DictWriter(stream, fieldnames=list(flat[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
    else:
        for row in rows:
            stream.write(json.dumps(row, sort_keys=True) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records, status = COMMANDS[args.command](args)
        if args.output:
            with open(args.output, "w", newline="") as fh:
                _emit(records, args, fh)
        else:
            _emit(records, args, sys.stdout)
    except _Usage as exc:
        parser.error(str(exc))
    except NonIntegralOrbitCount as exc:
        print(json.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)}))
        return EXIT_VIOLATION
    except (QuotModelError, ValueError) as exc:
        # bad parameters or input points the model rejects
        print(json.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_USAGE
    return status


if __name__ == "__main__":
    sys.exit(main())
