"""Command-line front end: ``ellipvol {vk,simplex,steiner,verify}``.

Every invocation prints one JSON object (or CSV for ``vk --format csv``)
on stdout.  Exit status: 0 success, 1 verification failure, 2 bad
arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import sys
import time
from typing import Sequence

import numpy as np

from . import __version__
from .core import Ellipsoid, ScalarEstimate, SpectrumPSD
from .intrinsic import default_backend, intrinsic_volume, steiner_volume
from .quad import QuadratureConfig
from .randsimplex import (
    expected_simplex_gaussian,
    expected_simplex_uniform,
    mc_gaussian_gram_vk,
    mc_simplex_gaussian,
    mc_simplex_uniform,
)
from .verify import SUITES, run_suite, steiner_mc_volume, vk_sphere_mc

CSV_COLUMNS = ["k", "value", "error", "error_kind", "backend", "samples"]


def _positive_list(what: str):
    def parse(text: str) -> tuple[float, ...]:
        try:
            vals = tuple(float(v) for v in text.split(",") if v.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(f"{what}: expected comma-separated numbers") from None
        if not vals:
            raise argparse.ArgumentTypeError(f"{what}: at least one value required")
        for v in vals:
            if not (math.isfinite(v) and v > 0):
                raise argparse.ArgumentTypeError(f"{what}: non-positive value {v:g}")
        return vals

    return parse


def _nonneg_float(text: str) -> float:
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text}")
    return v


def _pos_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _min_int(lo: int):
    def parse(text: str) -> int:
        v = int(text)
        if v < lo:
            raise argparse.ArgumentTypeError(f"expected an integer >= {lo}, got {text}")
        return v

    return parse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ellipvol", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=_min_int(1), default=None,
                   help="Monte Carlo worker threads (results do not depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    vk = sub.add_parser("vk", help="intrinsic volumes of an ellipsoid")
    vk.add_argument("--semiaxes", type=_positive_list("semiaxes"), required=True)
    which = vk.add_mutually_exclusive_group()
    which.add_argument("--k", type=int)
    which.add_argument("--all", action="store_true")
    vk.add_argument("--backend", default="auto",
                    choices=["auto", "quadrature", "duality", "rfunction", "sphere-mc", "gram-mc"])
    vk.add_argument("--rel-tol", type=_pos_float, default=1e-12)
    vk.add_argument("--samples", type=_min_int(2), default=10**6)
    vk.add_argument("--seed", type=int, default=0)
    vk.add_argument("--format", choices=["json", "csv"], default="json")

    sx = sub.add_parser("simplex", help="expected volume of a random simplex")
    models = sx.add_subparsers(dest="model", required=True)
    for name, flag, what in (("uniform", "--semiaxes", "semiaxes"),
                             ("gaussian", "--eigenvalues", "eigenvalues")):
        m = models.add_parser(name)
        m.add_argument(flag, dest="shape", type=_positive_list(what), required=True)
        m.add_argument("--k", type=int, required=True)
        m.add_argument("--rel-tol", type=_pos_float, default=1e-12)
        m.add_argument("--oracle", action="store_true", help="also run the Monte Carlo oracle")
        m.add_argument("--samples", type=_min_int(2), default=10**6)
        m.add_argument("--seed", type=int, default=0)

    st = sub.add_parser("steiner", help="volume of the parallel body E + rB")
    st.add_argument("--semiaxes", type=_positive_list("semiaxes"), required=True)
    st.add_argument("--r", type=_nonneg_float, required=True)
    st.add_argument("--rel-tol", type=_pos_float, default=1e-12)
    st.add_argument("--oracle", action="store_true")
    st.add_argument("--samples", type=_min_int(2), default=10**6)
    st.add_argument("--seed", type=int, default=0)

    vf = sub.add_parser("verify", help="run an identity suite")
    vf.add_argument("--suite", choices=sorted(SUITES), required=True)
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--samples", type=_min_int(2), default=200_000)
    return p


def _estimate_dict(est: ScalarEstimate) -> dict:
    return {
        "value": est.value,
        "error": est.error,
        "error_kind": est.error_kind,
        "samples": est.samples,
        "converged": est.converged,
    }


def _run_vk(args, parser) -> tuple[dict, list[dict]]:
    E = Ellipsoid(args.semiaxes)
    d = E.dim
    if args.k is not None and not 0 <= args.k <= d:
        parser.error(f"--k must lie in [0, {d}] for {d} semiaxes")
    ks = [args.k] if args.k is not None else list(range(d + 1))
    cfg = QuadratureConfig(rel_tol=args.rel_tol)
    rows = []
    for k in ks:
        b = args.backend
        if k == 0 or k == d or b == "auto":
            b = default_backend(d, k)
            est = intrinsic_volume(E, k, b, cfg)
        elif b == "sphere-mc":
            est = vk_sphere_mc(E, k, args.samples, args.seed, args.threads)
        elif b == "gram-mc":
            est = mc_gaussian_gram_vk(E, k, args.samples, args.seed, args.threads)
        else:
            est = intrinsic_volume(E, k, b, cfg)
        rows.append({"k": k, "backend": b, **_estimate_dict(est)})
    inputs = {"semiaxes": list(E.semiaxes), "k": ks, "backend": args.backend,
              "rel_tol": args.rel_tol, "samples": args.samples, "seed": args.seed}
    return inputs, rows


def _run_simplex(args, parser) -> tuple[dict, list[dict]]:
    cfg = QuadratureConfig(rel_tol=args.rel_tol)
    if args.model == "uniform":
        shape, formula, oracle = Ellipsoid(args.shape), expected_simplex_uniform, mc_simplex_uniform
        key = "semiaxes"
    else:
        shape, formula, oracle = SpectrumPSD(args.shape), expected_simplex_gaussian, mc_simplex_gaussian
        key = "eigenvalues"
    if not 1 <= args.k <= shape.dim:
        parser.error(f"--k must lie in [1, {shape.dim}]")
    rows = [{"k": args.k, "backend": "formula", **_estimate_dict(formula(shape, args.k, cfg))}]
    if args.oracle:
        mc = oracle(shape, args.k, args.samples, args.seed, args.threads)
        rows.append({"k": args.k, "backend": "monte_carlo", **_estimate_dict(mc)})
    inputs = {"model": args.model, key: list(args.shape), "k": args.k, "rel_tol": args.rel_tol,
              "oracle": args.oracle, "samples": args.samples, "seed": args.seed}
    return inputs, rows


def _run_steiner(args, parser) -> tuple[dict, list[dict]]:
    E = Ellipsoid(args.semiaxes)
    cfg = QuadratureConfig(rel_tol=args.rel_tol)
    rows = [{"r": args.r, "backend": "steiner_polynomial",
             **_estimate_dict(steiner_volume(E, args.r, cfg))}]
    if args.oracle:
        mc = steiner_mc_volume(E, args.r, args.samples, args.seed, args.threads)
        rows.append({"r": args.r, "backend": "monte_carlo", **_estimate_dict(mc)})
    inputs = {"semiaxes": list(E.semiaxes), "r": args.r, "rel_tol": args.rel_tol,
              "oracle": args.oracle, "samples": args.samples, "seed": args.seed}
    return inputs, rows


def _run_verify(args, parser) -> tuple[dict, list[dict]]:
    checks = run_suite(args.suite, args.seed, args.samples)
    rows = [
        {"name": c.name, "passed": c.passed, "metric": c.metric, "value": c.value,
         "expected": c.expected, "score": c.score}
        for c in checks
    ]
    return {"suite": args.suite, "seed": args.seed, "samples": args.samples}, rows


_COMMANDS = {"vk": _run_vk, "simplex": _run_simplex, "steiner": _run_steiner, "verify": _run_verify}


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        inputs, rows = _COMMANDS[args.command](args, parser)
    except ValueError as exc:
        print(f"ellipvol: error: {exc}", file=sys.stderr)
        return 2
    elapsed = 1e3 * (time.perf_counter() - t0)

    if getattr(args, "format", "json") == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({**row, "value": repr(row["value"]), "error": repr(row["error"])})
        stdout.write(buf.getvalue())
    else:
        record = {
            "command": argv,
            "inputs": inputs,
            "results": rows,
            "versions": {"ellipvol": __version__, "numpy": np.__version__,
                         "python": platform.python_version()},
            "wall_time_ms": elapsed,
        }
        if args.command == "verify":
            record["passed"] = all(r["passed"] for r in rows)
        stdout.write(json.dumps(record, sort_keys=True, allow_nan=False) + "\n")

    if args.command == "verify" and not all(r["passed"] for r in rows):
        return 1
    return 0


def main() -> None:
    sys.exit(run())
