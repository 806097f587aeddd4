"""Command-line surface: graph generation, selection, simulation,
experiment campaigns, and CSV verification.

Exit codes follow a scripting contract: 0 for success, 1 for usage or
input/output problems, 2 for a certified negative outcome (selection
that could not be certified, a violated convergence envelope, or a
campaign CSV that fails verification).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from .experiment import (CAMPAIGNS, CSV_COLUMNS, ExperimentSpec, TrialRecord,
                         default_spec, read_records, record_row,
                         run_experiment, run_method, trial_status,
                         verify_records, write_records)
from .graph import (GeomGraphConfig, laplacian, random_geometric,
                    read_edge_list, write_edge_list)
from .linalg import read_matrix_text
from .selection import METHODS, CertificateError, brute_force_min_set
from .simulate import consensus_trajectory, verify_rate, write_trajectory_csv

EXIT_OK = 0
EXIT_IO = 1
EXIT_NEGATIVE = 2


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit 1, reserving 2 for
    certified negative outcomes."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(p) for p in text.replace(",", " ").split())


def _parse_floats(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(p) for p in text.replace(",", " ").split())


def _load_matrix(path) -> tuple[np.ndarray, float]:
    """Load a symmetric matrix from an edge-list or matrix-text file.

    Returns (matrix, negative edge fraction); the fraction is NaN for
    raw matrix input where edges are not identified.
    """
    with open(path) as fh:
        head = ""
        for line in fh:
            if line.strip():
                head = line.strip()
                break
    if head.startswith("n="):
        g = read_edge_list(path)
        return laplacian(g), g.negative_fraction()
    return read_matrix_text(path), math.nan


def cmd_gen_graph(args) -> int:
    cfg = GeomGraphConfig(n=args.n, comm_range=args.range,
                          target_avg_degree=args.avg_degree,
                          p_negative=args.p_neg, seed=args.seed)
    g = random_geometric(cfg)
    write_edge_list(g, args.out)
    print(f"n={g.n} edges={g.edge_count} "
          f"negative_fraction={g.negative_fraction():.4f}")
    return EXIT_OK


def cmd_select(args) -> int:
    A, p_neg = _load_matrix(args.input)
    t0 = time.perf_counter()
    if args.method == "brute_force":
        res = brute_force_min_set(A, beta=args.beta)
    else:
        res = run_method(args.method, A, args.beta, args.seed,
                         eps=args.eps, alpha=args.alpha, zeta=args.zeta)
    wall_ms = int(round(1000 * (time.perf_counter() - t0)))
    rec = TrialRecord(
        campaign="adhoc", method=args.method, n=A.shape[0], p_neg=p_neg,
        beta=args.beta, seed=args.seed, removed_count=len(res.removed),
        final_lambda_min=float(res.final_lambda_min), q_evals=res.q_evals,
        wall_ms=wall_ms, status=trial_status(res, A, args.beta))
    writer = csv.writer(sys.stdout)
    writer.writerow(CSV_COLUMNS)
    writer.writerow(record_row(rec))
    print("removed:", " ".join(str(v) for v in res.removed))
    if res.message:
        print(f"note: {res.message}", file=sys.stderr)
    return EXIT_OK if res.success else EXIT_NEGATIVE


def cmd_simulate(args) -> int:
    L, _ = _load_matrix(args.input)
    removed = _parse_ints(args.removed)
    k = L.shape[0] - len(removed)
    if args.x0:
        x0 = np.asarray(_parse_floats(args.x0))
    else:
        x0 = np.ones(max(k, 0))
    traj = consensus_trajectory(L, removed, x0, args.horizon, args.dt)
    ok, worst = verify_rate(traj, rtol=args.rtol)
    if args.out:
        write_trajectory_csv(traj, args.out)
    print(f"kept={k} lambda_min={traj.lambda_min_used!r} "
          f"envelope_ok={ok} max_violation={worst:.3e}")
    if traj.lambda_min_used < 0:
        print("note: kept block is unstable; envelope permits growth",
              file=sys.stderr)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _spec_from_args(args) -> ExperimentSpec:
    if args.spec:
        with open(args.spec) as fh:
            raw = json.load(fh)
        for key in ("n_values", "p_values", "beta_values", "methods"):
            if key in raw and raw[key] is not None:
                raw[key] = tuple(raw[key])
        return ExperimentSpec(**raw)
    spec = default_spec(args.campaign, trials=args.trials,
                        base_seed=args.base_seed,
                        methods=tuple(args.methods.split(",")))
    grid = {}
    if args.n_values:
        grid["n_values"] = _parse_ints(args.n_values)
    if args.p_values:
        grid["p_values"] = _parse_floats(args.p_values)
    if args.beta_values:
        grid["beta_values"] = _parse_floats(args.beta_values)
    if grid:
        spec = ExperimentSpec(
            campaign=spec.campaign, trials=spec.trials,
            base_seed=spec.base_seed, methods=spec.methods,
            n_values=grid.get("n_values"), p_values=grid.get("p_values"),
            beta_values=grid.get("beta_values"))
    return spec


def cmd_experiment(args) -> int:
    spec = _spec_from_args(args)
    progress = None
    if args.verbose:
        def progress(rec):
            print(f"{rec.campaign} {rec.method} n={rec.n} "
                  f"p_neg={rec.p_neg} beta={rec.beta} seed={rec.seed} "
                  f"removed={rec.removed_count} [{rec.status}]",
                  file=sys.stderr)
    records = run_experiment(spec, progress=progress)
    write_records(records, args.out)
    bad = sum(1 for r in records if r.status != "ok")
    print(f"wrote {len(records)} rows to {args.out}"
          + (f" ({bad} not ok)" if bad else ""))
    return EXIT_OK


def cmd_verify(args) -> int:
    worst = EXIT_OK
    for path in args.csv:
        records = read_records(path)
        ok, problems = verify_records(records)
        if ok:
            print(f"{path}: {len(records)} rows verified")
        else:
            worst = EXIT_NEGATIVE
            print(f"{path}: {len(problems)} problems")
            for msg in problems:
                print(f"  {msg}", file=sys.stderr)
    return worst


def build_parser() -> _Parser:
    p = _Parser(prog="groundsel",
                description="Grounding-set selection for signed consensus "
                            "matrices: pick rows/columns to remove so the "
                            "kept block clears an eigenvalue threshold.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-graph",
                       help="sample a signed random geometric graph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--range", type=float, default=300.0,
                   help="communication range (default 300)")
    g.add_argument("--avg-degree", type=float, default=4.0,
                   help="expected average degree target (default 4)")
    g.add_argument("--p-neg", type=float, default=0.2,
                   help="negative edge probability (default 0.2)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="edge-list output path")
    g.set_defaults(func=cmd_gen_graph)

    s = sub.add_parser("select",
                       help="run one selection method on a matrix or graph")
    s.add_argument("input", help="edge-list (n=... header) or matrix text")
    s.add_argument("--method", choices=METHODS, default="greedy_q")
    s.add_argument("--beta", type=float, default=0.0,
                   help="kept-block eigenvalue threshold (default 0)")
    s.add_argument("--eps", type=float, default=1e-6,
                   help="certificate quadrature error target")
    s.add_argument("--seed", type=int, default=0,
                   help="seed for the random baseline")
    s.add_argument("--alpha", type=float, default=None,
                   help="log-det sweep boost override")
    s.add_argument("--zeta", type=float, default=None,
                   help="log-det sweep shift override")
    s.set_defaults(func=cmd_select)

    m = sub.add_parser("simulate",
                       help="propagate grounded consensus and check the "
                            "decay envelope")
    m.add_argument("input", help="edge-list (n=... header) or matrix text")
    m.add_argument("--removed", default="",
                   help="comma-separated removed indices")
    m.add_argument("--x0", default="",
                   help="comma-separated initial state (default all ones)")
    m.add_argument("--horizon", type=float, default=5.0)
    m.add_argument("--dt", type=float, default=0.01)
    m.add_argument("--rtol", type=float, default=1e-8,
                   help="relative envelope tolerance")
    m.add_argument("--out", default="", help="trajectory CSV output path")
    m.set_defaults(func=cmd_simulate)

    e = sub.add_parser("experiment", help="run a sweep campaign to CSV")
    e.add_argument("--campaign", choices=CAMPAIGNS)
    e.add_argument("--trials", type=int, default=20)
    e.add_argument("--base-seed", type=int, default=0)
    e.add_argument("--methods", default="greedy_q,degree,random",
                   help="comma-separated method list")
    e.add_argument("--n-values", default="", help="size_sweep grid override")
    e.add_argument("--p-values", default="",
                   help="negprob_sweep grid override")
    e.add_argument("--beta-values", default="",
                   help="rate_sweep grid override")
    e.add_argument("--spec", default="",
                   help="JSON file with the full spec (overrides flags)")
    e.add_argument("--out", required=True, help="CSV output path")
    e.add_argument("--verbose", action="store_true",
                   help="per-trial progress on stderr")
    e.set_defaults(func=cmd_experiment)

    v = sub.add_parser("verify",
                       help="re-run and re-certify campaign CSV rows")
    v.add_argument("csv", nargs="+", help="campaign CSV paths")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "experiment" and not args.spec and not args.campaign:
        parser.error("experiment needs --campaign or --spec")
    try:
        return args.func(args)
    except CertificateError as exc:
        print(f"groundsel: certified negative: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"groundsel: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
