"""Campaign harness reproducing the three removed-count trend studies.

All campaigns share the geometric generator setup (range 300, degree
target 4) and vary one knob each:

* ``size_sweep``: node count n, a fifth of edges negative, threshold 0;
* ``negprob_sweep``: negative-edge probability at n = 20, threshold 0;
* ``rate_sweep``: eigenvalue threshold beta at n = 20, no negative
  edges.

Each (grid point, trial, method) run becomes one :class:`TrialRecord`;
records serialize to CSV sorted deterministically so identical flags
and seeds produce identical bytes apart from the wall-clock column.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass

import numpy as np

from .graph import GeomGraphConfig, laplacian, random_geometric, split_laplacian
from .linalg import eps_pd
from .selection import (SelectionResult, baseline_degree, baseline_random,
                        choose_alpha, greedy_inv_trace, greedy_q,
                        logdet_cardinality_sweep)

CAMPAIGNS = ("size_sweep", "negprob_sweep", "rate_sweep")
CAMPAIGN_METHODS = ("greedy_q", "inv_trace", "logdet", "degree", "random")

COMM_RANGE = 300.0
TARGET_DEGREE = 4.0

_DEFAULT_GRIDS = {
    "size_sweep": (20, 25, 30, 35, 40),
    "negprob_sweep": (0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40),
    "rate_sweep": (0.05, 0.10, 0.15, 0.20, 0.25),
}

CSV_COLUMNS = ("campaign", "method", "n", "p_neg", "beta", "seed",
               "removed_count", "final_lambda_min", "q_evals", "wall_ms",
               "status")


@dataclass(frozen=True)
class ExperimentSpec:
    """One campaign's grid, trial count, seed base and method list."""

    campaign: str
    n_values: tuple[int, ...] | None = None
    p_values: tuple[float, ...] | None = None
    beta_values: tuple[float, ...] | None = None
    trials: int = 20
    base_seed: int = 0
    methods: tuple[str, ...] = ("greedy_q", "degree", "random")

    def __post_init__(self):
        if self.campaign not in CAMPAIGNS:
            raise ValueError(f"unknown campaign {self.campaign!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.methods:
            raise ValueError("methods must be nonempty")
        for m in self.methods:
            if m not in CAMPAIGN_METHODS:
                raise ValueError(f"unknown campaign method {m!r}")
        if len(self.grid) == 0:
            raise ValueError("sweep grid must be nonempty")

    @property
    def grid(self) -> tuple:
        if self.campaign == "size_sweep":
            return self.n_values or ()
        if self.campaign == "negprob_sweep":
            return self.p_values or ()
        return self.beta_values or ()


def default_spec(campaign: str, trials: int = 20, base_seed: int = 0,
                 methods: tuple[str, ...] = ("greedy_q", "degree", "random"),
                 ) -> ExperimentSpec:
    """The pinned grid for a campaign name."""
    grid = _DEFAULT_GRIDS.get(campaign)
    if grid is None:
        raise ValueError(f"unknown campaign {campaign!r}")
    key = {"size_sweep": "n_values", "negprob_sweep": "p_values",
           "rate_sweep": "beta_values"}[campaign]
    return ExperimentSpec(campaign=campaign, trials=trials,
                          base_seed=base_seed, methods=tuple(methods),
                          **{key: grid})


@dataclass(frozen=True)
class TrialRecord:
    """One method run on one generated instance."""

    campaign: str
    method: str
    n: int
    p_neg: float
    beta: float
    seed: int
    removed_count: int
    final_lambda_min: float
    q_evals: int
    wall_ms: int
    status: str

    def __post_init__(self):
        if self.removed_count > self.n:
            raise ValueError("removed_count cannot exceed n")

    def sort_key(self):
        return (self.campaign, self.method, self.n, self.p_neg, self.beta,
                self.seed)


def _grid_point_params(campaign: str, value) -> tuple[int, float, float]:
    """(n, p_neg, beta) for one grid value of a campaign."""
    if campaign == "size_sweep":
        return int(value), 0.2, 0.0
    if campaign == "negprob_sweep":
        return 20, float(value), 0.0
    return 20, 0.0, float(value)


def run_method(method: str, L: np.ndarray, beta: float, seed: int,
               eps: float = 1e-6, alpha: float | None = None,
               zeta: float | None = None) -> SelectionResult:
    """Dispatch one selection method with campaign-default parameters.

    ``alpha`` and ``zeta`` override the spectrum-derived log-det sweep
    parameters; the other methods ignore them.
    """
    if method == "greedy_q":
        return greedy_q(L, beta=beta, eps=eps)
    if method == "inv_trace":
        return greedy_inv_trace(L, rate_shift=beta)
    if method == "logdet":
        if alpha is None:
            alpha = choose_alpha(L)
        if zeta is None:
            _, l_minus = split_laplacian(L)
            zeta = float(np.linalg.eigvalsh(l_minus)[-1]) + beta
            if zeta <= 0.0:
                zeta = 1e-3
        return logdet_cardinality_sweep(L, alpha, zeta)
    if method == "degree":
        return baseline_degree(L, beta=beta)
    if method == "random":
        return baseline_random(L, beta=beta, seed=seed)
    raise ValueError(f"unknown method {method!r}")


def trial_status(res: SelectionResult, L: np.ndarray, beta: float) -> str:
    """``ok`` only when the method succeeded and the kept block clears
    this trial's threshold; methods that certify a weaker property (the
    log-det sweep proves positive definiteness, not a beta margin) come
    out ``uncertified`` rather than silently passing."""
    if res.success and res.final_lambda_min >= beta - eps_pd(L):
        return "ok"
    return "uncertified"


def run_experiment(spec: ExperimentSpec, progress=None) -> list[TrialRecord]:
    """All grid x trial x method runs, sorted deterministically.

    Per-trial seeds are base_seed + trial index, shared across grid
    points and methods so curves see common instances.  Failures
    surface in the status column and do not stop the campaign.
    """
    records: list[TrialRecord] = []
    for value in spec.grid:
        n, p_neg, beta = _grid_point_params(spec.campaign, value)
        for trial in range(spec.trials):
            seed = spec.base_seed + trial
            cfg = GeomGraphConfig(n=n, comm_range=COMM_RANGE,
                                  target_avg_degree=TARGET_DEGREE,
                                  p_negative=p_neg, seed=seed)
            L = laplacian(random_geometric(cfg))
            for method in spec.methods:
                t0 = time.perf_counter()
                try:
                    res = run_method(method, L, beta, seed)
                    status = trial_status(res, L, beta)
                    rec = TrialRecord(
                        campaign=spec.campaign, method=method, n=n,
                        p_neg=p_neg, beta=beta, seed=seed,
                        removed_count=len(res.removed),
                        final_lambda_min=float(res.final_lambda_min),
                        q_evals=res.q_evals,
                        wall_ms=int(round(1000 * (time.perf_counter() - t0))),
                        status=status)
                except Exception as exc:  # recorded, campaign continues
                    rec = TrialRecord(
                        campaign=spec.campaign, method=method, n=n,
                        p_neg=p_neg, beta=beta, seed=seed, removed_count=0,
                        final_lambda_min=math.nan, q_evals=0,
                        wall_ms=int(round(1000 * (time.perf_counter() - t0))),
                        status=f"error: {exc}")
                records.append(rec)
                if progress is not None:
                    progress(rec)
    records.sort(key=TrialRecord.sort_key)
    return records


def record_row(r: TrialRecord) -> list:
    """CSV cell values for one record, floats in repr form."""
    return [r.campaign, r.method, r.n, repr(r.p_neg), repr(r.beta),
            r.seed, r.removed_count, repr(r.final_lambda_min),
            r.q_evals, r.wall_ms, r.status]


def write_records(records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in sorted(records, key=TrialRecord.sort_key):
            writer.writerow(record_row(r))


def read_records(path) -> list[TrialRecord]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError(f"not a campaign CSV (bad header): {path}")
    out = []
    for row in rows[1:]:
        out.append(TrialRecord(
            campaign=row[0], method=row[1], n=int(row[2]),
            p_neg=float(row[3]), beta=float(row[4]), seed=int(row[5]),
            removed_count=int(row[6]), final_lambda_min=float(row[7]),
            q_evals=int(row[8]), wall_ms=int(row[9]), status=row[10]))
    return out


def verify_records(records) -> tuple[bool, list[str]]:
    """Re-run every row from its seed and re-certify the reported result.

    A row verifies when the regenerated run reproduces removed_count and
    final_lambda_min, and every ok row's kept block clears its threshold
    under the scale-aware tolerance.  Returns (all ok, messages).
    """
    problems: list[str] = []
    for i, r in enumerate(records):
        tag = f"row {i} ({r.campaign}/{r.method}/n={r.n}/seed={r.seed})"
        if r.status.startswith("error"):
            continue
        cfg = GeomGraphConfig(n=r.n, comm_range=COMM_RANGE,
                              target_avg_degree=TARGET_DEGREE,
                              p_negative=r.p_neg, seed=r.seed)
        L = laplacian(random_geometric(cfg))
        try:
            res = run_method(r.method, L, r.beta, r.seed)
        except Exception as exc:
            problems.append(f"{tag}: rerun raised {exc}")
            continue
        if len(res.removed) != r.removed_count:
            problems.append(
                f"{tag}: removed_count {r.removed_count} != rerun "
                f"{len(res.removed)}")
        if not _lam_close(res.final_lambda_min, r.final_lambda_min):
            problems.append(
                f"{tag}: final_lambda_min {r.final_lambda_min!r} != rerun "
                f"{res.final_lambda_min!r}")
        if r.status == "ok" and math.isfinite(r.final_lambda_min) and \
                r.final_lambda_min < r.beta - eps_pd(L):
            problems.append(
                f"{tag}: ok row below threshold: lambda_min "
                f"{r.final_lambda_min!r} < beta {r.beta!r}")
    return not problems, problems


def _lam_close(a: float, b: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= 1e-9 * (1.0 + max(abs(a), abs(b)))


def sweep_variable(campaign: str) -> str:
    """Name of the CSV column a campaign sweeps over."""
    return {"size_sweep": "n", "negprob_sweep": "p_neg",
            "rate_sweep": "beta"}[campaign]


def aggregate_means(records) -> dict[str, list[tuple[float, float, float]]]:
    """Per-method (grid value, mean, sample std) series, grid-sorted.

    The standard deviation uses the n-1 normalization and is 0.0 for a
    single sample, matching the sidecar series the plots component
    writes.
    """
    if not records:
        return {}
    campaigns = {r.campaign for r in records}
    if len(campaigns) > 1:
        raise ValueError("records mix campaigns; aggregate one at a time")
    var = sweep_variable(next(iter(campaigns)))
    buckets: dict[tuple[str, float], list[int]] = {}
    for r in records:
        buckets.setdefault((r.method, float(getattr(r, var))), []).append(
            r.removed_count)
    out: dict[str, list[tuple[float, float, float]]] = {}
    for (method, value), counts in sorted(buckets.items()):
        arr = np.asarray(counts, dtype=float)
        std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
        out.setdefault(method, []).append((value, float(arr.mean()), std))
    return out
