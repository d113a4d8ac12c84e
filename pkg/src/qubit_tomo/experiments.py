"""Experiment orchestration: sweeps over n and over the Bloch-vector length.

Every sweep point runs m repetitions; within a repetition the three
estimators consume the same simulated data set.  Rows are ordered by
(sweep value, method) and written as CSV with full-precision decimals, so a
fixed configuration and seed reproduce the output byte for byte, independent
of the worker count.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .estimators import (
    METHOD_LS,
    METHODS,
    IntegratorConfig,
    PriorParams,
    bayes_conditioned,
    bayes_unconditioned,
    ls_estimate,
    posterior_summary,
)
from .measurement import SimSeed, simulate_dataset
from .metrics import AggregateRow, RepetitionResult, aggregate_repetitions
from .states import as_bloch, bloch_hs_distance, fidelity_bloch, is_physical

KIND_SWEEP_N = "sweep_n"
KIND_SWEEP_LENGTH = "sweep_length"
KIND_SINGLE = "single"

AGGREGATE_HEADER = [
    "kind", "method", "n",
    "s_true_1", "s_true_2", "s_true_3",
    "length", "reps", "phi", "chi",
    "postvar_1", "postvar_2", "postvar_3",
    "empvar_1", "empvar_2", "empvar_3",
]

REPETITION_HEADER = ["method", "n", "rep", "est_1", "est_2", "est_3", "fidelity", "hs"]


@dataclass
class ExperimentConfig:
    kind: str
    n_values: tuple[int, ...]
    true_state: np.ndarray | None = None
    direction: np.ndarray | None = None
    lengths: tuple[float, ...] | None = None
    reps: int = 5
    seed: int = 0
    prior: PriorParams = field(default_factory=PriorParams)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    workers: int = 1

    def __post_init__(self) -> None:
        if self.kind not in (KIND_SWEEP_N, KIND_SWEEP_LENGTH, KIND_SINGLE):
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if len(self.n_values) == 0 or any(n < 1 for n in self.n_values):
            raise ValueError("n_values must be nonempty with every n >= 1")
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.kind in (KIND_SWEEP_N, KIND_SINGLE):
            if self.true_state is None:
                raise ValueError(f"{self.kind} requires an explicit true state")
            self.true_state = as_bloch(self.true_state)
            if not is_physical(self.true_state):
                raise ValueError("true state must lie inside the Bloch ball")
            if self.kind == KIND_SINGLE and len(self.n_values) != 1:
                raise ValueError("single experiments take exactly one n value")
        else:
            if self.direction is None or self.lengths is None:
                raise ValueError("sweep_length requires a direction and a lengths list")
            self.direction = as_bloch(self.direction)
            if float(np.linalg.norm(self.direction)) == 0.0:
                raise ValueError("direction vector must be nonzero")
            if len(self.lengths) == 0 or any(not 0.0 <= v <= 1.0 for v in self.lengths):
                raise ValueError("lengths must be nonempty with every value in [0, 1]")
            if len(self.n_values) != 1:
                raise ValueError("sweep_length uses exactly one fixed n")


def run_point(
    s_true,
    n: int,
    reps: int,
    seed: int,
    stream_base: int,
    prior: PriorParams,
    integrator: IntegratorConfig,
    kind: str = KIND_SINGLE,
    length: float | None = None,
) -> tuple[list[AggregateRow], list[tuple]]:
    """Run all repetitions of one sweep point and aggregate per method.

    Repetition ``r`` uses stream id ``stream_base + r``; the resulting data
    set is shared by all three estimators.  Returns the aggregate rows in
    method order plus flat per-repetition records
    (method, n, rep, estimate, fidelity, hs).
    """
    s_true = as_bloch(s_true)
    if length is None:
        length = float(np.linalg.norm(s_true))
    per_method: dict[str, list[RepetitionResult]] = {m: [] for m in METHODS}
    for rep in range(reps):
        data = simulate_dataset(s_true, n, SimSeed(seed, stream_base + rep))
        postvar = posterior_summary(data, prior).variances
        estimates = [
            ls_estimate(data),
            bayes_unconditioned(data, prior),
            bayes_conditioned(data, prior, integrator),
        ]
        for est in estimates:
            per_method[est.method].append(
                RepetitionResult(
                    rep=rep,
                    method=est.method,
                    estimate=est.vector,
                    fidelity=fidelity_bloch(s_true, est.vector),
                    hs=bloch_hs_distance(s_true, est.vector),
                    posterior_variance=None if est.method == METHOD_LS else postvar,
                )
            )
    agg = [
        aggregate_repetitions(kind, m, n, s_true, length, per_method[m]) for m in METHODS
    ]
    rep_records = [
        (m, n, r.rep, r.estimate, r.fidelity, r.hs) for m in METHODS for r in per_method[m]
    ]
    return agg, rep_records


def _point_task(args: tuple) -> tuple[list[AggregateRow], list[tuple]]:
    s_true, n, reps, seed, stream_base, kappa, lam, grid, domain, kind, length = args
    return run_point(
        np.array(s_true),
        n,
        reps,
        seed,
        stream_base,
        PriorParams(kappa=kappa, lam=lam),
        IntegratorConfig(grid_points_per_axis=grid, domain_convention=domain),
        kind=kind,
        length=length,
    )


def _run_points(
    cfg: ExperimentConfig, points: list[tuple[np.ndarray, int, float | None]]
) -> tuple[list[AggregateRow], list[tuple]]:
    tasks = [
        (
            tuple(float(v) for v in s_true),
            n,
            cfg.reps,
            cfg.seed,
            idx * cfg.reps,
            cfg.prior.kappa,
            cfg.prior.lam,
            cfg.integrator.grid_points_per_axis,
            cfg.integrator.domain_convention,
            cfg.kind,
            length,
        )
        for idx, (s_true, n, length) in enumerate(points)
    ]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_point_task, tasks))
    else:
        results = [_point_task(t) for t in tasks]
    agg_rows: list[AggregateRow] = []
    rep_records: list[tuple] = []
    for agg, reps in results:
        agg_rows.extend(agg)
        rep_records.extend(reps)
    return agg_rows, rep_records


def run_sweep_n(cfg: ExperimentConfig) -> tuple[list[AggregateRow], list[tuple]]:
    """Sweep the measurement count n at a fixed true state."""
    if cfg.kind not in (KIND_SWEEP_N, KIND_SINGLE):
        raise ValueError(f"run_sweep_n needs a sweep_n or single config, got {cfg.kind!r}")
    points = [(cfg.true_state, n, None) for n in cfg.n_values]
    return _run_points(cfg, points)


def run_sweep_length(cfg: ExperimentConfig) -> tuple[list[AggregateRow], list[tuple]]:
    """Sweep the Bloch-vector length along a fixed direction at fixed n."""
    if cfg.kind != KIND_SWEEP_LENGTH:
        raise ValueError(f"run_sweep_length needs a sweep_length config, got {cfg.kind!r}")
    unit = cfg.direction / float(np.linalg.norm(cfg.direction))
    n = cfg.n_values[0]
    points = [(length * unit, n, float(length)) for length in cfg.lengths]
    return _run_points(cfg, points)


def run_experiment(cfg: ExperimentConfig) -> tuple[list[AggregateRow], list[tuple]]:
    if cfg.kind == KIND_SWEEP_LENGTH:
        return run_sweep_length(cfg)
    return run_sweep_n(cfg)


def _fmt(value) -> str:
    # Shortest round-trip decimal; empty string for missing fields.
    if value is None:
        return ""
    return repr(float(value))


def emit_csv(rows: list[AggregateRow], path) -> None:
    """Write aggregate rows to ``path`` with the stable column order."""
    if len(rows) == 0:
        raise ValueError("no rows to write")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER)
        for row in rows:
            post = row.posterior_variance
            emp = row.empirical_variance
            writer.writerow(
                [
                    row.kind,
                    row.method,
                    str(row.n),
                    _fmt(row.s_true[0]),
                    _fmt(row.s_true[1]),
                    _fmt(row.s_true[2]),
                    _fmt(row.length),
                    str(row.reps),
                    _fmt(row.phi),
                    _fmt(row.chi),
                    _fmt(None if post is None else post[0]),
                    _fmt(None if post is None else post[1]),
                    _fmt(None if post is None else post[2]),
                    _fmt(None if emp is None else emp[0]),
                    _fmt(None if emp is None else emp[1]),
                    _fmt(None if emp is None else emp[2]),
                ]
            )


def emit_repetitions_csv(rep_records: list[tuple], path) -> None:
    """Write per-repetition records (method, n, rep, estimate, fidelity, hs)."""
    if len(rep_records) == 0:
        raise ValueError("no repetition records to write")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(REPETITION_HEADER)
        for method, n, rep, est, fid, hs in rep_records:
            writer.writerow(
                [method, str(n), str(rep), _fmt(est[0]), _fmt(est[1]), _fmt(est[2]),
                 _fmt(fid), _fmt(hs)]
            )


def repetitions_path(out_path) -> Path:
    """Companion file for per-repetition rows: <out stem>.reps.csv."""
    out_path = Path(out_path)
    return out_path.with_name(out_path.stem + ".reps.csv")
