"""Aggregation of repeated estimates into performance indicators.

For m repetitions of an experiment the indicators are the average fidelity
Phi, the average Hilbert-Schmidt distance chi, the mean analytic posterior
variance (Bayesian methods) and the per-axis empirical variance of the
estimates.  Sums are accumulated with math.fsum so aggregation is exactly
permutation-invariant in the repetition list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import as_bloch, bloch_hs_distance, fidelity_bloch, is_physical


@dataclass(frozen=True, eq=False)
class RepetitionResult:
    """Metrics of a single repetition for one method."""

    rep: int
    method: str
    estimate: np.ndarray
    fidelity: float
    hs: float
    posterior_variance: np.ndarray | None  # per axis, Bayesian methods only


@dataclass(frozen=True, eq=False)
class AggregateRow:
    """One aggregated experiment record for a (true state, n, method) cell."""

    kind: str
    method: str
    n: int
    s_true: np.ndarray
    length: float
    reps: int
    phi: float
    chi: float
    posterior_variance: np.ndarray | None
    empirical_variance: np.ndarray | None


def _fmean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def average_fidelity(truth, estimates: Sequence) -> float:
    """Arithmetic mean of fidelity(truth, estimate) over the estimates."""
    if len(estimates) == 0:
        raise ValueError("estimates list is empty")
    t = as_bloch(truth)
    if not is_physical(t):
        raise ValueError("truth must be a physical Bloch vector")
    return _fmean([fidelity_bloch(t, e) for e in estimates])


def average_hs(truth, estimates: Sequence) -> float:
    """Arithmetic mean of the Hilbert-Schmidt distance to the truth."""
    if len(estimates) == 0:
        raise ValueError("estimates list is empty")
    t = as_bloch(truth)
    if not is_physical(t):
        raise ValueError("truth must be a physical Bloch vector")
    return _fmean([bloch_hs_distance(t, e) for e in estimates])


def empirical_variance(estimates: Sequence) -> np.ndarray:
    """Unbiased per-axis sample variance (divisor m - 1) of the estimates."""
    arr = np.asarray([as_bloch(e) for e in estimates], dtype=float)
    m = arr.shape[0]
    if m < 2:
        raise ValueError(f"empirical variance needs at least 2 estimates, got {m}")
    out = []
    for axis in range(3):
        col = arr[:, axis]
        mean = math.fsum(col) / m
        out.append(math.fsum((v - mean) ** 2 for v in col) / (m - 1))
    return np.array(out)


def aggregate_repetitions(
    kind: str,
    method: str,
    n: int,
    s_true,
    length: float,
    results: Sequence[RepetitionResult],
) -> AggregateRow:
    """Fold the per-repetition results of one method into an AggregateRow.

    Deterministic and permutation-invariant: all means use exact summation.
    Posterior variance is averaged per axis when present; empirical variance
    requires at least two repetitions and is omitted otherwise.
    """
    if len(results) == 0:
        raise ValueError("cannot aggregate an empty repetition list")
    phi = _fmean([r.fidelity for r in results])
    chi = _fmean([r.hs for r in results])
    postvar = None
    if all(r.posterior_variance is not None for r in results):
        postvar = np.array(
            [_fmean([r.posterior_variance[axis] for r in results]) for axis in range(3)]
        )
    empvar = empirical_variance([r.estimate for r in results]) if len(results) >= 2 else None
    return AggregateRow(
        kind=kind,
        method=method,
        n=n,
        s_true=as_bloch(s_true),
        length=length,
        reps=len(results),
        phi=phi,
        chi=chi,
        posterior_variance=postvar,
        empirical_variance=empvar,
    )
