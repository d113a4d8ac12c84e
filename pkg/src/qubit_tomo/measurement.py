"""Simulated Pauli spin measurements on identically prepared qubits.

Measuring sigma_i on a qubit with Bloch vector s yields +1 with probability
(1 + s_i) / 2.  A data set consists of three independent length-n strings of
+/-1 outcomes, one per axis, together with the +1 counts that every estimator
in this package consumes.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .states import InvalidStateError, as_bloch, is_physical


@dataclass(frozen=True)
class SimSeed:
    """Reproducible RNG identity: a base seed plus a stream for repetitions.

    Identical (seed, stream_id) pairs reproduce identical data sets bit for
    bit.  Streams are derived with numpy's Philox counter-based generator
    keyed by ``SeedSequence((seed, stream_id))``, whose output is stable
    across numpy releases for a fixed bit generator.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if int(self.stream_id) < 0:
            raise ValueError(f"stream_id must be nonnegative, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=(int(self.seed), int(self.stream_id)))
        return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True, eq=False)
class MeasurementDataSet:
    """Three +/-1 outcome strings of length n plus their +1 counts."""

    n: int
    outcomes: np.ndarray  # shape (3, n), entries +1 / -1
    plus_counts: tuple[int, int, int]

    def __post_init__(self) -> None:
        out = np.asarray(self.outcomes)
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if out.shape != (3, self.n):
            raise ValueError(f"outcomes must have shape (3, {self.n}), got {out.shape}")
        if not np.all(np.abs(out) == 1):
            raise ValueError("outcomes must contain only +1 / -1 entries")
        counts = tuple(int(c) for c in (out == 1).sum(axis=1))
        if counts != tuple(self.plus_counts):
            raise ValueError(f"plus_counts {self.plus_counts} inconsistent with outcomes {counts}")
        out.setflags(write=False)

    @classmethod
    def from_outcomes(cls, outcomes) -> "MeasurementDataSet":
        out = np.asarray(outcomes, dtype=np.int8)
        counts = tuple(int(c) for c in (out == 1).sum(axis=1))
        return cls(n=out.shape[1], outcomes=out, plus_counts=counts)

    def fingerprint(self) -> str:
        """Hex digest identifying the exact outcome strings."""
        import hashlib

        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(np.ascontiguousarray(self.outcomes, dtype=np.int8).tobytes())
        return h.hexdigest()


def outcome_probability(s, axis: int) -> float:
    """Probability of outcome +1 when measuring sigma_axis: (1 + s_axis) / 2."""
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    v = as_bloch(s)
    if not is_physical(v):
        raise InvalidStateError("outcome probability requires a physical Bloch vector")
    return 0.5 * (1.0 + float(v[axis - 1]))


def simulate_dataset(s, n: int, seed: SimSeed) -> MeasurementDataSet:
    """Draw a measurement data set for the true state ``s``.

    Each of the three axes is measured ``n`` times; every outcome is an
    independent draw with Prob(+1) = (1 + s_i) / 2.  Deterministic given
    ``seed``: the same (seed, stream_id) always produces the same strings.
    """
    v = as_bloch(s)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not is_physical(v):
        raise InvalidStateError("cannot simulate measurements of a non-physical state")
    rng = seed.generator()
    rows = []
    for axis in range(3):
        p_plus = 0.5 * (1.0 + v[axis])
        rows.append(np.where(rng.random(n) < p_plus, 1, -1).astype(np.int8))
    return MeasurementDataSet.from_outcomes(np.stack(rows))


def format_dump(data: MeasurementDataSet, seed: SimSeed) -> str:
    """Raw-data dump: per axis a header line then the space-separated string.

    Header format: ``axis=<i> n=<n> seed=<seed>:<stream>``; outcome tokens are
    written as ``+1`` / ``-1``.
    """
    buf = io.StringIO()
    for axis in range(3):
        buf.write(f"axis={axis + 1} n={data.n} seed={seed.seed}:{seed.stream_id}\n")
        buf.write(" ".join("+1" if o == 1 else "-1" for o in data.outcomes[axis]))
        buf.write("\n")
    return buf.getvalue()


def parse_dump(text: str) -> tuple[MeasurementDataSet, SimSeed]:
    """Inverse of :func:`format_dump`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 6:
        raise ValueError(f"dump must contain 3 header + 3 data lines, got {len(lines)} lines")
    rows = []
    seed = stream = None
    for axis in range(3):
        header, payload = lines[2 * axis], lines[2 * axis + 1]
        fields = dict(tok.split("=", 1) for tok in header.split())
        if int(fields["axis"]) != axis + 1:
            raise ValueError(f"unexpected axis header: {header!r}")
        seed_str, stream_str = fields["seed"].split(":", 1)
        seed, stream = int(seed_str), int(stream_str)
        row = np.array([int(tok) for tok in payload.split()], dtype=np.int8)
        if row.size != int(fields["n"]):
            raise ValueError(f"axis {axis + 1}: expected {fields['n']} entries, got {row.size}")
        rows.append(row)
    return MeasurementDataSet.from_outcomes(np.stack(rows)), SimSeed(seed, stream)
