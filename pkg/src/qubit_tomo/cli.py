"""Command-line interface: simulate, estimate, sweep-n, sweep-length.

Options may also come from a flat key-value config file (``key = value``,
keys named like the flags without the leading dashes); explicit flags
override file entries.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .estimators import (
    BLOCH_BALL,
    PAPER_U_BALL,
    IntegratorConfig,
    PriorParams,
    bayes_conditioned,
    bayes_unconditioned,
    ls_estimate,
)
from .experiments import (
    KIND_SWEEP_LENGTH,
    KIND_SWEEP_N,
    ExperimentConfig,
    emit_csv,
    emit_repetitions_csv,
    repetitions_path,
    run_sweep_length,
    run_sweep_n,
)
from .measurement import SimSeed, format_dump, parse_dump, simulate_dataset
from .states import bloch_hs_distance, fidelity_bloch

DOMAIN_FLAGS = {"bloch": BLOCH_BALL, "paper-u": PAPER_U_BALL}


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(","))

def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(","))


def load_config_file(path) -> dict[str, str]:
    """Parse a flat ``key = value`` file; '#' starts a comment."""
    values: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line is not 'key = value': {raw!r}")
        key, val = line.split("=", 1)
        values[key.strip()] = val.strip()
    return values


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key-value config file; flags override it")
    parser.add_argument("--true-state", help="true Bloch vector as x,y,z")
    parser.add_argument("--direction", help="sweep direction as x,y,z (normalized internally)")
    parser.add_argument("--lengths", help="comma-separated Bloch lengths in [0, 1]")
    parser.add_argument("--n-values", help="comma-separated measurement counts")
    parser.add_argument("--reps", type=int, help="repetitions per sweep point (default 5)")
    parser.add_argument("--seed", type=int, help="base seed, 64-bit unsigned (default 0)")
    parser.add_argument("--prior-kappa", type=float, help="prior strength kappa (default 0)")
    parser.add_argument("--prior-lambda", type=float, help="prior count lambda (default 0)")
    parser.add_argument("--grid-points", type=int, help="quadrature nodes per axis (default 128)")
    parser.add_argument(
        "--conditioning-domain",
        choices=sorted(DOMAIN_FLAGS),
        help="ball-conditioning convention (default bloch)",
    )
    parser.add_argument("--workers", type=int, help="parallel workers over sweep points (default 1)")
    parser.add_argument("--out", help="output file path")
    parser.add_argument(
        "--emit-reps",
        action=argparse.BooleanOptionalAction,
        help="also write per-repetition rows next to the aggregate CSV",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubit-tomo",
        description="Simulated single-qubit tomography: Pauli measurements, "
        "least-squares and Bayesian estimation, experiment sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="emit one raw measurement data set")
    _add_common(p_sim)
    p_sim.add_argument("--stream", type=int, default=0, help="stream id (default 0)")

    p_est = sub.add_parser("estimate", help="run the three estimators on one data set")
    _add_common(p_est)
    p_est.add_argument("--stream", type=int, default=0, help="stream id (default 0)")
    p_est.add_argument("--data", help="read a raw dump instead of simulating")

    p_n = sub.add_parser("sweep-n", help="sweep the measurement count at fixed state")
    _add_common(p_n)

    p_len = sub.add_parser("sweep-length", help="sweep the Bloch length at fixed n")
    _add_common(p_len)

    return parser


class _Options:
    """Flag values merged over config-file values merged over defaults."""

    DEFAULTS = {
        "reps": 5,
        "seed": 0,
        "prior-kappa": 0.0,
        "prior-lambda": 0.0,
        "grid-points": 128,
        "conditioning-domain": "bloch",
        "workers": 1,
        "emit-reps": False,
    }
    CASTS = {
        "true-state": _floats,
        "direction": _floats,
        "lengths": _floats,
        "n-values": _ints,
        "reps": int,
        "seed": int,
        "stream": int,
        "prior-kappa": float,
        "prior-lambda": float,
        "grid-points": int,
        "workers": int,
        "emit-reps": lambda v: str(v).lower() in ("1", "true", "yes", "on"),
    }

    def __init__(self, args: argparse.Namespace):
        self._args = vars(args)
        self._file = load_config_file(args.config) if getattr(args, "config", None) else {}

    def get(self, key: str, required: bool = False):
        value = self._args.get(key.replace("-", "_"))
        if value is None and key in self._file:
            value = self._file[key]
        if value is None:
            if key in self.DEFAULTS:
                return self.DEFAULTS[key]
            if required:
                raise ValueError(f"missing required option --{key}")
            return None
        cast = self.CASTS.get(key)
        if isinstance(value, str) and cast is not None:
            return cast(value)
        return value

    def prior(self) -> PriorParams:
        return PriorParams(kappa=self.get("prior-kappa"), lam=self.get("prior-lambda"))

    def integrator(self) -> IntegratorConfig:
        return IntegratorConfig(
            grid_points_per_axis=self.get("grid-points"),
            domain_convention=DOMAIN_FLAGS[self.get("conditioning-domain")],
        )

    def single_n(self) -> int:
        n_values = self.get("n-values", required=True)
        if len(n_values) != 1:
            raise ValueError("this command takes exactly one value in --n-values")
        return n_values[0]


def _cmd_simulate(opts: _Options) -> int:
    s = opts.get("true-state", required=True)
    seed = SimSeed(opts.get("seed"), opts.get("stream"))
    data = simulate_dataset(np.array(s), opts.single_n(), seed)
    text = format_dump(data, seed)
    out = opts.get("out")
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_estimate(opts: _Options) -> int:
    data_path = opts.get("data")
    truth = opts.get("true-state")
    if data_path:
        data, _ = parse_dump(Path(data_path).read_text(encoding="utf-8"))
    else:
        if truth is None:
            raise ValueError("estimate needs --true-state (to simulate) or --data")
        seed = SimSeed(opts.get("seed"), opts.get("stream"))
        data = simulate_dataset(np.array(truth), opts.single_n(), seed)
    prior = opts.prior()
    estimates = [
        ls_estimate(data),
        bayes_unconditioned(data, prior),
        bayes_conditioned(data, prior, opts.integrator()),
    ]
    records = []
    for est in estimates:
        fid = hs = None
        if truth is not None:
            fid = fidelity_bloch(np.array(truth), est.vector)
            hs = bloch_hs_distance(np.array(truth), est.vector)
        records.append((est.method, data.n, 0, est.vector, fid, hs))
        v = est.vector
        line = f"{est.method}: estimate=({v[0]:.6f}, {v[1]:.6f}, {v[2]:.6f}) physical={est.physical}"
        if fid is not None:
            line += f" fidelity={fid:.6f} hs={hs:.6f}"
        print(line)
    out = opts.get("out")
    if out:
        emit_repetitions_csv(records, out)
    return 0


def _sweep_config(opts: _Options, kind: str) -> ExperimentConfig:
    common = dict(
        n_values=opts.get("n-values", required=True),
        reps=opts.get("reps"),
        seed=opts.get("seed"),
        prior=opts.prior(),
        integrator=opts.integrator(),
        workers=opts.get("workers"),
    )
    if kind == KIND_SWEEP_N:
        return ExperimentConfig(
            kind=kind, true_state=np.array(opts.get("true-state", required=True)), **common
        )
    return ExperimentConfig(
        kind=kind,
        direction=np.array(opts.get("direction", required=True)),
        lengths=opts.get("lengths", required=True),
        **common,
    )


def _cmd_sweep(opts: _Options, kind: str) -> int:
    cfg = _sweep_config(opts, kind)
    out = opts.get("out", required=True)
    if kind == KIND_SWEEP_N:
        agg_rows, rep_records = run_sweep_n(cfg)
    else:
        agg_rows, rep_records = run_sweep_length(cfg)
    emit_csv(agg_rows, out)
    if opts.get("emit-reps"):
        emit_repetitions_csv(rep_records, repetitions_path(out))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = _Options(args)
        if args.command == "simulate":
            return _cmd_simulate(opts)
        if args.command == "estimate":
            return _cmd_estimate(opts)
        if args.command == "sweep-n":
            return _cmd_sweep(opts, KIND_SWEEP_N)
        return _cmd_sweep(opts, KIND_SWEEP_LENGTH)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
