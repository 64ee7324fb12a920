"""Command-line client for single runs, sweeps, oracles, and histograms.

The CLI builds the same pydantic requests the HTTP service accepts and
dispatches them to the in-process handlers by default, or to a remote
service with ``--server``. Exit codes: 0 on program success (regardless of
the run's agreement outcome), 1 on runtime or I/O failure, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import os
import secrets
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np
import pydantic

from .entanglement import NoisePreset
from .errors import InvalidParameterError
from .harness import SweepKind
from .protocol import ThresholdMode
from .service.app import handle_histogram, handle_oracle, handle_run, handle_sweep
from .service.schemas import (
    HistogramRequest,
    HistogramResponse,
    NoiseParams,
    OracleResponse,
    RunRequest,
    RunResponse,
    SweepRequest,
    SweepResponse,
)

_PRESET_CHOICES = [p.value for p in NoisePreset if p is not NoisePreset.CUSTOM]
_COMMANDER_STRATEGIES = ["half-split", "random-assign", "all-same-false-indices"]
_LIEUTENANT_STRATEGIES = ["opposite-claim", "honest"]


class _UsageError(Exception):
    pass


class _Remote:
    """Minimal HTTP client targeting a running service."""

    def __init__(self, base_url: str):
        import httpx

        self._client = httpx.Client(base_url=base_url, timeout=None)

    def run(self, request: RunRequest) -> RunResponse:
        resp = self._client.post("/run", json=request.model_dump())
        resp.raise_for_status()
        return RunResponse(**resp.json())

    def sweep(self, request: SweepRequest) -> SweepResponse:
        resp = self._client.post("/sweep", json=request.model_dump())
        resp.raise_for_status()
        return SweepResponse(**resp.json())

    def histogram(self, request: HistogramRequest) -> HistogramResponse:
        resp = self._client.post("/histogram", json=request.model_dump())
        resp.raise_for_status()
        return HistogramResponse(**resp.json())

    def oracle(self, n: int) -> OracleResponse:
        resp = self._client.get(f"/oracle/{n}")
        resp.raise_for_status()
        return OracleResponse(**resp.json())


def _noise_params(args: argparse.Namespace) -> NoiseParams:
    if getattr(args, "noise", None) is not None:
        return NoiseParams(preset="custom", p=args.noise)
    return NoiseParams(preset=args.preset)


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    generated = secrets.randbits(63)
    print(f"seed not given; using generated seed {generated}", file=sys.stderr)
    return generated


def _add_protocol_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=5, help="total number of generals (n > 2)")
    parser.add_argument("--traitors", type=int, default=0, help="number of traitors m")
    parser.add_argument(
        "--commander-traitor",
        action="store_true",
        default=None,
        help="force the commander into the traitor set",
    )
    parser.add_argument("--noise", type=float, default=None, help="explicit flip probability p")
    parser.add_argument(
        "--preset",
        choices=_PRESET_CHOICES,
        default="noiseless",
        help="named noise level (ignored when --noise is given)",
    )
    parser.add_argument("--shots", type=int, default=1000, help="copies distributed, k")
    parser.add_argument(
        "--game-len",
        type=int,
        default=None,
        help="indices exchanged per game side (default: the full copy budget k)",
    )
    parser.add_argument("--verify-frac", type=float, default=0.2, help="verification fraction f_v")
    parser.add_argument(
        "--strategy-commander",
        choices=_COMMANDER_STRATEGIES,
        default="half-split",
        help="traitorous commander strategy",
    )
    parser.add_argument(
        "--strategy-lieutenant",
        choices=_LIEUTENANT_STRATEGIES,
        default="opposite-claim",
        help="traitorous lieutenant strategy",
    )
    parser.add_argument(
        "--order",
        choices=["retreat", "attack"],
        default=None,
        help="loyal commander's order (default: uniform per run)",
    )
    parser.add_argument(
        "--threshold",
        choices=[m.value for m in ThresholdMode],
        default=ThresholdMode.KNOWN_NOISE.value,
        help="classification threshold source",
    )
    parser.add_argument("--seed", type=int, default=None, help="master seed (default: system entropy, printed)")


def _run_request(args: argparse.Namespace, seed: int | None) -> RunRequest:
    return RunRequest(
        n=args.n,
        traitors=args.traitors,
        commander_traitor=args.commander_traitor,
        noise=_noise_params(args),
        shots=args.shots,
        game_len=args.game_len,
        verify_frac=args.verify_frac,
        commander_strategy=args.strategy_commander,
        lieutenant_strategy=args.strategy_lieutenant,
        commander_order=args.order,
        threshold=args.threshold,
        seed=seed,
    )


def _default_axis(kind: SweepKind, args: argparse.Namespace) -> list[float]:
    if kind is SweepKind.NOISE:
        return [float(v) for v in np.linspace(0.0, 1.0, args.points)]
    if kind is SweepKind.TRAITORS:
        return [float(m) for m in range(args.n + 1)]
    if kind is SweepKind.SIZE:
        return [float(n) for n in range(3, args.n + 1)]
    if kind is SweepKind.SHOTS:
        return [100.0, 1000.0, 10000.0, 100000.0, 1000000.0]
    raise _UsageError(f"no axis for sweep kind {kind.value}")


def _parse_axis(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise _UsageError(f"bad --axis value: {exc}") from exc


def _cmd_run(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    request = _run_request(args, seed)
    response = _Remote(args.server).run(request) if args.server else handle_run(request)
    print(response.model_dump_json())
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    if args.kind == "histogram":
        request = HistogramRequest(
            n=args.n,
            noise=_noise_params(args),
            iterations=args.iters,
            samples=args.samples,
            seed=seed,
        )
        response = (
            _Remote(args.server).histogram(request) if args.server else handle_histogram(request)
        )
        csv_text = response.csv
        row_count = len(response.frequencies)
    else:
        kind = SweepKind(args.kind)
        axis = _parse_axis(args.axis) if args.axis else _default_axis(kind, args)
        request = SweepRequest(
            kind=kind.value,
            axis=axis,
            iterations=args.iters,
            seed=seed,
            workers=args.workers,
            base=_run_request(args, seed=None),
        )
        response = _Remote(args.server).sweep(request) if args.server else handle_sweep(request)
        csv_text = response.csv
        row_count = len(response.rows)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text)
    print(f"{row_count} rows -> {args.out}")
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    response = _Remote(args.server).oracle(args.n) if args.server else handle_oracle(args.n)
    out = []
    out.append(f"n = {response.n}")
    rows = [
        ("lieutenant marginal P(bit = 1)", response.lieutenant_marginal),
        ("joint ones P(two bits = 1)", response.joint_ones_probability),
        ("traitor detection rate", response.traitor_detection_rate),
    ]
    for label, rational in rows:
        frac = Fraction(rational.numerator, rational.denominator)
        out.append(f"{label}: {frac} = {rational.value:.12g}")
    out.append("games by traitor count (loyal commander): " + ", ".join(
        f"m={entry.m}: {entry.games}" for entry in response.games
    ))
    out.append(f"games max (traitorous commander): {response.games_max}")
    out.append("pmf (commander symbol, lieutenant bits, probability):")
    for entry in response.pmf:
        frac = Fraction(entry.numerator, entry.denominator)
        out.append(
            f"  {entry.commander_symbol} {entry.lieutenant_bits}  {frac} = {entry.probability:.12g}"
        )
    print("\n".join(out))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(response.pmf_csv)
        print(f"pmf csv -> {args.csv}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdba",
        description="Simulate detectable Byzantine agreement over an entangled resource state.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    run_p = sub.add_parser("run", help="execute one protocol run", formatter_class=fmt)
    _add_protocol_flags(run_p)
    run_p.add_argument("--server", default=None, help="base URL of a running service")
    run_p.set_defaults(func=_cmd_run)

    sweep_p = sub.add_parser("sweep", help="Monte Carlo sweep to CSV", formatter_class=fmt)
    sweep_p.add_argument(
        "kind", choices=[k.value for k in SweepKind], help="swept axis or histogram"
    )
    _add_protocol_flags(sweep_p)
    sweep_p.add_argument("--iters", type=int, default=1000, help="iterations per sweep point")
    sweep_p.add_argument("--points", type=int, default=100, help="noise sweep axis resolution")
    sweep_p.add_argument("--axis", default=None, help="explicit comma-separated axis values")
    sweep_p.add_argument("--samples", type=int, default=8192, help="histogram samples per iteration")
    sweep_p.add_argument(
        "--workers",
        type=int,
        default=os.cpu_count() or 1,
        help="parallel workers (output is worker-count independent)",
    )
    sweep_p.add_argument("--out", required=True, help="output CSV path")
    sweep_p.add_argument("--server", default=None, help="base URL of a running service")
    sweep_p.set_defaults(func=_cmd_sweep)

    oracle_p = sub.add_parser(
        "oracle", help="print closed-form quantities for one n", formatter_class=fmt
    )
    oracle_p.add_argument("--n", type=int, required=True, help="total number of generals (n > 2)")
    oracle_p.add_argument("--csv", default=None, help="also write the exact pmf as CSV here")
    oracle_p.add_argument("--server", default=None, help="base URL of a running service")
    oracle_p.set_defaults(func=_cmd_oracle)

    serve_p = sub.add_parser("serve", help="start the HTTP service", formatter_class=fmt)
    serve_p.add_argument("--host", default="127.0.0.1", help="bind address")
    serve_p.add_argument("--port", type=int, default=8000, help="bind port")
    serve_p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameterError, pydantic.ValidationError, _UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # httpx transport errors and friends
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
