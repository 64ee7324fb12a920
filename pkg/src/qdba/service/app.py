"""FastAPI service wrapping the simulator core.

Handlers are plain functions over the pydantic models so the CLI can call
them in process; the routes are thin bindings.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..entanglement import (
    exact_pmf,
    games_count,
    games_max,
    joint_ones_probability_exact,
    lieutenant_marginal_exact,
    pmf_csv,
    traitor_detection_rate_exact,
)
from ..errors import InvalidParameterError
from ..harness import histogram_csv, run_sweep, state_histogram, sweep_csv
from ..protocol import run_protocol
from .schemas import (
    GamesEntry,
    HealthResponse,
    HistogramRequest,
    HistogramResponse,
    OracleResponse,
    PMFEntry,
    RationalValue,
    RunRequest,
    RunResponse,
    SweepRequest,
    SweepResponse,
    SweepRowModel,
)

__all__ = [
    "app",
    "handle_run",
    "handle_sweep",
    "handle_histogram",
    "handle_oracle",
]


def handle_run(request: RunRequest) -> RunResponse:
    result = run_protocol(request.to_config())
    return RunResponse.from_result(result)


def handle_sweep(request: SweepRequest) -> SweepResponse:
    rows = run_sweep(request.to_spec())
    return SweepResponse(rows=[SweepRowModel.from_row(r) for r in rows], csv=sweep_csv(rows))


def handle_histogram(request: HistogramRequest) -> HistogramResponse:
    spec = request.noise.to_spec()
    freqs = state_histogram(request.n, spec, request.iterations, request.samples, request.seed)
    return HistogramResponse(
        n=request.n,
        preset=spec.preset.value,
        p=spec.flip_probability,
        iterations=request.iterations,
        samples=request.samples,
        seed=request.seed,
        frequencies=freqs,
        csv=histogram_csv(freqs),
    )


def _rational(fraction) -> RationalValue:
    return RationalValue(
        numerator=fraction.numerator,
        denominator=fraction.denominator,
        value=float(fraction),
    )


def handle_oracle(n: int) -> OracleResponse:
    pmf = exact_pmf(n)
    entries = [
        PMFEntry(
            commander_symbol=pattern.commander_symbol.text,
            lieutenant_bits="".join(str(b) for b in pattern.lieutenant_bits),
            numerator=prob.numerator,
            denominator=prob.denominator,
            probability=float(prob),
        )
        for pattern, prob in sorted(pmf.entries.items(), key=lambda kv: kv[0].bit_string())
    ]
    return OracleResponse(
        n=n,
        lieutenant_marginal=_rational(lieutenant_marginal_exact(n)),
        joint_ones_probability=_rational(joint_ones_probability_exact(n)),
        traitor_detection_rate=_rational(traitor_detection_rate_exact(n)),
        games=[GamesEntry(m=m, games=games_count(n, m)) for m in range(n)],
        games_max=games_max(n),
        pmf=entries,
        pmf_csv=pmf_csv(pmf),
    )


app = FastAPI(
    title="detectable-broadcast simulator",
    description="Seeded protocol runs, Monte Carlo sweeps, and closed-form oracles.",
    version=__version__,
)


@app.exception_handler(InvalidParameterError)
async def invalid_parameter(_: Request, exc: InvalidParameterError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/run", response_model=RunResponse)
def run_endpoint(request: RunRequest) -> RunResponse:
    return handle_run(request)


@app.post("/sweep", response_model=SweepResponse)
def sweep_endpoint(request: SweepRequest) -> SweepResponse:
    return handle_sweep(request)


@app.post("/histogram", response_model=HistogramResponse)
def histogram_endpoint(request: HistogramRequest) -> HistogramResponse:
    return handle_histogram(request)


@app.get("/oracle/{n}", response_model=OracleResponse)
def oracle_endpoint(n: int) -> OracleResponse:
    return handle_oracle(n)


@app.get("/pmf/{n}", response_class=PlainTextResponse)
def pmf_endpoint(n: int) -> PlainTextResponse:
    return PlainTextResponse(pmf_csv(exact_pmf(n)), media_type="text/csv")
