"""FastAPI service wrapping the verification engine.

Endpoints are stateless and deterministic: the same scenario text always
produces byte-identical machine report sections.  Heavy computations run in
plain `def` endpoints, which FastAPI executes on the threadpool.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..reports import Report
from ..scenario import ScenarioError, parse_scenario_text
from ..series import CharSeries, sinh_ratio_log_coefficients
from ..suites import run
from .models import (CheckModel, HealthResponse, RunRequest, RunResponse,
                     SchemaErrorModel, SeriesResponse, ValidateRequest,
                     ValidateResponse)


def _override_truncation(text: str, truncation: int) -> str:
    lines = []
    replaced = False
    for line in text.splitlines():
        stripped = line.split("#")[0].strip()
        if stripped.startswith("truncation") and "=" in stripped and not replaced:
            lines.append(f"truncation = {truncation}")
            replaced = True
        else:
            lines.append(line)
    if not replaced:
        lines.insert(0, f"truncation = {truncation}")
    return "\n".join(lines) + "\n"


def create_app() -> FastAPI:
    app = FastAPI(
        title="equichern",
        version=__version__,
        description="Exact equivariant Chern-Weil verification service",
    )

    @app.get("/v1/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/v1/scenario/validate", response_model=ValidateResponse)
    def validate_scenario(request: ValidateRequest):
        try:
            scenario = parse_scenario_text(request.scenario_text)
        except ScenarioError as err:
            return ValidateResponse(
                valid=False,
                errors=[SchemaErrorModel(line=ln, message=msg) for ln, msg in err.errors],
            )
        return ValidateResponse(valid=True, canonical_text=scenario.canonical_text())

    @app.post("/v1/run", response_model=RunResponse)
    def run_command(request: RunRequest):
        text = request.scenario_text
        if request.truncation is not None:
            text = _override_truncation(text, request.truncation)
        try:
            scenario = parse_scenario_text(text)
        except ScenarioError as err:
            raise HTTPException(
                status_code=422,
                detail=[{"line": ln, "message": msg} for ln, msg in err.errors],
            )
        try:
            report: Report = run(request.command, scenario)
        except ValueError as err:
            raise HTTPException(status_code=422, detail=str(err))
        return RunResponse(
            exit_code=report.exit_code(),
            report=report.render(),
            checks=[
                CheckModel(
                    name=c.name,
                    suite=c.suite,
                    status="PASS" if c.passed else "FAIL",
                    value=c.value,
                )
                for c in report.checks
            ],
            failed_suites=report.failed_suites(),
        )

    @app.get("/v1/series/{name}", response_model=SeriesResponse)
    def series_coefficients(name: str, degree: int = 8, normalization: str = "2pi"):
        if degree < 2 or degree % 2:
            raise HTTPException(status_code=422, detail="degree must be a positive even integer")
        if name == "ch":
            logc = {"u^1": "1"}
            expansion = {
                f"k={k}": f"1/{math.factorial(k)}" for k in range(degree // 2 + 1)
            }
            return SeriesResponse(name="ch", degree=degree,
                                  log_coefficients=logc, expansion=expansion)
        if name == "a_hat":
            if normalization not in ("2pi", "4pi"):
                raise HTTPException(status_code=422, detail="normalization must be 2pi or 4pi")
            b = sinh_ratio_log_coefficients(degree)
            gen = CharSeries.a_hat(degree, normalization).generating_coefficients(degree)
            return SeriesResponse(
                name="a_hat",
                degree=degree,
                normalization=normalization,
                log_coefficients={f"u^{n}": str(c) for n, c in sorted(b.items())},
                expansion={f"u^{n}": str(gen[n]) for n in range(0, degree + 1, 2) if gen[n]},
            )
        raise HTTPException(status_code=404, detail=f"unknown series {name!r}")

    return app


app = create_app()
