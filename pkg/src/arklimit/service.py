"""HTTP service wrapping the core package.

Run with:  uvicorn arklimit.service:app

Every endpoint returns a ResponseEnvelope; domain failures come back as
HTTP 400 with a machine-readable error code.
"""

from __future__ import annotations

from fastapi import FastAPI, Response

from .dispatch import run
from .schemas import (
    SCHEMA_VERSION,
    LimitParams,
    OracleParams,
    RequestEnvelope,
    ResponseEnvelope,
    RootsParams,
    SimulateParams,
)

app = FastAPI(
    title="arklimit",
    description="Closed-form asymptotics of AR(k) lattice sums, "
    "with brute-force oracles and a path simulator.",
    version="0.1.0",
)


def _respond(envelope: ResponseEnvelope, response: Response) -> ResponseEnvelope:
    if envelope.status == "error":
        response.status_code = 400
    return envelope


@app.get("/v1/health")
def health() -> dict:
    return {"status": "ok", "schema_version": SCHEMA_VERSION}


@app.post("/v1/run", response_model=ResponseEnvelope)
def run_envelope(request: RequestEnvelope, response: Response) -> ResponseEnvelope:
    return _respond(run(request), response)


@app.post("/v1/roots", response_model=ResponseEnvelope)
def roots_endpoint(params: RootsParams, response: Response) -> ResponseEnvelope:
    envelope = run(RequestEnvelope(command="roots", parameters=params.model_dump()))
    return _respond(envelope, response)


@app.post("/v1/limit", response_model=ResponseEnvelope)
def limit_endpoint(params: LimitParams, response: Response) -> ResponseEnvelope:
    envelope = run(RequestEnvelope(command="limit", parameters=params.model_dump()))
    return _respond(envelope, response)


@app.post("/v1/oracle", response_model=ResponseEnvelope)
def oracle_endpoint(params: OracleParams, response: Response) -> ResponseEnvelope:
    envelope = run(RequestEnvelope(command="oracle", parameters=params.model_dump()))
    return _respond(envelope, response)


@app.post("/v1/simulate", response_model=ResponseEnvelope)
def simulate_endpoint(params: SimulateParams, response: Response) -> ResponseEnvelope:
    envelope = run(RequestEnvelope(command="simulate", parameters=params.model_dump()))
    return _respond(envelope, response)
