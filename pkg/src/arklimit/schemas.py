"""Request/response envelopes and payload models for the service and CLI.

Complex numbers cross the wire as two-element [re, im] arrays; values
certified real additionally carry a plain ``real_value`` field.  Floats
serialize at shortest round-trip precision (up to 17 significant digits),
so serializing and re-parsing an envelope is lossless.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .model import EvalResult

SCHEMA_VERSION = 1

ComplexPair = Annotated[list[float], Field(min_length=2, max_length=2)]

# Requests may give a root as a bare real number or as an [re, im] pair.
RootInput = Union[float, ComplexPair]


def to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def from_root_input(r: RootInput) -> complex:
    if isinstance(r, (int, float)):
        return complex(r)
    return complex(r[0], r[1])


class RootsParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alphas: list[float] = Field(min_length=1)
    tol: float = Field(default=1e-13, gt=0.0)
    max_iter: int = Field(default=200, ge=1)


class LimitParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alphas: Optional[list[float]] = Field(default=None, min_length=1)
    roots: Optional[list[RootInput]] = Field(default=None, min_length=1)
    shifts: Optional[list[int]] = Field(default=None, min_length=1)
    S: Optional[int] = Field(default=None, ge=0)
    cluster_tol: float = Field(default=1e-7, gt=0.0)
    stationarity_margin: float = Field(default=0.0, ge=0.0, lt=1.0)

    @model_validator(mode="after")
    def _exactly_one_of_each(self) -> "LimitParams":
        if (self.alphas is None) == (self.roots is None):
            raise ValueError("exactly one of 'alphas' or 'roots' must be given")
        if (self.shifts is None) == (self.S is None):
            raise ValueError("exactly one of 'shifts' or 'S' must be given")
        return self


class OracleParams(LimitParams):
    n1: int = Field(default=150, ge=1)
    n2: int = Field(default=200, ge=2)
    M: Optional[int] = Field(default=None, ge=0)
    points: Optional[int] = Field(default=None, ge=2)
    tolerance: float = Field(default=1e-8, gt=0.0)
    tail_tol: float = Field(default=1e-12, gt=0.0)

    @model_validator(mode="after")
    def _ordered_n(self) -> "OracleParams":
        if self.n1 >= self.n2:
            raise ValueError("n1 must be smaller than n2")
        return self


class SimulateParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alphas: list[float] = Field(min_length=1)
    sigma: float = Field(default=1.0, gt=0.0)
    # service-side ceilings; the library itself is unbounded
    n: int = Field(ge=1, le=10_000_000)
    burn_in: Optional[int] = Field(default=None, ge=0, le=10_000_000)
    seed: int = Field(default=0, ge=0)
    include_series: bool = False


class RequestEnvelope(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = Field(default=SCHEMA_VERSION, ge=1, le=SCHEMA_VERSION)
    command: Literal["roots", "limit", "oracle", "simulate"]
    parameters: dict = Field(default_factory=dict)


class ErrorInfo(BaseModel):
    code: str
    message: str
    details: Optional[dict] = None


class ResponseEnvelope(BaseModel):
    schema_version: int = SCHEMA_VERSION
    status: Literal["ok", "error"]
    result: Optional[dict] = None
    error: Optional[ErrorInfo] = None

    @model_validator(mode="after")
    def _status_shape(self) -> "ResponseEnvelope":
        if self.status == "ok" and self.error is not None:
            raise ValueError("status 'ok' must not carry an error")
        if self.status == "error" and self.result is not None:
            raise ValueError("status 'error' must not carry a result")
        return self


class EvalResultModel(BaseModel):
    value: ComplexPair
    real_value: Optional[float] = None
    max_imag: float
    method: str
    tail_bound: Optional[float] = None
    clusters: Optional[list[list[int]]] = None

    @classmethod
    def from_domain(cls, r: EvalResult) -> "EvalResultModel":
        return cls(
            value=to_pair(r.value),
            real_value=r.real_value,
            max_imag=r.max_imag,
            method=r.method,
            tail_bound=r.tail_bound,
            clusters=[list(c) for c in r.clusters] if r.clusters is not None else None,
        )


class RootsResult(BaseModel):
    roots: list[ComplexPair]
    stationary: bool
    conjugate_closed: bool
    residual: float
    polynomial: list[float]


class LimitResult(EvalResultModel):
    S: int
    k: int
    roots: list[ComplexPair]


class SlopeModel(BaseModel):
    value: ComplexPair
    real_value: Optional[float] = None
    n1: int
    n2: int
    raw_sums: list[ComplexPair]


class ComparisonEntry(BaseModel):
    first: str
    second: str
    abs_diff: float
    rel_diff: float


class OracleResult(BaseModel):
    S: int
    k: int
    roots: list[ComplexPair]
    closed_form: EvalResultModel
    truncated: EvalResultModel
    contour: EvalResultModel
    slope: Optional[SlopeModel] = None
    skipped: dict[str, str] = Field(default_factory=dict)
    truncation_cutoff: int
    contour_points: int
    comparisons: list[ComparisonEntry]
    max_abs_discrepancy: float
    max_rel_discrepancy: float
    tolerance: float


class SimulateResult(BaseModel):
    n: int
    seed: int
    burn_in: int
    sigma: float
    sum: float
    variance: float
    lag1_autocorr: Optional[float] = None
    series: Optional[list[float]] = None
