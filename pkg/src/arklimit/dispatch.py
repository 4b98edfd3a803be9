"""Command dispatch shared by the HTTP service and the CLI.

Maps a validated RequestEnvelope onto the library, catching every domain
error and turning it into a stable machine-readable error envelope.
"""

from __future__ import annotations

from typing import Optional, Tuple

from pydantic import ValidationError

from . import oracles
from .charpoly import char_polynomial, coefficient_residual, solve_roots
from .errors import ArkLimitError, LengthMismatchError
from .evaluate import lattice_sum_limit
from .model import ARCoefficients, RootMultiset, ShiftVector, validate_roots
from .schemas import (
    ComparisonEntry,
    ErrorInfo,
    EvalResultModel,
    LimitParams,
    LimitResult,
    OracleParams,
    OracleResult,
    RequestEnvelope,
    ResponseEnvelope,
    RootsParams,
    RootsResult,
    SimulateParams,
    SimulateResult,
    SlopeModel,
    from_root_input,
    to_pair,
)
from .simulate import lagged_cross_sum, series_sum, simulate

PARSE_ERROR = "PARSE_ERROR"
ORACLE_MISMATCH = "ORACLE_MISMATCH"


def _ok(result: dict) -> ResponseEnvelope:
    return ResponseEnvelope(status="ok", result=result)


def _err(code: str, message: str, details: Optional[dict] = None) -> ResponseEnvelope:
    return ResponseEnvelope(
        status="error", error=ErrorInfo(code=code, message=message, details=details)
    )


def _resolve_roots(
    params: LimitParams,
) -> Tuple[RootMultiset, Optional[ShiftVector], int]:
    """Turn request parameters into a validated multiset plus shift data."""
    if params.alphas is not None:
        ms = solve_roots(char_polynomial(ARCoefficients(tuple(params.alphas))))
    else:
        assert params.roots is not None
        ms = RootMultiset(tuple(from_root_input(r) for r in params.roots))
    ms = validate_roots(ms, params.stationarity_margin)
    if params.shifts is not None:
        shifts = ShiftVector(tuple(params.shifts))
        if shifts.k != ms.k:
            raise LengthMismatchError(
                f"{shifts.k} shifts for {ms.k} roots; lengths must agree"
            )
        return ms, shifts, shifts.total
    assert params.S is not None
    return ms, None, params.S


def _handle_roots(params: RootsParams) -> ResponseEnvelope:
    alphas = ARCoefficients(tuple(params.alphas))
    poly = char_polynomial(alphas)
    ms = solve_roots(poly, tol=params.tol, max_iter=params.max_iter)
    return _ok(
        RootsResult(
            roots=[to_pair(r) for r in ms.roots],
            stationary=ms.is_stationary,
            conjugate_closed=ms.conjugate_closed,
            residual=coefficient_residual(poly, ms.roots),
            polynomial=list(poly.coefficients),
        ).model_dump(mode="json")
    )


def _handle_limit(params: LimitParams) -> ResponseEnvelope:
    ms, _, s_total = _resolve_roots(params)
    result = lattice_sum_limit(ms, s_total, cluster_tol=params.cluster_tol)
    base = EvalResultModel.from_domain(result)
    return _ok(
        LimitResult(
            **base.model_dump(),
            S=s_total,
            k=ms.k,
            roots=[to_pair(r) for r in ms.roots],
        ).model_dump(mode="json")
    )


def _handle_oracle(params: OracleParams) -> ResponseEnvelope:
    ms, shifts, s_total = _resolve_roots(params)
    closed = lattice_sum_limit(ms, s_total, cluster_tol=params.cluster_tol)

    cutoff = params.M if params.M is not None else max(
        s_total, oracles.choose_truncation(ms, params.tail_tol)
    )
    truncated = oracles.truncated_tuple_sum(ms, s_total, cutoff)

    points = (
        params.points
        if params.points is not None
        else oracles.default_contour_points(ms, s_total)
    )
    contour = oracles.contour_coefficient(ms, s_total, points)

    values: dict[str, complex] = {
        "closed_form": closed.value,
        "truncated": truncated.value,
        "contour": contour.value,
    }
    skipped: dict[str, str] = {}
    slope_model: Optional[SlopeModel] = None
    if params.n2**ms.k > oracles.DIRECT_SUM_BUDGET:
        skipped["slope"] = (
            f"n2^k = {params.n2 ** ms.k} exceeds the "
            f"{oracles.DIRECT_SUM_BUDGET} index-tuple budget"
        )
    else:
        if shifts is None:
            # Any representative works: the limit depends on the shifts only
            # through the absolute value of their sum.
            shifts = ShiftVector((s_total,) + (0,) * (ms.k - 1))
        slope = oracles.slope_estimate(ms, shifts, n1=params.n1, n2=params.n2)
        values["slope"] = slope.value
        real_slope = (
            slope.value.real
            if ms.conjugate_closed
            and abs(slope.value.imag) <= 1e-10 * (1.0 + abs(slope.value))
            else None
        )
        slope_model = SlopeModel(
            value=to_pair(slope.value),
            real_value=real_slope,
            n1=slope.n1,
            n2=slope.n2,
            raw_sums=[to_pair(slope.raw_sums[0]), to_pair(slope.raw_sums[1])],
        )

    names = sorted(values)
    comparisons = []
    max_abs = 0.0
    max_rel = 0.0
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            d = abs(values[a] - values[b])
            rel = d / (1.0 + max(abs(values[a]), abs(values[b])))
            comparisons.append(
                ComparisonEntry(first=a, second=b, abs_diff=d, rel_diff=rel)
            )
            max_abs = max(max_abs, d)
            max_rel = max(max_rel, rel)

    result = OracleResult(
        S=s_total,
        k=ms.k,
        roots=[to_pair(r) for r in ms.roots],
        closed_form=EvalResultModel.from_domain(closed),
        truncated=EvalResultModel.from_domain(truncated),
        contour=EvalResultModel.from_domain(contour),
        slope=slope_model,
        skipped=skipped,
        truncation_cutoff=cutoff,
        contour_points=points,
        comparisons=comparisons,
        max_abs_discrepancy=max_abs,
        max_rel_discrepancy=max_rel,
        tolerance=params.tolerance,
    ).model_dump(mode="json")

    if max_rel > params.tolerance:
        return _err(
            ORACLE_MISMATCH,
            f"max relative discrepancy {max_rel:.3e} exceeds tolerance "
            f"{params.tolerance:.3e}",
            details=result,
        )
    return _ok(result)


def _handle_simulate(params: SimulateParams) -> ResponseEnvelope:
    sample = simulate(
        ARCoefficients(tuple(params.alphas)),
        sigma=params.sigma,
        n=params.n,
        burn_in=params.burn_in,
        seed=params.seed,
    )
    total = series_sum(sample)
    squares = lagged_cross_sum(sample, 0)
    variance = (squares - total * total / sample.n) / sample.n
    lag1 = (
        lagged_cross_sum(sample, 1) / squares
        if sample.n >= 2 and squares > 0.0
        else None
    )
    return _ok(
        SimulateResult(
            n=sample.n,
            seed=sample.seed,
            burn_in=sample.burn_in,
            sigma=sample.sigma,
            sum=total,
            variance=variance,
            lag1_autocorr=lag1,
            series=[float(v) for v in sample.values] if params.include_series else None,
        ).model_dump(mode="json")
    )


_PARAM_MODELS = {
    "roots": RootsParams,
    "limit": LimitParams,
    "oracle": OracleParams,
    "simulate": SimulateParams,
}

_HANDLERS = {
    "roots": _handle_roots,
    "limit": _handle_limit,
    "oracle": _handle_oracle,
    "simulate": _handle_simulate,
}


def run(request: RequestEnvelope) -> ResponseEnvelope:
    """Dispatch one request to its module and wrap the outcome."""
    try:
        params = _PARAM_MODELS[request.command].model_validate(request.parameters)
    except ValidationError as exc:
        return _err(PARSE_ERROR, f"invalid parameters: {exc.errors()[0]['msg']}")
    try:
        return _HANDLERS[request.command](params)
    except ArkLimitError as exc:
        return _err(exc.code, str(exc))
