"""Command-line front end; a thin client over the dispatch layer.

One request per process invocation: the response envelope is printed to
stdout as JSON, logs go to stderr only, and the exit status is 0 on
success, 1 on a domain error and 2 on a parse error.  With ``--server``
the request is POSTed to a running arklimit service instead of being
dispatched in-process.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request
from typing import Optional, Sequence

from pydantic import ValidationError

from .dispatch import PARSE_ERROR, run
from .schemas import RequestEnvelope, ResponseEnvelope


def _parse_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_roots(text: str) -> list:
    """Roots separated by ';', each either 're' or 're,im'."""
    out: list = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [float(p) for p in chunk.split(",")]
        if len(parts) == 1:
            out.append(parts[0])
        elif len(parts) == 2:
            out.append(parts)
        else:
            raise ValueError(f"a root is 're' or 're,im', got {chunk!r}")
    return out


def _add_root_source_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--alphas",
        help="autoregression coefficients, comma separated, e.g. '0.8,-0.15'",
    )
    p.add_argument(
        "--roots",
        help="explicit roots as 're,im' pairs separated by ';', e.g. "
        "'0.5,0.5;0.5,-0.5' (bare 're' means a real root)",
    )
    p.add_argument(
        "--shifts", help="integer shifts, comma separated, e.g. '1,0'"
    )
    p.add_argument("--S", type=int, help="absolute shift total (>= 0)")
    p.add_argument("--cluster-tol", type=float, help="cluster threshold on roots")
    p.add_argument(
        "--margin", type=float, help="required stationarity margin in [0, 1)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arklimit",
        description="Closed-form asymptotics of AR(k) lattice sums with "
        "brute-force oracle cross-checks and a path simulator.",
    )
    parser.add_argument(
        "--json",
        metavar="FILE",
        help="read a full request envelope from FILE ('-' for stdin); "
        "other flags are ignored",
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        help="POST the request to a running arklimit service instead of "
        "computing in-process",
    )
    sub = parser.add_subparsers(dest="command")

    p_roots = sub.add_parser(
        "roots", help="characteristic roots of an autoregression"
    )
    p_roots.add_argument("--alphas", required=True, help="e.g. '0.8,-0.15'")
    p_roots.add_argument(
        "--tol", type=float, help="per-root correction tolerance (default 1e-13)"
    )
    p_roots.add_argument("--max-iter", type=int, help="iteration budget (default 200)")

    p_limit = sub.add_parser("limit", help="closed-form lattice-sum limit")
    _add_root_source_flags(p_limit)

    p_oracle = sub.add_parser(
        "oracle", help="closed form plus every applicable brute-force oracle"
    )
    _add_root_source_flags(p_oracle)
    p_oracle.add_argument("--n1", type=int, help="smaller slope endpoint (default 150)")
    p_oracle.add_argument("--n2", type=int, help="larger slope endpoint (default 200)")
    p_oracle.add_argument("--M", type=int, help="truncation cutoff (default: auto)")
    p_oracle.add_argument(
        "--points", type=int, help="contour quadrature points (default: auto)"
    )
    p_oracle.add_argument(
        "--tol",
        type=float,
        help="max tolerated pairwise relative discrepancy (default 1e-8)",
    )
    p_oracle.add_argument(
        "--tail-tol",
        type=float,
        help="target certified truncation tail when auto-sizing M (default 1e-12)",
    )

    p_sim = sub.add_parser("simulate", help="generate an AR(k) sample path")
    p_sim.add_argument("--alphas", required=True, help="e.g. '0.5'")
    p_sim.add_argument("--sigma", type=float, help="noise standard deviation")
    p_sim.add_argument("--n", type=int, required=True, help="observations to keep")
    p_sim.add_argument("--burn-in", type=int, help="warm-up steps (default: auto)")
    p_sim.add_argument("--seed", type=int, help="generator seed (default 0)")
    p_sim.add_argument(
        "--out", metavar="FILE", help="write the series to FILE, one value per line"
    )
    p_sim.add_argument(
        "--include-series",
        action="store_true",
        help="embed the series in the printed response",
    )
    return parser


def _envelope_from_args(args: argparse.Namespace) -> RequestEnvelope:
    params: dict = {}
    if args.command == "roots":
        params["alphas"] = _parse_floats(args.alphas)
        if args.tol is not None:
            params["tol"] = args.tol
        if args.max_iter is not None:
            params["max_iter"] = args.max_iter
    elif args.command in ("limit", "oracle"):
        if args.alphas is not None:
            params["alphas"] = _parse_floats(args.alphas)
        if args.roots is not None:
            params["roots"] = _parse_roots(args.roots)
        if args.shifts is not None:
            params["shifts"] = _parse_ints(args.shifts)
        if args.S is not None:
            params["S"] = args.S
        if args.cluster_tol is not None:
            params["cluster_tol"] = args.cluster_tol
        if args.margin is not None:
            params["stationarity_margin"] = args.margin
        if args.command == "oracle":
            for flag, key in (
                ("n1", "n1"),
                ("n2", "n2"),
                ("M", "M"),
                ("points", "points"),
                ("tol", "tolerance"),
                ("tail_tol", "tail_tol"),
            ):
                value = getattr(args, flag)
                if value is not None:
                    params[key] = value
    elif args.command == "simulate":
        params["alphas"] = _parse_floats(args.alphas)
        params["n"] = args.n
        if args.sigma is not None:
            params["sigma"] = args.sigma
        if args.burn_in is not None:
            params["burn_in"] = args.burn_in
        if args.seed is not None:
            params["seed"] = args.seed
        if args.out or args.include_series:
            params["include_series"] = True
    return RequestEnvelope(command=args.command, parameters=params)


def _envelope_from_json(source: str) -> RequestEnvelope:
    text = sys.stdin.read() if source == "-" else open(source, "r").read()
    return RequestEnvelope.model_validate_json(text)


def _post_envelope(server: str, request: RequestEnvelope) -> ResponseEnvelope:
    url = server.rstrip("/") + "/v1/run"
    data = request.model_dump_json().encode("utf-8")
    req = urllib.request.Request(
        url, data=data, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req, timeout=60.0) as resp:
            body = resp.read()
    except urllib.error.HTTPError as exc:
        body = exc.read()
    return ResponseEnvelope.model_validate_json(body)


def _parse_failure(message: str) -> ResponseEnvelope:
    return ResponseEnvelope(
        status="error",
        error={"code": PARSE_ERROR, "message": message},
    )


def _server_failure(code: str, message: str) -> ResponseEnvelope:
    return ResponseEnvelope(status="error", error={"code": code, "message": message})


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.json is None and args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    try:
        if args.json is not None:
            request = _envelope_from_json(args.json)
        else:
            request = _envelope_from_args(args)
    except (ValidationError, ValueError, OSError) as exc:
        envelope = _parse_failure(str(exc))
        print(envelope.model_dump_json(), file=sys.stdout)
        return 2

    if args.server:
        try:
            envelope = _post_envelope(args.server, request)
        except (urllib.error.URLError, OSError) as exc:
            envelope = _server_failure("SERVER_UNREACHABLE", str(exc))
        except ValidationError as exc:
            envelope = _server_failure(
                "SERVER_ERROR", f"malformed response envelope: {exc}"
            )
    else:
        envelope = run(request)

    out_path = getattr(args, "out", None)
    if (
        out_path
        and envelope.status == "ok"
        and envelope.result
        and envelope.result.get("series") is not None
    ):
        with open(out_path, "w", encoding="ascii") as fh:
            for v in envelope.result["series"]:
                fh.write(repr(float(v)))
                fh.write("\n")
        if not getattr(args, "include_series", False):
            envelope = envelope.model_copy(
                update={"result": {**envelope.result, "series": None}}
            )

    print(envelope.model_dump_json())
    if envelope.status == "ok":
        return 0
    return 2 if envelope.error is not None and envelope.error.code == PARSE_ERROR else 1


if __name__ == "__main__":
    sys.exit(main())
