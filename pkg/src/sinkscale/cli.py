"""Command-line front end for scaling runs, family limits, classification,
cube-root approximant tables and continued fractions.

The commands are thin clients over the service handlers: by default each
request is handled in process; with --server URL the same request is POSTed
to a running service instead.  stdout carries data only, diagnostics go to
stderr.  Decimal output is truncated (not rounded) to the requested number
of significant digits; the default of 10 can be overridden with --digits or
the SINKHORN_PRECISION environment variable.

Exit codes: 0 success, 2 malformed input, 3 non-positive entry, 4 degenerate
parameter (K = 1) without --allow-degenerate, 5 not classifiable as a
two-valued pattern, 6 ambiguous or missing positive scaling.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from .errors import SinkscaleError
from .matrices import parse_matrix
from .service.handlers import (
    ServiceError,
    handle_approx,
    handle_cfrac,
    handle_classify,
    handle_limit,
    handle_scale,
)
from .service.models import (
    ApproxRequest,
    CfracRequest,
    ClassifyRequest,
    FamilySelector,
    LimitRequest,
    MatrixModel,
    ScaleRequest,
)

_PATHS = {
    handle_scale: "/scale",
    handle_limit: "/limit",
    handle_classify: "/classify",
    handle_approx: "/approx",
    handle_cfrac: "/cfrac",
}

_EXIT_BY_CODE = {
    "non-positive-entry": 3,
    "degenerate-parameter": 4,
    "not-two-valued": 5,
    "not-symmetric": 5,
    "ambiguous-scaling": 6,
    "no-positive-scaling": 6,
    "classification-gap": 1,
    "bad-input": 2,
}


def _call(handler, request, server: str | None) -> dict:
    """Dispatch a request in process or to a remote service."""
    if server is None:
        return handler(request).model_dump(by_alias=True)
    import httpx

    url = server.rstrip("/") + _PATHS[handler]
    reply = httpx.post(url, timeout=60.0,
                       json=request.model_dump(by_alias=True,
                                               exclude_none=True))
    if reply.status_code >= 400:
        try:
            payload = reply.json()
        except ValueError:
            payload = {}
        code = payload.get("error", "bad-input")
        message = payload.get("message", f"HTTP {reply.status_code}")
        raise ServiceError(code, message, reply.status_code,
                           _EXIT_BY_CODE.get(code, 2))
    return reply.json()


def exits_with_code(fn):
    """Map ServiceError (and raw domain errors) to documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ServiceError as exc:
            click.echo(f"error: {exc.message}", err=True)
            sys.exit(exc.exit_code)
        except SinkscaleError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
    return wrapper


def _read_matrix(path: str) -> MatrixModel:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ServiceError("bad-input", str(exc), 400, 2) from exc
    return MatrixModel.from_matrix(parse_matrix(text))


def _selector(family, big_k, k, l, big_m, big_b, big_n) -> FamilySelector:
    return FamilySelector(family=family, K=big_k, k=k, l=l,
                          M=big_m, B=big_b, N=big_n)


def _family_options(fn):
    decorators = [
        click.option("--family", type=str, default=None,
                     help="Family tag A1..A7 or MBN."),
        click.option("--K", "big_k", type=str, default=None,
                     help="Family parameter K (integer or fraction p/q)."),
        click.option("--k", "k", type=int, default=1,
                     help="MBN upper block size."),
        click.option("--l", "l", type=int, default=2,
                     help="MBN lower block size."),
        click.option("--M", "big_m", type=str, default=None,
                     help="MBN upper block value."),
        click.option("--B", "big_b", type=str, default=None,
                     help="MBN off-diagonal block value."),
        click.option("--N", "big_n", type=str, default=None,
                     help="MBN lower block value."),
    ]
    for decorator in reversed(decorators):
        fn = decorator(fn)
    return fn


def _digits_option(fn):
    return click.option(
        "--digits", type=int, default=10, show_default=True,
        envvar="SINKHORN_PRECISION",
        help="Significant digits for decimal output (truncated, not "
             "rounded); SINKHORN_PRECISION overrides the default.")(fn)


def _echo_json(payload: dict) -> None:
    click.echo(json.dumps(payload, indent=2))


def _echo_grid(rows) -> None:
    widths = [max(len(str(row[j])) for row in rows)
              for j in range(len(rows[0]))]
    for row in rows:
        click.echo("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip())


@click.group()
@click.option("--server", type=str, default=None,
              help="Base URL of a running service; default is in-process.")
@click.pass_context
def main(ctx, server):
    """Alternate row/column scaling to doubly stochastic limits."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.option("--file", "path", type=str, default=None,
              help="Matrix file (text or JSON format), '-' for stdin.")
@_family_options
@click.option("--mode", type=click.Choice(["rational", "float"]), default=None,
              help="Arithmetic mode; family patterns default to rational.")
@click.option("--steps", type=int, default=None,
              help="Elementary scalings (row first, alternating).")
@click.option("--pairs", type=int, default=None,
              help="Row+column scaling pairs (2 elementary steps each).")
@click.option("--tolerance", type=float, default=None,
              help="Float mode: scale until row/col sums are within this "
                   "of 1 (default path, tolerance 1e-12).")
@click.option("--max-pairs", type=int, default=1000, show_default=True)
@click.option("--trace", is_flag=True, help="Include every iterate (JSON).")
@_digits_option
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@click.pass_context
@exits_with_code
def scale(ctx, path, family, big_k, k, l, big_m, big_b, big_n, mode,
          steps, pairs, tolerance, max_pairs, trace, digits, as_json):
    """Scale a matrix (from a file or a named family pattern)."""
    matrix = _read_matrix(path) if path else None
    selector = _selector(family, big_k, k, l, big_m, big_b, big_n) \
        if family else None
    request = ScaleRequest(matrix=matrix, family=selector, mode=mode,
                           steps=steps, pairs=pairs, tolerance=tolerance,
                           max_pairs=max_pairs, include_trace=trace,
                           digits=digits)
    payload = _call(handle_scale, request, ctx.obj["server"])
    if as_json:
        _echo_json(payload)
        return
    if payload["matrix"]["mode"] == "rational":
        _echo_grid(payload["matrix"]["entries"])
    else:
        _echo_grid(payload["display"])
    note = f"steps: {payload['steps_taken']}  residual: {payload['residual']}"
    if payload.get("converged") is not None:
        note += f"  converged: {payload['converged']}"
    click.echo(note, err=True)


@main.command()
@_family_options
@click.option("--allow-degenerate", is_flag=True,
              help="Return the uniform matrix for K = 1 instead of failing.")
@click.option("--asymptotic",
              type=click.Choice(["ratio-to-infinity", "ratio-to-zero"]),
              default=None,
              help="Exact block limit as the family ratio degenerates.")
@_digits_option
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@click.pass_context
@exits_with_code
def limit(ctx, family, big_k, k, l, big_m, big_b, big_n,
          allow_degenerate, asymptotic, digits, as_json):
    """Closed-form doubly stochastic limit of a family."""
    if family is None:
        raise ServiceError("bad-input", "limit needs --family", 400, 2)
    request = LimitRequest(
        family=_selector(family, big_k, k, l, big_m, big_b, big_n),
        allow_degenerate=allow_degenerate, digits=digits,
        asymptotic=asymptotic)
    payload = _call(handle_limit, request, ctx.obj["server"])
    if as_json:
        _echo_json(payload)
        return
    if payload.get("direction"):
        click.echo(f"family {payload['family']}  "
                   f"direction {payload['direction']}")
        _echo_grid(payload["matrix"]["entries"])
        return
    header = f"family {payload['family']}  shape {payload['shape']}"
    if payload["degenerate"]:
        header += "  (degenerate: uniform)"
    click.echo(header)
    width = max(len(name) for name in payload["entries"])
    for name, entry in payload["entries"].items():
        exact = entry.get("exact")
        lhs = f"{name.ljust(width)} = {entry['numeric']}"
        click.echo(f"{lhs}  (exact: {exact})" if exact is not None else lhs)
    scaling = payload.get("scaling") or []
    if scaling:
        click.echo("scaling: " + ", ".join(
            entry.get("exact") or entry["numeric"] for entry in scaling))
    _echo_grid(payload["display"])


@main.command()
@click.option("--file", "path", required=True, type=str,
              help="Matrix file (text or JSON format), '-' for stdin.")
@click.pass_context
@exits_with_code
def classify(ctx, path):
    """Match a matrix to its family pattern up to dilation and permutation.

    Prints a witness JSON {family, K, witness: {lambda, P, Q}} such that
    lambda * P * A * Q is exactly the canonical family pattern.
    """
    request = ClassifyRequest(matrix=_read_matrix(path))
    payload = _call(handle_classify, request, ctx.obj["server"])
    _echo_json(payload)


@main.command()
@click.option("--K", "big_k", required=True, type=str,
              help="Cube-root parameter (rational, K > 1).")
@click.option("--steps", type=int, default=6, show_default=True,
              help="Elementary scaling steps to tabulate.")
@click.option("--cfrac", "cf_terms", type=int, default=None,
              help="Also compare against this many continued-fraction "
                   "terms of K**(1/3) - 1.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@click.pass_context
@exits_with_code
def approx(ctx, big_k, steps, cf_terms, as_json):
    """Exact rational cube-root approximants from the scaling iterates."""
    request = ApproxRequest(K=big_k, steps=steps, cf_terms=cf_terms)
    payload = _call(handle_approx, request, ctx.obj["server"])
    if as_json:
        _echo_json(payload)
        return
    click.echo(f"cube-root approximants for K = {payload['K']}")
    if payload["limit_is_rational"]:
        click.echo(f"K is a perfect cube: K**(1/3) = {payload['exact_cbrt']}")
    for row in payload["rows"]:
        click.echo(f"step {row['level']}:")
        for name in ("a13", "a22", "a31"):
            click.echo(f"  {name} = {row[name]}")
        click.echo("  estimates (K-1)*a + 1: " + ", ".join(row["estimates"]))
        click.echo("  errors vs K**(1/3):    " + ", ".join(row["errors"]))
    comparison = payload.get("comparison")
    if comparison:
        click.echo(f"target K**(1/3) - 1 = {comparison['target_decimal']}")
        click.echo("continued-fraction terms: "
                   + str(comparison["cf_terms"]))
        for row in comparison["convergents"]:
            click.echo(f"  {row['label']}: {row['value']} = {row['decimal']}"
                       f"  error {row['error']}")


@main.command()
@click.option("--cbrt", "big_k", required=True, type=str,
              help="Expand the cube root of this rational (K > 1).")
@click.option("--minus-one", is_flag=True,
              help="Expand K**(1/3) - 1 instead of K**(1/3).")
@click.option("--terms", type=int, default=14, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@click.pass_context
@exits_with_code
def cfrac(ctx, big_k, minus_one, terms, as_json):
    """Certified continued fraction of a cube root."""
    request = CfracRequest(cbrt=big_k, minus_one=minus_one, terms=terms)
    payload = _call(handle_cfrac, request, ctx.obj["server"])
    if as_json:
        _echo_json(payload)
        return
    click.echo("terms: " + str(payload["terms"]))
    click.echo("convergents: " + " ".join(payload["convergents"]))
    if payload["finite"]:
        click.echo(f"finite expansion; exact value {payload['value']}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, type=int, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
