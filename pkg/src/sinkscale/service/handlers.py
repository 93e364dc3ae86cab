"""Pure request-to-response handlers shared by the HTTP app and the CLI.

Every handler takes a validated request model and returns a response model;
domain exceptions are translated to ServiceError, which carries a stable
machine code, an HTTP status for the service and an exit code for the CLI.
"""

from __future__ import annotations

import functools

from .. import errors
from ..diophantine import cbrt_approximants, cfrac_cbrt, compare_report
from ..equivalence import classify_two_valued
from ..families import FamilySpec, asymptotic_limit, family_limit
from ..matrices import Matrix
from ..numerics import decimal_truncate
from ..scaling import residual, sinkhorn_iterate, sinkhorn_limit
from .models import (
    ApproxRequest,
    ApproxResponse,
    ApproxRow,
    CfracRequest,
    CfracResponse,
    ClassifyRequest,
    ClassifyResponse,
    EntryModel,
    FamilySelector,
    LimitRequest,
    LimitResponse,
    MatrixModel,
    ScaleRequest,
    ScaleResponse,
    TraceStep,
    WitnessModel,
)


class ServiceError(Exception):
    """Failure with a stable code, an HTTP status and a CLI exit code."""

    def __init__(self, code: str, message: str, status: int = 400,
                 exit_code: int = 2):
        super().__init__(message)
        self.code = code
        self.message = message
        self.status = status
        self.exit_code = exit_code


_ERROR_MAP: tuple[tuple[type, str, int, int], ...] = (
    (errors.NonPositiveEntryError, "non-positive-entry", 400, 3),
    (errors.DegenerateKError, "degenerate-parameter", 400, 4),
    (errors.NotTwoValuedError, "not-two-valued", 422, 5),
    (errors.NotSymmetricError, "not-symmetric", 422, 5),
    (errors.AmbiguousTripleError, "ambiguous-scaling", 422, 6),
    (errors.NoPositiveTripleError, "no-positive-scaling", 422, 6),
    (errors.NoClassError, "classification-gap", 500, 1),
    (errors.SinkscaleError, "bad-input", 400, 2),
    (ValueError, "bad-input", 400, 2),
)


def _translate(exc: Exception) -> ServiceError:
    for etype, code, status, exit_code in _ERROR_MAP:
        if isinstance(exc, etype):
            return ServiceError(code, str(exc) or etype.__name__, status,
                                exit_code)
    raise exc


def handles_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ServiceError:
            raise
        except Exception as exc:
            raise _translate(exc) from exc
    return wrapper


def _selector_to_spec(selector: FamilySelector) -> FamilySpec:
    if selector.family == "MBN":
        missing = [name for name in ("M", "B", "N")
                   if getattr(selector, name) is None]
        if missing:
            raise ServiceError("bad-input",
                               f"MBN needs {', '.join(missing)}", 400, 2)
        return FamilySpec.mbn(selector.k, selector.l,
                              selector.M, selector.B, selector.N)
    if selector.K is None:
        raise ServiceError("bad-input",
                           f"family {selector.family} needs K", 400, 2)
    return FamilySpec.a_family(selector.family, selector.K)


def _display(m: Matrix, digits: int) -> list[list[str]]:
    return [[decimal_truncate(v, digits) for v in row] for row in m.entries]


def _input_matrix(req: ScaleRequest) -> Matrix:
    if (req.matrix is None) == (req.family is None):
        raise ServiceError("bad-input",
                           "provide exactly one of matrix or family", 400, 2)
    if req.matrix is not None:
        m = req.matrix.to_matrix()
        if req.mode is not None and req.mode != m.mode:
            if req.mode == "float":
                return m.to_float()
            raise ServiceError("bad-input",
                               "a float matrix cannot be promoted to "
                               "rational mode; re-enter entries as fractions",
                               400, 2)
        return m
    spec = _selector_to_spec(req.family)
    return spec.matrix(req.mode or "rational")


@handles_errors
def handle_scale(req: ScaleRequest) -> ScaleResponse:
    m = _input_matrix(req)
    chosen = [name for name, value in
              (("steps", req.steps), ("pairs", req.pairs),
               ("tolerance", req.tolerance)) if value is not None]
    if len(chosen) > 1:
        raise ServiceError("bad-input",
                           "give at most one of steps, pairs, tolerance",
                           400, 2)
    if req.steps is not None or req.pairs is not None:
        steps = req.steps if req.steps is not None else 2 * req.pairs
        trace = sinkhorn_iterate(m, steps)
        final = trace.snapshots[-1] if trace.snapshots else m
        trace_steps = None
        if req.include_trace:
            trace_steps = [TraceStep(**step)
                           for step in trace.to_json_dict()["steps"]]
        return ScaleResponse(
            matrix=MatrixModel.from_matrix(final),
            display=_display(final, req.digits),
            steps_taken=trace.steps,
            residual=float(residual(final)),
            trace=trace_steps,
        )
    if m.mode != "float":
        raise ServiceError("bad-input",
                           "rational mode needs an explicit steps or pairs "
                           "count; convergence is a float-mode notion",
                           400, 2)
    tol = 1e-12 if req.tolerance is None else req.tolerance
    result = sinkhorn_limit(m, tol=tol, max_pairs=req.max_pairs)
    return ScaleResponse(
        matrix=MatrixModel.from_matrix(result.limit),
        display=_display(result.limit, req.digits),
        steps_taken=result.steps_taken,
        residual=result.residual,
        converged=result.converged,
    )


@handles_errors
def handle_limit(req: LimitRequest) -> LimitResponse:
    spec = _selector_to_spec(req.family)
    if req.asymptotic is not None:
        matrix = asymptotic_limit(spec, req.asymptotic)
        return LimitResponse(
            family=spec.tag,
            direction=req.asymptotic,
            matrix=MatrixModel.from_matrix(matrix),
            display=_display(matrix, req.digits),
        )
    limit = family_limit(spec, allow_degenerate=req.allow_degenerate,
                         precision=max(30, req.digits + 15))
    payload = limit.to_json_dict(req.digits)
    return LimitResponse(
        family=payload["family"],
        shape=payload["shape"],
        degenerate=payload["degenerate"],
        entries={name: EntryModel(**value)
                 for name, value in payload["entries"].items()},
        scaling=[EntryModel(**value) for value in payload["scaling"]],
        matrix=MatrixModel(**payload["matrix"]),
        display=_display(limit.matrix, req.digits),
    )


@handles_errors
def handle_classify(req: ClassifyRequest) -> ClassifyResponse:
    witness = classify_two_valued(req.matrix.to_matrix())
    payload = witness.to_json_dict()
    return ClassifyResponse(
        family=payload["family"],
        K=payload["K"],
        witness=WitnessModel(**{key: payload[key]
                                for key in ("lambda", "P", "Q")}),
    )


@handles_errors
def handle_approx(req: ApproxRequest) -> ApproxResponse:
    table = cbrt_approximants(req.K, req.steps)
    payload = table.to_json_dict()
    comparison = None
    if req.cf_terms is not None:
        comparison = compare_report(req.K, req.steps,
                                    req.cf_terms).to_json_dict()
    return ApproxResponse(
        K=payload["K"],
        limit_is_rational=payload["limit_is_rational"],
        exact_cbrt=payload["exact_cbrt"],
        rows=[ApproxRow(**row) for row in payload["rows"]],
        comparison=comparison,
    )


@handles_errors
def handle_cfrac(req: CfracRequest) -> CfracResponse:
    cf = cfrac_cbrt(req.cbrt, req.terms, minus_one=req.minus_one)
    return CfracResponse(**cf.to_json_dict())
