"""HTTP service wrapping the scaling library, plus its shared handlers."""

from .handlers import (
    ServiceError,
    handle_approx,
    handle_cfrac,
    handle_classify,
    handle_limit,
    handle_scale,
)
from .models import (
    ApproxRequest,
    ApproxResponse,
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

__all__ = [
    "ServiceError",
    "handle_approx",
    "handle_cfrac",
    "handle_classify",
    "handle_limit",
    "handle_scale",
    "ApproxRequest",
    "ApproxResponse",
    "CfracRequest",
    "CfracResponse",
    "ClassifyRequest",
    "ClassifyResponse",
    "EntryModel",
    "FamilySelector",
    "LimitRequest",
    "LimitResponse",
    "MatrixModel",
    "ScaleRequest",
    "ScaleResponse",
    "TraceStep",
    "WitnessModel",
]

# create_app imports FastAPI; import it lazily from .app so that the
# models/handlers remain usable without the web stack loaded.
def create_app():
    from .app import create_app as _create
    return _create()
