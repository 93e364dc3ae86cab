"""HTTP front end: one POST route per operation, errors as JSON bodies."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from . import handlers
from .models import (
    ApproxRequest,
    ApproxResponse,
    CfracRequest,
    CfracResponse,
    ClassifyRequest,
    ClassifyResponse,
    LimitRequest,
    LimitResponse,
    ScaleRequest,
    ScaleResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="sinkscale", version=__version__)

    @app.exception_handler(handlers.ServiceError)
    async def service_error(_request: Request, exc: handlers.ServiceError):
        return JSONResponse(status_code=exc.status,
                            content={"error": exc.code,
                                     "message": exc.message})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/scale", response_model=ScaleResponse,
              response_model_exclude_none=True)
    def scale(req: ScaleRequest):
        return handlers.handle_scale(req)

    @app.post("/limit", response_model=LimitResponse,
              response_model_exclude_none=True)
    def limit(req: LimitRequest):
        return handlers.handle_limit(req)

    @app.post("/classify", response_model=ClassifyResponse)
    def classify(req: ClassifyRequest):
        return handlers.handle_classify(req)

    @app.post("/approx", response_model=ApproxResponse,
              response_model_exclude_none=True)
    def approx(req: ApproxRequest):
        return handlers.handle_approx(req)

    @app.post("/cfrac", response_model=CfracResponse)
    def cfrac(req: CfracRequest):
        return handlers.handle_cfrac(req)

    return app


app = create_app()
