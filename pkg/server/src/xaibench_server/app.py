"""HTTP layer: the four wire-protocol endpoints over a model engine.

Error mapping: malformed bodies and engine-rejected values -> 400,
oversize prediction batches -> 413 (advertising the limit), anything
unexpected -> 500 with the message.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .engine import EngineError, ModelEngine

DEFAULT_MAX_BATCH = 32


class TokenizeRequest(BaseModel):
    texts: Optional[list[str]] = None
    words: Optional[list[list[str]]] = None


class PredictRequest(BaseModel):
    batch: list[list[int]]


class GradientsRequest(BaseModel):
    input_ids: list[int]
    baseline_ids: list[int]
    target: int
    alphas: list[float]


def create_app(engine: ModelEngine, max_batch: int = DEFAULT_MAX_BATCH) -> FastAPI:
    app = FastAPI(title="xaibench model server", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc.errors())})

    @app.exception_handler(EngineError)
    async def engine_error(request: Request, exc: EngineError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(Exception)
    async def internal_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500, content={"detail": f"{type(exc).__name__}: {exc}"}
        )

    @app.get("/info")
    def info():
        payload = engine.info()
        payload["max_batch"] = max_batch
        return payload

    @app.post("/tokenize")
    def tokenize(request: TokenizeRequest):
        return engine.tokenize(texts=request.texts, words=request.words)

    @app.post("/predict")
    def predict(request: PredictRequest):
        if len(request.batch) > max_batch:
            return JSONResponse(
                status_code=413,
                content={
                    "detail": f"batch of {len(request.batch)} exceeds the limit",
                    "max_batch": max_batch,
                },
            )
        return {"probabilities": engine.predict(request.batch)}

    @app.post("/gradients")
    def gradients(request: GradientsRequest):
        return engine.gradients(
            request.input_ids, request.baseline_ids, request.target, request.alphas
        )

    return app
