"""FastAPI application exposing the game toolkit.

Domain errors map to HTTP 400 with a typed payload; the ``type`` field
distinguishes resource-limit failures ("cap", "budget") from validation
failures so thin clients can translate them to exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import NlgamesError
from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="nlgames",
        version=__version__,
        description=(
            "Exact classical values, quantum strategy evaluation, Monte Carlo "
            "refereeing, and dimension-witness bounds for two-player nonlocal games."
        ),
    )

    @app.exception_handler(NlgamesError)
    async def domain_error_handler(request: Request, exc: NlgamesError):
        payload = schemas.ErrorResponse(
            error=schemas.ErrorPayload(type=exc.kind, message=str(exc))
        )
        return JSONResponse(status_code=400, content=payload.model_dump())

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/classical-value", response_model=schemas.ClassicalValueResponse)
    def classical_value(req: schemas.ClassicalValueRequest):
        return handlers.handle_classical_value(req)

    @app.post("/quantum-value", response_model=schemas.QuantumValueResponse)
    def quantum_value(req: schemas.QuantumValueRequest):
        return handlers.handle_quantum_value(req)

    @app.post("/sample", response_model=schemas.SampleResponse)
    def sample(req: schemas.SampleRequest):
        return handlers.handle_sample(req)

    @app.post("/tradeoff", response_model=schemas.TradeoffResponse)
    def tradeoff(req: schemas.TradeoffRequest):
        return handlers.handle_tradeoff(req)

    @app.post("/dichotomy", response_model=schemas.DichotomyResponse)
    def dichotomy(req: schemas.DichotomyRequest):
        return handlers.handle_dichotomy(req)

    @app.post("/export-game", response_model=schemas.GameDocument)
    def export_game(req: schemas.ExportGameRequest):
        return handlers.handle_export_game(req)

    return app


app = create_app()
