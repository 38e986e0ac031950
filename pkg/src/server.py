"""
HTTP surface for the built-in logprob provider (``main.py serve``).
"""

import logging
import os
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from src.routes.logprob import get_logprob_router
from src.textmetrics.surprisal import LogprobProvider, TrigramProvider, corpus_sequences

logger = logging.getLogger(__name__)


def load_provider() -> LogprobProvider:
    """Trigram provider trained on the ``*.txt`` files of TL_LOGPROB_CORPUS, untrained without it."""
    folder = os.getenv("TL_LOGPROB_CORPUS")
    if not folder:
        logger.warning("TL_LOGPROB_CORPUS not set, serving an untrained trigram model")
        return TrigramProvider()
    sequences = corpus_sequences(folder)
    logger.info(f"Training trigram provider on {len(sequences)} documents from {folder}")
    return TrigramProvider(sequences)


def create_app(provider: Optional[LogprobProvider] = None) -> FastAPI:
    state = {"provider": provider}

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        # Startup
        try:
            if state["provider"] is None:
                state["provider"] = load_provider()
            app.include_router(get_logprob_router(state["provider"]))
            logger.info("Logprob router included successfully")
        except Exception as e:
            logger.error(f"Failed to initialize logprob provider: {str(e)}")
            state["provider"] = None

        yield

        # Shutdown
        logger.info("Shutting down logprob server")

    app = FastAPI(
        title="Lifegrid logprob provider",
        description="Token negative log-probabilities for the surprisal metric",
        version="1.0.0",
        lifespan=lifespan,
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/")
    async def root():
        return {
            "message": "Lifegrid logprob provider",
            "version": "1.0.0",
            "endpoints": {
                "nll": "POST /nll - Score a token list",
                "health": "GET /health - Health check",
            },
        }

    @app.get("/health")
    async def health_check():
        provider = state["provider"]
        if provider is None:
            raise HTTPException(status_code=503, detail="Logprob provider not initialized")
        return {
            "status": "healthy",
            "provider": provider.name,
            "vocabulary": len(getattr(provider, "vocab", ())),
        }

    return app


def serve(host: Optional[str] = None, port: Optional[int] = None) -> None:
    import uvicorn

    host = host or os.getenv("API_HOST", "0.0.0.0")
    port = port or int(os.getenv("API_PORT", 8000))
    uvicorn.run(create_app(), host=host, port=port)
