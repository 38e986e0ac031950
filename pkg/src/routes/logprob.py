from fastapi import APIRouter, HTTPException

from src.errors import ProviderError
from src.models import NllRequest, NllResponse


def get_logprob_router(provider):
    router = APIRouter(
        tags=["logprob"]
    )

    @router.post("/nll", response_model=NllResponse)
    async def score_tokens(request: NllRequest):
        """Negative log-probability of every token after the first"""
        if provider is None:
            raise HTTPException(status_code=503, detail="Logprob provider not initialized")
        try:
            values = provider.nll(request.tokens)
        except ProviderError as e:
            raise HTTPException(status_code=502, detail=str(e))
        return NllResponse(nll=values, model=provider.name)

    return router
