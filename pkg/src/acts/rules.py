from pydantic import BaseModel, Field

from src.acts.artifact import PAYLOAD_CAP
from src.beings.genome import MutationConfig


class ActRules(BaseModel):
    """Costs and switches that shape what actions do in a given run."""

    reproduce_cost: float = Field(50, ge=0)
    artifact_cost: float = Field(0, ge=0)
    payload_cap: int = Field(PAYLOAD_CAP, gt=0)
    artifacts_interactive: bool = True
    lifespan: int = Field(100, gt=0)
    mutation: MutationConfig = Field(default_factory=MutationConfig)
