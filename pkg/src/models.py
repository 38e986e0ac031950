from typing import Optional, Dict, Any, List
from pydantic import BaseModel, Field


LOG_SCHEMA = "lifegrid.log/1"


class InboxMessage(BaseModel):
    sender: str
    sender_id: str
    text: str


class ActionRecord(BaseModel):
    kind: str
    params: Dict[str, Any] = Field(default_factory=dict)
    status: str
    reason: Optional[str] = None


class ObservationRecord(BaseModel):
    cells: List[str] = Field(default_factory=list)
    visible_agents: List[str] = Field(default_factory=list)
    inbox: List[InboxMessage] = Field(default_factory=list)
    energy: float
    time_left: int
    inventory: List[str] = Field(default_factory=list)


class StepRecord(BaseModel):
    """One agent at one timestep; the contract between engine and analysis."""
    t: int
    agent_id: str
    agent_name: str
    action: ActionRecord
    message: str = ""
    memory_after: str = ""
    observation: ObservationRecord
    events: List[Dict[str, Any]] = Field(default_factory=list)
    thoughts: str = ""
    llm: Optional[Dict[str, Any]] = None


class LogHeader(BaseModel):
    schema_version: str = LOG_SCHEMA
    run_id: str
    config: Dict[str, Any]
    templates: Dict[str, str] = Field(default_factory=dict)


class RunSummary(BaseModel):
    run_id: str
    seed: int
    preset: str
    schema_version: str = LOG_SCHEMA
    longevity: int
    steps: int
    extinct: bool
    total_artifacts: int
    total_agents: int
    artifacts_per_agent: float
    mean_population: float


class NllRequest(BaseModel):
    tokens: List[str]


class NllResponse(BaseModel):
    nll: List[float]
    model: str
