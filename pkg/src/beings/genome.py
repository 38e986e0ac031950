"""
Personality genome: seven bipolar traits in [-1, 1] plus fertility in [0.5, 1].

Fertility is shown to the agent in its prompt and has no mechanical effect
in the engine.
"""

from dataclasses import dataclass, fields, replace
from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, Field

PERSONALITY_TRAITS: Tuple[str, ...] = (
    "honesty",
    "neuroticism",
    "extraversion",
    "agreeableness",
    "conscientiousness",
    "openness",
    "dominance",
)
PERSONALITY_RANGE = (-1.0, 1.0)
FERTILITY_RANGE = (0.5, 1.0)

_NB = "\u2011"  # non-breaking hyphen used in the trait descriptions

TRAIT_DESCRIPTIONS: Dict[str, str] = {
    "honesty": f"-1 = calculating, status{_NB}seeking; 1 = sincere, modest, fair{_NB}minded.",
    "neuroticism": "-1 = calm, resilient; 1 = sensitive, cautious, easily worried.",
    "extraversion": "-1 = quiet, reserved; 1 = sociable, energetic, seeks stimulation.",
    "agreeableness": f"-1 = tough{_NB}minded, critical, aggressive; 1 = forgiving, patient, conflict{_NB}averse.",
    "conscientiousness": "-1 = spontaneous, disorganised; 1 = diligent, disciplined, orderly.",
    "openness": f"-1 = conventional, prefers routine; 1 = curious, imaginative, variety{_NB}seeking.",
    "dominance": "-1 = submissive, accommodating; 1 = assertive, controlling, leads interactions.",
    "fertility": "0 = no interest in reproduction; 1 = extremely high desire to reproduce",
}


class MutationConfig(BaseModel):
    per_trait_prob: float = Field(0.5, ge=0.0, le=1.0)
    sigma: float = Field(0.3, ge=0.0)


@dataclass(frozen=True)
class Genome:
    honesty: float
    neuroticism: float
    extraversion: float
    agreeableness: float
    conscientiousness: float
    openness: float
    dominance: float
    fertility: float

    def __post_init__(self):
        for name in PERSONALITY_TRAITS:
            value = getattr(self, name)
            if not PERSONALITY_RANGE[0] <= value <= PERSONALITY_RANGE[1]:
                raise ValueError(f"{name}={value} outside {PERSONALITY_RANGE}")
        if not FERTILITY_RANGE[0] <= self.fertility <= FERTILITY_RANGE[1]:
            raise ValueError(f"fertility={self.fertility} outside {FERTILITY_RANGE}")

    def as_dict(self) -> Dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def sample_genome(rng: np.random.Generator) -> Genome:
    """Uniform draw within every trait range."""
    values = {name: float(rng.uniform(*PERSONALITY_RANGE)) for name in PERSONALITY_TRAITS}
    values["fertility"] = float(rng.uniform(*FERTILITY_RANGE))
    return Genome(**values)


def mutate(g: Genome, cfg: MutationConfig, rng: np.random.Generator) -> Genome:
    """Independent additive Gaussian noise per trait, clipped back into range."""
    changes = {}
    for name in PERSONALITY_TRAITS + ("fertility",):
        if rng.random() >= cfg.per_trait_prob:
            continue
        low, high = FERTILITY_RANGE if name == "fertility" else PERSONALITY_RANGE
        value = getattr(g, name) + float(rng.normal(0.0, cfg.sigma)) if cfg.sigma > 0 else getattr(g, name)
        changes[name] = float(np.clip(value, low, high))
    return replace(g, **changes) if changes else g


def render_traits(g: Genome) -> str:
    """Traits block of the user prompt."""
    lines = ["=== Your Traits ===", "Personality traits "]
    for name in PERSONALITY_TRAITS:
        lines.append(f"  {name} value: {getattr(g, name):.3f}  ({TRAIT_DESCRIPTIONS[name]})")
    lines[-1] += " "
    lines += ["", "Physical traits "]
    lines.append(f"  fertility value: {g.fertility:.3f}  ({TRAIT_DESCRIPTIONS['fertility']})")
    return "\n".join(lines)
