"""
Named random substreams.

Every random draw in a run flows from the run seed through one of these
streams, so that adding a consumer to one stream never shifts another.
"""

import hashlib

import numpy as np

STREAMS = ("world", "policies", "slpa", "judge")


def stable_hash(text: str) -> int:
    """32-bit hash of a string that does not depend on PYTHONHASHSEED."""
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:4], "big")


def substream(seed: int, name: str) -> np.random.Generator:
    """Generator for one named stream of a run."""
    if name not in STREAMS:
        raise ValueError(f"Unknown random stream '{name}', expected one of {STREAMS}")
    return np.random.default_rng(np.random.SeedSequence([int(seed), stable_hash(name)]))


def agent_rng(seed: int, agent_id: str, t: int) -> np.random.Generator:
    """Decision stream of one agent at one timestep."""
    return np.random.default_rng(
        np.random.SeedSequence([int(seed), stable_hash("policies"), stable_hash(agent_id), int(t)])
    )
