"""
Registry of simulation runs keyed by run directory, executed on a worker pool.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List

from src.engine.config import RunConfig
from src.engine.runner import run
from src.minds.policies import Policy
from src.models import RunSummary

logger = logging.getLogger(__name__)


class RunManager:
    """Keeps one configuration and one policy factory per output directory."""

    def __init__(self):
        self._configs: Dict[str, RunConfig] = {}
        self._policies: Dict[str, Callable[[], Policy]] = {}
        self._summaries: Dict[str, RunSummary] = {}

    def register_run(self, out_dir: str, config: RunConfig, policy_factory: Callable[[], Policy]):
        """Register a run; the directory is owned by this run alone."""
        key = str(Path(out_dir))
        if key in self._configs:
            raise ValueError(f"Run directory already registered: {key}")
        self._configs[key] = config
        self._policies[key] = policy_factory
        logger.info(f"Registered run {config.run_id} -> {key}")

    def get_run_list(self) -> List[str]:
        return sorted(self._configs, key=lambda key: (self._configs[key].seed, key))

    def _execute(self, key: str) -> RunSummary:
        summary = run(self._configs[key], self._policies[key](), key)
        self._summaries[key] = summary
        return summary

    def run_all(self, workers: int = 1) -> List[RunSummary]:
        """Execute every pending run; summaries come back in seed order."""
        pending = [key for key in self.get_run_list() if key not in self._summaries]
        if workers <= 1 or len(pending) <= 1:
            for key in pending:
                self._execute(key)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(self._execute, pending))
        return [self._summaries[key] for key in self.get_run_list()]

    def cleanup_all(self):
        """Forget every registered run."""
        logger.info(f"Cleaning up {len(self._configs)} registered runs")
        self._configs.clear()
        self._policies.clear()
        self._summaries.clear()


# Global run manager instance
run_manager = RunManager()
