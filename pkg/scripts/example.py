#!/usr/bin/env python3
"""
Example usage of the logprob server and the offline pipeline
"""

import json
import sys
import tempfile
from pathlib import Path

import requests

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.cli import AnalyzeOptions, cmd_analyze, cmd_report, cmd_run  # noqa: E402


class LogprobClient:
    def __init__(self, base_url="http://localhost:8000"):
        self.base_url = base_url

    def health_check(self):
        """Check if the server is healthy"""
        try:
            response = requests.get(f"{self.base_url}/health")
            return response.status_code == 200
        except requests.RequestException:
            return False

    def score(self, tokens):
        """Negative log-probability of every token after the first"""
        response = requests.post(f"{self.base_url}/nll", json={"tokens": tokens})
        return response.json()


def example_server():
    client = LogprobClient()
    if not client.health_check():
        print("❌ Logprob server is not running. Start it with: ./scripts/start.sh")
        return

    print("✅ Logprob server is running!")
    tokens = "food was found here at step 6".split()
    print(f"Tokens: {tokens}")
    print(json.dumps(client.score(tokens), indent=2))
    print()


def example_pipeline():
    """Two short scribe runs, every analysis stage with the mock judge, then the report"""
    with tempfile.TemporaryDirectory() as root:
        runs = Path(root) / "runs"
        overrides = {
            "n_agents": 6,
            "max_steps": 40,
            "grid": {"width": 15, "height": 15, "perception_radius": 3, "initial_food": 80, "food_mode": "uniform"},
        }
        print("🚀 Running two seeds")
        cmd_run(None, seed=1, seeds=2, policy="scribe", out=str(runs), overrides=overrides)

        print("🔍 Analysing")
        cmd_analyze(str(runs), "all", AnalyzeOptions(judge="mock", novelty_samples=2))

        print("📚 Report")
        written = cmd_report([str(runs)], "csv", str(Path(root) / "report"))
        for name, path in written.items():
            print(f"--- {name}")
            print(path.read_text(encoding="utf-8")[:400])


if __name__ == "__main__":
    print("🤖 Lifegrid Example Usage")
    print("=" * 50)
    example_server()
    example_pipeline()
