import argparse
import logging
import os
import sys

from dotenv import load_dotenv

from src.cli import AnalyzeOptions, STAGES, cmd_analyze, cmd_report, cmd_run, exit_code
from src.cli.commands import EXIT_OK, FORMATS, POLICIES
from src.engine.config import PRESETS

# Load environment variables
load_dotenv()

logger = logging.getLogger("lifegrid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lifegrid",
        description="Grid-world agent ecology simulator and post-hoc analysis pipeline",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run simulations, one directory per seed")
    run.add_argument("config", nargs="?", default=None, help="JSON run configuration")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--seeds", type=int, default=1, help="Number of consecutive seeds")
    run.add_argument("--policy", default="forager", choices=POLICIES)
    run.add_argument("--out", default="runs")
    run.add_argument("--workers", type=int, default=1, help="Runs executed in parallel")
    run.add_argument("--preset", default=None, choices=sorted(PRESETS))
    run.add_argument("--max-steps", type=int, default=None)
    run.add_argument("--n-agents", type=int, default=None)
    run.add_argument("--archive-llm", action="store_true", help="Keep policy request/response bodies in the log")

    analyze = commands.add_parser("analyze", help="Run analysis stages over finished runs")
    analyze.add_argument("logs", help="Run directory or folder of run directories")
    analyze.add_argument("--stage", default="all", choices=list(STAGES) + ["all"])
    analyze.add_argument("--judge", default="mock", help="mock, openai[:model] or an http(s) base URL")
    analyze.add_argument("--judge-workers", type=int, default=4)
    analyze.add_argument("--samples", type=int, default=5, help="Novelty samples per artifact")
    analyze.add_argument("--prior-window", type=int, default=None)
    analyze.add_argument("--min-conf", type=float, default=0.7)
    analyze.add_argument("--idf", default=None, help="IDF table built from a reference corpus")
    analyze.add_argument("--logprob", default=None, help="uniform:<V>, trigram:[folder] or an http(s) URL")
    analyze.add_argument("--parses", default=None, help="Dependency parse sidecar")

    report = commands.add_parser("report", help="Aggregate analysed runs into tables")
    report.add_argument("dirs", nargs="+")
    report.add_argument("--format", default="csv", choices=FORMATS)
    report.add_argument("--out", default="report")

    serve = commands.add_parser("serve", help="Serve the trigram logprob provider over HTTP")
    serve.add_argument("--host", default=os.getenv("API_HOST", "0.0.0.0"))
    serve.add_argument("--port", type=int, default=int(os.getenv("API_PORT", 8000)))
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if args.preset is not None:
        overrides["preset"] = args.preset
    if args.max_steps is not None:
        overrides["max_steps"] = args.max_steps
    if args.n_agents is not None:
        overrides["n_agents"] = args.n_agents
    if args.archive_llm:
        overrides["archive_llm"] = True
    return overrides


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=os.getenv("TL_LOG_LEVEL", "INFO").upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "run":
            cmd_run(args.config, args.seed, args.seeds, args.policy, args.out, _overrides(args), args.workers)
        elif args.command == "analyze":
            options = AnalyzeOptions(
                judge=args.judge,
                judge_workers=args.judge_workers,
                novelty_samples=args.samples,
                prior_window=args.prior_window,
                min_conf=args.min_conf,
                idf=args.idf,
                logprob=args.logprob,
                parses=args.parses,
            )
            cmd_analyze(args.logs, args.stage, options)
        elif args.command == "report":
            cmd_report(args.dirs, args.format, args.out)
        elif args.command == "serve":
            from src.server import serve
            serve(args.host, args.port)
    except Exception as e:
        logger.error(f"{args.command} failed: {str(e)}")
        return exit_code(e)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
