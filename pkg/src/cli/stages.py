"""
Analysis stages over one completed run directory.

Each stage reads the run log (and the outputs of the stages it depends
on) and writes its own folder under ``<run>/analysis/``. Nothing here
feeds back into a simulation.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pandas as pd

from src.engine.log_reader import RunLog
from src.errors import DependencyMissing
from src.fieldwork.annotate import annotate_agents, annotate_group
from src.fieldwork.artifacts import (
    ArtifactText,
    artifact_events,
    classify_artifact,
    infer_ancestors,
    score_run_novelty,
)
from src.fieldwork.judge import ARCHIVE_FILE, judge_from_uri
from src.lineage.dag import AncestryDag, DEFAULT_MIN_CONF, HUB_MIN_DEGREE, density_curve, filter_edges, hubs, lineage_depth
from src.lineage.novelty import novelty_bins, novelty_over_time
from src.rng import substream
from src.sociograph.events import extract_events
from src.sociograph.graph import build_graph, read_cover, write_cover, write_edges
from src.sociograph.metrics import graph_metrics
from src.sociograph.slpa import slpa
from src.textmetrics.composite import complexity_table
from src.textmetrics.idf import build_idf, read_idf
from src.textmetrics.surprisal import DEFAULT_WINDOW, provider_from_uri
from src.textmetrics.syntax import read_parses
from src.textmetrics.tokenize import tokenize

logger = logging.getLogger(__name__)

STAGES = ("graph", "behavior", "phylo", "text")

EDGES_FILE = "edges.txt"
COVER_FILE = "cover.txt"
METRICS_FILE = "metrics.json"
AGENT_ANNOTATIONS_FILE = "annotations_agents.jsonl"
GROUP_ANNOTATIONS_FILE = "annotations_groups.jsonl"
NOVELTY_FILE = "novelty.jsonl"
ANCESTRY_FILE = "ancestry.jsonl"
CATEGORIES_FILE = "categories.jsonl"
DEPTH_FILE = "depth.csv"
DENSITY_FILE = "density.csv"
DEGREES_FILE = "degrees.csv"
HUBS_FILE = "hubs.json"
BINS_FILE = "novelty_bins.json"
COMPLEXITY_FILE = "complexity.csv"


@dataclass
class AnalyzeOptions:
    judge: str = "mock"
    judge_workers: int = 4
    novelty_samples: int = 5
    prior_window: Optional[int] = None
    segment_size: int = 1000
    segment_overlap: int = 100
    slpa_iterations: int = 100
    slpa_threshold: float = 0.1
    min_conf: float = DEFAULT_MIN_CONF
    hub_degree: int = HUB_MIN_DEGREE
    idf: Optional[str] = None
    logprob: Optional[str] = None
    parses: Optional[str] = None
    window: int = DEFAULT_WINDOW


def stage_dir(run: RunLog, stage: str) -> Path:
    path = run.analysis_dir / stage
    path.mkdir(parents=True, exist_ok=True)
    return path


def _require(run: RunLog, stage: str, prerequisite: str, *names: str) -> Path:
    folder = run.analysis_dir / prerequisite
    for name in names:
        if not (folder / name).exists():
            raise DependencyMissing(stage, prerequisite, f"missing {folder / name}")
    return folder


def write_jsonl(path: Path, rows) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")


def read_jsonl(path: Path) -> List[dict]:
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def _write_json(path: Path, value) -> None:
    path.write_text(json.dumps(value, indent=2, sort_keys=True) + "\n", encoding="utf-8")


# graph


def run_graph(run: RunLog, options: AnalyzeOptions) -> Dict[str, float]:
    out = stage_dir(run, "graph")
    agents = sorted({r.agent_id for r in run.records})
    graph = build_graph(extract_events(run.records), nodes=agents)
    cover = slpa(graph, options.slpa_iterations, options.slpa_threshold, rng=substream(run.seed, "slpa"))
    metrics = graph_metrics(graph, cover)
    write_edges(graph, out / EDGES_FILE)
    write_cover(cover, out / COVER_FILE)
    _write_json(out / METRICS_FILE, metrics)
    logger.info(f"{run.run_id}: graph with {metrics['n_nodes']} nodes, {metrics['n_groups']} groups")
    return metrics


# behavior and artifact judging


def _created(events) -> List[ArtifactText]:
    return [ArtifactText(e.artifact_id, e.name, e.content, e.t) for e in events if e.op == "create"]


def run_behavior(run: RunLog, options: AnalyzeOptions) -> None:
    graph_dir = _require(run, "behavior", "graph", COVER_FILE)
    out = stage_dir(run, "behavior")
    (out / ARCHIVE_FILE).write_text("", encoding="utf-8")
    judge = judge_from_uri(options.judge, archive_dir=out)

    logs: Dict[str, list] = {}
    for record in run.records:
        logs.setdefault(record.agent_id, []).append(record)
    agents = annotate_agents(logs, judge, workers=options.judge_workers)
    write_jsonl(out / AGENT_ANNOTATIONS_FILE, [agents[a].model_dump(mode="json") for a in sorted(agents)])

    cover = read_cover(graph_dir / COVER_FILE)
    groups = []
    for index, community in enumerate(cover.communities):
        annotation = annotate_group(
            run.records, sorted(community), judge, community_id=f"c{index}",
            segment_size=options.segment_size, overlap=options.segment_overlap,
        )
        if annotation is not None:
            groups.append(annotation.model_dump(mode="json"))
    write_jsonl(out / GROUP_ANNOTATIONS_FILE, groups)

    events = artifact_events(run.records)
    created = _created(events)
    scores = score_run_novelty(events, judge, substream(run.seed, "judge"), options.novelty_samples, options.prior_window)
    write_jsonl(
        out / NOVELTY_FILE,
        [{"artifact": a.id, "mean_score": scores[a.id], "n_samples": options.novelty_samples, "created_at": a.created_at}
         for a in created],
    )

    def ancestors(event):
        candidates = [c for c in created if c.created_at < event.t]
        return event, infer_ancestors(event, candidates, judge)

    with ThreadPoolExecutor(max_workers=max(1, options.judge_workers)) as pool:
        inferred = list(pool.map(ancestors, events))
    write_jsonl(
        out / ANCESTRY_FILE,
        [
            {"child": event.artifact_id, "parent": parent, "confidence": conf,
             "inferred_at": event.t, "judge_version": judge.identity}
            for event, links in inferred
            for parent, conf in sorted(links.items())
        ],
    )

    with ThreadPoolExecutor(max_workers=max(1, options.judge_workers)) as pool:
        categories = list(pool.map(lambda a: classify_artifact(a.name, a.content, judge), created))
    write_jsonl(
        out / CATEGORIES_FILE,
        [{"artifact": a.id, "name": a.name, "category": c} for a, c in zip(created, categories)],
    )
    logger.info(
        f"{run.run_id}: annotated {len(agents)} agents, {len(groups)} groups, {len(created)} artifacts"
    )


# phylogeny


def build_dag(run: RunLog, behavior_dir: Path) -> AncestryDag:
    novelty = {row["artifact"]: row["mean_score"] for row in read_jsonl(behavior_dir / NOVELTY_FILE)}
    categories = {}
    if (behavior_dir / CATEGORIES_FILE).exists():
        categories = {row["artifact"]: row["category"] for row in read_jsonl(behavior_dir / CATEGORIES_FILE)}
    dag = AncestryDag()
    for event in artifact_events(run.records):
        if event.op == "create":
            dag.add_artifact(
                event.artifact_id, event.t, creator=event.agent_id, name=event.name,
                novelty=novelty.get(event.artifact_id), category=categories.get(event.artifact_id),
            )
        elif event.artifact_id in dag.g:
            dag.add_modification(event.artifact_id, event.t)
    for row in read_jsonl(behavior_dir / ANCESTRY_FILE):
        if row["child"] in dag.g and row["parent"] in dag.g:
            dag.add_link(row["child"], row["parent"], row["confidence"], row.get("inferred_at"), row.get("judge_version"))
    return dag


def run_phylo(run: RunLog, options: AnalyzeOptions) -> None:
    behavior_dir = _require(run, "phylo", "behavior", ANCESTRY_FILE, NOVELTY_FILE)
    out = stage_dir(run, "phylo")
    dag = build_dag(run, behavior_dir)
    confident = filter_edges(dag, options.min_conf)

    profile = lineage_depth(confident)
    pd.DataFrame(
        [{"depth": x, "normalized_depth": x / profile.max_depth if profile.max_depth else 0.0, "survival": s}
         for x, s in sorted(profile.survival.items())],
        columns=["depth", "normalized_depth", "survival"],
    ).to_csv(out / DEPTH_FILE, index=False)

    pd.DataFrame(density_curve(dag), columns=["threshold", "density"]).to_csv(out / DENSITY_FILE, index=False)

    rows = []
    for node in confident.nodes:
        attrs = confident.node(node)
        rows.append({
            "artifact": node,
            "created_at": attrs["created_at"],
            "in_degree": confident.g.in_degree(node),
            "out_degree": confident.g.out_degree(node),
            "depth": profile.depth.get(node, 0),
            "novelty": attrs["novelty"],
            "category": attrs["category"],
        })
    pd.DataFrame(
        rows, columns=["artifact", "created_at", "in_degree", "out_degree", "depth", "novelty", "category"]
    ).to_csv(out / DEGREES_FILE, index=False)

    report = hubs(dag, options.hub_degree, options.min_conf)
    _write_json(out / HUBS_FILE, {
        "nodes": report.nodes, "mean_in": report.mean_in, "mean_out": report.mean_out,
        "min_degree": options.hub_degree, "min_conf": options.min_conf,
    })

    scores = {n: dag.node(n)["novelty"] for n in dag.nodes if dag.node(n)["novelty"] is not None}
    created_at = {n: dag.node(n)["created_at"] for n in dag.nodes}
    _write_json(out / BINS_FILE, {
        "bins": novelty_bins(scores.values()),
        "over_time": {str(t): v for t, v in novelty_over_time(scores, created_at).items()},
    })
    logger.info(f"{run.run_id}: phylogeny with {len(dag)} artifacts, max depth {profile.max_depth}")


# text complexity


def latest_texts(run: RunLog) -> Tuple[Dict[str, str], Dict[str, int]]:
    """Final content and creation step of every artifact created during the run."""
    texts: Dict[str, str] = {}
    created_at: Dict[str, int] = {}
    for event in artifact_events(run.records):
        texts[event.artifact_id] = event.content
        created_at.setdefault(event.artifact_id, event.t)
    return texts, created_at


def run_text(run: RunLog, options: AnalyzeOptions) -> pd.DataFrame:
    out = stage_dir(run, "text")
    latest, created_at = latest_texts(run)
    texts = {k: v for k, v in latest.items() if tokenize(v)}
    if not texts:
        logger.warning(f"{run.run_id}: no artifact text to score")
        table = complexity_table({})
        table.to_csv(out / COMPLEXITY_FILE, index=False)
        return table

    if options.idf:
        idf = read_idf(options.idf)
    else:
        logger.warning(f"{run.run_id}: no IDF table given, building one from the run's artifacts")
        idf = build_idf(list(texts.values()))
    corpus = [tokenize(t) for t in texts.values()]
    provider = provider_from_uri(options.logprob or "trigram:", corpus=corpus)
    parses = {}
    if options.parses:
        parses = read_parses(options.parses)
    else:
        logger.warning(f"{run.run_id}: no parse sidecar given, syntactic depth left empty")

    table = complexity_table(texts, idf, provider, parses, options.window, created_at)
    table.to_csv(out / COMPLEXITY_FILE, index=False)
    logger.info(f"{run.run_id}: scored {len(table)} artifact texts")
    return table


STAGE_RUNNERS = {
    "graph": run_graph,
    "behavior": run_behavior,
    "phylo": run_phylo,
    "text": run_text,
}


def run_stage(run: RunLog, stage: str, options: AnalyzeOptions) -> None:
    stages = STAGES if stage == "all" else (stage,)
    for name in stages:
        try:
            runner = STAGE_RUNNERS[name]
        except KeyError:
            raise ValueError(f"Unknown stage '{name}'")
        logger.info(f"{run.run_id}: running stage {name}")
        runner(run, options)
