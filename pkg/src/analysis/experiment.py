"""
Benchmark experiments.

For every graph and repetition one stress drawing is computed and every
configuration starts from that same drawing, so configurations are compared
on paired inputs. Random streams are derived from (base seed, repetition).
"""

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Union

import numpy as np
import pandas as pd

from analysis.config_comparison import compare_configs
from common.errors import CrossminError
from crossings.crossing_count import count_all
from graph_model.graph import Graph, preprocess
from movement.config import MoveConfig
from movement.mover import minimize
from stress_layout.stress import StressParams, stress_layout

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ["graph", "config", "seed", "pass", "cr_before", "cr_after", "time_ms"]
SUMMARY_COLUMNS = ["graph", "config", "mean", "std", "n"]
STRESS_CONFIG = "stress"


@dataclass(eq=False)
class ExperimentResult:
    records: pd.DataFrame
    summary: pd.DataFrame
    comparisons: pd.DataFrame
    failures: Dict[str, str]


def repetition_seeds(base_seed: int, rep: int) -> np.ndarray:
    """Two independent 32-bit seeds (stress layout, mover) for one repetition."""
    return np.random.SeedSequence([base_seed, rep]).generate_state(2)


def _run_cell(task) -> List[dict]:
    name, g, configs, rep, base_seed, stress_params = task
    stress_seed, move_seed = (int(s) for s in repetition_seeds(base_seed, rep))
    initial = stress_layout(g, replace(stress_params, seed=stress_seed))
    baseline = count_all(initial).total
    rows = []
    for cname, cfg in configs.items():
        start = time.perf_counter()
        _, report = minimize(initial, replace(cfg, seed=move_seed))
        rows.append({
            "graph": name,
            "config": cname,
            "seed": move_seed,
            "pass": len(report.passes),
            "cr_before": baseline,
            "cr_after": report.cr_after,
            "time_ms": (time.perf_counter() - start) * 1000.0,
        })
    return rows


def summarize(records: pd.DataFrame) -> pd.DataFrame:
    """Mean and sample std of cr_after per (graph, config), plus the stress baseline."""
    if records.empty:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)
    grouped = records.groupby(["graph", "config"], sort=True)["cr_after"].agg(["mean", "std", "count"])
    baseline = (records.drop_duplicates(["graph", "seed"])
                .groupby("graph", sort=True)["cr_before"].agg(["mean", "std", "count"]))
    baseline.index = pd.MultiIndex.from_arrays([baseline.index, [STRESS_CONFIG] * len(baseline)],
                                               names=["graph", "config"])
    table = pd.concat([grouped, baseline]).rename(columns={"count": "n"}).reset_index()
    table["std"] = table["std"].fillna(0.0)
    return table.sort_values(["graph", "config"]).reset_index(drop=True)[SUMMARY_COLUMNS]


def _merge_existing(records: pd.DataFrame, path: Path) -> pd.DataFrame:
    if not path.exists():
        return records
    existing = pd.read_csv(path)
    merged = pd.concat([existing, records], ignore_index=True)
    return merged.drop_duplicates(["graph", "config", "seed"], keep="first")


def run_experiment(graphs: Mapping[str, Graph], configs: Mapping[str, MoveConfig], repetitions: int,
                   out: Optional[Union[str, Path]] = None, base_seed: int = 0,
                   stress_params: StressParams = StressParams(), workers: int = 1) -> ExperimentResult:
    """
    Run every configuration on every graph for several repetitions.

    Args:
        graphs: Name -> graph (preprocessed here)
        configs: Name -> move configuration
        repetitions: Repetitions per (graph, configuration)
        out: Directory for records.csv, summary.csv and comparisons.csv
        base_seed: Seed from which every repetition's streams are derived
        stress_params: Parameters of the initial layouts
        workers: Process count; records are sorted, so the output does not
            depend on it

    Returns:
        ExperimentResult
    """
    failures: Dict[str, str] = {}
    tasks = []
    for name, g in graphs.items():
        try:
            prepared = preprocess(g).graph
        except CrossminError as exc:
            logger.error("graph %s skipped: %s", name, exc)
            failures[name] = str(exc)
            continue
        tasks.extend((name, prepared, dict(configs), rep, base_seed, stress_params) for rep in range(repetitions))

    rows: List[dict] = []

    def collect(task, outcome):
        name = task[0]
        if isinstance(outcome, Exception):
            logger.error("graph %s repetition %d failed: %s", name, task[3], outcome)
            failures.setdefault(name, str(outcome))
        else:
            rows.extend(outcome)

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, t) for t in tasks]
            for task, fut in zip(tasks, futures):
                try:
                    collect(task, fut.result())
                except Exception as exc:
                    collect(task, exc)
    else:
        for task in tasks:
            try:
                collect(task, _run_cell(task))
            except Exception as exc:
                logger.exception("graph %s repetition %d raised", task[0], task[3])
                collect(task, exc)

    records = pd.DataFrame(rows, columns=RECORD_COLUMNS)
    records = records.sort_values(["graph", "config", "seed"], kind="stable").reset_index(drop=True)

    if out is not None:
        out = Path(out)
        os.makedirs(out, exist_ok=True)
        records = _merge_existing(records, out / "records.csv")
        records = records.sort_values(["graph", "config", "seed"], kind="stable").reset_index(drop=True)
        records.to_csv(out / "records.csv", index=False)

    summary = summarize(records)
    comparisons = compare_configs(records, configs=list(configs))
    if out is not None:
        summary.to_csv(out / "summary.csv", index=False)
        comparisons.to_csv(out / "comparisons.csv", index=False)
        logger.info("wrote %d records to %s", len(records), out)
    return ExperimentResult(records=records, summary=summary, comparisons=comparisons, failures=failures)
