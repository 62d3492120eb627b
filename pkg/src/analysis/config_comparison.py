"""
Configuration comparison module.

This module compares the final crossing counts of move configurations on
each benchmark graph with the Mann-Whitney U test, adjusts the p-values of
one graph for multiple comparisons (Holm) and reports which configuration
is significantly better.
"""

import json
import os
from itertools import combinations
from typing import Dict, List, Optional

import pandas as pd
from statsmodels.stats.multitest import multipletests

from analysis.mann_whitney import mann_whitney_u

ALPHA = 0.01

COMPARISON_COLUMNS = ["graph", "config_a", "config_b", "U", "p", "p_one_sided", "p_adjusted", "significant"]


def compare_configs(records: pd.DataFrame, configs: Optional[List[str]] = None,
                    alpha: float = ALPHA) -> pd.DataFrame:
    """
    Pairwise Mann-Whitney comparisons per graph.

    Args:
        records: Experiment records with graph, config and cr_after columns
        configs: Configuration order (default: order of first appearance)
        alpha: Significance level applied to the Holm-adjusted p-values

    Returns:
        DataFrame with COMPARISON_COLUMNS; p_one_sided tests whether
        config_a yields fewer crossings than config_b
    """
    rows = []
    for graph, group in records.groupby("graph", sort=True):
        names = configs or list(dict.fromkeys(group["config"]))
        names = [c for c in names if c in set(group["config"])]
        graph_rows = []
        for a, b in combinations(names, 2):
            res = mann_whitney_u(group.loc[group["config"] == a, "cr_after"],
                                 group.loc[group["config"] == b, "cr_after"])
            graph_rows.append({"graph": graph, "config_a": a, "config_b": b, "U": res.u,
                               "p": res.p_value, "p_one_sided": res.p_less})
        if graph_rows:
            reject, adjusted, _, _ = multipletests([r["p"] for r in graph_rows], alpha=alpha, method="holm")
            for r, adj, rej in zip(graph_rows, adjusted, reject):
                r["p_adjusted"] = float(adj)
                r["significant"] = bool(rej)
        rows.extend(graph_rows)
    return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)


def analyze_config_comparison(
    records_path: str = "data/results/records.csv",
    output_path: str = "data/results/config_comparison.json",
    alpha: float = ALPHA,
) -> Dict:
    """
    Compare configurations from a records CSV and save the results.

    Args:
        records_path: Experiment records written by run_experiment
        output_path: Path to save comparison results
        alpha: Significance level

    Returns:
        Dictionary containing per-graph comparison results
    """
    records = pd.read_csv(records_path)

    print("Comparing move configurations...")

    table = compare_configs(records, alpha=alpha)
    means = records.groupby(["graph", "config"])["cr_after"].mean()

    results = {"alpha": alpha, "graphs": {}}
    for graph, group in table.groupby("graph", sort=True):
        print(f"\n  {graph}:")
        comparisons = []
        for _, row in group.iterrows():
            mean_a = float(means[(graph, row["config_a"])])
            mean_b = float(means[(graph, row["config_b"])])
            better = row["config_a"] if mean_a < mean_b else row["config_b"]
            print(f"    {row['config_a']} ({mean_a:.1f}) vs {row['config_b']} ({mean_b:.1f}): "
                  f"U={row['U']:.1f}, p={row['p']:.4f}, adjusted p={row['p_adjusted']:.4f}")
            comparisons.append({
                "config_a": row["config_a"],
                "config_b": row["config_b"],
                "mean_a": round(mean_a, 2),
                "mean_b": round(mean_b, 2),
                "U": float(row["U"]),
                "p_value": round(float(row["p"]), 6),
                "p_one_sided": round(float(row["p_one_sided"]), 6),
                "p_adjusted": round(float(row["p_adjusted"]), 6),
                "significant": bool(row["significant"]),
                "fewer_crossings": better if row["significant"] else None,
            })
        results["graphs"][graph] = comparisons

    results["analysis_timestamp"] = pd.Timestamp.now().isoformat()

    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    with open(output_path, "w") as f:
        json.dump(results, f, indent=2)

    print(f"\n[OK] Configuration comparison complete. Results saved to {output_path}")

    return results
