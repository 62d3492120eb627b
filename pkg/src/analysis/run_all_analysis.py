"""
Main analysis pipeline.

This script runs the benchmark experiment on the generated graphs, compares
the move configurations and prints a summary report.
"""

import logging
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from analysis.config_comparison import analyze_config_comparison
from analysis.degree_stats import degree_table
from analysis.experiment import run_experiment
from graph_model.graph import load_graph
from movement.config import named_config

# primal baseline against the two arrangement strategies
DEFAULT_CONFIGS = ("R0", "R512", "W512")


def run_all_analysis(
    graphs_dir: str = "data/graphs",
    results_dir: str = "data/results",
    configs=DEFAULT_CONFIGS,
    repetitions: int = 5,
    pattern: str = "regular_k3_n200_*.txt",
    workers: int = 1,
) -> None:
    """
    Run complete analysis pipeline.

    Args:
        graphs_dir: Directory written by the generation pipeline
        results_dir: Directory for records, summary and comparisons
        configs: Named move configurations to compare
        repetitions: Repetitions per (graph, configuration)
        pattern: Glob selecting the benchmark graphs
        workers: Worker processes
    """
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    print("=" * 60)
    print("CROSSING MINIMIZATION BENCHMARK")
    print("=" * 60)
    print()

    start_time = time.time()

    paths = sorted(Path(graphs_dir).glob(pattern))
    if not paths:
        print(f"No graphs match {graphs_dir}/{pattern}.")
        print("Run the generation pipeline first: python src/data_generation/run_all.py")
        return
    graphs = {p.stem: load_graph(p)[0] for p in paths}

    # Step 1: graph statistics
    print(f"[1/3] Loaded {len(graphs)} graphs...")
    print("-" * 60)
    print(degree_table(graphs).to_string(index=False))
    print()

    # Step 2: experiment
    print(f"[2/3] Running {len(configs)} configurations x {repetitions} repetitions...")
    print("-" * 60)
    result = run_experiment(graphs, {name: named_config(name) for name in configs}, repetitions,
                            out=results_dir, workers=workers)
    print()

    # Step 3: comparisons
    print("[3/3] Comparing configurations...")
    print("-" * 60)
    analyze_config_comparison(
        records_path=f"{results_dir}/records.csv",
        output_path=f"{results_dir}/config_comparison.json",
    )
    print()

    elapsed_time = time.time() - start_time

    print("=" * 60)
    print("BENCHMARK SUMMARY")
    print("=" * 60)
    print()
    print(result.summary.to_string(index=False, float_format=lambda x: f"{x:.1f}"))
    print()
    if result.failures:
        print("FAILED GRAPHS:")
        for name, reason in result.failures.items():
            print(f"  {name}: {reason}")
        print()

    print("=" * 60)
    print("ANALYSIS COMPLETE")
    print("=" * 60)
    print(f"Total time: {elapsed_time:.2f} seconds")
    print()
    print("Results saved to:")
    print(f"  - {results_dir}/records.csv")
    print(f"  - {results_dir}/summary.csv")
    print(f"  - {results_dir}/comparisons.csv")
    print(f"  - {results_dir}/config_comparison.json")


if __name__ == "__main__":
    run_all_analysis()
