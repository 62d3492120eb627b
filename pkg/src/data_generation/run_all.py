"""
Main data generation pipeline.

This script writes every generated benchmark instance and the CLI fixtures:
1. Random k-regular graphs
2. Triangulations with extra random edges
3. Convex complete graph fixtures
"""

import os
import sys
import time
from pathlib import Path

# Add src directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from data_generation.generate_graphs import (
    REGULAR_DEGREES,
    convex_complete_graph,
    random_regular_graph,
    triangulation_graph,
)
from graph_model.drawing_io import write_drawing
from graph_model.graph import write_edge_list


def _write_graph(g, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        write_edge_list(g, f)


def run_all_generation(
    out_dir: str = "data",
    regular_sizes=(200, 1000),
    instances_per_class: int = 5,
    triangulation_size: int = 100,
    seed: int = 0,
) -> None:
    """
    Run complete data generation pipeline.

    Args:
        out_dir: Root directory; instances go to graphs/, fixtures to fixtures/
        regular_sizes: Vertex counts of the k-regular classes
        instances_per_class: Graphs per (k, n) class and triangulations
        triangulation_size: Points per triangulation
        seed: Base seed; instance i of a class uses seed + i
    """
    print("=" * 60)
    print("BENCHMARK GENERATION PIPELINE")
    print("=" * 60)
    print()

    start_time = time.time()
    graphs_dir = Path(out_dir) / "graphs"
    fixtures_dir = Path(out_dir) / "fixtures"
    os.makedirs(graphs_dir, exist_ok=True)
    os.makedirs(fixtures_dir, exist_ok=True)

    # Step 1: k-regular classes
    print("[1/3] Generating random regular graphs...")
    written = 0
    for k in REGULAR_DEGREES:
        for n in regular_sizes:
            for i in range(instances_per_class):
                g = random_regular_graph(k, n, seed=seed + i)
                _write_graph(g, graphs_dir / f"regular_k{k}_n{n}_{i}.txt")
                written += 1
    print(f"  {written} regular graphs written to {graphs_dir}")
    print()

    # Step 2: triangulations (graph + drawing)
    print("[2/3] Generating triangulations...")
    for i in range(instances_per_class):
        g, d = triangulation_graph(triangulation_size, extra_edges=10, seed=seed + i)
        _write_graph(g, graphs_dir / f"triangulation_n{triangulation_size}_{i}.txt")
        write_drawing(d, graphs_dir / f"triangulation_n{triangulation_size}_{i}.json")
    print(f"  {instances_per_class} triangulations written to {graphs_dir}")
    print()

    # Step 3: fixtures
    print("[3/3] Writing convex complete graph fixtures...")
    for n in (4, 5, 6):
        g, d = convex_complete_graph(n)
        _write_graph(g, fixtures_dir / f"convex_k{n}.txt")
        write_drawing(d, fixtures_dir / f"convex_k{n}.json")
    print(f"  [OK] fixtures written to {fixtures_dir}")
    print()

    elapsed_time = time.time() - start_time

    print("=" * 60)
    print("BENCHMARK GENERATION COMPLETE")
    print("=" * 60)
    print(f"Total time: {elapsed_time:.2f} seconds")
    print()
    print("Next steps:")
    print("  1. Run the benchmarks: python src/analysis/run_all_analysis.py")
    print("  2. Count a fixture: python src/cli/crossmin.py count data/fixtures/convex_k5.txt "
          "data/fixtures/convex_k5.json")


if __name__ == "__main__":
    run_all_generation()
