import json

import pytest

from cli.crossmin import main
from data_generation.generate_graphs import convex_complete_graph
from graph_model.drawing_io import write_drawing
from graph_model.graph import write_edge_list


@pytest.fixture
def k5_files(tmp_path):
    g, d = convex_complete_graph(5)
    graph_path = tmp_path / "k5.txt"
    with open(graph_path, "w", encoding="utf-8") as f:
        write_edge_list(g, f)
    drawing_path = tmp_path / "k5.json"
    write_drawing(d, drawing_path)
    return str(graph_path), str(drawing_path)


def test_count(k5_files, capsys):
    assert main(["count", *k5_files]) == 0
    assert capsys.readouterr().out.strip() == "5"


def test_count_per_vertex(k5_files, capsys):
    assert main(["count", *k5_files, "--per-vertex"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "5"
    assert lines[1:] == [f"{v} 4" for v in range(5)]


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "minimize" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["minimize", "g.txt", "d.json", "--out", "x.json", "--config", "S0", "--strategy", "primal"],
    ["minimize", "g.txt", "d.json", "--out", "x.json", "--samples", "many"],
    ["count", "g.txt", "d.json", "--format", "xml"],
])
def test_usage_errors(argv):
    assert main(argv) == 1


def test_missing_file_is_a_data_error(tmp_path):
    assert main(["count", str(tmp_path / "none.txt"), str(tmp_path / "none.json")]) == 2


def test_forest_is_a_data_error(tmp_path):
    path = tmp_path / "tree.txt"
    path.write_text("0 1\n1 2\n1 3\n")
    assert main(["prep", str(path)]) == 2


def test_prep_writes_the_core(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("0 1\n1 2\n2 0\n2 3\n")
    out = tmp_path / "core.txt"
    assert main(["prep", str(path), "--out", str(out)]) == 0
    assert "output: n=3 m=3" in capsys.readouterr().out
    assert len(out.read_text().strip().splitlines()) == 3


def test_minimize_then_count(k5_files, tmp_path, capsys):
    graph, drawing = k5_files
    final = tmp_path / "final.json"
    argv = ["minimize", graph, drawing, "--out", str(final), "--samples", "all", "--points", "20",
            "--degree-cap", "inf", "--passes", "2", "--seed", "4"]
    assert main(argv) == 0
    capsys.readouterr()
    report = json.loads((tmp_path / "final.report.json").read_text())
    assert report["cr_before"] == 5
    assert report["config"]["samples"] is None
    assert report["config"]["passes"] == 2
    assert main(["count", graph, str(final)]) == 0
    assert int(capsys.readouterr().out.strip()) == report["cr_after"]


def test_layout_and_svg(k5_files, tmp_path, capsys):
    graph, _ = k5_files
    out = tmp_path / "layout.csv"
    svg = tmp_path / "layout.svg"
    assert main(["layout", graph, "--out", str(out), "--svg", str(svg), "--max-iterations", "10"]) == 0
    assert capsys.readouterr().out.startswith("crossings: ")
    assert out.exists() and "<svg" in svg.read_text()


def test_validate_prints_a_report(k5_files, capsys):
    assert main(["validate", *k5_files, "--vertex", "0", "--trials", "30"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["vertex"] == 0
    assert payload["sample_size"] == 10
    assert payload["coverage"] == 1.0
    assert "ratios" not in payload


def test_validate_rejects_unknown_vertex(k5_files):
    assert main(["validate", *k5_files, "--vertex", "99"]) == 1


def test_stats(k5_files, capsys):
    graph, _ = k5_files
    assert main(["stats", graph]) == 0
    out = capsys.readouterr().out
    assert "mean degree 4.00" in out


def test_bench_on_generated_graphs(tmp_path, capsys):
    out = tmp_path / "bench"
    argv = ["--quiet", "--threads", "1", "bench", "--regular", "3", "10", "1",
            "--configs", "S0", "--reps", "2", "--out", str(out)]
    assert main(argv) == 0
    assert (out / "records.csv").exists()
    assert "stress" in capsys.readouterr().out
