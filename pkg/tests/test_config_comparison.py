import json

import pandas as pd
import pytest

from analysis.config_comparison import COMPARISON_COLUMNS, analyze_config_comparison, compare_configs


@pytest.fixture
def records():
    rows = []
    for i in range(10):
        rows.append({"graph": "g1", "config": "A", "seed": i, "cr_after": i})
        rows.append({"graph": "g1", "config": "B", "seed": i, "cr_after": 100 + i})
        rows.append({"graph": "g1", "config": "C", "seed": i, "cr_after": 9 - i})
        rows.append({"graph": "g2", "config": "A", "seed": i, "cr_after": 5})
        rows.append({"graph": "g2", "config": "B", "seed": i, "cr_after": 5})
    return pd.DataFrame(rows)


def test_pairwise_table(records):
    table = compare_configs(records)
    assert list(table.columns) == COMPARISON_COLUMNS
    g1 = table[table["graph"] == "g1"].set_index(["config_a", "config_b"])
    assert list(g1.index) == [("A", "B"), ("A", "C"), ("B", "C")]
    assert g1.loc[("A", "B"), "significant"]
    assert g1.loc[("A", "B"), "p_one_sided"] < 0.001
    assert not g1.loc[("A", "C"), "significant"]
    assert (g1["p_adjusted"] >= g1["p"]).all()


def test_identical_samples_are_not_significant(records):
    table = compare_configs(records)
    g2 = table[table["graph"] == "g2"]
    assert len(g2) == 1
    assert g2["p"].iloc[0] == 1.0
    assert not g2["significant"].iloc[0]


def test_config_order_is_respected(records):
    table = compare_configs(records, configs=["C", "A"])
    g1 = table[table["graph"] == "g1"]
    assert list(zip(g1["config_a"], g1["config_b"])) == [("C", "A")]


def test_report_file(records, tmp_path):
    src = tmp_path / "records.csv"
    records.to_csv(src, index=False)
    out = tmp_path / "cmp" / "config_comparison.json"
    results = analyze_config_comparison(str(src), str(out))
    saved = json.loads(out.read_text())
    assert saved["graphs"]["g1"][0]["fewer_crossings"] == "A"
    assert saved["graphs"]["g2"][0]["fewer_crossings"] is None
    assert results["alpha"] == 0.01
