import json
import os

import pytest
from click.testing import CliRunner

from semdisc.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_convert_lab(runner):
    res = runner.invoke(main, ["convert", "--lab", "70,20,38"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["lab"] == [70.0, 20.0, 38.0]
    assert payload["in_gamut"] is True


def test_convert_bundled_id(runner):
    res = runner.invoke(main, ["convert", "--id", "49"])
    assert res.exit_code == 0
    assert json.loads(res.output)["id"] == 49


def test_convert_requires_an_input(runner):
    res = runner.invoke(main, ["convert"])
    assert res.exit_code == 2
    assert "error:" in res.output


def test_convert_unknown_id(runner):
    res = runner.invoke(main, ["convert", "--id", "999"])
    assert res.exit_code == 2


def test_assign_json(runner):
    res = runner.invoke(
        main, ["assign", "--concepts", "mango,watermelon", "--colors", "49,36"]
    )
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["mapping"] == {"mango": "49", "watermelon": "36"} or payload[
        "mapping"
    ] == {"mango": 49, "watermelon": 36}
    assert payload["merit_kind"] == "isolated"


def test_assign_balanced(runner):
    res = runner.invoke(
        main,
        ["assign", "--concepts", "mango,watermelon", "--colors", "49,36", "--merit", "balanced"],
    )
    assert res.exit_code == 0
    assert json.loads(res.output)["merit_kind"] == "balanced"


def test_discriminability_deterministic(runner):
    args = [
        "discriminability",
        "--concepts", "mango,watermelon",
        "--colors", "49,36",
        "--samples", "20000",
        "--seed", "7",
    ]
    a = runner.invoke(main, args)
    b = runner.invoke(main, args)
    assert a.exit_code == 0
    assert a.output == b.output
    payload = json.loads(a.output)
    assert payload["seed"] == 7
    assert 0.0 <= payload["index"] <= 1.0


def test_distance_writes_outputs(runner, tmp_path):
    out = tmp_path / "dist"
    res = runner.invoke(
        main,
        ["distance", "--concepts", "mango,watermelon", "--colors", "49,36,10", "--out", str(out)],
    )
    assert res.exit_code == 0
    for name in ("delta_s.csv", "delta_e.csv", "distances.svg", "manifest.json"):
        assert (out / name).exists(), name
    lines = (out / "delta_s.csv").read_text().strip().splitlines()
    assert lines[0] == "color_1,color_2,delta_s"
    assert len(lines) == 4  # header + 3 pairs
    manifest = json.loads((out / "manifest.json").read_text())
    assert set(manifest) >= {"command", "dataset_digests", "version", "timestamp"}
    svg = (out / "distances.svg").read_text()
    assert svg.startswith("<svg") and "circle" in svg


def test_predict_to_stdout(runner):
    res = runner.invoke(main, ["predict", "--experiment", "2", "--rt-model", "RT 2.2"])
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert len(lines) == 57
    assert lines[0].endswith("pred_accuracy,pred_rt_ms")


def test_predict_needs_palette(runner):
    res = runner.invoke(main, ["predict"])
    assert res.exit_code == 2


def test_optimize_restricted_pool(runner):
    res = runner.invoke(
        main,
        [
            "optimize",
            "--concepts", "mango,watermelon",
            "--pool", "58,53,50,49,36,10,48,44",
            "--limit", "2",
        ],
    )
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert 1 <= len(payload) <= 2
    assert all(p["feasible"] for p in payload)


def test_optimize_empty_exits_one(runner):
    res = runner.invoke(
        main,
        ["optimize", "--concepts", "mango,watermelon", "--pool", "58,53"],
    )
    assert res.exit_code == 1
    assert json.loads(res.output) == []


def test_report_bundle(runner, tmp_path):
    out = tmp_path / "rep"
    res = runner.invoke(main, ["report", "--experiment", "1", "--out", str(out)])
    assert res.exit_code == 0
    for name in (
        "distances.json",
        "distances.csv",
        "distances.svg",
        "predictions.csv",
        "assignment.json",
        "manifest.json",
    ):
        assert (out / name).exists(), name
    rep = json.loads((out / "distances.json").read_text())
    assert len(rep["delta_s"]) == 28


def test_unknown_concept_exits_two(runner):
    res = runner.invoke(
        main, ["assign", "--concepts", "mango,dragonfruit", "--colors", "49,36"]
    )
    assert res.exit_code == 2
    assert "unknown concept" in res.output


def test_dataset_override(runner, tmp_path, table):
    (tmp_path / "colors.csv").write_text(table.to_colors_csv())
    (tmp_path / "ratings.csv").write_text(table.to_ratings_csv())
    res = runner.invoke(
        main,
        ["assign", "--dataset", str(tmp_path), "--concepts", "mango,watermelon", "--colors", "49,36"],
    )
    assert res.exit_code == 0


def test_dataset_dir_without_files(runner, tmp_path):
    res = runner.invoke(
        main,
        ["assign", "--dataset", str(tmp_path), "--concepts", "mango,watermelon", "--colors", "49,36"],
    )
    assert res.exit_code == 2
