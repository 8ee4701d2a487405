# -*- coding: utf-8 -*-

"""命令行入口的测试。"""

import json
import math

import numpy as np
import pytest

from malnormal.cli import main
from malnormal.experiments import ExperimentRecord, read_records
from malnormal.linalg import check_unitary
from malnormal.matrix_io import read_matrix, save_matrix


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def _campaign_file(path, output, n_values="3..4", samples=2):
    path.write_text(
        "kind = ginibre-real\n"
        f"n_values = {n_values}\n"
        f"samples_per_n = {samples}\n"
        f"output = {output}\n"
        "base_seed = 4\n"
        "solver = dense\n"
        "record_wall_time = false\n",
        encoding="utf-8",
    )
    return str(path)


def test_mal_command(tmp_path, capsys):
    identity = tmp_path / "i.txt"
    save_matrix(np.eye(3), str(identity))
    code, out = _run(capsys, "mal", str(identity))
    assert code == 0
    assert json.loads(out)["value"] == 0.0

    shift = tmp_path / "s.txt"
    shift.write_text("2 2 real\n0 1\n0 0\n", encoding="utf-8")
    code, out = _run(capsys, "mal", str(shift), "--solver", "dense", "--minimizer")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == pytest.approx(1.0)
    assert len(data["minimizer"]) == 2
    assert list(data) == sorted(data)


def test_usage_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["mal"]) == 2
    assert main(["sample", "--kind", "gue", "--n", "3"]) == 2
    assert main(["cloud", "--n", "3", "--samples", "0"]) == 2
    assert main(["--config", str(tmp_path / "absent.json"), "selftest"]) == 2
    capsys.readouterr()


def test_computation_errors(tmp_path, capsys):
    assert main(["mal", str(tmp_path / "absent.txt")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2 real\n1 2 3\n", encoding="utf-8")
    assert main(["mal", str(bad)]) == 1
    assert main(["fit", "--in", str(tmp_path / "absent.jsonl")]) == 1
    assert capsys.readouterr().out == ""


def test_sample_command(tmp_path, capsys):
    code, out = _run(capsys, "sample", "--kind", "haar-unitary", "--n", "3", "--seed", "1")
    assert code == 0
    check_unitary(read_matrix(out))
    assert _run(capsys, "sample", "--kind", "haar-unitary", "--n", "3", "--seed", "1")[1] == out
    assert _run(capsys, "sample", "--kind", "haar-unitary", "--n", "3", "--seed", "1", "--index", "1")[1] != out

    target = tmp_path / "out" / "g.txt"
    code, out = _run(capsys, "sample", "--kind", "ginibre-real", "--n", "4", "--output", str(target))
    assert code == 0 and out == ""
    assert read_matrix(target.read_text(encoding="utf-8")).shape == (4, 4)


def test_alternate_config_supplies_default_seed(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"cli": {"seed": 11}}), encoding="utf-8")
    code, via_config = _run(capsys, "--config", str(config), "sample", "--kind", "ginibre-real", "--n", "3")
    assert code == 0
    explicit = _run(capsys, "sample", "--kind", "ginibre-real", "--n", "3", "--seed", "11")[1]
    assert via_config == explicit


def test_alternate_config_supplies_default_tolerance(tmp_path, capsys):
    """未给 --tol 时使用配置中的 cli.tolerance。"""
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"cli": {"tolerance": 1e-6}}), encoding="utf-8")
    argv = ("construct", "--n", "3", "--seed", "7", "--solver", "dense")
    code, via_config = _run(capsys, "--config", str(config), *argv)
    assert code == 0
    assert json.loads(via_config)["resolution"] == pytest.approx(math.sqrt(1e-6 / 2))
    assert _run(capsys, *argv, "--tol", "1e-6")[1] == via_config


def test_construct_is_reproducible(capsys):
    code, first = _run(capsys, "construct", "--n", "3", "--seed", "7", "--solver", "dense")
    assert code == 0
    assert _run(capsys, "construct", "--n", "3", "--seed", "7", "--solver", "dense")[1] == first
    data = json.loads(first)
    assert data["seed"] == 7 and data["status"] in ("PASS", "FAIL")


def test_expander_command(tmp_path, capsys):
    paths = []
    for name in ("a.txt", "b.txt"):
        path = tmp_path / name
        save_matrix(np.eye(3), str(path))
        paths.append(str(path))
    code, out = _run(capsys, "expander", *paths)
    data = json.loads(out)
    assert code == 0
    assert data["k"] == 2 and data["n"] == 3
    assert data["edge_delta"] == pytest.approx(1.0, abs=1e-9)

    scaled = tmp_path / "c.txt"
    save_matrix(2 * np.eye(3), str(scaled))
    assert main(["expander", str(scaled)]) == 1


def test_campaign_command(tmp_path, capsys):
    output = tmp_path / "records.jsonl"
    config = _campaign_file(tmp_path / "c.conf", output)
    code, out = _run(capsys, "campaign", "--config", config)
    data = json.loads(out)
    assert code == 0
    assert data["new_records"] == 4
    assert [s["n"] for s in data["summaries"]] == [3, 4]

    code, out = _run(capsys, "campaign", "--config", config)
    assert json.loads(out)["new_records"] == 0
    assert len(read_records(str(output))) == 4


def test_campaign_output_is_independent_of_threads(tmp_path, capsys):
    one = _campaign_file(tmp_path / "one.conf", tmp_path / "one.jsonl", n_values="3..5", samples=3)
    many = _campaign_file(tmp_path / "many.conf", tmp_path / "many.jsonl", n_values="3..5", samples=3)
    code_one, out_one = _run(capsys, "--threads", "1", "campaign", "--config", one)
    code_many, out_many = _run(capsys, "--threads", "3", "campaign", "--config", many)
    assert code_one == code_many == 0
    assert (tmp_path / "one.jsonl").read_bytes() == (tmp_path / "many.jsonl").read_bytes()
    assert json.loads(out_one)["summaries"] == json.loads(out_many)["summaries"]


def test_campaign_requires_config(capsys):
    assert main(["campaign"]) == 2
    capsys.readouterr()


def test_fit_command(tmp_path, capsys):
    path = tmp_path / "r.jsonl"
    lines = []
    for n in range(6, 12):
        for i, offset in enumerate((-1e-3, 0.0, 1e-3)):
            record = ExperimentRecord("j-orthogonal", n, i, 0, 0, 0.5 / n + 0.1 + offset, "dense", True)
            lines.append(record.to_json())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    code, out = _run(capsys, "fit", "--in", str(path))
    data = json.loads(out)
    assert code == 0
    assert data["target"] == "mean"
    assert data["points"] == 6
    assert data["beta"] == pytest.approx(-1.0, abs=1e-4)
    assert main(["fit", "--in", str(path), "--min-n", "10"]) == 1


def test_cloud_command(tmp_path, capsys):
    code, out = _run(capsys, "cloud", "--n", "4", "--samples", "5", "--seed", "1")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "re,im"
    assert len(lines) == 21

    csv_path = tmp_path / "cloud.csv"
    svg_path = tmp_path / "cloud.svg"
    code, out = _run(
        capsys,
        "cloud",
        "--kind",
        "j-unitary",
        "--n",
        "4",
        "--samples",
        "5",
        "--output",
        str(csv_path),
        "--svg",
        str(svg_path),
    )
    data = json.loads(out)
    assert code == 0
    assert data["count"] == 20
    assert data["max_modulus"] <= 1 + 1e-9
    assert len(csv_path.read_text(encoding="utf-8").splitlines()) == 21
    assert svg_path.read_text(encoding="utf-8").count("<use ") == 20


def test_selftest_command(capsys):
    code, out = _run(capsys, "selftest", "--seed", "3")
    assert code == 0
    assert all(check["passed"] for check in json.loads(out))
