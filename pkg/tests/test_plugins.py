# -*- coding: utf-8 -*-

"""插件加载器与 MCP 工具、资源插件的测试。"""

import asyncio
import json

import numpy as np
import pytest

from core.plugin_loader import PluginLoader
from malnormal.experiments import ExperimentRecord

TOOL_NAMES = {
    "malnormality",
    "shift_matrix_scan",
    "haar_expander_report",
    "construction_certificate",
    "campaign_summary",
    "power_fit",
}


@pytest.fixture
def tools(fake_mcp):
    loader = PluginLoader(fake_mcp, ["tools"])
    loader.load_all_plugins()
    return fake_mcp.tools


@pytest.fixture
def record_file(records_mcp, tmp_path):
    lines = []
    for n in range(4, 13):
        centre = 0.5 / n + 0.1
        for i, offset in enumerate((-1e-3, 0.0, 1e-3)):
            record = ExperimentRecord(
                ensemble_kind="j-orthogonal",
                n=n,
                sample_index=i,
                seed=0,
                base_seed=0,
                mal=centre + offset,
                solver="dense",
                converged=True,
            )
            lines.append(record.to_json())
    (tmp_path / "j.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return "j.jsonl"


def test_loader_registers_tools_and_resources(fake_mcp):
    loader = PluginLoader(fake_mcp)
    loader.load_all_plugins()
    assert TOOL_NAMES <= set(fake_mcp.tools)
    assert "records://{name}" in fake_mcp.resources
    loaded = loader.get_loaded_plugins()
    assert {"malnormality", "expanders", "experiments", "records"} <= set(loaded)
    loaded.clear()
    assert loader.get_loaded_plugins()


def test_loader_respects_disabled_plugins(fake_mcp):
    from core.config import config_manager

    config_manager.set("plugins.disabled", ["experiments"])
    loader = PluginLoader(fake_mcp, ["tools"])
    loader.load_all_plugins()
    assert "campaign_summary" not in fake_mcp.tools
    assert "malnormality" in fake_mcp.tools


def test_unload_and_reload(fake_mcp):
    loader = PluginLoader(fake_mcp, ["tools"])
    loader.load_all_plugins()
    assert loader.reload_plugin("malnormality")
    assert "malnormality" in loader.get_loaded_plugins()
    assert loader.unload_plugin("malnormality")
    assert "malnormality" not in loader.get_loaded_plugins()
    assert not loader.unload_plugin("malnormality")
    assert not loader.reload_plugin("malnormality")


def test_malnormality_tool(tools):
    result = tools["malnormality"]([[0, 1], [0, 0]], solver="dense")
    assert result["value"] == pytest.approx(1.0)
    assert result["solver"] == "dense"
    assert "minimizer" not in result

    result = tools["malnormality"]([[1, 0], [0, 2]], imag=[[0, 1], [-1, 0]], include_minimizer=True)
    assert result["flavor"] == "complex-hermitian"
    assert len(result["minimizer"]) == 3

    assert "error" in tools["malnormality"]([[1, 2, 3]])
    assert "error" in tools["malnormality"](np.eye(2).tolist(), solver="newton")


def test_shift_matrix_scan_tool(tools):
    rows = tools["shift_matrix_scan"]([2, 3, 4])["rows"]
    assert [row["n"] for row in rows] == [2, 3, 4]
    assert rows[0]["mal"] == pytest.approx(1.0)
    assert "error" in tools["shift_matrix_scan"]([1])


def test_expander_tools(tools):
    report = tools["haar_expander_report"](4, k=2, seed=3)
    assert report["seed"] == 3 and report["k"] == 2 and report["n"] == 4
    assert report["edge_delta"] < 1
    assert tools["haar_expander_report"](4, k=1)["hastings_threshold"] is None
    assert "error" in tools["haar_expander_report"](4, k=0)

    certificate = tools["construction_certificate"](3, seed=2, solver="dense")
    assert certificate["status"] in ("PASS", "FAIL")
    assert certificate["seed"] == 2
    assert "error" in tools["construction_certificate"](3, flavor="quaternion")


def test_experiment_tools(records_mcp, record_file):
    PluginLoader(records_mcp, ["tools"]).load_all_plugins()
    summary = records_mcp.tools["campaign_summary"](record_file)
    assert summary["records"] == 27
    assert [s["n"] for s in summary["summaries"]] == list(range(4, 13))

    fit = records_mcp.tools["power_fit"](record_file, min_n=6)
    assert fit["target"] == "mean"
    assert fit["points"] == 7
    assert fit["beta"] == pytest.approx(-1.0, abs=1e-4)

    assert "error" in records_mcp.tools["power_fit"](record_file, target="median")
    assert "error" in records_mcp.tools["power_fit"](record_file, min_n=11)
    assert "error" in records_mcp.tools["campaign_summary"]("../j.jsonl")
    assert "error" in records_mcp.tools["campaign_summary"]("/etc/passwd")
    assert "error" in records_mcp.tools["campaign_summary"]("missing.jsonl")


def test_records_resource(records_mcp, record_file, tmp_path):
    PluginLoader(records_mcp, ["resources"]).load_all_plugins()
    read = records_mcp.resources["records://{name}"]
    result = asyncio.run(read(record_file))
    assert result["uri"] == "records://j.jsonl"
    assert result["mimeType"] == "application/x-ndjson"
    assert result["text"] == (tmp_path / record_file).read_text(encoding="utf-8")
    summary = json.loads(result["summary"])
    assert summary == {
        "records": 27,
        "converged": 27,
        "ensembles": ["j-orthogonal"],
        "n_values": list(range(4, 13)),
    }

    (tmp_path / "notes.txt").write_text("x", encoding="utf-8")
    for name in ("../j.jsonl", "/tmp/j.jsonl", "notes.txt", "absent.jsonl"):
        with pytest.raises(ValueError):
            asyncio.run(read(name))


def test_server_loads_every_plugin():
    pytest.importorskip("mcp")
    from core.server import create_server

    server = create_server("malnormal-test")
    server.load_plugins()
    try:
        assert set(server.plugin_loader.get_loaded_plugins()) == {"malnormality", "expanders", "experiments", "records"}
        assert server.mcp.config["experiments"]["regression_min_n"] == 6
    finally:
        server.cleanup()
    assert server.plugin_loader.get_loaded_plugins() == {}
