"""End-to-end command-line behavior."""

from __future__ import annotations

import json

import numpy as np
import pytest

from graphbind.cli import main
from graphbind.core import LabeledGraph, is_equivalent
from graphbind.corpus import cycle_graph, path_graph, random_connected_graph
from graphbind.graphio import read_graph, write_graph


@pytest.fixture()
def files(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    write_graph(cycle_graph(5), a, "matrix-json")
    write_graph(
        LabeledGraph(
            np.array(
                [
                    [0, 1, 0, 0, 1],
                    [1, 0, 1, 0, 0],
                    [0, 1, 0, 1, 0],
                    [0, 0, 1, 0, 1],
                    [1, 0, 0, 1, 0],
                ]
            )
        ),
        b,
        "matrix-json",
    )
    return tmp_path, str(a), str(b)


class TestRefineCommand:
    def test_sas_with_trace(self, files):
        tmp, a, _ = files
        out = tmp / "stable.json"
        trace = tmp / "trace.json"
        rc = main(["refine", "--process", "sas", "--in", a, "--out", str(out), "--trace", str(trace)])
        assert rc == 0
        doc = json.loads(trace.read_text())
        assert set(doc) >= {"process", "rounds", "dims", "cells", "labels"}
        stable = read_graph(out, "matrix-json")
        assert stable.n == 5

    def test_wl_writes_json(self, files):
        tmp, a, _ = files
        out = tmp / "wl.json"
        assert main(["refine", "--process", "wl", "--in", a, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["n"] == 5

    def test_kpow(self, files):
        tmp, a, _ = files
        out = tmp / "k.json"
        assert main(["refine", "--process", "kpow", "--k", "3", "--in", a, "--out", str(out)]) == 0


class TestDescgraphCommand:
    @pytest.mark.parametrize("process", ["gamma", "adjoint", "spectral"])
    def test_processes(self, files, process):
        tmp, a, _ = files
        out = tmp / f"{process}.json"
        rc = main(["descgraph", "--process", process, "--in", a, "--out", str(out), "--seed", "3"])
        assert rc == 0
        assert read_graph(out, "matrix-json").n == 5

    def test_routes_agree_via_cli(self, files):
        tmp, a, _ = files
        outs = []
        for process in ("gamma", "spectral"):
            out = tmp / f"cmp_{process}.json"
            main(["descgraph", "--process", process, "--in", a, "--out", str(out)])
            outs.append(read_graph(out, "matrix-json"))
        assert is_equivalent(*outs)


class TestBindingCommands:
    def test_binding(self, files):
        tmp, a, _ = files
        out = tmp / "bind.json"
        assert main(["binding", "--in", a, "--out", str(out)]) == 0
        assert read_graph(out, "matrix-json").n == 15

    @pytest.mark.parametrize("which", ["psi", "phi", "theta"])
    def test_derived(self, files, which):
        tmp, a, _ = files
        out = tmp / f"{which}.json"
        assert main(["derived", "--which", which, "--in", a, "--out", str(out)]) == 0
        assert read_graph(out, "matrix-json").n == 15


class TestOracleCommand:
    def test_orbits(self, files, capsys):
        _, a, _ = files
        assert main(["oracle", "orbits", "--in", a]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["orbits"] == [[0, 1, 2, 3, 4]]

    def test_iso_found(self, files, capsys):
        _, a, b = files
        assert main(["oracle", "iso", "--in", a, "--in2", b]) == 0
        assert json.loads(capsys.readouterr().out)["isomorphic"] is True

    def test_iso_not_found(self, files, tmp_path, capsys):
        _, a, _ = files
        p4 = tmp_path / "p4.json"
        write_graph(path_graph(5), p4, "matrix-json")
        assert main(["oracle", "iso", "--in", a, "--in2", str(p4)]) == 1


class TestGiCommand:
    def test_yes_exit_zero(self, files, tmp_path, capsys):
        _, a, b = files
        trace = tmp_path / "gi.json"
        rc = main(["gi", "--a", a, "--b", b, "--json", str(trace)])
        assert rc == 0
        assert capsys.readouterr().out.strip() == "YES"
        doc = json.loads(trace.read_text())
        assert doc["verdict"] == "YES"
        assert doc["dims"][-1] == doc["dims"][-2]
        assert sum(len(c) for c in doc["cells"]) == 11 * 12 // 2

    def test_no_exit_one(self, files, tmp_path, capsys):
        _, a, _ = files
        p5 = tmp_path / "p5.json"
        write_graph(path_graph(5), p5, "matrix-json")
        rc = main(["gi", "--a", a, "--b", str(p5)])
        assert rc == 1
        assert capsys.readouterr().out.strip() == "NO"

    def test_error_exit_two(self, files, tmp_path, capsys):
        _, a, _ = files
        small = tmp_path / "k3.json"
        write_graph(cycle_graph(3), small, "matrix-json")
        assert main(["gi", "--a", a, "--b", str(small)]) == 2

    def test_wl_process_flag(self, files):
        _, a, b = files
        assert main(["gi", "--a", a, "--b", b, "--process", "wl"]) == 0


class TestFormatsViaCli:
    def test_graph6_and_edgelist_inputs(self, tmp_path, capsys):
        g = random_connected_graph(6, 0.5, seed=8)
        g6 = tmp_path / "g.g6"
        el = tmp_path / "g.txt"
        write_graph(g, g6, "graph6")
        write_graph(g, el, "edgelist")
        assert main(["oracle", "iso", "--in", str(g6), "--in2", str(el)]) == 0
        assert json.loads(capsys.readouterr().out)["witness"] == list(range(6))


class TestValidateAndBench:
    def test_validate_quick_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        rc = main(["validate", "--quick", "--out", str(out)])
        report = json.loads(out.read_text())
        assert report["implementation_violations"] == 0
        assert rc == (0 if report["ok"] else 1)

    def test_bench_runs(self, capsys):
        assert main(["bench", "--sizes", "6,8"]) == 0
        out = capsys.readouterr().out
        assert "petersen" in out
        assert "log-log slope" in out
