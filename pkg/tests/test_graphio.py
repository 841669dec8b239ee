"""File formats: graph6, edgelist, matrix-json."""

from __future__ import annotations

import numpy as np
import pytest

from graphbind.core import GraphError, LabeledGraph
from graphbind.corpus import cycle_graph, random_graph
from graphbind.graphio import (
    ParseError,
    dumps_graph,
    loads_graph,
    read_graph,
    write_graph,
)


class TestEdgelist:
    def test_p3(self):
        g = loads_graph("3\n1 2\n2 3\n", "edgelist")
        assert g.labels.tolist() == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]

    def test_roundtrip(self, tmp_path):
        g = random_graph(7, 0.4, seed=3)
        path = tmp_path / "g.txt"
        write_graph(g, path, "edgelist")
        assert np.array_equal(read_graph(path, "edgelist").labels, g.labels)

    def test_error_carries_line(self):
        with pytest.raises(ParseError) as err:
            loads_graph("3\n1 2\n2 x\n", "edgelist")
        assert err.value.line == 3
        assert err.value.column == 3

    def test_out_of_range_endpoint(self):
        with pytest.raises(ParseError):
            loads_graph("2\n1 3\n", "edgelist")

    def test_loop_rejected(self):
        with pytest.raises(ParseError):
            loads_graph("2\n1 1\n", "edgelist")


class TestGraph6:
    def test_c5_decodes_to_cycle(self):
        # "DqK" is C5 in the public encoding: check the degree sequence and
        # connectivity rather than trusting any library.
        g = loads_graph("DqK", "graph6")
        assert g.n == 5
        assert (g.labels != 0).sum(axis=1).tolist() == [2, 2, 2, 2, 2]
        # one 5-cycle: closed walk count of length 5 through distinct edges
        assert np.trace(np.linalg.matrix_power(g.labels, 5)) == 10

    def test_roundtrip_random(self):
        for seed in range(10):
            g = random_graph(9, 0.5, seed=seed)
            assert np.array_equal(loads_graph(dumps_graph(g, "graph6"), "graph6").labels, g.labels)

    def test_roundtrip_cycle(self):
        g = cycle_graph(5)
        assert np.array_equal(loads_graph(dumps_graph(g, "graph6"), "graph6").labels, g.labels)

    def test_header_prefix_accepted(self):
        g = loads_graph(">>graph6<<DqK", "graph6")
        assert g.n == 5

    def test_large_n_header(self):
        g = random_graph(70, 0.2, seed=1)
        assert np.array_equal(loads_graph(dumps_graph(g, "graph6"), "graph6").labels, g.labels)

    def test_rejects_labeled(self):
        with pytest.raises(GraphError):
            dumps_graph(LabeledGraph(np.array([[0, 2], [2, 0]])), "graph6")

    def test_rejects_garbage(self):
        with pytest.raises(ParseError):
            loads_graph("D\x07", "graph6")

    def test_truncated_body(self):
        with pytest.raises(ParseError):
            loads_graph("E", "graph6")


class TestMatrixJson:
    def test_roundtrip_labeled(self, tmp_path):
        m = np.array([[3, 1, 0], [1, 5, 2], [0, 2, 3]])
        g = LabeledGraph(m)
        path = tmp_path / "g.json"
        write_graph(g, path, "matrix-json")
        assert np.array_equal(read_graph(path, "matrix-json").labels, m)

    def test_bad_json_positions(self):
        with pytest.raises(ParseError):
            loads_graph('{"n": 2, "labels": [[0, 1], [1, 0]', "matrix-json")

    def test_row_count_must_match(self):
        with pytest.raises(ParseError):
            loads_graph('{"n": 3, "labels": [[0]]}', "matrix-json")

    def test_unknown_format(self):
        with pytest.raises(GraphError):
            loads_graph("x", "dot")

    def test_directed_roundtrip(self, tmp_path):
        from graphbind.core import DirectedLabeledGraph
        from graphbind.graphio import read_directed_graph, write_directed_graph

        g = DirectedLabeledGraph(np.array([[1, 5, 2], [6, 1, 2], [3, 3, 1]]))
        path = tmp_path / "d.json"
        write_directed_graph(g, path)
        assert np.array_equal(read_directed_graph(path).labels, g.labels)
