"""The isomorphism decision procedure over binding graphs.

Two connected simple graphs of the same order are joined into one wing
graph, its binding graph is stabilized, and the verdict is read off the
cells of the stable vertex partition: YES iff every basic cell other than
the apex singleton mixes vertices of both copies.

The test suite audits this procedure against brute-force search; the
correctness claim behind it is not community-verified, so the tool reports,
it does not certify.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .binding import binding_graph, wing_graph
from .core import GraphError, LabeledGraph, Partition, is_connected, is_simple
from .partition import vertex_partition
from .refine import StabilizationTrace, sas_stabilize, wl_stabilize

#: Refuse binding graphs beyond this order by default (rounds cost O(order^3)).
DEFAULT_MAX_BINDING_ORDER = 5000


@dataclass
class GiResult:
    """Verdict plus the evidence it was read from."""

    verdict: bool
    partition: Partition
    rounds: int
    dims: list[int]
    basic_cells: list[list[int]] = field(default_factory=list)
    unmixed_cells: list[list[int]] = field(default_factory=list)
    anomalies: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verdict": "YES" if self.verdict else "NO",
            "rounds": self.rounds,
            "dims": list(self.dims),
            "cells": [list(c) for c in self.partition.cells],
            "unmixed_cells": [list(c) for c in self.unmixed_cells],
            "anomalies": list(self.anomalies),
        }


def gi_decide(
    a1: LabeledGraph,
    a2: LabeledGraph,
    *,
    process: str = "sas",
    max_binding_order: int = DEFAULT_MAX_BINDING_ORDER,
) -> GiResult:
    """Decide isomorphism of two connected simple graphs of equal order n > 1.

    Steps: build the wing graph of order 2n+1, its binding graph of order
    (2n+1)(2n+2)/2, stabilize, form the vertex partition, and check that
    every basic cell apart from the apex singleton contains vertices from
    both copies.
    """
    if a1.n != a2.n:
        raise GraphError(f"orders differ: {a1.n} != {a2.n}")
    if a1.n <= 1:
        raise GraphError("the procedure needs order at least 2")
    for name, g in (("first", a1), ("second", a2)):
        if not is_simple(g):
            raise GraphError(f"{name} input is not a simple graph")
        if not is_connected(g):
            raise GraphError(f"{name} input is not connected")
    if process not in ("sas", "wl"):
        raise GraphError(f"unknown process {process!r}")

    n = a1.n
    wing = wing_graph(a1, a2)
    bound = binding_graph(wing)
    if bound.n1 > max_binding_order:
        raise GraphError(
            f"binding graph order {bound.n1} exceeds the budget {max_binding_order}"
        )
    trace: StabilizationTrace = (
        sas_stabilize(bound.graph) if process == "sas" else wl_stabilize(bound.graph)
    )
    partition = vertex_partition(trace.stable)

    apex = 2 * n
    basic_count = 2 * n + 1
    anomalies = []
    basic_cells: list[list[int]] = []
    apex_cell: list[int] | None = None
    for cell in partition.cells:
        members = list(cell)
        kinds = {v < basic_count for v in members}
        if len(kinds) > 1:
            anomalies.append(f"cell mixes basic and binding vertices: {members}")
        if apex in members:
            apex_cell = members
            if members != [apex]:
                anomalies.append(f"apex cell is not a singleton: {members}")
            continue
        if any(v < basic_count for v in members):
            basic_cells.append(members)
    if apex_cell is None:
        anomalies.append("apex vertex lost its cell")

    unmixed = [
        cell
        for cell in basic_cells
        if not (any(v < n for v in cell) and any(n <= v < 2 * n for v in cell))
    ]
    return GiResult(
        verdict=not unmixed,
        partition=partition,
        rounds=trace.rounds,
        dims=list(trace.dims),
        basic_cells=basic_cells,
        unmixed_cells=unmixed,
        anomalies=anomalies,
    )
