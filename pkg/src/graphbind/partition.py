"""Vertex partitions of labeled graphs and (strong) equitability checks."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import AnyGraph, GraphError, LabeledGraph, Partition, permuted, same_matrix


def vertex_partition(g: AnyGraph) -> Partition:
    """Group vertices by diagonal label; cells ordered by smallest member."""
    diag = g.labels.diagonal()
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(int(diag[v]), []).append(v)
    return Partition.from_cells(cells.values())


def _check_partition(g: AnyGraph, p: Partition) -> None:
    if p.n != g.n:
        raise GraphError(f"partition covers {p.n} vertices, graph has {g.n}")


def is_equitable(g: AnyGraph, p: Partition) -> bool:
    """Row label multisets into each cell depend only on the source cell.

    For every ordered pair of cells (C, D), the multiset of labels from a
    vertex of C into D must be independent of the chosen vertex (the
    diagonal entry is included when the vertex lies in D).
    """
    _check_partition(g, p)
    matrices = [g.labels]
    if not np.array_equal(g.labels, g.labels.T):
        matrices.append(np.ascontiguousarray(g.labels.T))
    for m in matrices:
        for src in p.cells:
            for dst in p.cells:
                block = np.sort(m[np.ix_(src, dst)], axis=1)
                if not (block == block[0]).all():
                    return False
    return True


def is_strongly_equitable(g: AnyGraph, p: Partition) -> bool:
    """Equitable, and label sets of distinct cell pairs are disjoint.

    Every label may appear between exactly one unordered pair of cells
    (same-cell blocks count as a pair with itself), so labels on edges
    between different cell pairs never overlap.
    """
    if not is_equitable(g, p):
        return False
    m = g.labels
    owner: dict[int, tuple[int, int]] = {}
    for i, src in enumerate(p.cells):
        for j, dst in enumerate(p.cells[i:], start=i):
            pair = (i, j)
            for label in np.unique(m[np.ix_(src, dst)]).tolist():
                if owner.setdefault(label, pair) != pair:
                    return False
    return True


def block_commutant_check(y: LabeledGraph, x: Sequence[int]) -> bool:
    """If x is an automorphism of y, it must fix every stable cell setwise.

    Returns whether that implication held; a non-automorphism x satisfies it
    vacuously.
    """
    if not same_matrix(permuted(y, x), y):
        return True
    cell_of = vertex_partition(y).cell_of()
    image = np.asarray(x, dtype=np.int64)
    return bool((cell_of[image] == cell_of).all())


def partition_json(g: AnyGraph) -> dict:
    """JSON-ready dump of the vertex partition: cells and their diagonal labels."""
    p = vertex_partition(g)
    diag = g.labels.diagonal()
    return {
        "cells": [list(cell) for cell in p.cells],
        "labels": [int(diag[cell[0]]) for cell in p.cells],
    }
