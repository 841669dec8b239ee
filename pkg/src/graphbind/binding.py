"""Binding graphs, wing graphs, and the derived relabelings of their stable graphs.

A binding graph attaches one degree-2 vertex to every pair of basic
vertices, so any local difference between basic vertices is broadcast
through a dedicated channel during refinement.  The derived graphs keep
decreasing amounts of the stable labeling (vertices and binding edges; then
only binding vertices plus a uniform binding-edge label) while provably
stabilizing back to the same partition.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .core import (
    BLANK,
    GraphError,
    LabeledGraph,
    Partition,
    is_connected,
    is_simple,
)


@dataclass(frozen=True)
class BindingGraph:
    """A binding graph together with its pair-to-binder index table.

    Vertices [0..basic_n) are basic; the rest are binding vertices, one per
    unordered basic pair, numbered by the lexicographic rank of the pair.
    """

    graph: LabeledGraph
    basic_n: int
    binder: dict[tuple[int, int], int]

    def __post_init__(self) -> None:
        n = self.basic_n
        n1 = n * (n + 1) // 2
        if self.graph.n != n1:
            raise GraphError(f"binding graph of {n} basic vertices has order {n1}")
        if len(self.binder) != n * (n - 1) // 2:
            raise GraphError("binder must map every unordered basic pair")
        m = self.graph.labels
        for (u, v), p in self.binder.items():
            if not (0 <= u < v < n and n <= p < n1):
                raise GraphError("binder indices out of range")
            neighbors = np.flatnonzero(m[p] != BLANK)
            if sorted(neighbors.tolist()) != sorted([u, v]):
                raise GraphError(f"binding vertex {p} must be adjacent to exactly {{{u},{v}}}")

    @property
    def n1(self) -> int:
        return self.graph.n

    def binding_vertex(self, u: int, v: int) -> int:
        if u == v:
            raise GraphError("a pair consists of two distinct basic vertices")
        return self.binder[(min(u, v), max(u, v))]

    def bound_pair(self, p: int) -> tuple[int, int]:
        for pair, q in self.binder.items():
            if q == p:
                return pair
        raise GraphError(f"{p} is not a binding vertex")


def pair_rank(u: int, v: int, n: int) -> int:
    """Lexicographic rank of the pair (u, v), u < v, among all pairs of [0..n)."""
    if not 0 <= u < v < n:
        raise GraphError("need 0 <= u < v < n")
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def _normalized_simple(a: LabeledGraph, *, connected: bool = True) -> np.ndarray:
    if not is_simple(a):
        raise GraphError("input must be a simple graph (blank diagonal, one edge label)")
    if connected and not is_connected(a):
        raise GraphError("input must be connected")
    return (a.labels != BLANK).astype(np.int64)


def binding_graph(a: LabeledGraph) -> BindingGraph:
    """Attach one degree-2 binding vertex to every pair of basic vertices.

    Binding edges carry the same label as the basic edges, so the result is
    again a simple graph.
    """
    n = a.n
    if n <= 2:
        raise GraphError("binding graphs need more than two basic vertices")
    adj = _normalized_simple(a)
    n1 = n * (n + 1) // 2
    out = np.zeros((n1, n1), dtype=np.int64)
    out[:n, :n] = adj
    binder: dict[tuple[int, int], int] = {}
    for u in range(n):
        for v in range(u + 1, n):
            p = n + pair_rank(u, v, n)
            binder[(u, v)] = p
            out[u, p] = out[p, u] = 1
            out[v, p] = out[p, v] = 1
    return BindingGraph(graph=LabeledGraph(out), basic_n=n, binder=binder)


def plain_binding_graph(n: int) -> BindingGraph:
    """Binding graph over an edgeless basic graph of order n."""
    if n < 2:
        raise GraphError("a plain binding graph needs at least two basic vertices")
    n1 = n * (n + 1) // 2
    out = np.zeros((n1, n1), dtype=np.int64)
    binder: dict[tuple[int, int], int] = {}
    for u in range(n):
        for v in range(u + 1, n):
            p = n + pair_rank(u, v, n)
            binder[(u, v)] = p
            out[u, p] = out[p, u] = 1
            out[v, p] = out[p, v] = 1
    return BindingGraph(graph=LabeledGraph(out), basic_n=n, binder=binder)


def wing_graph(a1: LabeledGraph, a2: LabeledGraph) -> LabeledGraph:
    """Disjoint copies of two order-n graphs plus an apex adjacent to all."""
    if a1.n != a2.n:
        raise GraphError(f"orders differ: {a1.n} != {a2.n}")
    n = a1.n
    adj1 = _normalized_simple(a1)
    adj2 = _normalized_simple(a2)
    out = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int64)
    out[:n, :n] = adj1
    out[n : 2 * n, n : 2 * n] = adj2
    out[2 * n, : 2 * n] = 1
    out[: 2 * n, 2 * n] = 1
    return LabeledGraph(out)


def build_psi(b: BindingGraph, bhat: LabeledGraph) -> LabeledGraph:
    """Keep the stable labels on vertices and unblank edges of b, blank the rest."""
    if bhat.n != b.n1:
        raise GraphError("stable graph order does not match the binding graph")
    blank_off_diag = (b.graph.labels == BLANK) & ~np.eye(b.n1, dtype=bool)
    return LabeledGraph(np.where(blank_off_diag, BLANK, bhat.labels))


def build_phi(b: BindingGraph, bhat: LabeledGraph) -> LabeledGraph:
    """Like build_psi, but additionally blank all basic-basic edges."""
    psi = build_psi(b, bhat).labels.copy()
    n = b.basic_n
    basic_off_diag = np.zeros_like(psi, dtype=bool)
    basic_off_diag[:n, :n] = ~np.eye(n, dtype=bool)
    return LabeledGraph(np.where(basic_off_diag, BLANK, psi))


def build_theta(phi: LabeledGraph, b: BindingGraph) -> LabeledGraph:
    """Keep only the binding-vertex labels of phi; all binding edges get one
    fresh common label; everything else (basic vertices included) is blank."""
    if phi.n != b.n1:
        raise GraphError("phi order does not match the binding graph")
    n = b.basic_n
    fresh = int(phi.labels.max()) + 1
    out = np.zeros((b.n1, b.n1), dtype=np.int64)
    for p in range(n, b.n1):
        out[p, p] = phi.labels[p, p]
    binding_edges = (b.graph.labels != BLANK) & ~np.eye(b.n1, dtype=bool)
    binding_edges[:n, :n] = False
    out[binding_edges] = fresh
    return LabeledGraph(out)


@dataclass(frozen=True)
class BvLabelingReport:
    """Outcome of the regularity check of a binding-vertex labeling."""

    stable: bool
    basic_partition: Partition
    binding_partition: Partition
    degree_table: dict[tuple[int, int], int | None]


def check_stable_bv_labeling(pi: dict[int, int], n: int) -> BvLabelingReport:
    """Check whether a binding-vertex labeling of the plain binding graph is stable.

    The labeling induces a partition of basic vertices by labeling type (the
    multiset of labels on a vertex's binding vertices) and of binding
    vertices by label.  It is stable iff every binding cell has a constant
    number of neighbors in every basic cell.  Labels must avoid the blank
    and the binding-edge label (0 and 1).
    """
    b = plain_binding_graph(n)
    expected = set(range(n, b.n1))
    if set(pi) != expected:
        raise GraphError("labeling must cover exactly the binding vertices")
    if any(label in (0, 1) for label in pi.values()):
        raise GraphError("labels 0 and 1 are reserved (blank and binding edges)")

    bound = {p: pair for pair, p in b.binder.items()}
    types: dict[int, Counter] = {u: Counter() for u in range(n)}
    for (u, v), p in b.binder.items():
        types[u][pi[p]] += 1
        types[v][pi[p]] += 1
    by_type: dict[tuple, list[int]] = {}
    for u in range(n):
        by_type.setdefault(tuple(sorted(types[u].items())), []).append(u)
    basic_cells = sorted(by_type.values(), key=lambda c: c[0])

    by_label: dict[int, list[int]] = {}
    for p in sorted(pi):
        by_label.setdefault(pi[p], []).append(p)
    binding_cells = sorted(by_label.values(), key=lambda c: c[0])

    cell_of_basic = {}
    for k, cell in enumerate(basic_cells):
        for u in cell:
            cell_of_basic[u] = k
    degree_table: dict[tuple[int, int], int | None] = {}
    stable = True
    for dk, dcell in enumerate(binding_cells):
        for ck in range(len(basic_cells)):
            degrees = set()
            for p in dcell:
                u, v = bound[p]
                degrees.add((cell_of_basic[u] == ck) + (cell_of_basic[v] == ck))
            if len(degrees) == 1:
                degree_table[(dk, ck)] = degrees.pop()
            else:
                degree_table[(dk, ck)] = None
                stable = False

    basic_partition = Partition.from_cells(basic_cells)
    # Binding vertices are re-indexed from 0 (subtract n) so the partition
    # covers a contiguous range.
    binding_partition = Partition.from_cells(
        [[p - n for p in cell] for cell in binding_cells]
    )
    return BvLabelingReport(
        stable=stable,
        basic_partition=basic_partition,
        binding_partition=binding_partition,
        degree_table=degree_table,
    )
