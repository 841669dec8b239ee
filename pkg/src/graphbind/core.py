"""Labeled complete graphs over integer label identifiers.

A graph of order n is a symmetric n x n matrix of non-negative integer
labels.  Label 0 is the reserved blank: it marks non-edges (and unlabeled
vertices) in user input.  Labels are opaque: the only meaningful operation
on them is equality, so any relabeling that preserves the equality pattern
of the matrix represents the same graph.  Refined graphs produced by the
substitution machinery are complete labeled graphs whose labels start at 1;
the blank survives only in user input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

#: Label identifiers are plain non-negative ints; 0 is the reserved blank
#: (never issued by interning).
LabelId = int

BLANK = 0

Code = Hashable


class GraphError(ValueError):
    """Malformed graph data or an operation precondition violation."""


class SymmetryError(GraphError):
    """Input matrix is not symmetric under code equality."""


class OrderMismatchError(GraphError):
    """Two graphs that must share an order do not."""


def _as_label_matrix(labels: object, *, name: str = "labels") -> np.ndarray:
    arr = np.asarray(labels)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphError(f"{name} must be a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise GraphError("a graph has at least one vertex")
    if not np.issubdtype(arr.dtype, np.integer):
        raise GraphError(f"{name} must be integers, got dtype {arr.dtype}")
    arr = arr.astype(np.int64, copy=True)
    if (arr < 0).any():
        raise GraphError("label identifiers are non-negative")
    arr.setflags(write=False)
    return arr


def _single_valued(keys: np.ndarray, values: np.ndarray) -> bool:
    """True iff equal entries of `keys` always face equal entries of `values`."""
    stride = int(values.max()) + 1
    pairs = np.unique(keys.astype(np.int64) * stride + values)
    return np.unique(pairs // stride).size == pairs.size


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Symmetric matrix of labels; the undirected labeled complete graph."""

    labels: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_label_matrix(self.labels)
        if not np.array_equal(arr, arr.T):
            raise SymmetryError("labeled graphs are symmetric; use DirectedLabeledGraph")
        object.__setattr__(self, "labels", arr)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"LabeledGraph(n={self.n}, dim={dim(self)})"


@dataclass(frozen=True, eq=False)
class DirectedLabeledGraph:
    """Possibly asymmetric label matrix; must respect converse equivalence.

    Converse equivalence: labels[u][v] == labels[r][s] iff
    labels[v][u] == labels[s][r].  This is exactly the class of matrices the
    ordered-pair refinement produces, and it is what makes the diagonal and
    the vertex partition of such a matrix well defined.
    """

    labels: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_label_matrix(self.labels)
        if not (_single_valued(arr.ravel(), arr.T.ravel()) and _single_valued(arr.T.ravel(), arr.ravel())):
            raise GraphError("matrix does not respect converse equivalence")
        object.__setattr__(self, "labels", arr)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"DirectedLabeledGraph(n={self.n}, dim={dim(self)})"


AnyGraph = LabeledGraph | DirectedLabeledGraph


def dim(g: AnyGraph) -> int:
    """Number of distinct labels in the matrix."""
    return int(np.unique(g.labels).size)


def is_imbedded(a: AnyGraph, b: AnyGraph) -> bool:
    """True iff equal entries of b force equal entries of a (a is coarser).

    Implemented by checking that every b-label faces a single a-label.
    """
    if a.n != b.n:
        raise OrderMismatchError(f"orders differ: {a.n} != {b.n}")
    return _single_valued(b.labels.ravel(), a.labels.ravel())


def is_equivalent(a: AnyGraph, b: AnyGraph) -> bool:
    """True iff a and b have the same equality pattern (mutual imbedding)."""
    return is_imbedded(a, b) and is_imbedded(b, a)


def same_matrix(a: AnyGraph, b: AnyGraph) -> bool:
    return a.n == b.n and bool(np.array_equal(a.labels, b.labels))


# ---------------------------------------------------------------------------
# Canonical byte encodings and the interning table.

def encode_code(code: Code) -> bytes:
    """Deterministic byte encoding of a code; equal codes encode equally.

    Supports ints, strings, bytes and (nested) tuples.  Encodings are
    length-prefixed so distinct codes never collide.
    """
    if isinstance(code, bool):
        raise TypeError("booleans are ambiguous codes")
    if isinstance(code, (int, np.integer)):
        body = str(int(code)).encode()
        return b"i" + len(body).to_bytes(4, "little") + body
    if isinstance(code, bytes):
        return b"b" + len(code).to_bytes(4, "little") + code
    if isinstance(code, str):
        body = code.encode()
        return b"s" + len(body).to_bytes(4, "little") + body
    if isinstance(code, tuple):
        parts = [encode_code(part) for part in code]
        body = b"".join(parts)
        return b"t" + len(parts).to_bytes(4, "little") + body
    raise TypeError(f"unsupported code type {type(code).__name__}")


def encode_label_multiset(labels: Iterable[int]) -> bytes:
    """Length-prefixed sorted byte sequence: multiset equality is byte equality."""
    arr = np.sort(np.asarray(list(labels), dtype=np.int64))
    return arr.size.to_bytes(8, "little") + arr.tobytes()


@dataclass
class CodeBook:
    """Interning table mapping canonical byte encodings to fresh label ids.

    Ids are issued in first-encounter order starting at `next_id`; id 0 is
    never issued (it is the reserved blank).  A book lives for a single
    substitution round.
    """

    entries: dict[bytes, int] = field(default_factory=dict)
    next_id: int = 1

    def intern(self, key: bytes) -> int:
        label = self.entries.get(key)
        if label is None:
            label = self.next_id
            self.entries[key] = label
            self.next_id += 1
        return label


def equivalent_variable_substitution(
    codes: Sequence[Sequence[Code]] | np.ndarray,
    *,
    blank_code: Code | None = None,
) -> LabeledGraph:
    """Relabel a symmetric matrix of opaque codes into a LabeledGraph.

    Identical codes receive identical labels and distinct codes distinct
    labels, so the result is equivalent to the input.  Labels are assigned
    by first encounter in row-major order starting from 1; entries equal to
    `blank_code` (when given) map to the reserved blank 0.
    """
    if isinstance(codes, np.ndarray) and np.issubdtype(codes.dtype, np.integer):
        return _substitute_int_matrix(codes, blank_code)
    rows = [list(row) for row in codes]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise GraphError("code matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise SymmetryError(f"codes differ at ({i},{j}) and ({j},{i})")
    book = CodeBook()
    out = np.zeros((n, n), dtype=np.int64)
    blank_key = None if blank_code is None else encode_code(blank_code)
    for i in range(n):
        for j in range(i, n):
            key = encode_code(rows[i][j])
            label = BLANK if key == blank_key else book.intern(key)
            out[i, j] = out[j, i] = label
    return LabeledGraph(out)


def _substitute_int_matrix(codes: np.ndarray, blank_code: Code | None) -> LabeledGraph:
    arr = np.asarray(codes, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphError("code matrix must be square")
    if not np.array_equal(arr, arr.T):
        raise SymmetryError("code matrix must be symmetric")
    out = first_encounter_relabel(arr)
    if blank_code is not None:
        mask = arr == int(blank_code)  # type: ignore[arg-type]
        if mask.all():
            return LabeledGraph(np.zeros_like(arr))
        # Renumber the non-blank classes only; their encounter order equals
        # their id order, so sorted ids give the new 1..d numbering directly.
        keep = np.unique(out[~mask])
        remap = np.zeros(int(out.max()) + 1, dtype=np.int64)
        remap[keep] = np.arange(1, keep.size + 1)
        return LabeledGraph(np.where(mask, BLANK, remap[out]))
    return LabeledGraph(out)


def first_encounter_relabel(arr: np.ndarray) -> np.ndarray:
    """Map distinct values of `arr` to 1..d by first encounter in row-major order."""
    flat = np.asarray(arr).ravel()
    _, first, inverse = np.unique(flat, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first)) + 1
    return rank[inverse].reshape(np.asarray(arr).shape).astype(np.int64)


# ---------------------------------------------------------------------------
# Small structural helpers shared across modules.

def is_simple(g: LabeledGraph) -> bool:
    """Blank diagonal and at most one edge label (dim <= 2)."""
    return bool((g.labels.diagonal() == BLANK).all()) and dim(g) <= 2


def adjacency(g: AnyGraph) -> np.ndarray:
    """0/1 adjacency of the non-blank, off-diagonal entries."""
    adj = (g.labels != BLANK).astype(np.int64)
    np.fill_diagonal(adj, 0)
    return adj


def is_connected(g: AnyGraph) -> bool:
    adj = adjacency(g)
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = adj[frontier].any(axis=0) & ~seen
        frontier = np.flatnonzero(nxt).tolist()
        seen |= nxt
    return bool(seen.all())


def permuted(g: LabeledGraph, sigma: Sequence[int]) -> LabeledGraph:
    """Graph h with h[sigma[i]][sigma[j]] == g[i][j]."""
    idx = np.asarray(sigma, dtype=np.int64)
    if sorted(idx.tolist()) != list(range(g.n)):
        raise GraphError("sigma is not a permutation of the vertices")
    out = np.empty_like(g.labels)
    out[np.ix_(idx, idx)] = g.labels
    return LabeledGraph(out)


def induced_subgraph(g: LabeledGraph, vertices: Sequence[int]) -> LabeledGraph:
    idx = np.asarray(vertices, dtype=np.int64)
    return LabeledGraph(g.labels[np.ix_(idx, idx)])


@dataclass(frozen=True)
class Partition:
    """Ordered list of disjoint sorted vertex cells covering [0..n)."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.cells or any(not cell for cell in self.cells):
            raise GraphError("cells must be nonempty")
        members = [v for cell in self.cells for v in cell]
        if len(set(members)) != len(members):
            raise GraphError("cells must be pairwise disjoint")
        if set(members) != set(range(len(members))):
            raise GraphError("cells must cover [0..n) exactly")

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]]) -> "Partition":
        canon = sorted((tuple(sorted(cell)) for cell in cells), key=lambda c: c[0])
        return cls(tuple(canon))

    @property
    def n(self) -> int:
        return sum(len(cell) for cell in self.cells)

    def cell_of(self) -> np.ndarray:
        """Vector mapping each vertex to its cell index."""
        out = np.empty(self.n, dtype=np.int64)
        for k, cell in enumerate(self.cells):
            out[list(cell)] = k
        return out

    def refines(self, other: "Partition") -> bool:
        """True iff every cell of self lies inside a cell of other."""
        coarse = other.cell_of()
        return all(len({int(coarse[v]) for v in cell}) == 1 for cell in self.cells)
