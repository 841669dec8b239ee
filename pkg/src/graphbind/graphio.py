"""Reading and writing graphs: graph6, whitespace edgelist, matrix-json.

graph6 and the edgelist format carry simple 0/1 graphs (edges labeled 1,
everything else blank); matrix-json round-trips arbitrary label matrices.
"""

from __future__ import annotations

import json
import os
from typing import Literal

import numpy as np

from .core import BLANK, DirectedLabeledGraph, GraphError, LabeledGraph

Format = Literal["graph6", "edgelist", "matrix-json"]

FORMATS: tuple[str, ...] = ("graph6", "edgelist", "matrix-json")


class ParseError(GraphError):
    """Malformed graph file; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def read_graph(path: str | os.PathLike, format: Format) -> LabeledGraph:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    return loads_graph(text, format)


def write_graph(g: LabeledGraph, path: str | os.PathLike, format: Format) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_graph(g, format))


def loads_graph(text: str, format: Format) -> LabeledGraph:
    if format == "graph6":
        return _parse_graph6(text)
    if format == "edgelist":
        return _parse_edgelist(text)
    if format == "matrix-json":
        return _parse_matrix_json(text)
    raise GraphError(f"unknown format {format!r}; expected one of {FORMATS}")


def dumps_graph(g: LabeledGraph, format: Format) -> str:
    if format == "graph6":
        return _emit_graph6(g)
    if format == "edgelist":
        return _emit_edgelist(g)
    if format == "matrix-json":
        return json.dumps({"n": g.n, "labels": g.labels.tolist()}) + "\n"
    raise GraphError(f"unknown format {format!r}; expected one of {FORMATS}")


def guess_format(path: str | os.PathLike) -> Format:
    ext = os.path.splitext(str(path))[1].lower()
    if ext == ".g6":
        return "graph6"
    if ext == ".json":
        return "matrix-json"
    return "edgelist"


# ---------------------------------------------------------------------------
# graph6 (the standard ASCII encoding for simple graphs).

def _parse_graph6(text: str) -> LabeledGraph:
    line = text.strip().splitlines()[0].strip() if text.strip() else ""
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise ParseError("empty graph6 input", 1)
    data = [ord(c) - 63 for c in line]
    if any(not 0 <= b <= 63 for b in data):
        bad = next(i for i, b in enumerate(data) if not 0 <= b <= 63)
        raise ParseError(f"invalid graph6 character {line[bad]!r}", 1, bad + 1)
    if data[0] <= 62:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] <= 62:
        n = (data[1] << 12) + (data[2] << 6) + data[3]
        body = data[4:]
    elif len(data) >= 8:
        n = 0
        for b in data[2:8]:
            n = (n << 6) + b
        body = data[8:]
    else:
        raise ParseError("truncated graph6 size header", 1)
    if n < 1:
        raise ParseError("graph6 order must be at least 1", 1)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ParseError(f"expected {need} body characters, got {len(body)}", 1)
    bits = []
    for b in body:
        bits.extend((b >> shift) & 1 for shift in range(5, -1, -1))
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                out[u, v] = out[v, u] = 1
            k += 1
    return LabeledGraph(out)


def _emit_graph6(g: LabeledGraph) -> str:
    labels = set(np.unique(g.labels).tolist())
    if not labels <= {0, 1} or (g.labels.diagonal() != BLANK).any():
        raise GraphError("graph6 encodes simple 0/1 graphs only")
    n = g.n
    if n <= 62:
        header = [n]
    elif n <= 258047:
        header = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        raise GraphError("graph too large for this writer")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(int(g.labels[u, v] != BLANK))
    while len(bits) % 6:
        bits.append(0)
    body = [
        (bits[i] << 5) | (bits[i + 1] << 4) | (bits[i + 2] << 3)
        | (bits[i + 3] << 2) | (bits[i + 4] << 1) | bits[i + 5]
        for i in range(0, len(bits), 6)
    ]
    return "".join(chr(b + 63) for b in header + body) + "\n"


# ---------------------------------------------------------------------------
# Whitespace edgelist: first line n, then one 1-based edge per line.

def _parse_edgelist(text: str) -> LabeledGraph:
    lines = text.splitlines()
    meaningful = [(i + 1, line) for i, line in enumerate(lines) if line.strip()]
    if not meaningful:
        raise ParseError("empty edgelist", 1)
    first_no, first = meaningful[0]
    try:
        n = int(first.strip())
    except ValueError:
        raise ParseError("first line must be the vertex count", first_no) from None
    if n < 1:
        raise ParseError("vertex count must be at least 1", first_no)
    out = np.zeros((n, n), dtype=np.int64)
    for line_no, line in meaningful[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected two endpoints", line_no)
        ends = []
        for k, part in enumerate(parts):
            try:
                ends.append(int(part))
            except ValueError:
                column = line.index(part) + 1
                raise ParseError(f"not an integer: {part!r}", line_no, column) from None
        u, v = ends
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"endpoint out of range 1..{n}", line_no)
        if u == v:
            raise ParseError("loops are not allowed", line_no)
        out[u - 1, v - 1] = out[v - 1, u - 1] = 1
    return LabeledGraph(out)


def _emit_edgelist(g: LabeledGraph) -> str:
    labels = set(np.unique(g.labels).tolist())
    if not labels <= {0, 1} or (g.labels.diagonal() != BLANK).any():
        raise GraphError("edgelist encodes simple 0/1 graphs only")
    lines = [str(g.n)]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.labels[u, v] != BLANK:
                lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# matrix-json: {"n": ..., "labels": [[...]]}

def _parse_matrix_json(text: str) -> LabeledGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "n" not in doc or "labels" not in doc:
        raise ParseError('expected an object with "n" and "labels"', 1)
    labels = doc["labels"]
    if len(labels) != doc["n"]:
        raise ParseError('"labels" does not have "n" rows', 1)
    return LabeledGraph(np.asarray(labels, dtype=np.int64))


def read_directed_graph(path: str | os.PathLike) -> DirectedLabeledGraph:
    """matrix-json reader for possibly asymmetric (converse-equivalent) matrices."""
    with open(path, "r", encoding="ascii") as fh:
        doc = json.load(fh)
    return DirectedLabeledGraph(np.asarray(doc["labels"], dtype=np.int64))


def write_directed_graph(g: DirectedLabeledGraph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump({"n": g.n, "labels": g.labels.tolist()}, fh)
        fh.write("\n")
