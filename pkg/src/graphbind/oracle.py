"""Ground-truth isomorphism and automorphism orbits by backtracking search.

These oracles audit the refinement machinery, so they can run in an
unpruned mode that assumes nothing about it.  The pruned mode restricts the
search to stable-partition cells, which is sound because cells are unions
of orbits, but that soundness is itself one of the audited claims; keep the
unpruned mode for orders small enough to afford it.
"""

from __future__ import annotations

import numpy as np

from .core import GraphError, LabeledGraph, Partition
from .partition import vertex_partition
from .refine import sas_stabilize

DENSE_BOUND = 10
PRUNED_BOUND = 16


class OracleBoundError(GraphError):
    """Instance too large for exhaustive search."""


def _check_bound(n: int, prune: bool, max_n: int | None) -> None:
    bound = max_n if max_n is not None else (PRUNED_BOUND if prune else DENSE_BOUND)
    if n > bound:
        raise OracleBoundError(f"order {n} exceeds the search bound {bound}")


def _search(
    a: np.ndarray,
    b: np.ndarray,
    order: list[int],
    candidates: list[list[int]],
) -> tuple[int, ...] | None:
    """First permutation sigma with a[sigma(i)][sigma(j)] == b[i][j].

    Vertices of b are assigned along `order`; candidate images are tried in
    increasing order, so with `order` ascending the first hit is the
    lexicographically least witness.
    """
    n = a.shape[0]
    sigma = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for w in candidates[i]:
            if used[w] or a[w, w] != b[i, i]:
                continue
            ok = True
            for j in assigned:
                if a[w, sigma[j]] != b[i, j] or a[sigma[j], w] != b[j, i]:
                    ok = False
                    break
            if not ok:
                continue
            sigma[i] = w
            used[w] = True
            assigned.append(i)
            if extend(pos + 1):
                return True
            assigned.pop()
            used[w] = False
            sigma[i] = -1
        return False

    return tuple(sigma) if extend(0) else None


def _cell_candidates(a: LabeledGraph, b: LabeledGraph) -> list[list[int]] | None:
    """Per-vertex candidate images induced by matching stable cells.

    Sound: an isomorphism carries stable cells of b onto stable cells of a,
    and cells correspond iff the stable matrices restricted to them share
    their (canonical) label pattern; matching cells by their sorted pattern
    signature therefore never discards a witness.  Returns None when the
    signatures cannot be matched at all (no isomorphism exists).
    """
    sa = sas_stabilize(a).stable
    sb = sas_stabilize(b).stable
    pa, pb = vertex_partition(sa), vertex_partition(sb)

    def signatures(stable, part):
        # Necessary invariant of corresponding cells: size plus the sorted
        # label-count profile of a member row in the stable graph.
        sig = {}
        for k, cell in enumerate(part.cells):
            counts = np.unique(stable.labels[cell[0]], return_counts=True)[1]
            sig[k] = (len(cell), tuple(np.sort(counts).tolist()))
        return sig

    siga, sigb = signatures(sa, pa), signatures(sb, pb)
    cells_by_sig: dict[object, list[int]] = {}
    for k, s in siga.items():
        cells_by_sig.setdefault(s, []).append(k)
    candidates: list[list[int]] = [[] for _ in range(b.n)]
    for k, cell in enumerate(pb.cells):
        image_cells = cells_by_sig.get(sigb[k])
        if not image_cells:
            return None
        allowed = sorted(v for ak in image_cells for v in pa.cells[ak])
        for i in cell:
            candidates[i] = allowed
    return candidates


def is_isomorphic_bruteforce(
    a: LabeledGraph,
    b: LabeledGraph,
    *,
    prune: bool = True,
    max_n: int | None = None,
) -> tuple[int, ...] | None:
    """Witness permutation with a[sigma(i)][sigma(j)] == b[i][j], or None.

    The returned witness is the lexicographically least one.  Any witness is
    re-verified against the definition before being returned.
    """
    if a.n != b.n:
        return None
    _check_bound(a.n, prune, max_n)
    # A witness preserves labels exactly, so both graphs must use the same
    # labels with the same multiplicities.
    ua, ca = np.unique(a.labels, return_counts=True)
    ub, cb = np.unique(b.labels, return_counts=True)
    if not (np.array_equal(ua, ub) and np.array_equal(ca, cb)):
        return None
    if prune:
        candidates = _cell_candidates(a, b)
        if candidates is None:
            return None
    else:
        candidates = [list(range(a.n)) for _ in range(a.n)]
    sigma = _search(a.labels, b.labels, list(range(a.n)), candidates)
    if sigma is not None:
        idx = np.asarray(sigma)
        if not np.array_equal(a.labels[np.ix_(idx, idx)], b.labels):
            raise AssertionError("search returned an invalid witness")
    return sigma


def _find_automorphism_mapping(g: LabeledGraph, u: int, v: int, candidates: list[list[int]]) -> tuple[int, ...] | None:
    order = [u] + [i for i in range(g.n) if i != u]
    pinned = [list(cand) for cand in candidates]
    pinned[u] = [v]
    return _search(g.labels, g.labels, order, pinned)


def automorphism_orbits(
    g: LabeledGraph,
    *,
    prune: bool = True,
    max_n: int | None = None,
) -> Partition:
    """Exact orbit partition of the automorphism group.

    Vertices u, v share an orbit iff some automorphism maps u to v; the
    search settles each undecided pair, and every automorphism found merges
    all pairs it witnesses at once.
    """
    _check_bound(g.n, prune, max_n)
    n = g.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    if prune:
        cells = vertex_partition(sas_stabilize(g).stable).cells
    else:
        cells = (tuple(range(n)),)
    candidates: list[list[int]] = [[] for _ in range(n)]
    for cell in cells:
        for i in cell:
            candidates[i] = list(cell)

    diag = g.labels.diagonal()
    for cell in cells:
        for u in cell:
            for v in cell:
                if v <= u or find(u) == find(v) or diag[u] != diag[v]:
                    continue
                sigma = _find_automorphism_mapping(g, u, v, candidates)
                if sigma is not None:
                    for i, img in enumerate(sigma):
                        union(i, img)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return Partition.from_cells(groups.values())
