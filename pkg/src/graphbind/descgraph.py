"""Three routes to the one-round description graph of a labeled graph.

All three classify vertex pairs by the walks of every sort and length
between them, and they agree up to relabeling:

* the truncated walk-generating matrix, built exactly over symbolic walk
  polynomials (the production route for correctness checks),
* the spectral route through eigenprojectors, defined for real 0/1 inputs,
* the adjugate of the characteristic matrix, decided by randomized
  evaluation over a large prime field (one-sided Monte Carlo).

Walks step over non-blank entries only, so in every route the blank label
behaves as the annihilating zero: it is a reserved marker, not one of the
independent edge variables.  Without that convention the spectral route
(which lives over the reals, where a non-edge contributes nothing) could
not match the other two.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

import numpy as np

from .core import (
    BLANK,
    GraphError,
    LabeledGraph,
    equivalent_variable_substitution,
    first_encounter_relabel,
)

#: Monomial-count budget for exact walk polynomials (desk scale n <= 12).
GAMMA_TERM_BUDGET = 5_000_000

#: 62-bit prime used for adjugate evaluations.
DEFAULT_ADJOINT_PRIME = 4611686018427387847

_MIN_ADJOINT_PRIME = 1 << 61


class BudgetExceededError(GraphError):
    """Exact walk polynomials outgrew the configured memory budget."""


@dataclass(frozen=True)
class WalkPolynomial:
    """Exact symbolic entry of a matrix power.

    `terms` maps a monomial (sorted tuple of labels along a walk) to its
    positive multiplicity; the empty monomial encodes the constant 1 coming
    from the zeroth power.
    """

    terms: dict[tuple[int, ...], int]

    def __post_init__(self) -> None:
        for mono, count in self.terms.items():
            if count <= 0:
                raise GraphError("walk polynomials store positive multiplicities only")
            if tuple(sorted(mono)) != mono:
                raise GraphError("monomials are sorted label tuples")

    def canonical(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        return tuple(sorted(self.terms.items()))


@dataclass(frozen=True)
class GammaMatrix:
    """Truncated walk-generating matrix: per entry, one polynomial per length."""

    n: int
    entries: tuple[tuple[dict[int, WalkPolynomial], ...], ...]

    def signature(self, i: int, j: int) -> tuple:
        return tuple(
            (k, poly.canonical()) for k, poly in sorted(self.entries[i][j].items())
        )


def gamma_matrix(a: LabeledGraph, t: int) -> GammaMatrix:
    """Exact symbolic powers 0..t of the label matrix, entry by entry.

    Entries count genuine walks only: a blank step annihilates the product,
    so monomials never contain the blank label.
    """
    if t < 0:
        raise GraphError("truncation must be non-negative")
    n = a.n
    m = a.labels.tolist()
    total_terms = 0
    # power_terms[u][v]: monomial -> count for walks of the current length.
    power: list[list[dict[tuple[int, ...], int]]] = [
        [({(m[u][v],): 1} if m[u][v] != BLANK else {}) for v in range(n)]
        for u in range(n)
    ]
    collected: list[list[dict[int, WalkPolynomial]]] = [
        [({0: WalkPolynomial({(): 1})} if u == v else {}) for v in range(n)]
        for u in range(n)
    ]
    if t >= 1:
        for u in range(n):
            for v in range(n):
                if power[u][v]:
                    collected[u][v][1] = WalkPolynomial(dict(power[u][v]))
    for k in range(2, t + 1):
        nxt: list[list[dict[tuple[int, ...], int]]] = [
            [dict() for _ in range(n)] for _ in range(n)
        ]
        for u in range(n):
            for w in range(n):
                partial = power[u][w]
                if not partial:
                    continue
                row_w = m[w]
                for v in range(u, n):
                    label = row_w[v]
                    if label == BLANK:
                        continue
                    bucket = nxt[u][v]
                    for mono, count in partial.items():
                        key = tuple(sorted(mono + (label,)))
                        bucket[key] = bucket.get(key, 0) + count
        for u in range(n):
            for v in range(u, n):
                nxt[v][u] = nxt[u][v]
                total_terms += len(nxt[u][v])
        if total_terms > GAMMA_TERM_BUDGET:
            raise BudgetExceededError(
                f"walk polynomials exceeded {GAMMA_TERM_BUDGET} stored terms at length {k}"
            )
        power = nxt
        for u in range(n):
            for v in range(n):
                if power[u][v]:
                    collected[u][v][k] = WalkPolynomial(dict(power[u][v]))
    return GammaMatrix(n=n, entries=tuple(tuple(row) for row in collected))


def gamma_description_graph(a: LabeledGraph, t: int | None = None) -> LabeledGraph:
    """Description graph via exact truncated walk counting.

    `t=None` uses the always-sufficient truncation n-1 (the degree of the
    minimum polynomial, minus one, already suffices but need not be known).
    """
    truncation = a.n - 1 if t is None else t
    if a.n == 1:
        return LabeledGraph(np.array([[1]]))
    gm = gamma_matrix(a, truncation)
    codes = [[("sig", gm.signature(u, v)) for v in range(a.n)] for u in range(a.n)]
    return equivalent_variable_substitution(codes)


def minimal_polynomial_degree(a: LabeledGraph, tol: float = 1e-6) -> int:
    """Degree of the minimum polynomial of a real 0/1 matrix.

    Real symmetric matrices are diagonalizable, so the degree equals the
    number of distinct eigenvalues; eigenvalues closer than `tol` count as
    one.
    """
    _require_binary(a)
    eigenvalues = np.linalg.eigvalsh(a.labels.astype(float))
    return int(_cluster_sorted(np.sort(eigenvalues), tol).max()) + 1


# ---------------------------------------------------------------------------
# Spectral route.

@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues with their orthogonal projectors."""

    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...]
    tol: float
    ill_conditioned: bool

    def __post_init__(self) -> None:
        n = self.projectors[0].shape[0]
        for i, p in enumerate(self.projectors):
            for j, q in enumerate(self.projectors):
                expect = p if i == j else np.zeros((n, n))
                if not np.allclose(p @ q, expect, atol=max(self.tol, 1e-8)):
                    raise GraphError("projectors are not mutually orthogonal idempotents")


def _require_binary(a: LabeledGraph) -> None:
    if not set(np.unique(a.labels).tolist()) <= {0, 1}:
        raise GraphError("this route is defined for real 0/1 matrices only")


def _cluster_sorted(values: np.ndarray, tol: float) -> np.ndarray:
    """Cluster ids for a sorted 1-D array, splitting at gaps larger than tol."""
    if values.size == 0:
        return np.zeros(0, dtype=np.int64)
    breaks = np.diff(values) > tol
    return np.concatenate([[0], np.cumsum(breaks)]).astype(np.int64)


def spectral_decomposition(a: LabeledGraph, tol: float = 1e-9) -> SpectralDecomposition:
    _require_binary(a)
    if tol <= 0:
        raise GraphError("tolerance must be positive")
    values, vectors = np.linalg.eigh(a.labels.astype(float))
    ids = _cluster_sorted(values, tol)
    eigenvalues = []
    projectors = []
    gaps_ok = True
    for k in range(int(ids.max()) + 1):
        sel = ids == k
        eigenvalues.append(float(values[sel].mean()))
        basis = vectors[:, sel]
        projectors.append(basis @ basis.T)
    if len(eigenvalues) > 1:
        gaps_ok = bool(np.diff(np.sort(eigenvalues)).min() >= 10 * tol)
    recon = sum(mu * p for mu, p in zip(eigenvalues, projectors))
    if not np.allclose(recon, a.labels.astype(float), atol=max(tol, 1e-8)):
        raise GraphError("eigendecomposition failed to reconstruct the matrix")
    return SpectralDecomposition(
        eigenvalues=tuple(eigenvalues),
        projectors=tuple(projectors),
        tol=tol,
        ill_conditioned=not gaps_ok,
    )


def spectral_description_graph(a: LabeledGraph, tol: float = 1e-9) -> LabeledGraph:
    """Description graph via eigenprojectors of a 0/1 matrix.

    Positions are classified by the vector of their entries across all
    eigenprojectors, quantized by gap-clustering at `tol`.  The projector of
    the zero eigenvalue participates: leaving it out would discard the
    constant (length-0) walk term and merge diagonal with off-diagonal
    classes on singular matrices.
    """
    if a.n == 1:
        return LabeledGraph(np.array([[1]]))
    dec = spectral_decomposition(a, tol)
    if dec.ill_conditioned:
        warnings.warn("eigenvalue gaps within 10x tolerance; grouping may be unreliable", RuntimeWarning)
    signature = np.zeros((a.n, a.n), dtype=np.int64)
    for proj in dec.projectors:
        proj = (proj + proj.T) / 2.0
        flat = proj.ravel()
        order = np.argsort(flat, kind="stable")
        ids = np.empty_like(order)
        ids[order] = _cluster_sorted(flat[order], tol)
        combined = signature * (int(ids.max()) + 1) + ids.reshape(a.n, a.n)
        # Re-compress after every projector so the combined id stays small.
        signature = first_encounter_relabel(combined)
    return equivalent_variable_substitution(signature)


# ---------------------------------------------------------------------------
# Adjugate route.

def _is_probable_prime(p: int) -> bool:
    if p < 2:
        return False
    small = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Deterministic for p < 3.3e24 with these bases.
    for base in small:
        x = pow(base, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _modular_adjugate(m: list[list[int]], p: int) -> list[list[int]] | None:
    """adj(M) = det(M) * inv(M) mod p; None when M is singular mod p."""
    n = len(m)
    a = [row[:] for row in m]
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] % p), None)
        if pivot is None:
            return None
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            det = -det % p
        det = det * a[col][col] % p
        scale = pow(a[col][col], p - 2, p)
        a[col] = [x * scale % p for x in a[col]]
        inv[col] = [x * scale % p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[col])]
                inv[r] = [(x - factor * y) % p for x, y in zip(inv[r], inv[col])]
    return [[det * x % p for x in row] for row in inv]


def adjoint_description_graph(
    a: LabeledGraph,
    trials: int = 3,
    prime: int = DEFAULT_ADJOINT_PRIME,
    seed: int | None = None,
) -> LabeledGraph:
    """Description graph via the adjugate of the characteristic matrix.

    Entries of adj(lambda*I - A) are polynomials in lambda and the labels;
    they are compared by evaluating at `trials` independent uniformly random
    assignments over the prime field and grouping positions equal at all of
    them.  The decision is one-sided Monte Carlo: distinct polynomials
    collide with probability at most deg/prime per trial.
    """
    if trials < 2:
        raise GraphError("at least two independent trials are required")
    if prime < _MIN_ADJOINT_PRIME:
        raise GraphError("prime too small: need at least 2**61")
    if not _is_probable_prime(prime):
        raise GraphError(f"{prime} is not prime")
    rng = random.Random(seed)
    n = a.n
    labels = np.unique(a.labels).tolist()
    samples: list[list[list[int]]] = []
    while len(samples) < trials:
        # The blank is the annihilating non-edge marker, not an independent
        # variable; only the true labels are randomized.
        assignment = {
            label: (0 if label == BLANK else rng.randrange(prime)) for label in labels
        }
        lam = rng.randrange(prime)
        m = [
            [((lam if i == j else 0) - assignment[int(a.labels[i, j])]) % prime for j in range(n)]
            for i in range(n)
        ]
        adj = _modular_adjugate(m, prime)
        if adj is None:
            continue  # unlucky lambda hit an eigenvalue mod p; resample
        samples.append(adj)
    codes = [
        [tuple(sample[i][j] for sample in samples) for j in range(n)]
        for i in range(n)
    ]
    return equivalent_variable_substitution(codes)
