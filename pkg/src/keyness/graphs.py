"""Sentence co-occurrence graphs and the centrality scores computed on them.

Terms (or term groups) are vertices; an edge's weight counts the sentences in
which both endpoints occur.  PageRank and eigenvector centrality respect edge
weights; closeness and betweenness run on the unweighted skeleton, since the
weights are co-occurrence multiplicities, not distances.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .corpus import Document
from .errors import ConvergenceError

DAMPING = 0.85
PAGERANK_TOL = 1e-10
PAGERANK_MAX_ITER = 200
EIGEN_TOL = 1e-10
EIGEN_MAX_ITER = 100_000  # weakly-coupled clusters mix slowly; iterations are cheap


@dataclass
class Graph:
    """Undirected weighted graph over an ordered vertex list."""

    vertices: list
    adjacency: np.ndarray  # symmetric, zero diagonal

    @property
    def size(self) -> int:
        return len(self.vertices)

    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}


def _occurrence_sentences(candidates) -> list[set[int]]:
    return [set(s for s, _t in c.occurrences) for c in candidates]


def build_term_graph(document: Document, candidates) -> Graph:
    """Vertices are candidate term keys; edge weight = number of sentences
    containing both terms.  Isolated candidates stay as degree-0 vertices."""
    keys = [c.key for c in candidates]
    sentence_sets = _occurrence_sentences(candidates)
    return _cooccurrence_graph(keys, sentence_sets)


def build_topic_graph(groups, document: Document) -> Graph:
    """Vertices are term-group indices; edge weight = number of sentences
    containing members of both groups.  No self-loops."""
    sentence_sets = []
    for group in groups:
        merged: set[int] = set()
        for member in group.members:
            merged.update(s for s, _t in member.occurrences)
        sentence_sets.append(merged)
    return _cooccurrence_graph(list(range(len(groups))), sentence_sets)


def _cooccurrence_graph(vertices: list, sentence_sets: list[set[int]]) -> Graph:
    n = len(vertices)
    adj = np.zeros((n, n), dtype=np.float64)
    by_sentence: dict[int, list[int]] = {}
    for idx, sents in enumerate(sentence_sets):
        for s in sents:
            by_sentence.setdefault(s, []).append(idx)
    for members in by_sentence.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                adj[i, j] += 1.0
                adj[j, i] += 1.0
    return Graph(vertices=vertices, adjacency=adj)


# ---------------------------------------------------------------------------
# PageRank
# ---------------------------------------------------------------------------

def pagerank(graph: Graph, personalization: np.ndarray | None = None,
             damping: float = DAMPING, tol: float = PAGERANK_TOL,
             max_iter: int = PAGERANK_MAX_ITER) -> np.ndarray:
    """Power-iteration PageRank with a personalization (teleport) vector.

    Transition probability out of a vertex is proportional to edge weight.
    Dangling vertices redistribute their mass by the personalization vector.
    Seeds are L1-normalized internally; all-zero seeds fall back to uniform.
    Raises ConvergenceError (carrying the final residual) when the L1 residual
    stays above `tol` after `max_iter` sweeps.
    """
    n = graph.size
    if n == 0:
        return np.zeros(0)
    teleport = _normalized_seed(personalization, n)
    adj = graph.adjacency
    out = adj.sum(axis=1)
    dangling = out == 0.0
    # row-stochastic transition for non-dangling rows
    trans = np.zeros_like(adj)
    nz = ~dangling
    trans[nz] = adj[nz] / out[nz, None]

    rank = teleport.copy()
    residual = np.inf
    for _ in range(max_iter):
        dangling_mass = rank[dangling].sum()
        new = damping * (rank @ trans + dangling_mass * teleport) + (1 - damping) * teleport
        residual = np.abs(new - rank).sum()
        rank = new
        if residual < tol:
            return rank
    raise ConvergenceError(
        f"pagerank did not converge in {max_iter} iterations (residual {residual:.3e})",
        residual=residual)


def _normalized_seed(seed: np.ndarray | None, n: int) -> np.ndarray:
    if seed is None:
        return np.full(n, 1.0 / n)
    seed = np.asarray(seed, dtype=np.float64)
    if seed.shape != (n,):
        raise ValueError(f"seed vector has shape {seed.shape}, expected ({n},)")
    if np.any(seed < 0):
        raise ValueError("seed values must be nonnegative")
    total = seed.sum()
    if total <= 0.0:
        return np.full(n, 1.0 / n)
    return seed / total


# ---------------------------------------------------------------------------
# Centralities
# ---------------------------------------------------------------------------

def connected_components(graph: Graph) -> list[list[int]]:
    neighbors = _skeleton(graph)
    seen = np.zeros(graph.size, dtype=bool)
    components = []
    for start in range(graph.size):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        members = []
        while queue:
            v = queue.popleft()
            members.append(v)
            for w in neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        components.append(sorted(members))
    return components


def eigenvector_centrality(graph: Graph, tol: float = EIGEN_TOL,
                           max_iter: int = EIGEN_MAX_ITER) -> np.ndarray:
    """Principal-eigenvector centrality of the weighted adjacency matrix,
    L2-normalized and nonnegative.  A graph with no edges scores all zeros.

    Power iteration runs per connected component on (I + A): within a
    component the Perron root is simple, so the shifted iteration converges
    geometrically even on bipartite structures; the component with the
    largest spectral radius carries the centrality mass, everything else
    scores zero (matching a dense eigensolve of the whole matrix).
    """
    n = graph.size
    if n == 0:
        return np.zeros(0)
    adj = graph.adjacency
    if not adj.any():
        return np.zeros(n)

    best_value, best_vector, best_members = -np.inf, None, None
    for members in connected_components(graph):
        if len(members) == 1:
            continue
        sub = adj[np.ix_(members, members)]
        m = len(members)
        x = np.full(m, 1.0 / np.sqrt(m))
        residual = np.inf
        for _ in range(max_iter):
            y = x + sub @ x
            rayleigh = float(x @ y)  # estimates 1 + lambda_max
            y /= np.linalg.norm(y)
            residual = np.linalg.norm(y - x)
            x = y
            if residual < tol:
                break
        else:
            raise ConvergenceError(
                f"eigenvector centrality did not converge in {max_iter} iterations "
                f"(residual {residual:.3e})", residual=residual)
        if rayleigh > best_value:
            best_value, best_vector, best_members = rayleigh, np.abs(x), members

    out = np.zeros(n)
    if best_vector is not None:
        out[best_members] = best_vector
    return out


def _bfs_distances(neighbors: list[list[int]], source: int, n: int) -> np.ndarray:
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in neighbors[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _skeleton(graph: Graph) -> list[list[int]]:
    adj = graph.adjacency
    return [list(np.nonzero(adj[i])[0]) for i in range(graph.size)]


def closeness_centrality(graph: Graph) -> np.ndarray:
    """Closeness on the unweighted skeleton with the Wasserman-Faust
    correction for disconnected graphs: the per-component closeness is scaled
    by (reachable - 1) / (n - 1).  Isolated vertices score 0."""
    n = graph.size
    out = np.zeros(n)
    if n <= 1:
        return out
    neighbors = _skeleton(graph)
    for v in range(n):
        dist = _bfs_distances(neighbors, v, n)
        reachable = dist >= 0
        r = int(reachable.sum())  # includes v itself
        total = int(dist[reachable].sum())
        if r <= 1 or total == 0:
            continue
        out[v] = ((r - 1) / (n - 1)) * ((r - 1) / total)
    return out


def betweenness_centrality(graph: Graph) -> np.ndarray:
    """Brandes shortest-path betweenness on the unweighted skeleton,
    normalized by (n - 1)(n - 2) / 2 for an undirected graph."""
    n = graph.size
    scores = np.zeros(n)
    if n < 3:
        return scores
    neighbors = _skeleton(graph)
    for source in range(n):
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[source] = 1.0
        dist = np.full(n, -1, dtype=np.int64)
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in neighbors[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = np.zeros(n)
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w])
            if w != source:
                scores[w] += delta[w]
    # each undirected pair was counted from both endpoints
    scores /= 2.0
    scores /= (n - 1) * (n - 2) / 2.0
    return scores
