"""Average-linkage agglomerative clustering under cosine distance.

Hand-rolled rather than delegated so the merge order is fully deterministic
(stable argmin over a fixed input ordering) and so cutting the same merge
sequence at two thresholds preserves the guarantee that a lower threshold
never produces fewer clusters.
"""

from __future__ import annotations

import numpy as np


def cosine_distance_matrix(vectors: np.ndarray) -> np.ndarray:
    """Pairwise cosine distances, zero diagonal.  Zero vectors are treated as
    maximally distant from everything (distance 1) except themselves."""
    v = np.asarray(vectors, dtype=np.float64)
    norms = np.linalg.norm(v, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    unit = v / safe[:, None]
    sim = unit @ unit.T
    zero = norms == 0.0
    sim[zero, :] = 0.0
    sim[:, zero] = 0.0
    dist = 1.0 - np.clip(sim, -1.0, 1.0)
    np.fill_diagonal(dist, 0.0)
    return dist


def average_linkage_labels(vectors: np.ndarray, distance_threshold: float) -> list[int]:
    """Cluster row vectors; merge while the closest pair of clusters is within
    the threshold (inclusive).  Returns one cluster label per row, labels
    numbered by first row membership.

    Inter-cluster distance is the unweighted mean of all cross-pair cosine
    distances, maintained with the Lance-Williams update.  Ties in the argmin
    resolve to the lowest index pair, so callers control tie-breaking through
    their input ordering.
    """
    n = len(vectors)
    if n == 0:
        return []
    if n == 1:
        return [0]
    dist = cosine_distance_matrix(vectors)
    size = np.ones(n)
    active = np.ones(n, dtype=bool)
    parent = list(range(n))
    # mask self-distance and inactive entries out of the argmin
    work = dist.copy()
    np.fill_diagonal(work, np.inf)

    for _ in range(n - 1):
        flat = np.argmin(work)
        i, j = divmod(int(flat), n)
        if work[i, j] > distance_threshold:
            break
        if i > j:
            i, j = j, i
        # merge j into i (keep the lower index as the surviving cluster)
        si, sj = size[i], size[j]
        new_row = (si * work[i, :] + sj * work[j, :]) / (si + sj)
        work[i, :] = new_row
        work[:, i] = new_row
        work[i, i] = np.inf
        work[j, :] = np.inf
        work[:, j] = np.inf
        size[i] = si + sj
        active[j] = False
        parent[j] = i

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    roots: dict[int, int] = {}
    labels = []
    for idx in range(n):
        root = find(idx)
        if root not in roots:
            roots[root] = len(roots)
        labels.append(roots[root])
    return labels
