"""Quasi-unique vertex labels from depth-k degree sequences.

Each vertex is labeled with its own degree followed by the degrees of all
vertices within distance k, listed in a canonical breadth-first order.  The
BFS starts from the cyclic rotation of the vertex's neighbors whose degree
sequence is lexicographically minimal; deeper vertices are enqueued in the
clockwise order determined by the edge they were discovered through.  When
several cyclic rotations are minimal, the label is computed under each and
the lexicographically smallest full label wins, so identical neighborhoods
always collide.
"""

from __future__ import annotations

from collections import deque

from .graph import EmbeddedGraph

Label = tuple[int, ...]
MasterTable = dict[Label, list[int]]

DEFAULT_K = 7


def canonical_start_rotations(g: EmbeddedGraph, v: int) -> list[tuple[int, ...]]:
    """Cyclic rotations of rotation[v] with lexicographically minimal neighbor degrees."""
    rot = g.rotation[v]
    d = len(rot)
    if d == 0:
        return [()]
    degs = [len(g.rotation[u]) for u in rot]
    doubled = degs + degs
    seqs = [tuple(doubled[i : i + d]) for i in range(d)]
    best = min(seqs)
    return [rot[i:] + rot[:i] for i in range(d) if seqs[i] == best]


def _bfs_order(g: EmbeddedGraph, v: int, k: int, start: tuple[int, ...]) -> list[int]:
    if k <= 0 or not start:
        return []
    rotation = g.rotation
    visited = {v}
    order = []
    queue = deque()
    for u in start:
        visited.add(u)
        order.append(u)
        queue.append((u, v, 1))
    while queue:
        u, parent, dist = queue.popleft()
        if dist >= k:
            continue
        rot = rotation[u]
        i = rot.index(parent)
        for w in rot[i + 1 :] + rot[:i]:
            if w not in visited:
                visited.add(w)
                order.append(w)
                queue.append((w, u, dist + 1))
    return order


def lexicographic_bfs(g: EmbeddedGraph, v: int, k: int) -> list[int]:
    """Canonical BFS order over vertices at distance 1..k from v.

    Uses the canonical start rotation whose resulting degree label is
    smallest, matching what label_nodes records.
    """
    best = None
    best_order = []
    for start in canonical_start_rotations(g, v):
        order = _bfs_order(g, v, k, start)
        lab = tuple(len(g.rotation[u]) for u in order)
        if best is None or lab < best:
            best = lab
            best_order = order
    return best_order


def label_nodes(g: EmbeddedGraph, k: int) -> tuple[MasterTable, list[Label]]:
    """Label every vertex and group vertices by identical label.

    Returns (master table, per-vertex label array).  Master-table entry
    lists are in ascending vertex id.
    """
    rotation = g.rotation
    labels: list[Label] = []
    for v in range(len(rotation)):
        d = len(rotation[v])
        best: Label | None = None
        for start in canonical_start_rotations(g, v):
            lab = (d,) + tuple(
                len(rotation[u]) for u in _bfs_order(g, v, k, start)
            )
            if best is None or lab < best:
                best = lab
        labels.append(best if best is not None else (0,))
    table: MasterTable = {}
    for v, lab in enumerate(labels):
        table.setdefault(lab, []).append(v)
    return table, labels
