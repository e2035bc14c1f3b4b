"""Heavy-light decomposition of a compressed trie.

Each node's heavy child is the child with the most nodes in its subtree
(ties go to the smaller first edge symbol). Positions inside a compressed
edge are virtual: they lie on the path of the edge's lower node, so a light
edge ``u -> v`` starts a new path whose head is the first position past
``u`` on that edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .suffix_index import Locus, SuffixIndex


@dataclass
class HeavyPathDecomposition:
    parent: np.ndarray
    size: np.ndarray
    heavy_child: np.ndarray
    head: np.ndarray
    light_depth: np.ndarray
    node_depth: np.ndarray | None = None

    def __post_init__(self):
        self._head = memoryview(np.ascontiguousarray(self.head, dtype=np.int64))
        self._par = memoryview(np.ascontiguousarray(self.parent, dtype=np.int64))
        if self.node_depth is not None:
            self._ndep = memoryview(np.ascontiguousarray(self.node_depth, dtype=np.int64))

    @property
    def num_nodes(self) -> int:
        return len(self.parent)

    def head_of(self, loc: Locus) -> int:
        """Node whose incoming edge starts the heavy path containing ``loc``.

        The root stands for its own path. For a light node ``v`` the actual
        head position is ``Locus(v, depth(parent(v)) + 1)``.
        """
        return self._head[loc.node]

    def is_head(self, loc: Locus) -> bool:
        node, depth = loc
        p = self._par[node]
        if p < 0:
            return depth == 0
        return self._head[node] == node and depth == self._ndep[p] + 1

    def head_locus(self, node: int) -> Locus:
        h = self._head[node]
        p = self._par[h]
        return Locus(h, 0 if p < 0 else self._ndep[p] + 1)

    def max_light_edges(self) -> int:
        return int(self.light_depth.max()) if len(self.light_depth) else 0

    def paths(self) -> dict[int, list[int]]:
        """Nodes of each heavy path, keyed by head, in root-to-leaf order."""
        out: dict[int, list[int]] = {}
        for h in np.flatnonzero(self.head == np.arange(len(self.head))):
            path = [int(h)]
            while self.heavy_child[path[-1]] >= 0:
                path.append(int(self.heavy_child[path[-1]]))
            out[int(h)] = path
        return out


def decompose_arrays(parent, edge_symbol=None, order=None, node_depth=None) -> HeavyPathDecomposition:
    """Decompose the tree given by a parent array (root has parent ``-1``).

    ``order`` must list every node after its parent; when omitted it is
    derived from tree levels.
    """
    parent = np.asarray(parent, dtype=np.int64)
    m = len(parent)
    if edge_symbol is None:
        edge_symbol = np.zeros(m, dtype=np.int64)
    if order is None:
        order = np.argsort(_levels(parent), kind="stable")
    par = parent.tolist()
    sym = np.asarray(edge_symbol).tolist()
    seq = np.asarray(order).tolist()

    size = [1] * m
    heavy = [-1] * m
    for v in reversed(seq):
        p = par[v]
        if p < 0:
            continue
        size[p] += size[v]
        h = heavy[p]
        if h < 0 or size[v] > size[h] or (size[v] == size[h] and sym[v] < sym[h]):
            heavy[p] = v
    head = list(range(m))
    light = [0] * m
    for v in seq:
        p = par[v]
        if p < 0:
            continue
        if heavy[p] == v:
            head[v] = head[p]
            light[v] = light[p]
        else:
            light[v] = light[p] + 1
    return HeavyPathDecomposition(
        parent,
        np.array(size, dtype=np.int64),
        np.array(heavy, dtype=np.int64),
        np.array(head, dtype=np.int64),
        np.array(light, dtype=np.int64),
        None if node_depth is None else np.asarray(node_depth, dtype=np.int64),
    )


def decompose(tree: SuffixIndex) -> HeavyPathDecomposition:
    # string depth grows strictly from parent to child
    order = np.argsort(tree.depth, kind="stable")
    return decompose_arrays(tree.parent, tree.edge_symbol, order, tree.depth)


def _levels(parent: np.ndarray) -> np.ndarray:
    """Number of edges from each node to the root, by pointer jumping."""
    anc = np.where(parent < 0, np.arange(len(parent)), parent)
    dist = (parent >= 0).astype(np.int64)
    while True:
        nxt = anc[anc]
        if np.array_equal(nxt, anc):
            return dist
        dist = dist + dist[anc]
        anc = nxt
