import pytest

TOY_CORPUS = ["CGCA", "CGCA", "CATA"]


@pytest.fixture
def toy_corpus():
    return list(TOY_CORPUS)


def random_trie(rng, max_nodes=100_000):
    """Uncompressed binary trie of the distinct prefixes of random bit strings.

    Returns ``(parent, symbol)`` arrays with node 0 as the root and every
    node listed after its parent.
    """
    import numpy as np

    while True:
        depth = int(rng.integers(1, 31))
        leaves = int(np.exp(rng.uniform(0, np.log(max_nodes))))
        vals = rng.integers(0, 2 ** depth, size=leaves, dtype=np.int64)
        levels = [np.unique(vals >> (depth - d)) for d in range(depth + 1)]
        if sum(len(lv) for lv in levels) <= max_nodes:
            break
    offsets = np.cumsum([0] + [len(lv) for lv in levels])
    parent = np.full(offsets[-1], -1, dtype=np.int64)
    symbol = np.zeros(offsets[-1], dtype=np.int64)
    for d in range(1, depth + 1):
        lv = levels[d]
        parent[offsets[d]:offsets[d + 1]] = offsets[d - 1] + np.searchsorted(levels[d - 1], lv >> 1)
        symbol[offsets[d]:offsets[d + 1]] = lv & 1
    return parent, symbol


def max_light_edges_brute(parent, heavy_child):
    """Light edges on the worst root-to-leaf walk, by walking every leaf up."""
    import numpy as np

    parent = list(parent)
    heavy = list(heavy_child)
    is_parent = np.zeros(len(parent), dtype=bool)
    is_parent[[p for p in parent if p >= 0]] = True
    worst = 0
    for leaf in np.flatnonzero(~is_parent):
        v, light = int(leaf), 0
        while parent[v] >= 0:
            light += heavy[parent[v]] != v
            v = parent[v]
        worst = max(worst, light)
    return worst
