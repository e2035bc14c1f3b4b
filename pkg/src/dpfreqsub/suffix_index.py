"""Frequency-annotated r-spaced sparse suffix tree over encoded strings.

The strings ``S_1 ... S_n`` (each a multiple of ``r`` symbols over
``{'0', '1', '$'}``) are laid out as ``S_1 #_1^r S_2 #_2^r ... S_n #_n^r``
with a distinct delimiter per string. Only suffixes starting at block
boundaries inside a string become leaves, so the leaf count under a locus
equals the number of block-aligned occurrences of its path label.

Construction works on block meta-characters: every ``r``-block is interned
to an order-preserving integer, the meta-string suffixes are sorted by
prefix doubling, and the bit-level path-compressed tree is assembled from
the sorted suffixes and their bit-level longest common prefixes in a
single stack pass. All node data lives in flat ``int32`` arrays.
"""

from __future__ import annotations

from array import array
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import AlignmentError

SYMBOL_IDS = {"0": 0, "1": 1, "$": 2}
SYMBOL_CHARS = "01$"
DELIMITER_BASE = 3

_LUT = np.full(256, 255, dtype=np.uint8)
for _ch, _sym in SYMBOL_IDS.items():
    _LUT[ord(_ch)] = _sym


class Locus(NamedTuple):
    """A position in the tree: ``depth`` symbols from the root, on the
    incoming edge of ``node`` (or exactly at ``node`` when
    ``depth == depth(node)``)."""

    node: int
    depth: int


class SuffixIndex:
    """Path-compressed trie of the r-spaced suffixes of a string collection.

    ``count[v]`` is the number of leaves below ``v``. Children of a node are
    linked through ``first_child``/``next_sibling`` in increasing order of the
    first symbol of their edge (``0 < 1 < $ < delimiters``).
    """

    root = 0

    def __init__(self, text, round_r, parent, depth, pos, count, first_child, next_sibling, num_strings):
        self.round_r = round_r
        self.num_strings = num_strings
        self.text = text
        self.parent = parent
        self.depth = depth
        self.pos = pos
        self.count = count
        self.first_child = first_child
        self.next_sibling = next_sibling
        edge_symbol = np.full(len(parent), -1, dtype=np.int32)
        if len(parent) > 1:
            edge_symbol[1:] = text[pos[1:] + depth[parent[1:]]]
        self.edge_symbol = edge_symbol
        # memoryviews give cheap scalar access during traversals
        self._text = memoryview(text)
        self._dep = memoryview(depth)
        self._pos = memoryview(pos)
        self._cnt = memoryview(count)
        self._fc = memoryview(first_child)
        self._ns = memoryview(next_sibling)
        self._par = memoryview(parent)

    @property
    def num_nodes(self) -> int:
        return len(self.parent)

    @property
    def num_leaves(self) -> int:
        return int(self.count[0])

    def is_leaf(self, node: int) -> bool:
        return self._fc[node] < 0 and node != self.root

    def root_locus(self) -> Locus:
        return Locus(self.root, 0)

    def freq(self, loc: Locus) -> int:
        return self._cnt[loc.node]

    def at_node(self, loc: Locus) -> bool:
        return self._dep[loc.node] == loc.depth

    def step(self, loc: Locus, symbol) -> Locus | None:
        """Advance ``loc`` by one symbol; ``None`` when the path does not continue.

        Delimiters are never followed.
        """
        sym = SYMBOL_IDS.get(symbol, symbol) if isinstance(symbol, str) else symbol
        if not isinstance(sym, int) or not 0 <= sym < DELIMITER_BASE:
            return None
        nxt = self._step(loc.node, loc.depth, sym)
        return None if nxt is None else Locus(*nxt)

    def _step(self, node: int, depth: int, sym: int):
        nd = self._dep[node]
        if depth < nd:
            if self._text[self._pos[node] + depth] == sym:
                return node, depth + 1
            return None
        c = self._fc[node]
        while c >= 0:
            s = self._text[self._pos[c] + nd]
            if s == sym:
                return c, depth + 1
            if s > sym:
                return None
            c = self._ns[c]
        return None

    def extensions(self, loc: Locus) -> list[tuple[int, Locus]]:
        """Delimiter-free one-symbol continuations of ``loc`` in symbol order."""
        node, depth = loc
        nd = self._dep[node]
        if depth < nd:
            s = self._text[self._pos[node] + depth]
            return [(s, Locus(node, depth + 1))] if s < DELIMITER_BASE else []
        out = []
        c = self._fc[node]
        while c >= 0:
            s = self._text[self._pos[c] + nd]
            if s >= DELIMITER_BASE:
                break
            out.append((s, Locus(c, depth + 1)))
            c = self._ns[c]
        return out

    def locus_of(self, p: str) -> Locus | None:
        loc = (self.root, 0)
        for ch in p:
            sym = SYMBOL_IDS.get(ch)
            if sym is None:
                return None
            loc = self._step(loc[0], loc[1], sym)
            if loc is None:
                return None
        return Locus(*loc)

    def children(self, node: int) -> Iterator[int]:
        c = self._fc[node]
        while c >= 0:
            yield c
            c = self._ns[c]

    def edge_label(self, node: int) -> str:
        if node == self.root:
            return ""
        start = self._pos[node] + self._dep[self._par[node]]
        end = self._pos[node] + self._dep[node]
        return _render(self.text[start:end])

    def path_label(self, loc: Locus) -> str:
        start = self._pos[loc.node]
        return _render(self.text[start:start + loc.depth])

    def render(self, max_label: int = 12) -> str:
        """Deterministic indented dump: one line per node with its count."""
        lines = []
        stack = [(self.root, 0)]
        while stack:
            node, level = stack.pop()
            label = self.edge_label(node)
            if len(label) > max_label:
                label = label[:max_label] + "..."
            lines.append(f"{'  ' * level}{label or '<root>'} [{self._cnt[node]}]")
            stack.extend((c, level + 1) for c in reversed(list(self.children(node))))
        return "\n".join(lines)


def _render(symbols) -> str:
    return "".join(SYMBOL_CHARS[s] if s < DELIMITER_BASE else "#" for s in symbols.tolist())


def _layout(strings: Sequence[str], r: int):
    """Concatenate ``strings`` with per-string delimiter blocks.

    Returns ``(blocks, is_delim, doc_of_block)`` where ``blocks`` is the text
    reshaped into rows of ``r`` symbols.
    """
    lengths = np.fromiter((len(s) for s in strings), dtype=np.int64, count=len(strings))
    bad = np.flatnonzero(lengths % r)
    if len(bad):
        raise AlignmentError(f"string {int(bad[0])} has length {int(lengths[bad[0]])}, not a multiple of {r}")
    raw = np.frombuffer("".join(strings).encode("latin-1", "replace"), dtype=np.uint8)
    bits = _LUT[raw]
    if len(bits) and bits.max() == 255:
        off = int(np.argmax(bits == 255))
        raise AlignmentError(f"symbol {chr(raw[off])!r} is not one of '0', '1', '$'")
    nblocks = lengths // r
    per_doc = nblocks + 1
    total = int(per_doc.sum())
    doc_of_block = np.repeat(np.arange(len(strings), dtype=np.int64), per_doc)
    delim_at = np.cumsum(per_doc) - 1
    is_delim = np.zeros(total, dtype=bool)
    is_delim[delim_at] = True
    blocks = np.empty((total, r), dtype=np.int32)
    blocks[~is_delim] = bits.reshape(-1, r)
    blocks[is_delim] = (DELIMITER_BASE + np.arange(len(strings), dtype=np.int32))[:, None]
    return blocks, is_delim, doc_of_block, delim_at


def _meta_string(blocks, is_delim, doc_of_block):
    """Order-preserving integer id per block."""
    r = blocks.shape[1]
    meta = np.empty(len(blocks), dtype=np.int64)
    body = blocks[~is_delim].astype(np.int64)
    weights = 3 ** np.arange(r - 1, -1, -1, dtype=np.int64)
    keys = body @ weights
    uniq, inverse = np.unique(keys, return_inverse=True)
    meta[~is_delim] = inverse
    meta[is_delim] = len(uniq) + doc_of_block[is_delim]
    return meta


def _suffix_array(meta):
    """Prefix-doubling suffix array; also returns the rank array per level.

    ``levels[j][i]`` identifies ``meta[i:i + 2**j]`` (truncated at the end).
    """
    n = len(meta)
    rank = np.unique(meta, return_inverse=True)[1].astype(np.int64)
    levels = [rank.astype(np.int32)]
    sa = np.argsort(rank, kind="stable")
    if n <= 1 or len(np.unique(rank)) == n:
        return sa, levels
    h = 1
    while True:
        # rank < n, so (rank, next rank + 1) packs into one int64 key
        key = rank * (n + 1)
        key[:n - h] += rank[h:] + 1
        sa = np.argsort(key, kind="stable")
        ks = key[sa]
        flags = np.empty(n, dtype=np.int64)
        flags[0] = 0
        flags[1:] = ks[1:] != ks[:-1]
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.cumsum(flags)
        rank = new_rank
        levels.append(rank.astype(np.int32))
        if rank[sa[-1]] == n - 1:
            return sa, levels
        h *= 2


def _adjacent_lcp(sa, levels, n):
    """Meta-level LCP of consecutive entries of ``sa`` by binary lifting."""
    a, b = sa[:-1], sa[1:]
    lcp = np.zeros(len(a), dtype=np.int64)
    for j in range(len(levels) - 1, -1, -1):
        lev = levels[j]
        ia = np.minimum(a + lcp, n - 1)
        ib = np.minimum(b + lcp, n - 1)
        eq = (a + lcp < n) & (b + lcp < n) & (lev[ia] == lev[ib])
        lcp += eq.astype(np.int64) << j
    return lcp


def build_index(strings: Sequence[str], round_r: int) -> SuffixIndex:
    """Build the frequency-annotated r-spaced sparse suffix tree of ``strings``."""
    r = int(round_r)
    if r < 1:
        raise AlignmentError("round must be positive")
    strings = list(strings)
    if not strings:
        return _assemble(np.zeros(0, np.int32), r, [], [], [], 0)
    blocks, is_delim, doc_of_block, delim_at = _layout(strings, r)
    text = blocks.reshape(-1)
    meta = _meta_string(blocks, is_delim, doc_of_block)
    n = len(meta)
    sa, levels = _suffix_array(meta)
    sa = sa[~is_delim[sa]]
    if len(sa) > 1:
        meta_lcp = _adjacent_lcp(sa, levels, n)
        ra = blocks[sa[:-1] + meta_lcp]
        rb = blocks[sa[1:] + meta_lcp]
        bit_lcp = meta_lcp * r + np.argmax(ra != rb, axis=1)
    else:
        bit_lcp = np.zeros(0, dtype=np.int64)
    del levels, meta
    lcp = np.concatenate(([0], bit_lcp)).astype(np.int64)
    leaf_pos = sa.astype(np.int64) * r
    leaf_depth = (delim_at[doc_of_block[sa]] + 1) * r - leaf_pos
    return _assemble(text, r, leaf_pos, leaf_depth, lcp, len(strings))


def _assemble(text, r, leaf_pos, leaf_depth, lcp, num_strings) -> SuffixIndex:
    """Stack construction of the compressed trie from sorted leaves and LCPs."""
    nleaves = len(leaf_pos)
    cap = 2 * nleaves + 1
    neg = array("l", [-1]) * cap
    parent, first, nxt, last = array("l", neg), array("l", neg), array("l", neg), array("l", neg)
    dep = array("l", [0]) * cap
    pos = array("l", [0]) * cap
    cnt = array("l", [0]) * cap
    nid = 1
    stack = [0]
    sdep = [0]
    for p, d, l in zip(memoryview(np.ascontiguousarray(leaf_pos, dtype=np.int64)),
                       memoryview(np.ascontiguousarray(leaf_depth, dtype=np.int64)),
                       memoryview(np.ascontiguousarray(lcp, dtype=np.int64))):
        while sdep[-1] > l:
            v = stack.pop()
            sdep.pop()
            if sdep[-1] >= l:
                u = stack[-1]
            else:
                u = nid
                nid += 1
                dep[u] = l
                pos[u] = pos[v]
                stack.append(u)
                sdep.append(l)
            parent[v] = u
            if first[u] < 0:
                first[u] = v
            else:
                nxt[last[u]] = v
            last[u] = v
            cnt[u] += cnt[v]
        dep[nid] = d
        pos[nid] = p
        cnt[nid] = 1
        stack.append(nid)
        sdep.append(d)
        nid += 1
    while len(stack) > 1:
        v = stack.pop()
        u = stack[-1]
        parent[v] = u
        if first[u] < 0:
            first[u] = v
        else:
            nxt[last[u]] = v
        last[u] = v
        cnt[u] += cnt[v]

    def trim(buf):
        return np.frombuffer(buf, dtype=np.int64)[:nid].astype(np.int32)

    return SuffixIndex(
        np.ascontiguousarray(text, dtype=np.int32), r,
        trim(parent), trim(dep), trim(pos), trim(cnt), trim(first), trim(nxt), num_strings,
    )
