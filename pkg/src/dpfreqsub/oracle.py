"""Brute-force reference computations used as ground truth.

Nothing here is private or fast; every count comes from direct
sliding-window enumeration.
"""

from __future__ import annotations

from collections import Counter
from typing import Hashable, Iterable, Sequence

from .codec import Codebook, build_codebook, infer_alphabet
from .hld import decompose
from .suffix_index import Locus, build_index


class FrequencyTable(Counter):
    """Occurrence counts summed over documents; missing patterns count 0."""

    def __init__(self, counts=(), max_len: int = 0):
        super().__init__(counts)
        self.max_len = max_len


def _window(doc, i, j):
    return doc[i:j] if isinstance(doc, str) else tuple(doc[i:j])


def brute_frequencies(corpus: Iterable[Sequence[Hashable]], max_len: int) -> FrequencyTable:
    """Count every substring of length ``1..max_len`` over all documents.

    Keys are strings for string documents and tuples otherwise.
    """
    if max_len < 1:
        raise ValueError(f"max_len must be at least 1, got {max_len}")
    table = FrequencyTable(max_len=max_len)
    for doc in corpus:
        n = len(doc)
        for i in range(n):
            for j in range(i + 1, min(n, i + max_len) + 1):
                table[_window(doc, i, j)] += 1
    return table


def brute_frequent(corpus: Iterable[Sequence[Hashable]], threshold: float, strict: bool = False) -> set:
    """Patterns with count ``>= threshold`` (``> threshold`` when ``strict``)."""
    docs = list(corpus)
    longest = max((len(d) for d in docs), default=0)
    if longest == 0:
        return set()
    table = brute_frequencies(docs, longest)
    if strict:
        return {p for p, c in table.items() if c > threshold}
    return {p for p, c in table.items() if c >= threshold}


def brute_aligned_counts(encoded: Iterable[str], round_r: int, length: int | None = None) -> Counter:
    """Counts of encoded windows that start on a block boundary.

    With ``length`` given only windows of exactly that length are counted;
    otherwise every window length up to the end of its document is.
    """
    counts: Counter = Counter()
    for doc in encoded:
        for i in range(0, len(doc), round_r):
            if length is None:
                for j in range(i + 1, len(doc) + 1):
                    counts[doc[i:j]] += 1
            elif i + length <= len(doc):
                counts[doc[i:i + length]] += 1
    return counts


def _codebook_for(docs, alphabet) -> Codebook:
    return build_codebook(infer_alphabet(docs) if alphabet is None else alphabet)


def measure_sensitivity(corpus: Sequence[Sequence[Hashable]], replacement_doc: Sequence[Hashable],
                        k: int, position: int = 0, alphabet=None) -> int:
    """L1 distance between the length-``k`` aligned count vectors of the
    corpus and the corpus with document ``position`` replaced."""
    docs = list(corpus)
    neighbor = docs[:position] + [replacement_doc] + docs[position + 1:]
    book = _codebook_for(docs + [replacement_doc], alphabet)
    a = brute_aligned_counts([book.encode(d) for d in docs], book.round_r, k)
    b = brute_aligned_counts([book.encode(d) for d in neighbor], book.round_r, k)
    return sum(abs(a[p] - b[p]) for p in a.keys() | b.keys())


def heavy_path_sensitivity(encoded_a: Sequence[str], encoded_b: Sequence[str], words: Sequence[str],
                           round_r: int, k: int, cap: int) -> tuple[int, int]:
    """Heavy-path mass and summed difference-vector L1 for one phase tree.

    ``words`` is the candidate set whose concatenated trees ``s + T_k`` are
    searched up to depth ``cap``. For every heavy path ``(u_0, ..., u_d)`` the
    difference vector is ``(f(u_0), f(u_1) - f(u_0), ...)``. Returns the sum
    over paths of ``max(f_S(u_0), f_S'(u_0))``, where ``S`` and ``S'`` are the
    documents present in only one of the corpora, and the sum of L1
    distances between the two corpora's vectors. Frequencies come from
    brute counts.
    """
    fa = brute_aligned_counts(encoded_a, round_r)
    fb = brute_aligned_counts(encoded_b, round_r)
    bag_a, bag_b = Counter(encoded_a), Counter(encoded_b)
    ga = brute_aligned_counts((bag_a - bag_b).elements(), round_r)
    gb = brute_aligned_counts((bag_b - bag_a).elements(), round_r)
    tree = build_index(sorted(words), round_r)
    dec = decompose(tree)
    tmax = cap - k
    mass = 0
    l1 = 0
    for s in sorted(words):
        # (tree locus, spelled string, parent freqs); head positions restart a path
        root = tree.root_locus()
        a0, b0 = fa[s], fb[s]
        mass += max(ga[s], gb[s])
        l1 += abs(a0 - b0)
        stack = [(root, s, a0, b0)]
        while stack:
            loc, text, pa, pb = stack.pop()
            if loc.depth >= tmax:
                continue
            for sym, child in tree.extensions(loc):
                spelled = text + "01$"[sym]
                ca, cb = fa[spelled], fb[spelled]
                if dec.is_head(child):
                    mass += max(ga[spelled], gb[spelled])
                    l1 += abs(ca - cb)
                else:
                    l1 += abs((ca - pa) - (cb - pb))
                if ca or cb:
                    stack.append((Locus(*child), spelled, ca, cb))
                # both zero: the whole subtree contributes nothing more
    return mass, l1
