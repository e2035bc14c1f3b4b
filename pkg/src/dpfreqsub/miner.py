"""Differentially private mining of frequent substrings.

A run first screens every codeword with Laplace noise, then repeatedly
doubles the candidate length. In the phase with candidate length ``k`` the
accepted length-``k`` strings ``C_k`` are indexed in their own sparse suffix
tree ``T_k``; for every ``s`` in ``C_k`` a depth-first search walks the
concatenated tree ``s + T_k`` while mirroring the walk in the corpus index,
and each visited position is scored by a binary-tree counter attached to its
heavy path in ``T_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .codec import Codebook, build_codebook, infer_alphabet
from .dp import BtmCounter, NoiseConfig, NoiseSource, ceil_log2, laplace, new_seed
from .errors import ConfigurationError
from .hld import HeavyPathDecomposition, decompose
from .suffix_index import Locus, SuffixIndex, build_index


@dataclass(frozen=True)
class MinerConfig:
    """User-facing knobs of a run.

    ``tau`` replaces the derived acceptance threshold and is only accepted
    together with ``noiseless``.
    """

    epsilon: float = 1.0
    beta: float = 0.1
    seed: int | None = None
    tau_bot: float | None = None
    noiseless: bool = False
    tau: float | None = None

    def __post_init__(self):
        if self.tau is not None:
            if not self.noiseless:
                raise ConfigurationError("a threshold override requires noiseless mode")
            if not self.tau >= 0:
                raise ConfigurationError(f"threshold override must be non-negative, got {self.tau}")
        if self.tau_bot is not None and not self.tau_bot >= 0:
            raise ConfigurationError(f"tau_bot must be non-negative, got {self.tau_bot}")


@dataclass(frozen=True)
class Thresholds:
    epsilon0: float
    sigma: float
    phase1_scale: float
    tau_star: float
    tau: float
    tau_top: float
    tau_bot: float
    phase_count: int

    @classmethod
    def derive(cls, cfg: MinerConfig, noise: NoiseConfig, n: int, ell: int, ell_bit: int) -> "Thresholds":
        lg = ceil_log2(ell_bit)
        tau_star = lg / noise.epsilon0 * math.log(n * ell_bit / cfg.beta)
        tau_bot = ell * lg if cfg.tau_bot is None else float(cfg.tau_bot)
        tau = 4 * tau_star + tau_bot
        tau_top = 9 * tau_star
        if cfg.tau is None and not tau_top >= tau >= tau_bot:
            raise ConfigurationError(
                f"thresholds out of order: tau_top={tau_top:.6g}, tau={tau:.6g}, tau_bot={tau_bot:.6g}")
        if cfg.tau is not None:
            tau = float(cfg.tau)
        scale = 2 * ell * noise.phase_count / cfg.epsilon
        return cls(noise.epsilon0, noise.sigma, scale, tau_star, tau, tau_top, tau_bot, noise.phase_count)


@dataclass
class PreparedCorpus:
    """Encoded corpus together with its sparse suffix index.

    Reusable across runs with different seeds or budgets.
    """

    codebook: Codebook | None
    encoded: list[str]
    index: SuffixIndex | None
    num_docs: int
    max_len: int

    @property
    def round_r(self) -> int:
        return self.codebook.round_r if self.codebook else 1

    @property
    def ell_bit(self) -> int:
        return self.max_len * self.round_r

    @property
    def is_empty(self) -> bool:
        return self.max_len == 0


def prepare(corpus: Iterable[Sequence[Hashable]], alphabet: Sequence[Hashable] | None = None) -> PreparedCorpus:
    docs = list(corpus)
    if alphabet is None:
        alphabet = infer_alphabet(docs)
        if not alphabet:
            return PreparedCorpus(None, [], None, len(docs), 0)
    book = build_codebook(alphabet)
    encoded = [book.encode(d) for d in docs]
    max_len = max((len(d) for d in docs), default=0)
    nonempty = [e for e in encoded if e]
    index = build_index(nonempty, book.round_r) if nonempty else None
    return PreparedCorpus(book, encoded, index, len(docs), max_len)


class CandidateLedger:
    """Accepted encoded strings stored as a trie of parent links.

    Every entry extends an earlier entry (or the empty string) by one
    symbol, so adding is constant time and a string is only spelled out
    when needed.
    """

    def __init__(self, round_r: int):
        self.round_r = round_r
        self.parent: list[int] = []
        self.symbol: list[int] = []
        self.length: list[int] = []
        self.noisy: list[float] = []
        self.phase: list[int] = []
        self.by_length: dict[int, list[int]] = {}

    def __len__(self) -> int:
        return len(self.parent)

    def add(self, parent: int, symbol: int, noisy: float, phase: int) -> int:
        node = len(self.parent)
        length = 1 if parent < 0 else self.length[parent] + 1
        self.parent.append(parent)
        self.symbol.append(symbol)
        self.length.append(length)
        self.noisy.append(noisy)
        self.phase.append(phase)
        if length % self.round_r == 0:
            self.by_length.setdefault(length, []).append(node)
        return node

    def add_string(self, enc: str, noisy: float, phase: int) -> int:
        """Insert a whole string whose proper prefixes are bookkeeping only."""
        node = -1
        for ch in enc[:-1]:
            node = self.add(node, "01$".index(ch), math.nan, -1)
        return self.add(node, "01$".index(enc[-1]), noisy, phase)

    def spell(self, node: int) -> str:
        out = []
        while node >= 0:
            out.append("01$"[self.symbol[node]])
            node = self.parent[node]
        return "".join(reversed(out))

    def strings_of_length(self, length: int) -> list[str]:
        return sorted(self.spell(v) for v in self.by_length.get(length, ()))

    def decoded(self, book: Codebook) -> list[tuple]:
        """``(pattern, noisy, phase)`` for aligned accepted entries.

        One depth-first pass; a subtree whose completed block is not a
        codeword is dropped.
        """
        children: dict[int, list[int]] = {}
        for v, p in enumerate(self.parent):
            children.setdefault(p, []).append(v)
        r = self.round_r
        reverse = book.reverse
        out = []
        stack = [(v, (), "") for v in reversed(children.get(-1, []))]
        while stack:
            v, prefix, block = stack.pop()
            block += "01$"[self.symbol[v]]
            if len(block) == r:
                sym = reverse.get(block)
                if sym is None:
                    continue
                prefix = prefix + (sym,)
                block = ""
                if self.phase[v] >= 0:
                    pattern = "".join(prefix) if book.is_textual else prefix
                    out.append((pattern, self.noisy[v], self.phase[v]))
            stack.extend((c, prefix, block) for c in reversed(children.get(v, [])))
        return out


@dataclass
class PhaseStats:
    phase: int
    k: int
    candidates: int
    visited: int = 0
    pruned: int = 0
    accepted: int = 0
    tree_nodes: int = 0


@dataclass(frozen=True)
class MinedPattern:
    pattern: Hashable
    length: int
    noisy_freq: float
    phase: int


@dataclass
class MiningReport:
    patterns: list[MinedPattern]
    phases: list[PhaseStats]
    thresholds: Thresholds | None
    seed: int
    terminated: bool = False
    candidates: dict[int, list[str]] = field(default_factory=dict)
    peak_nodes: int = 0

    def pattern_set(self) -> set:
        return {p.pattern for p in self.patterns}


@dataclass
class _PhaseContext:
    index: SuffixIndex
    tree: SuffixIndex
    dec: HeavyPathDecomposition
    ledger: CandidateLedger
    rng: NoiseSource
    sigma: float
    tau: float
    k: int
    cap: int
    phase: int
    stats: PhaseStats


def noisy_count(counter: BtmCounter | None, at_head: bool, f: int, f_parent: int,
                capacity: int, sigma: float, rng: NoiseSource) -> tuple[float, BtmCounter]:
    """Score one position; returns the estimate and the counter of its heavy path."""
    if at_head:
        counter = BtmCounter(capacity, sigma, rng).increment(f)
    elif counter is None:
        raise RuntimeError("non-head position without a heavy-path counter")
    else:
        counter.increment(f - f_parent)
    return counter.query(), counter


def search_concatenated(s_node: int, corpus_loc: Locus | None, ctx: _PhaseContext) -> None:
    """Depth-first search of ``s + T_k`` starting below the ledger entry ``s_node``."""
    index, tree, dec, ledger = ctx.index, ctx.tree, ctx.dec, ctx.ledger
    cnt = index.count
    tmax = ctx.cap - ctx.k
    stats = ctx.stats
    f0 = int(cnt[corpus_loc.node]) if corpus_loc is not None else 0
    # the root of s + T_k is s itself; its counter seeds the root's heavy path
    root_counter = BtmCounter(tmax + 1, ctx.sigma, ctx.rng).increment(f0)
    cl = (corpus_loc.node, corpus_loc.depth) if corpus_loc is not None else None
    stack = [(tree.root_locus(), cl, f0, root_counter, s_node)]
    while stack:
        loc, cl, f_par, counter, lnode = stack.pop()
        if loc.depth >= tmax:
            continue
        frames = []
        for sym, child in tree.extensions(loc):
            nxt = index._step(cl[0], cl[1], sym) if cl is not None else None
            f = int(cnt[nxt[0]]) if nxt is not None else 0
            head = dec.is_head(child)
            value, path_counter = noisy_count(
                None if head else counter, head, f, f_par,
                tmax - child.depth + 1, ctx.sigma, ctx.rng)
            stats.visited += 1
            if value > ctx.tau:
                stats.accepted += 1
                node = ledger.add(lnode, sym, value, ctx.phase)
                frames.append((child, nxt, f, path_counter, node))
            else:
                stats.pruned += 1
        stack.extend(reversed(frames))


def mine(corpus, cfg: MinerConfig | None = None, alphabet=None) -> MiningReport:
    """Mine frequent substrings of ``corpus``.

    ``corpus`` is either a sequence of documents or a :class:`PreparedCorpus`.
    """
    cfg = cfg or MinerConfig()
    prep = corpus if isinstance(corpus, PreparedCorpus) else prepare(corpus, alphabet)
    seed = new_seed() if cfg.seed is None else int(cfg.seed)
    if prep.is_empty or prep.index is None:
        return MiningReport([], [], None, seed)

    n, ell, r = prep.num_docs, prep.max_len, prep.round_r
    ell_bit = ell * r
    noise = NoiseConfig.derive(cfg.epsilon, cfg.beta, n, ell, ell_bit, cfg.noiseless, seed)
    th = Thresholds.derive(cfg, noise, n, ell, ell_bit)
    sigma = 0.0 if cfg.noiseless else th.sigma
    scale = 0.0 if cfg.noiseless else th.phase1_scale
    rng = NoiseSource(seed)
    book, index = prep.codebook, prep.index
    ledger = CandidateLedger(r)
    report = MiningReport([], [], th, seed, peak_nodes=index.num_nodes)

    # base phase: every codeword, in alphabet order
    base = PhaseStats(0, 0, len(book.alphabet))
    loci: dict[str, Locus | None] = {}
    for word in book.codewords:
        loc = index.locus_of(word)
        noisy = (index.freq(loc) if loc is not None else 0) + laplace(scale, rng)
        base.visited += 1
        if noisy > th.tau:
            base.accepted += 1
            ledger.add_string(word, noisy, 0)
            loci[word] = loc
        else:
            base.pruned += 1
    report.phases.append(base)

    guard = n / ceil_log2(ell_bit)
    k, phase = r, 1
    while k < ell_bit:
        nodes = ledger.by_length.get(k, [])
        if not nodes:
            break
        if not cfg.noiseless and len(nodes) > guard:
            report.terminated = True
            break
        words = {ledger.spell(v): v for v in nodes}
        ordered = sorted(words)
        tree = build_index(ordered, r)
        dec = decompose(tree)
        stats = PhaseStats(phase, k, len(ordered), tree_nodes=tree.num_nodes)
        report.peak_nodes = max(report.peak_nodes, index.num_nodes + tree.num_nodes)
        cap = min(2 * k, ell_bit)
        ctx = _PhaseContext(index, tree, dec, ledger, rng, sigma, th.tau, k, cap, phase, stats)
        for w in ordered:
            loc = loci.get(w) if w in loci else index.locus_of(w)
            search_concatenated(words[w], loc, ctx)
        report.phases.append(stats)
        # corpus loci of the next candidates, looked up once
        nxt_len = 2 * k
        loci = {}
        if nxt_len < ell_bit:
            for v in ledger.by_length.get(nxt_len, []):
                w = ledger.spell(v)
                loci[w] = index.locus_of(w)
        k, phase = 2 * k, phase + 1

    for length in sorted(ledger.by_length):
        report.candidates[length] = ledger.strings_of_length(length)
    for pattern, noisy, ph in ledger.decoded(book):
        report.patterns.append(MinedPattern(pattern, len(pattern), float(noisy), ph))
    report.patterns.sort(key=lambda p: (p.length, _sort_key(p.pattern)))
    return report


def _sort_key(pattern):
    return pattern if isinstance(pattern, str) else tuple(map(str, pattern))
