"""Command-line front end: ``mine``, ``bench`` and ``oracle`` subcommands."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codec import infer_alphabet
from .dp import new_seed
from .errors import DPFreqSubError
from .miner import MinerConfig, MiningReport, mine, prepare
from .oracle import brute_frequencies

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TERMINATED = 2


class IngestError(DPFreqSubError):
    pass


@dataclass(frozen=True)
class RunManifest:
    input: str
    format: str = "lines"
    alphabet: str = "auto"
    epsilon: float = 1.0
    beta: float = 0.1
    tau_bot: float | None = None
    seed: int | None = None
    noiseless: bool = False
    tau: float | None = None
    output: str = "tsv"
    stats: bool = False


def ingest(path: str, fmt: str = "lines") -> list[str]:
    """Read documents from ``path``.

    ``lines``: one document per line. ``fasta``: each ``>`` header starts a
    document whose sequence lines are joined and upper-cased.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestError(f"cannot read {path}: {exc}") from None
    if fmt == "lines":
        docs = text.splitlines()
    elif fmt == "fasta":
        docs = []
        current = None
        for line in text.splitlines():
            line = line.strip()
            if line.startswith(">"):
                if current is not None:
                    docs.append("".join(current))
                current = []
            elif line:
                if current is None:
                    raise IngestError(f"{path}: sequence data before the first FASTA header")
                current.append(line.upper())
        if current is not None:
            docs.append("".join(current))
    else:
        raise IngestError(f"unknown input format {fmt!r}")
    if not docs or not any(docs):
        raise IngestError(f"{path}: corpus is empty")
    return docs


def _resolve_alphabet(declared: str, docs: list[str]) -> list[str]:
    if declared == "auto":
        return infer_alphabet(docs)
    symbols = list(declared)
    missing = sorted(set(infer_alphabet(docs)) - set(symbols))
    if missing:
        raise IngestError(f"symbol {missing[0]!r} is not in the declared alphabet")
    return symbols


def format_report(report: MiningReport, output: str, stats: bool) -> str:
    lines = []
    if output == "tsv":
        lines.append(f"# seed={report.seed}")
        for p in report.patterns:
            lines.append(f"{p.pattern}\t{p.length}\t{p.noisy_freq:.6f}\t{p.phase}")
        if stats:
            lines.extend(f"# {key}\t{value}" for key, value in _stats(report).items())
    else:
        lines.append(json.dumps({"meta": {"seed": report.seed}}))
        for p in report.patterns:
            lines.append(json.dumps({"pattern": p.pattern, "len": p.length,
                                     "noisy_freq": float(f"{p.noisy_freq:.6f}"), "phase": p.phase}))
        if stats:
            lines.append(json.dumps({"stats": _stats(report)}))
    return "\n".join(lines) + "\n"


def _stats(report: MiningReport) -> dict:
    out = {}
    th = report.thresholds
    if th is not None:
        out.update(epsilon0=f"{th.epsilon0:.6g}", sigma=f"{th.sigma:.6g}", tau_star=f"{th.tau_star:.6g}",
                   tau=f"{th.tau:.6g}", tau_top=f"{th.tau_top:.6g}", tau_bot=f"{th.tau_bot:.6g}")
    for ph in report.phases:
        out[f"phase{ph.phase}"] = (f"k={ph.k} candidates={ph.candidates} visited={ph.visited} "
                                   f"pruned={ph.pruned} accepted={ph.accepted}")
    out["terminated"] = str(report.terminated).lower()
    return out


def run(manifest: RunManifest, stdout=None) -> int:
    stdout = stdout or sys.stdout
    docs = ingest(manifest.input, manifest.format)
    alphabet = _resolve_alphabet(manifest.alphabet, docs)
    seed = new_seed() if manifest.seed is None else manifest.seed
    cfg = MinerConfig(epsilon=manifest.epsilon, beta=manifest.beta, seed=seed, tau_bot=manifest.tau_bot,
                      noiseless=manifest.noiseless, tau=manifest.tau)
    report = mine(docs, cfg, alphabet)
    stdout.write(format_report(report, manifest.output, manifest.stats))
    return EXIT_TERMINATED if report.terminated else EXIT_OK


def random_corpus(n: int, ell: int, alphabet: str, rng: np.random.Generator) -> list[str]:
    symbols = np.array(list(alphabet))
    return ["".join(row) for row in symbols[rng.integers(0, len(symbols), size=(n, ell))]]


def bench(sizes: Sequence[tuple[int, int]], alphabet_size: int = 4, epsilon: float = 1.0,
          seed: int = 0, repeat: int = 1) -> list[dict]:
    """Time index construction plus mining on synthetic corpora, one row per size."""
    alphabet = "ACGTNRYKMSWBDHVX"[:alphabet_size] if alphabet_size <= 16 else None
    if alphabet is None:
        raise ValueError("bench supports alphabets of at most 16 symbols")
    rows = []
    for n, ell in sizes:
        docs = random_corpus(n, ell, alphabet, np.random.default_rng(seed))
        best = float("inf")
        nodes = 0
        for rep in range(repeat):
            start = time.perf_counter()
            prep = prepare(docs, alphabet)
            report = mine(prep, MinerConfig(epsilon=epsilon, seed=seed + rep))
            best = min(best, time.perf_counter() - start)
            nodes = max(nodes, report.peak_nodes)
        rows.append({"n": n, "ell": ell, "seconds": best, "peak_nodes": nodes})
    return rows


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpfreqsub", description="Private frequent substring mining.")
    sub = parser.add_subparsers(dest="command", required=True)

    def corpus_args(p):
        p.add_argument("--input", required=True)
        p.add_argument("--format", choices=("lines", "fasta"), default="lines")
        p.add_argument("--alphabet", default="auto", help="symbols as one string, or 'auto'")

    m = sub.add_parser("mine", help="mine frequent substrings")
    corpus_args(m)
    m.add_argument("--epsilon", type=float, default=1.0)
    m.add_argument("--beta", type=float, default=0.1)
    m.add_argument("--tau-bot", type=float, default=None)
    m.add_argument("--seed", type=int, default=None)
    m.add_argument("--noiseless", action="store_true")
    m.add_argument("--tau", type=float, default=None, help="threshold override (noiseless only)")
    m.add_argument("--output", choices=("tsv", "jsonl"), default="tsv")
    m.add_argument("--stats", action="store_true")

    b = sub.add_parser("bench", help="time the miner on synthetic corpora")
    b.add_argument("--sizes", default="1000x64,2000x64,4000x64", help="comma-separated NxL pairs")
    b.add_argument("--alphabet-size", type=int, default=4)
    b.add_argument("--epsilon", type=float, default=1.0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeat", type=int, default=1)

    o = sub.add_parser("oracle", help="exact frequent substrings by brute force")
    corpus_args(o)
    o.add_argument("--threshold", type=float, required=True)
    o.add_argument("--strict", action="store_true", help="require count > threshold")
    return parser


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        n, _, ell = item.strip().partition("x")
        out.append((int(n), int(ell)))
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "mine":
            if args.tau is not None and not args.noiseless:
                raise DPFreqSubError("--tau is only allowed together with --noiseless")
            manifest = RunManifest(args.input, args.format, args.alphabet, args.epsilon, args.beta,
                                   args.tau_bot, args.seed, args.noiseless, args.tau, args.output, args.stats)
            return run(manifest)
        if args.command == "bench":
            rows = bench(_parse_sizes(args.sizes), args.alphabet_size, args.epsilon, args.seed, args.repeat)
            print("n\tell\tseconds\tpeak_nodes")
            for row in rows:
                print(f"{row['n']}\t{row['ell']}\t{row['seconds']:.3f}\t{row['peak_nodes']}")
            return EXIT_OK
        docs = ingest(args.input, args.format)
        _resolve_alphabet(args.alphabet, docs)
        table = brute_frequencies(docs, max(len(d) for d in docs))
        keep = [(p, c) for p, c in table.items() if (c > args.threshold if args.strict else c >= args.threshold)]
        for p, c in sorted(keep, key=lambda pc: (len(pc[0]), pc[0])):
            print(f"{p}\t{len(p)}\t{c}")
        return EXIT_OK
    except (DPFreqSubError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
