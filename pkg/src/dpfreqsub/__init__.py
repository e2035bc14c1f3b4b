"""Differentially private frequent substring mining over block-encoded strings."""

from .codec import Codebook, build_codebook, infer_alphabet
from .dp import BtmCounter, NoiseConfig, NoiseSource, laplace
from .errors import (
    ConfigurationError,
    DPFreqSubError,
    EmptyStreamError,
    EncodingError,
    InvalidAlphabetError,
    ParameterError,
    StreamExhaustedError,
    UndecodableError,
)
from .hld import HeavyPathDecomposition, decompose
from .miner import MinerConfig, MiningReport, PreparedCorpus, mine, prepare
from .oracle import brute_frequencies, brute_frequent, measure_sensitivity
from .suffix_index import Locus, SuffixIndex, build_index

__all__ = [
    "BtmCounter", "Codebook", "ConfigurationError", "DPFreqSubError", "EmptyStreamError",
    "EncodingError", "HeavyPathDecomposition", "InvalidAlphabetError", "Locus", "MinerConfig",
    "MiningReport", "NoiseConfig", "NoiseSource", "ParameterError", "PreparedCorpus",
    "StreamExhaustedError", "SuffixIndex", "UndecodableError", "brute_frequencies",
    "brute_frequent", "build_codebook", "build_index", "decompose", "infer_alphabet",
    "laplace", "measure_sensitivity", "mine", "prepare",
]
