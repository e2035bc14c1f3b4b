"""Block encoding of an arbitrary alphabet into terminated binary codewords.

Every symbol becomes ``b`` bits followed by the terminator ``$`` so that
substrings of an encoded document can be checked for character alignment.
Encoded strings are plain ``str`` objects over ``{'0', '1', '$'}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import EncodingError, InvalidAlphabetError, UndecodableError

TERMINATOR = "$"
BIT_SYMBOLS = ("0", "1", TERMINATOR)


def block_width(alphabet_size: int) -> int:
    # a singleton alphabet still needs one bit per block
    return max(1, math.ceil(math.log2(alphabet_size))) if alphabet_size > 1 else 1


@dataclass(frozen=True)
class Codebook:
    """Injective map from alphabet symbols to fixed-width codewords.

    Symbol ``i`` (0-based, in alphabet order) is mapped to the ``b``-bit
    binary representation of ``i`` followed by ``$``.
    """

    alphabet: tuple
    block_width: int
    round_r: int
    forward: Mapping[Hashable, str] = field(repr=False)
    reverse: Mapping[str, Hashable] = field(repr=False)

    @property
    def is_textual(self) -> bool:
        """True when every symbol is a one-character string."""
        return all(isinstance(s, str) and len(s) == 1 for s in self.alphabet)

    @property
    def codewords(self) -> list[str]:
        return [self.forward[s] for s in self.alphabet]

    def encode(self, doc: Sequence[Hashable]) -> str:
        if isinstance(doc, str) and self.is_textual:
            table = self._translation_table()
            encoded = doc.translate(table)
            if len(encoded) == self.round_r * len(doc):
                return encoded
        parts = []
        forward = self.forward
        for i, sym in enumerate(doc):
            try:
                parts.append(forward[sym])
            except (KeyError, TypeError):
                raise EncodingError(sym, i) from None
        return "".join(parts)

    def _translation_table(self) -> dict:
        table = self.__dict__.get("_table")
        if table is None:
            table = {ord(s): self.forward[s] for s in self.alphabet}
            object.__setattr__(self, "_table", table)
        return table

    def decode(self, enc: str):
        """Invert :meth:`encode`.

        Returns a ``str`` for textual alphabets and a tuple otherwise.
        Raises :class:`UndecodableError` when ``enc`` is not a whole number
        of codewords from the image of the encoding.
        """
        r = self.round_r
        if len(enc) % r:
            raise UndecodableError(f"length {len(enc)} is not a multiple of {r}")
        out = []
        for start in range(0, len(enc), r):
            block = enc[start:start + r]
            try:
                out.append(self.reverse[block])
            except KeyError:
                raise UndecodableError(f"block {block!r} at offset {start} is not a codeword") from None
        if self.is_textual:
            return "".join(out)
        return tuple(out)

    def is_character_aligned(self, p: str) -> bool:
        """Whether ``p`` splits as ``a`` codewords plus ``c <= r`` trailing symbols."""
        if any(ch not in BIT_SYMBOLS for ch in p):
            return False
        r = self.round_r
        full = len(p) // r
        if len(p) % r == 0 and full:
            # c = r lets the last whole block be unconstrained
            full -= 1
        reverse = self.reverse
        return all(p[i * r:(i + 1) * r] in reverse for i in range(full))


def build_codebook(alphabet: Iterable[Hashable]) -> Codebook:
    symbols = tuple(alphabet)
    if not symbols:
        raise InvalidAlphabetError("alphabet is empty")
    if len(set(symbols)) != len(symbols):
        seen = set()
        dup = next(s for s in symbols if s in seen or seen.add(s))
        raise InvalidAlphabetError(f"duplicate symbol {dup!r}")
    b = block_width(len(symbols))
    forward = {s: format(i, f"0{b}b") + TERMINATOR for i, s in enumerate(symbols)}
    reverse = {w: s for s, w in forward.items()}
    return Codebook(symbols, b, b + 1, forward, reverse)


def infer_alphabet(docs: Iterable[Sequence[Hashable]]) -> list:
    """Sorted set of distinct symbols across ``docs``."""
    symbols = set()
    for doc in docs:
        symbols.update(doc)
    return sorted(symbols)
