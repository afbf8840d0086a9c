"""Byte-pair-encoding tokenizer for GPT-2-compatible vocabulary/merges files.

Used to enforce the token budget when building sentence-form reformulated
queries. The tokenizer is byte-level: text is mapped to a reversible
unicode alphabet, pre-tokenized with the standard contraction/word/number
pattern, and each pre-token is merged greedily by merge rank. Decoding is
the exact inverse, so truncation at a token boundary round-trips.

A whitespace tokenizer is also provided as an explicitly non-faithful
fallback for environments without vocabulary files: its "tokens" are
whitespace-delimited words, which do not match BPE token counts.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Protocol

import regex

_PRETOKEN_RE = regex.compile(
    r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+"""
)


def bytes_to_unicode() -> dict[int, str]:
    """Reversible byte -> printable-unicode map (the byte-level BPE alphabet)."""
    bs = (
        list(range(ord("!"), ord("~") + 1))
        + list(range(ord("\xa1"), ord("\xac") + 1))
        + list(range(ord("\xae"), ord("\xff") + 1))
    )
    cs = bs[:]
    n = 0
    for b in range(256):
        if b not in bs:
            bs.append(b)
            cs.append(256 + n)
            n += 1
    return dict(zip(bs, [chr(c) for c in cs]))


class Tokenizer(Protocol):
    """Interface used by query reformulation for budget enforcement.

    `decode` must invert `encode`, and encoding must distribute over
    concatenation at whitespace boundaries, so that budget cuts can be
    attributed to the text parts they fall in.
    """

    def encode(self, text: str) -> list:
        ...

    def decode(self, tokens: list) -> str:
        ...

    def count(self, text: str) -> int:
        ...


class ByteLevelBPETokenizer:
    """Tokenizer over a vocabulary (token -> id) and ordered merge list."""

    def __init__(self, vocab: dict[str, int], merges: list[tuple[str, str]]):
        self.encoder = dict(vocab)
        self.decoder = {i: t for t, i in vocab.items()}
        self.ranks = {pair: i for i, pair in enumerate(merges)}
        self.byte_encoder = bytes_to_unicode()
        self.byte_decoder = {u: b for b, u in self.byte_encoder.items()}
        self._cache: dict[str, tuple[str, ...]] = {}

    @classmethod
    def from_files(cls, vocab_path: str | Path, merges_path: str | Path) -> "ByteLevelBPETokenizer":
        """Load from a vocab.json / merges.txt pair.

        The merges file may start with a `#version` comment line.
        """
        vocab = json.loads(Path(vocab_path).read_text(encoding="utf-8"))
        merges: list[tuple[str, str]] = []
        for line_no, line in enumerate(
            Path(merges_path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(" ")
            if len(parts) != 2:
                raise ValueError(f"merges line {line_no}: expected two tokens, got {line!r}")
            merges.append((parts[0], parts[1]))
        return cls(vocab, merges)

    def _bpe(self, unit: str) -> tuple[str, ...]:
        cached = self._cache.get(unit)
        if cached is not None:
            return cached
        word = tuple(unit)
        while len(word) > 1:
            pairs = {(word[i], word[i + 1]) for i in range(len(word) - 1)}
            best = min(pairs, key=lambda p: self.ranks.get(p, float("inf")))
            if best not in self.ranks:
                break
            first, second = best
            merged: list[str] = []
            i = 0
            while i < len(word):
                if i < len(word) - 1 and word[i] == first and word[i + 1] == second:
                    merged.append(first + second)
                    i += 2
                else:
                    merged.append(word[i])
                    i += 1
            word = tuple(merged)
        self._cache[unit] = word
        return word

    def encode(self, text: str) -> list[int]:
        ids: list[int] = []
        for pretoken in _PRETOKEN_RE.findall(text):
            unit = "".join(self.byte_encoder[b] for b in pretoken.encode("utf-8"))
            for piece in self._bpe(unit):
                try:
                    ids.append(self.encoder[piece])
                except KeyError:
                    raise ValueError(
                        f"piece {piece!r} missing from vocabulary; the vocab file "
                        "must cover all 256 byte units"
                    ) from None
        return ids

    def decode(self, ids: list[int]) -> str:
        text = "".join(self.decoder[i] for i in ids)
        data = bytes(self.byte_decoder[c] for c in text)
        return data.decode("utf-8", errors="replace")

    def count(self, text: str) -> int:
        return len(self.encode(text))


class WhitespaceTokenizer:
    """Treats whitespace-delimited words as tokens. NOT equivalent to BPE
    counting; only for use when no vocabulary files are available."""

    def encode(self, text: str) -> list[str]:
        return text.split()

    def decode(self, tokens: list[str]) -> str:
        return " ".join(tokens)

    def count(self, text: str) -> int:
        return len(text.split())
