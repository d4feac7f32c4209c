"""Sentence and corpus data model plus plain-text parallel/alignment I/O.

Sentences are tuples of whitespace-free tokens. Token positions are 1-based
everywhere in this package; the on-disk alignment format is 0-based and is
converted at the I/O boundary only.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from pathlib import Path

from .errors import AlignmentParseError, CorpusMismatchError, EmptySentenceError

_LINK_RE = re.compile(r"([0-9]+)-([0-9]+)")

Tokens = tuple[str, ...]
"""A sentence as an ordered tuple of non-empty, whitespace-free tokens."""


def tokenize(line: str) -> Tokens:
    """Split a line on runs of whitespace, ignoring leading/trailing space.

    Raises EmptySentenceError if the line contains no tokens.
    """
    tokens = tuple(line.split())
    if not tokens:
        raise EmptySentenceError()
    return tokens


def detokenize(tokens: Sequence[str]) -> str:
    """Join tokens with single spaces (inverse of tokenize for valid tokens)."""
    return " ".join(tokens)


@dataclass(frozen=True)
class SentencePair:
    """One row of a parallel corpus.

    The source side is always non-empty. The target side is non-empty for
    pairs read from corpus files, but may be empty for rows that originate
    from partial-sentence generation (an empty translation is a legal label
    for a very short source prefix).
    """

    id: int
    source: Tokens
    target: Tokens

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValueError(f"pair id must be >= 0, got {self.id}")
        if not self.source:
            raise ValueError(f"pair {self.id}: source must be non-empty")


@dataclass(frozen=True)
class ParallelCorpus:
    """An ordered collection of sentence pairs, ids matching line order."""

    pairs: tuple[SentencePair, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[SentencePair]:
        return iter(self.pairs)

    def __getitem__(self, index: int) -> SentencePair:
        return self.pairs[index]


@dataclass(frozen=True)
class Alignment:
    """Word links for one sentence pair, as 1-based (source, target) positions.

    A target position may be unaligned or carry several links; many-to-many
    link sets are kept as-is.
    """

    src_len: int
    tgt_len: int
    links: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.src_len < 1 or self.tgt_len < 1:
            raise ValueError("alignment requires src_len >= 1 and tgt_len >= 1")
        for i, j in self.links:
            if not (1 <= i <= self.src_len) or not (1 <= j <= self.tgt_len):
                raise ValueError(
                    f"link ({i},{j}) outside sentence lengths "
                    f"({self.src_len},{self.tgt_len})"
                )


def read_parallel(src_lines: Iterable[str], tgt_lines: Iterable[str]) -> ParallelCorpus:
    """Build a corpus from two aligned line streams.

    Pair k gets id k. Raises CorpusMismatchError on unequal lengths and
    EmptySentenceError (with side and line number) on blank lines.
    """
    src = list(src_lines)
    tgt = list(tgt_lines)
    if len(src) != len(tgt):
        raise CorpusMismatchError(len(src), len(tgt))
    pairs = []
    for k, (s, t) in enumerate(zip(src, tgt)):
        try:
            source = tokenize(s)
        except EmptySentenceError:
            raise EmptySentenceError(f"source line {k + 1}") from None
        try:
            target = tokenize(t)
        except EmptySentenceError:
            raise EmptySentenceError(f"target line {k + 1}") from None
        pairs.append(SentencePair(k, source, target))
    return ParallelCorpus(tuple(pairs))


def corpus_lines(corpus: ParallelCorpus) -> tuple[list[str], list[str]]:
    """Render a corpus back into (source lines, target lines)."""
    return (
        [detokenize(p.source) for p in corpus],
        [detokenize(p.target) for p in corpus],
    )


def read_alignment_line(line: str, src_len: int, tgt_len: int) -> Alignment:
    """Parse one line of space-separated 0-based "i-j" link pairs.

    A blank line yields an empty link set (a fully unaligned pair is legal).
    Duplicate pairs collapse. Raises AlignmentParseError on malformed tokens
    or indices outside [0, len).
    """
    links = set()
    for token in line.split():
        match = _LINK_RE.fullmatch(token)
        if match is None:
            raise AlignmentParseError(token)
        i, j = int(match.group(1)), int(match.group(2))
        if i >= src_len or j >= tgt_len:
            raise AlignmentParseError(
                token, f"index out of range for lengths ({src_len},{tgt_len})"
            )
        links.add((i + 1, j + 1))
    return Alignment(src_len, tgt_len, frozenset(links))


def format_alignment(alignment: Alignment) -> str:
    """Render links as sorted 0-based "i-j" pairs (inverse of parsing)."""
    return " ".join(f"{i - 1}-{j - 1}" for i, j in sorted(alignment.links))


def read_alignments(lines: Iterable[str], corpus: ParallelCorpus) -> list[Alignment]:
    """Parse one alignment line per corpus pair, in corpus order."""
    lines = list(lines)
    if len(lines) != len(corpus):
        raise CorpusMismatchError(len(corpus), len(lines))
    return [
        read_alignment_line(line, len(pair.source), len(pair.target))
        for line, pair in zip(lines, corpus)
    ]


def read_lines(path: str | Path) -> list[str]:
    """Read a UTF-8 text file as a list of lines without terminators."""
    return Path(path).read_text(encoding="utf-8").splitlines()


def write_lines(path: str | Path, lines: Iterable[str]) -> None:
    """Write lines as a UTF-8 text file with trailing newline."""
    lines = list(lines)
    text = "\n".join(lines) + "\n" if lines else ""
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def load_corpus(src_path: str | Path, tgt_path: str | Path) -> ParallelCorpus:
    """Read a parallel corpus from two one-sentence-per-line files."""
    return read_parallel(read_lines(src_path), read_lines(tgt_path))
