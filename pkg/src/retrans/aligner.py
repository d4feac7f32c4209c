"""Lexical translation probabilities by EM and one-best alignment extraction.

This is the classic model where every target token is generated independently
from one source token (or from a null token, so that function words can stay
unaligned). Training is plain expectation-maximization on co-occurrence
expected counts: no distortion model, no randomness, bit-reproducible for a
fixed corpus.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from .corpus import Alignment, ParallelCorpus, SentencePair

NULL = None
"""Distinguished null source token; kept distinct from every real token."""

DEFAULT_EPSILON = 1e-12


@dataclass(frozen=True)
class TranslationTable:
    """Lexical probabilities t(target | source), source vocabulary plus null.

    Each source row sums to 1 over its co-occurring target tokens (checked on
    construction). Lookups of unseen (source, target) pairs return the
    epsilon floor instead of zero so that held-out pairs never divide by zero.
    """

    probs: dict[str | None, dict[str, float]]
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self) -> None:
        for source, row in self.probs.items():
            if any(p < 0 for p in row.values()):
                raise ValueError(f"negative probability in row for {source!r}")
            if abs(sum(row.values()) - 1.0) > 1e-6:
                raise ValueError(f"row for {source!r} does not sum to 1")

    def prob(self, source: str | None, target: str) -> float:
        row = self.probs.get(source)
        if row is None:
            return self.epsilon
        return row.get(target, self.epsilon)


def train_model1(
    corpus: ParallelCorpus,
    iterations: int,
    epsilon: float = DEFAULT_EPSILON,
) -> TranslationTable:
    """Run EM for the given number of iterations and return the table.

    Probabilities start uniform over co-occurring pairs. Each iteration
    distributes one unit of count per target token over the source tokens of
    its pair (null included) proportionally to the current probabilities,
    then renormalizes each source row. Corpus log-likelihood is non-decreasing
    across iterations.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if not len(corpus):
        raise ValueError("cannot train on an empty corpus")

    # Uniform init over the target types each source token co-occurs with.
    cooc: dict[str | None, set[str]] = defaultdict(set)
    for pair in corpus:
        targets = set(pair.target)
        cooc[NULL].update(targets)
        for e in pair.source:
            cooc[e].update(targets)
    probs: dict[str | None, dict[str, float]] = {
        e: {f: 1.0 / len(fs) for f in fs} for e, fs in cooc.items()
    }

    for _ in range(iterations):
        counts: dict[str | None, dict[str, float]] = defaultdict(lambda: defaultdict(float))
        totals: dict[str | None, float] = defaultdict(float)
        for pair in corpus:
            sources = (NULL, *pair.source)
            for f in pair.target:
                denom = sum(probs[e][f] for e in sources)
                for e in sources:
                    w = probs[e][f] / denom
                    counts[e][f] += w
                    totals[e] += w
        probs = {
            e: {f: c / totals[e] for f, c in row.items()}
            for e, row in counts.items()
        }

    return TranslationTable(probs, epsilon)


def log_likelihood(table: TranslationTable, corpus: ParallelCorpus) -> float:
    """Corpus log-likelihood under uniform alignment choice per target token."""
    ll = 0.0
    for pair in corpus:
        sources = (NULL, *pair.source)
        for f in pair.target:
            ll += math.log(sum(table.prob(e, f) for e in sources) / len(sources))
    return ll


def viterbi_align(table: TranslationTable, pair: SentencePair) -> Alignment:
    """Link each target position to its most probable source position.

    Ties between source positions break toward the smallest position. A
    target position is left unaligned only when the null token strictly
    beats every source position.
    """
    links = set()
    for j, f in enumerate(pair.target, start=1):
        best_i = 0
        best_p = -1.0
        for i, e in enumerate(pair.source, start=1):
            p = table.prob(e, f)
            if p > best_p:
                best_p = p
                best_i = i
        if table.prob(NULL, f) <= best_p:
            links.add((best_i, j))
    return Alignment(len(pair.source), len(pair.target), frozenset(links))


def align_corpus(table: TranslationTable, corpus: ParallelCorpus) -> list[Alignment]:
    """Viterbi-align every pair, preserving corpus order."""
    return [viterbi_align(table, pair) for pair in corpus]


def table_rows(table: TranslationTable) -> list[tuple[str, str, float]]:
    """Flatten the table to sorted (source, target, probability) rows.

    The null source token is rendered as the literal string "<NULL>"; it
    sorts before all real tokens.
    """
    rows = []
    for e, row in table.probs.items():
        name = "<NULL>" if e is NULL else e
        for f, p in row.items():
            rows.append((name, f, p))
    rows.sort(key=lambda r: (r[0] != "<NULL>", r[0], r[1]))
    return rows
