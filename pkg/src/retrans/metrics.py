"""Translation quality and stability scoring.

Covers corpus BLEU, sentence GLEU (the min of n-gram precision and recall,
which punishes over-long output), rewrite counting between consecutive
displayed translations, token-level word error rate, and the repartitioning
of an unsegmented hypothesis stream against reference segments so that
segmentation mismatches do not distort BLEU.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from .corpus import Tokens

MAX_ORDER = 4

_INF = 1 << 60


def ngram_counts(tokens: Sequence[str], max_order: int = MAX_ORDER) -> Counter:
    """Occurrence counts of all n-grams with 1 <= n <= max_order."""
    counts: Counter = Counter()
    for n in range(1, max_order + 1):
        for k in range(len(tokens) - n + 1):
            counts[tuple(tokens[k : k + n])] += 1
    return counts


def common_prefix_len(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of the longest common prefix of two token sequences."""
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def bleu(
    hypotheses: Sequence[Tokens],
    references: Sequence[Tokens],
    smooth: bool = False,
) -> float:
    """Corpus BLEU in [0, 1] with orders 1..4 and the brevity penalty.

    Precisions are clipped counts aggregated over the whole corpus; the
    score is their geometric mean times exp(min(0, 1 - ref_len/hyp_len)).
    Orders for which the corpus has no hypothesis n-grams at all are skipped
    so that very short corpora still score 1.0 against themselves. Without
    smoothing the score is 0 whenever any remaining aggregate precision is 0;
    smooth=True adds one to numerator and denominator of orders above 1,
    which keeps desk-size corpora away from hard zeros.
    """
    if len(hypotheses) != len(references):
        raise ValueError(
            f"hypothesis/reference counts differ: {len(hypotheses)} vs {len(references)}"
        )
    if not hypotheses:
        raise ValueError("need at least one sentence pair")
    matched = [0] * (MAX_ORDER + 1)
    total = [0] * (MAX_ORDER + 1)
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_len += len(hyp)
        ref_len += len(ref)
        hyp_all = ngram_counts(hyp)
        ref_all = ngram_counts(ref)
        overlap = hyp_all & ref_all
        for gram, c in hyp_all.items():
            total[len(gram)] += c
        for gram, c in overlap.items():
            matched[len(gram)] += c
    logs = []
    for n in range(1, MAX_ORDER + 1):
        m, t = matched[n], total[n]
        if t == 0:
            continue
        if smooth and n > 1:
            m, t = m + 1, t + 1
        if m == 0:
            return 0.0
        logs.append(math.log(m / t))
    if not logs:
        return 0.0
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return bp * math.exp(sum(logs) / len(logs))


def gleu(hypothesis: Tokens, reference: Tokens) -> float:
    """Sentence reward in [0, 1]: min of n-gram precision and recall.

    Matches are summed over orders 1..4 with counts clipped per n-gram.
    Symmetric in its arguments; 1.0 exactly when both n-gram profiles agree.
    """
    if not hypothesis or not reference:
        raise ValueError("gleu requires non-empty hypothesis and reference")
    hyp_counts = ngram_counts(hypothesis)
    ref_counts = ngram_counts(reference)
    matched = sum((hyp_counts & ref_counts).values())
    precision = matched / sum(hyp_counts.values())
    recall = matched / sum(ref_counts.values())
    return min(precision, recall)


def mean_gleu(hypotheses: Sequence[Tokens], references: Sequence[Tokens]) -> float:
    """Plain average of sentence scores, for corpus-level reporting."""
    if len(hypotheses) != len(references):
        raise ValueError(
            f"hypothesis/reference counts differ: {len(hypotheses)} vs {len(references)}"
        )
    if not hypotheses:
        raise ValueError("need at least one sentence pair")
    return sum(gleu(h, r) for h, r in zip(hypotheses, references)) / len(hypotheses)


def corrected_words(prev: Tokens, new: Tokens) -> int:
    """Words of the previous translation that a new one forces the user to reread.

    Counts every word of prev from the first changed position onward, i.e.
    len(prev) minus the common prefix length. Zero exactly when new extends
    prev without touching it.
    """
    return len(prev) - common_prefix_len(prev, new)


@dataclass(frozen=True)
class CorrectionReport:
    """Rewrite totals over the displayed translations of one or more streams."""

    words_updated: int
    messages_updated: int
    updates_total: int

    def __add__(self, other: "CorrectionReport") -> "CorrectionReport":
        return CorrectionReport(
            self.words_updated + other.words_updated,
            self.messages_updated + other.messages_updated,
            self.updates_total + other.updates_total,
        )


def correction_report(translations: Sequence[Tokens]) -> CorrectionReport:
    """Tally rewrites over consecutive displayed translations of one utterance."""
    if not translations:
        raise ValueError("need at least one displayed translation")
    words = 0
    messages = 0
    for prev, new in zip(translations, translations[1:]):
        changed = corrected_words(prev, new)
        words += changed
        if changed > 0:
            messages += 1
    return CorrectionReport(words, messages, len(translations) - 1)


def edit_distance(a: Sequence[str], b: Sequence[str]) -> int:
    """Levenshtein distance over tokens with unit costs."""
    if len(a) < len(b):
        a, b = b, a
    row = list(range(len(b) + 1))
    for i, x in enumerate(a, start=1):
        prev_diag = row[0]
        row[0] = i
        for j, y in enumerate(b, start=1):
            cur = row[j]
            row[j] = min(
                prev_diag + (0 if x == y else 1),
                row[j] + 1,
                row[j - 1] + 1,
            )
            prev_diag = cur
    return row[-1]


def wer(hyp: Tokens, ref: Tokens) -> tuple[int, float]:
    """Token edit distance and its ratio to the reference length."""
    if not ref:
        raise ValueError("wer requires a non-empty reference")
    edits = edit_distance(hyp, ref)
    return edits, edits / len(ref)


def _min_cost_row(prev: list[int], stream: Sequence[str], ref: Sequence[str]) -> list[int]:
    """new[p] = min over q <= p of prev[q] + edit_distance(stream[q:p], ref)."""
    n = len(stream)
    row = list(prev)
    for p in range(1, n + 1):
        if row[p - 1] + 1 < row[p]:
            row[p] = row[p - 1] + 1
    for r in range(1, len(ref) + 1):
        y = ref[r - 1]
        new_row = [row[0] + 1]
        for p in range(1, n + 1):
            best = row[p - 1] + (0 if stream[p - 1] == y else 1)
            if row[p] + 1 < best:
                best = row[p] + 1
            if new_row[p - 1] + 1 < best:
                best = new_row[p - 1] + 1
            new_row.append(best)
        row = new_row
    return row


def _prefix_distances(stream: Sequence[str], ref: Sequence[str]) -> list[int]:
    """costs[p] = edit_distance(stream[:p], ref) for every prefix of stream."""
    row = list(range(len(ref) + 1))
    out = [row[-1]]
    for x in stream:
        new_row = [row[0] + 1]
        for r in range(1, len(ref) + 1):
            best = row[r - 1] + (0 if x == ref[r - 1] else 1)
            if row[r] + 1 < best:
                best = row[r] + 1
            if new_row[r - 1] + 1 < best:
                best = new_row[r - 1] + 1
            new_row.append(best)
        row = new_row
        out.append(row[-1])
    return out


def resegment(hyp_stream: Tokens, ref_segments: Sequence[Tokens]) -> list[Tokens]:
    """Split a token stream into len(ref_segments) contiguous pieces.

    The split minimizes the summed token edit distance between piece k and
    reference k; pieces may be empty. Among minimal splits the one with the
    lexicographically earliest boundary vector is returned, which makes the
    output deterministic.
    """
    if not ref_segments:
        raise ValueError("need at least one reference segment")
    n = len(hyp_stream)
    m = len(ref_segments)

    # suffix[k][p] = min cost of splitting hyp_stream[p:] over references k..m-1,
    # built by running the forward recurrence on the reversed problem.
    rev_stream = hyp_stream[::-1]
    rev_row = [0] + [_INF] * n
    rev_rows = [rev_row]
    for ref in reversed(ref_segments):
        rev_row = _min_cost_row(rev_row, rev_stream, ref[::-1])
        rev_rows.append(rev_row)
    suffix = [
        [rev_rows[m - k][n - p] for p in range(n + 1)] for k in range(m + 1)
    ]

    segments = []
    cursor = 0
    for k, ref in enumerate(ref_segments):
        remaining = suffix[k][cursor]
        costs = _prefix_distances(hyp_stream[cursor:], ref)
        for end in range(cursor, n + 1):
            if costs[end - cursor] + suffix[k + 1][end] == remaining:
                break
        segments.append(hyp_stream[cursor:end])
        cursor = end
    return segments
