from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from retrans.corpus import Alignment, ParallelCorpus, SentencePair, read_parallel
from retrans.errors import AlignmentMissingError
from retrans.partials import (
    Method,
    alignment_prefix_len,
    generate_partial,
    manifest_lines,
    partial_lines,
    ratio_prefix_len,
    read_partial,
)

from oracles import prefix_len_bruteforce

# The running worked example: source "I encourage all of you" against target
# "yo animo a todos ustedes" with links (source, target) 1-based.
EXAMPLE_LINKS = frozenset({(1, 1), (2, 2), (2, 3), (3, 4), (5, 5)})
EXAMPLE_ALIGNMENT = Alignment(5, 5, EXAMPLE_LINKS)


def random_alignment(rng: random.Random, max_len=12) -> Alignment:
    src_len = rng.randint(1, max_len)
    tgt_len = rng.randint(1, max_len)
    n_links = rng.randint(0, src_len * tgt_len // 2)
    links = frozenset(
        (rng.randint(1, src_len), rng.randint(1, tgt_len)) for _ in range(n_links)
    )
    return Alignment(src_len, tgt_len, links)


class TestRatioPrefixLen:
    def test_full_prefix_maps_to_full_reference(self):
        assert ratio_prefix_len(5, 5, 6) == 6

    def test_round_half_up_down_case(self):
        assert ratio_prefix_len(5, 2, 6) == 2  # 2.4 rounds down

    def test_exact_value(self):
        assert ratio_prefix_len(4, 1, 8) == 2  # exactly 2.0

    def test_half_rounds_up(self):
        assert ratio_prefix_len(2, 1, 5) == 3  # 2.5 rounds up

    def test_zero_possible_for_short_targets(self):
        assert ratio_prefix_len(3, 1, 1) == 0  # 0.33 rounds down

    @pytest.mark.parametrize("src_len,i,tgt_len", [(3, 0, 2), (3, 4, 2), (3, 1, 0)])
    def test_preconditions(self, src_len, i, tgt_len):
        with pytest.raises(ValueError):
            ratio_prefix_len(src_len, i, tgt_len)

    @given(
        st.integers(1, 40),
        st.integers(1, 40),
        st.data(),
    )
    def test_monotone_and_complete(self, src_len, tgt_len, data):
        i = data.draw(st.integers(1, src_len))
        j = ratio_prefix_len(src_len, i, tgt_len)
        assert 0 <= j <= tgt_len
        if i < src_len:
            assert j <= ratio_prefix_len(src_len, i + 1, tgt_len)
        assert ratio_prefix_len(src_len, src_len, tgt_len) == tgt_len


class TestAlignmentPrefixLen:
    def test_worked_example_blocks_last_word(self):
        assert alignment_prefix_len(EXAMPLE_ALIGNMENT, 4) == 4

    def test_full_source_admits_full_target(self):
        rng = random.Random(5)
        for _ in range(20):
            a = random_alignment(rng)
            assert alignment_prefix_len(a, a.src_len) == a.tgt_len

    def test_blocked_first_position_gives_empty_prefix(self):
        a = Alignment(2, 1, frozenset({(2, 1)}))
        assert alignment_prefix_len(a, 1) == 0

    def test_unaligned_positions_impose_no_constraint(self):
        a = Alignment(3, 3, frozenset())
        assert alignment_prefix_len(a, 1) == 3

    def test_precondition(self):
        with pytest.raises(ValueError):
            alignment_prefix_len(EXAMPLE_ALIGNMENT, 0)

    def test_matches_bruteforce_on_random_instances(self):
        rng = random.Random(314)
        for _ in range(500):
            a = random_alignment(rng)
            i = rng.randint(1, a.src_len)
            assert alignment_prefix_len(a, i) == prefix_len_bruteforce(a.links, i, a.tgt_len)


def corpus_of(src: str, tgt: str) -> ParallelCorpus:
    return read_parallel([src], [tgt])


class TestGeneratePartial:
    def test_one_row_per_prefix_length(self):
        partial = generate_partial(corpus_of("a b c", "x y"), Method.RATIO)
        assert [p.i for p in partial] == [1, 2, 3]
        assert partial[2].source_prefix == ("a", "b", "c")
        assert partial[2].target_prefix == ("x", "y")

    def test_worked_example_target_lengths(self):
        corpus = corpus_of("I encourage all of you", "yo animo a todos ustedes")
        partial = generate_partial(corpus, Method.ALIGNMENT, [EXAMPLE_ALIGNMENT])
        assert [p.j for p in partial] == [1, 3, 4, 4, 5]
        assert partial[1].target_prefix == ("yo", "animo", "a")

    def test_min_i_skips_short_prefixes(self):
        partial = generate_partial(corpus_of("a b c", "x y"), Method.RATIO, min_i=2)
        assert [p.i for p in partial] == [2, 3]

    def test_empty_target_prefixes_are_kept(self):
        a = Alignment(2, 2, frozenset({(2, 1), (2, 2)}))
        partial = generate_partial(corpus_of("a b", "x y"), Method.ALIGNMENT, [a])
        assert partial[0].target_prefix == ()
        assert partial[1].target_prefix == ("x", "y")

    def test_missing_alignments(self):
        with pytest.raises(AlignmentMissingError):
            generate_partial(corpus_of("a b", "x"), Method.ALIGNMENT, None)

    def test_alignment_list_too_short(self):
        corpus = read_parallel(["a", "b"], ["x", "y"])
        with pytest.raises(AlignmentMissingError) as err:
            generate_partial(corpus, Method.ALIGNMENT, [Alignment(1, 1, frozenset())])
        assert err.value.pair_id == 1

    def test_alignment_dimension_mismatch(self):
        with pytest.raises(AlignmentMissingError):
            generate_partial(
                corpus_of("a b", "x"), Method.ALIGNMENT, [Alignment(9, 9, frozenset())]
            )

    def test_bad_min_i(self):
        with pytest.raises(ValueError):
            generate_partial(corpus_of("a", "x"), Method.RATIO, min_i=0)


sentence_st = st.lists(
    st.text(alphabet="abc", min_size=1, max_size=3), min_size=1, max_size=10
).map(tuple)


@given(sentence_st, sentence_st, st.data())
@settings(max_examples=200, deadline=None)
def test_prefix_monotonicity_both_methods(source, target, data):
    corpus = ParallelCorpus((SentencePair(0, source, target),))
    links = data.draw(
        st.frozensets(
            st.tuples(
                st.integers(1, len(source)),
                st.integers(1, len(target)),
            ),
            max_size=len(source) * len(target),
        )
    )
    alignment = Alignment(len(source), len(target), links)
    for method, alignments in ((Method.RATIO, None), (Method.ALIGNMENT, [alignment])):
        partial = generate_partial(corpus, method, alignments)
        rows = list(partial)
        for shorter, longer in zip(rows, rows[1:]):
            assert longer.target_prefix[: shorter.j] == shorter.target_prefix
        assert rows[-1].target_prefix == target


def test_partial_lines_round_trip():
    corpus = corpus_of("a b c", "x y")
    generated = generate_partial(corpus, Method.RATIO)
    src_lines, tgt_lines = partial_lines(generated)
    loaded = read_partial(src_lines, tgt_lines)
    assert [p.source_prefix for p in loaded] == [p.source_prefix for p in generated]
    assert [p.target_prefix for p in loaded] == [p.target_prefix for p in generated]
    assert all(p.method is None for p in loaded)


def test_manifest_lines_layout():
    corpus = corpus_of("a b", "x y")
    lines = manifest_lines(generate_partial(corpus, Method.RATIO))
    assert lines[0] == "parent_id\ti\tj\tmethod"
    assert lines[1] == "0\t1\t1\tratio"
    assert lines[2] == "0\t2\t2\tratio"
