"""Toolkit for partial-sentence translation data and retranslation evaluation.

Covers prefix-pair corpus generation (length-ratio and alignment-based),
lexical alignment training by EM, multi-task dataset mixing, incremental
session simulation against pluggable translators, and quality/stability
scoring (BLEU, GLEU, rewrite counts, WER-minimizing resegmentation).
"""

from .aligner import (
    NULL,
    TranslationTable,
    align_corpus,
    log_likelihood,
    train_model1,
    viterbi_align,
)
from .corpus import (
    Alignment,
    ParallelCorpus,
    SentencePair,
    Tokens,
    detokenize,
    format_alignment,
    read_alignment_line,
    read_alignments,
    read_parallel,
    tokenize,
)
from .metrics import (
    CorrectionReport,
    bleu,
    corrected_words,
    correction_report,
    edit_distance,
    gleu,
    mean_gleu,
    resegment,
    wer,
)
from .mixing import MixManifest, mix, subsample
from .partials import (
    Method,
    PartialCorpus,
    PartialPair,
    alignment_prefix_len,
    generate_partial,
    ratio_prefix_len,
)
from .session import (
    CommandTranslator,
    SessionLog,
    SessionReport,
    Translator,
    UpdateEvent,
    apply_event,
    dictionary_translator,
    evaluate_sessions,
    identity_translator,
    read_events,
    run_session,
    scripted_translator,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "CommandTranslator",
    "CorrectionReport",
    "Method",
    "MixManifest",
    "NULL",
    "ParallelCorpus",
    "PartialCorpus",
    "PartialPair",
    "SentencePair",
    "SessionLog",
    "SessionReport",
    "Tokens",
    "TranslationTable",
    "Translator",
    "UpdateEvent",
    "align_corpus",
    "alignment_prefix_len",
    "apply_event",
    "bleu",
    "corrected_words",
    "correction_report",
    "detokenize",
    "dictionary_translator",
    "edit_distance",
    "evaluate_sessions",
    "format_alignment",
    "generate_partial",
    "gleu",
    "identity_translator",
    "log_likelihood",
    "mean_gleu",
    "mix",
    "ratio_prefix_len",
    "read_alignment_line",
    "read_alignments",
    "read_events",
    "read_parallel",
    "resegment",
    "run_session",
    "scripted_translator",
    "subsample",
    "tokenize",
    "train_model1",
    "viterbi_align",
    "wer",
]
