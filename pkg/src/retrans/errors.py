"""Shared exception and warning types."""

from __future__ import annotations


class DataError(Exception):
    """Base class for malformed or inconsistent input data."""


class EmptySentenceError(DataError):
    """A sentence line was empty or whitespace-only."""

    def __init__(self, context: str = "") -> None:
        self.context = context
        super().__init__(f"empty sentence{f' ({context})' if context else ''}")


class CorpusMismatchError(DataError):
    """Two parallel line streams had different lengths."""

    def __init__(self, src_count: int, tgt_count: int) -> None:
        self.src_count = src_count
        self.tgt_count = tgt_count
        super().__init__(
            f"parallel streams differ in length: {src_count} source lines vs "
            f"{tgt_count} target lines"
        )


class AlignmentParseError(DataError):
    """An alignment line contained a malformed or out-of-range link token."""

    def __init__(self, token: str, detail: str = "") -> None:
        self.token = token
        super().__init__(
            f"bad alignment token {token!r}{f': {detail}' if detail else ''}"
        )


class AlignmentMissingError(DataError):
    """No usable alignment was supplied for a sentence pair."""

    def __init__(self, pair_id: int, detail: str = "") -> None:
        self.pair_id = pair_id
        super().__init__(
            f"missing or mismatched alignment for pair {pair_id}"
            f"{f': {detail}' if detail else ''}"
        )


class EventParseError(DataError):
    """An event line was not a valid update record."""


class EventOrderError(DataError):
    """Events for one utterance were interleaved with another utterance."""


class TranslatorError(RuntimeError):
    """The translator failed while a session was being simulated."""

    def __init__(self, utterance_id: int, step: int, detail: str = "") -> None:
        self.utterance_id = utterance_id
        self.step = step
        super().__init__(
            f"translator failed on utterance {utterance_id}, step {step}"
            f"{f': {detail}' if detail else ''}"
        )


class NoOpEventWarning(UserWarning):
    """An update event had no effect on the source state."""
