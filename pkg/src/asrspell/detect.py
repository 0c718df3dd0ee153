"""Transcript tokenization and spelling-error detection.

Non-word detection is a pure vocabulary lookup: a token absent from the
index unigrams is an error. Real-word detection is statistical and
optional: a valid token is suspect when some candidate correction fits the
preceding context far better (by a configurable margin) than the token
itself does.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from asrspell.candidates import generate_candidates
from asrspell.store import normalize_token


class ErrorKind(Enum):
    NONWORD = "nonword"
    REALWORD_SUSPECT = "realword"


@dataclass(frozen=True)
class DetectedError:
    position: int        # token index, 0-based
    token: str
    kind: ErrorKind


@dataclass
class Transcript:
    raw: str
    tokens: list[str]
    spans: list[tuple[int, int]]  # character range of each token in raw

    def __len__(self) -> int:
        return len(self.tokens)


def tokenize(text: str) -> Transcript:
    """Split on whitespace, normalize each chunk, record residue spans.

    The span covers the chunk minus its leading/trailing punctuation, so a
    later replacement preserves surrounding punctuation. Chunks that
    normalize to nothing produce no token.
    """
    tokens: list[str] = []
    spans: list[tuple[int, int]] = []
    pos = 0
    n = len(text)
    while pos < n:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        end = pos
        while end < n and not text[end].isspace():
            end += 1
        start, stop = pos, end
        while start < stop and not text[start].isalnum():
            start += 1
        while stop > start and not text[stop - 1].isalnum():
            stop -= 1
        token = normalize_token(text[start:stop])
        if token is not None:
            tokens.append(token)
            spans.append((start, stop))
        pos = end
    return Transcript(raw=text, tokens=tokens, spans=spans)


def _exempt(token: str) -> bool:
    # Numerals and codes are not dictionary words; flagging them would be
    # noise the index vocabulary cannot arbitrate.
    return any(c.isdigit() for c in token)


def detect_nonword_errors(transcript: Transcript, backend) -> list[DetectedError]:
    """One NonWord error per out-of-vocabulary token, in position order."""
    errors = []
    for i, token in enumerate(transcript.tokens):
        if _exempt(token):
            continue
        if not backend.unigram_exists(token):
            errors.append(DetectedError(i, token, ErrorKind.NONWORD))
    return errors


def detect_realword_suspects(transcript: Transcript, backend,
                             margin: float = 10.0, window: int = 4,
                             k: int = 8) -> list[DetectedError]:
    """Context-margin detection of valid-but-wrong words.

    For each in-vocabulary token, the token and its candidate corrections
    are scored by the count of (up to `window` preceding tokens + word).
    The token is suspect iff some candidate's count reaches ``margin``
    times the token's own (zero counts as one). Tokens with no preceding
    context are never flagged: without context there is nothing
    context-sensitive to compare. margin=inf disables the pass.
    """
    if margin < 1:
        raise ValueError(f"margin must be >= 1, got {margin}")
    suspects = []
    for i, token in enumerate(transcript.tokens):
        if i == 0 or len(token) < 2 or _exempt(token):
            continue
        if not backend.unigram_exists(token):
            continue  # already a NonWord error
        prefix = transcript.tokens[max(0, i - window):i]
        own = backend.ngram_count(prefix + [token])
        threshold = margin * max(own, 1)
        for cand in generate_candidates(token, backend, k=k).ranked:
            if backend.ngram_count(prefix + [cand.word]) >= threshold:
                suspects.append(
                    DetectedError(i, token, ErrorKind.REALWORD_SUSPECT))
                break
    return suspects
