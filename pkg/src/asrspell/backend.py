"""Lookup backend contract shared by the local index and the HTTP client."""
from typing import Protocol, Sequence, runtime_checkable


class BackendError(RuntimeError):
    """A lookup backend failed (network fault, bad response, ...).

    Deliberately distinct from a zero count: callers must never confuse
    "the backend is down" with "this n-gram was not seen".
    """


@runtime_checkable
class Backend(Protocol):
    """What the detector, candidate generator and corrector need from a
    lookup source. ``NgramIndex`` satisfies it directly; ``RemoteBackend``
    satisfies it over HTTP."""

    @property
    def max_order(self) -> int: ...

    def unigram_exists(self, token: str) -> bool: ...

    def ngram_count(self, tokens: Sequence[str]) -> int: ...

    def unigrams_containing_bigram(self, bigram: str) -> list[str]: ...
