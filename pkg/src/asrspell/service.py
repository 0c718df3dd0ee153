"""Minimal HTTP lookup service over an index, plus the matching client.

Protocol (HTTP/1.1, UTF-8, plain text bodies, no auth):

    GET /v1/unigram?q=<token>                  -> count as decimal text
    GET /v1/ngram?q=<tokens, '+'-separated>    -> count (1..5 tokens)
    GET /v1/postings?q=<2 chars>               -> newline-separated words,
                                                  capped at 1000
    GET /v1/manifest                           -> manifest TSV

Malformed queries get 400 with a one-line reason. Counts are raw corpus
occurrences; a zero body means "not seen", never "server trouble" (faults
surface as HTTP errors, which the client raises as BackendError).
"""
from __future__ import annotations

import logging
import urllib.error
import urllib.parse
import urllib.request
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Sequence

from asrspell.backend import BackendError
from asrspell.store import NgramIndex

log = logging.getLogger(__name__)

POSTINGS_CAP = 1000
PROTOCOL_MAX_ORDER = 5


def serve(index: NgramIndex, bind_address: str = "127.0.0.1",
          port: int = 8421) -> ThreadingHTTPServer:
    """Bind a read-only lookup server; caller runs serve_forever()/shutdown().

    Port 0 picks a free port (see server.server_address). The index is
    shared immutably across request threads.
    """
    handler = _make_handler(index)
    try:
        return ThreadingHTTPServer((bind_address, port), handler)
    except OSError as exc:
        raise OSError(
            f"cannot bind lookup service to {bind_address}:{port}: {exc}"
        ) from exc


def _make_handler(index: NgramIndex):
    class Handler(BaseHTTPRequestHandler):
        def do_GET(self):
            url = urllib.parse.urlparse(self.path)
            try:
                body = self._dispatch(url)
            except _BadRequest as exc:
                self._reply(400, str(exc) + "\n")
            except KeyError:
                self._reply(404, "unknown endpoint\n")
            else:
                self._reply(200, body)

        def _dispatch(self, url) -> str:
            route = {
                "/v1/unigram": self._unigram,
                "/v1/ngram": self._ngram,
                "/v1/postings": self._postings,
                "/v1/manifest": self._manifest,
            }[url.path]
            return route(url.query)

        def _unigram(self, query: str) -> str:
            token = _single_param(query)
            if not token or " " in token:
                raise _BadRequest("q must be a single token")
            return f"{index.ngram_count([token])}\n"

        def _ngram(self, query: str) -> str:
            raw = _single_param(query)
            tokens = raw.split(" ") if raw else []
            if not tokens or "" in tokens:
                raise _BadRequest("q must be 1..5 '+'-separated tokens")
            if len(tokens) > min(PROTOCOL_MAX_ORDER, index.max_order):
                raise _BadRequest(
                    f"query order {len(tokens)} exceeds maximum "
                    f"{min(PROTOCOL_MAX_ORDER, index.max_order)}")
            return f"{index.ngram_count(tokens)}\n"

        def _postings(self, query: str) -> str:
            bigram = _single_param(query)
            if len(bigram) != 2:
                raise _BadRequest("q must be exactly 2 characters")
            words = index.unigrams_containing_bigram(bigram)[:POSTINGS_CAP]
            return "".join(w + "\n" for w in words)

        def _manifest(self, query: str) -> str:
            return index.manifest.to_tsv()

        def _reply(self, status: int, body: str):
            data = body.encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "text/plain; charset=utf-8")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        def log_message(self, fmt, *args):
            log.debug("%s %s", self.address_string(), fmt % args)

    return Handler


class _BadRequest(Exception):
    pass


def _single_param(query: str) -> str:
    params = urllib.parse.parse_qs(query, keep_blank_values=True)
    values = params.get("q", [])
    if len(values) != 1:
        raise _BadRequest("exactly one q parameter required")
    return values[0]


class RemoteBackend:
    """Backend-contract client for a served index.

    Results are identical to querying the index locally (postings are the
    one exception: the service caps them at 1000 words). Network faults
    raise BackendError; they are never folded into a zero count.
    """

    def __init__(self, base_url: str, timeout: float = 10.0):
        self._base = base_url.rstrip("/")
        self._timeout = timeout
        self._max_order: int | None = None

    @property
    def max_order(self) -> int:
        if self._max_order is None:
            self._max_order = int(self.manifest()["max_order"])
        return self._max_order

    def manifest(self) -> dict[str, str]:
        body = self._get("/v1/manifest")
        entries = (line.split("\t", 1) for line in body.splitlines() if line)
        return {key: value for key, value in entries}

    def unigram_exists(self, token: str) -> bool:
        return self.ngram_count([token]) > 0

    def ngram_count(self, tokens: Sequence[str] | str) -> int:
        if isinstance(tokens, str):
            tokens = (tokens,)
        n = len(tokens)
        if not 1 <= n <= self.max_order:
            raise ValueError(f"query order {n} outside 1..{self.max_order}")
        endpoint = "/v1/unigram" if n == 1 else "/v1/ngram"
        body = self._get(endpoint, q=" ".join(tokens))
        try:
            return int(body.strip())
        except ValueError:
            raise BackendError(
                f"{self._base}{endpoint}: non-numeric count {body!r}")

    def unigrams_containing_bigram(self, bigram: str) -> list[str]:
        if len(bigram) != 2:
            raise ValueError(f"character bigram must have length 2, "
                             f"got {bigram!r}")
        body = self._get("/v1/postings", q=bigram)
        return [line for line in body.split("\n") if line]

    def _get(self, path: str, **params) -> str:
        url = self._base + path
        if params:
            url += "?" + urllib.parse.urlencode(params)
        try:
            with urllib.request.urlopen(url, timeout=self._timeout) as resp:
                return resp.read().decode("utf-8")
        except urllib.error.HTTPError as exc:
            reason = exc.read().decode("utf-8", "replace").strip()
            if exc.code == 400:
                # The service rejected the query itself; mirror the local
                # precondition failure rather than a transport fault.
                raise ValueError(f"rejected query: {reason}") from exc
            raise BackendError(f"{url}: HTTP {exc.code}: {reason}") from exc
        except OSError as exc:
            raise BackendError(f"{url}: {exc}") from exc
