"""An in-process chat-completions server for offline tests.

Replies are keyed by the exact text of the last user message, so tests can
assert byte-level request fidelity: if the harness sends anything other
than the expected prompt, the lookup misses and the test fails loudly.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable


class MockChatServer:
    """Context manager around a loopback /chat/completions endpoint.

    replies: exact last-user-message -> reply text, or a callable taking
    the full message list. Unmatched prompts answer 404 unless a
    default_reply is given. fail_first: that many leading requests answer
    500, for exercising retry paths.
    """

    def __init__(
        self,
        replies: dict[str, str] | Callable[[list[dict]], str] | None = None,
        default_reply: str | None = None,
        fail_first: int = 0,
    ):
        self.replies = replies or {}
        self.default_reply = default_reply
        self.fail_first = fail_first
        self.requests: list[dict] = []
        self.request_headers: list[dict] = []
        self._lock = threading.Lock()
        self._server: ThreadingHTTPServer | None = None
        self._thread: threading.Thread | None = None

    # --- lifecycle ---

    def __enter__(self) -> "MockChatServer":
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):  # keep test output quiet
                pass

            def do_POST(self):
                if not self.path.endswith("/chat/completions"):
                    self.send_error(404, "unknown route")
                    return
                length = int(self.headers.get("Content-Length", "0"))
                payload = json.loads(self.rfile.read(length) or b"{}")
                outer._handle(self, payload, dict(self.headers))

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def __exit__(self, *exc_info) -> None:
        if self._server is not None:
            self._server.shutdown()
            self._server.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)

    @property
    def base_url(self) -> str:
        assert self._server is not None, "server not started"
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}/v1"

    # --- request handling ---

    def _handle(
        self, handler: BaseHTTPRequestHandler, payload: dict, headers: dict
    ) -> None:
        with self._lock:
            self.requests.append(payload)
            self.request_headers.append(headers)
            fail = len(self.requests) <= self.fail_first
        if fail:
            handler.send_error(500, "injected fault")
            return
        reply = self._reply_for(payload.get("messages") or [])
        if reply is None:
            handler.send_error(404, "no scripted reply for this prompt")
            return
        body = json.dumps(
            {"choices": [{"message": {"role": "assistant", "content": reply}}]}
        ).encode("utf-8")
        handler.send_response(200)
        handler.send_header("Content-Type", "application/json")
        handler.send_header("Content-Length", str(len(body)))
        handler.end_headers()
        handler.wfile.write(body)

    def _reply_for(self, messages: list[dict]) -> str | None:
        if callable(self.replies):
            return self.replies(messages)
        last_user = next(
            (m.get("content", "") for m in reversed(messages) if m.get("role") == "user"),
            "",
        )
        if last_user in self.replies:
            return self.replies[last_user]
        return self.default_reply

    # --- assertions ---

    def last_user_messages(self) -> list[str]:
        """The final user message of every request received, in order."""
        out = []
        with self._lock:
            for payload in self.requests:
                messages = payload.get("messages") or []
                out.append(
                    next(
                        (m.get("content", "") for m in reversed(messages)
                         if m.get("role") == "user"),
                        "",
                    )
                )
        return out


def replies_from_fixture(path: str, prompts_by_id: dict[str, str]) -> dict[str, str]:
    """Scripted id->reply JSONL, rekeyed by the exact prompt text.

    The server matches on the final user message, so this keeps the
    byte-exactness guarantee while fixtures stay id-addressed.
    """
    replies = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            entry = json.loads(line)
            replies[prompts_by_id[entry["id"]]] = entry["reply"]
    return replies
