"""Chat client behavior against an in-process endpoint."""

import pytest

from capt.errors import EndpointError
from capt.llm import ChatClient
from capt.testing import MockChatServer

PING = [{"role": "user", "content": "ping"}]


def make_client(server: MockChatServer, **kwargs) -> ChatClient:
    kwargs.setdefault("backoff_base_s", 0.0)
    return ChatClient(server.base_url, "test-model", **kwargs)


def test_round_trip_content():
    with MockChatServer(replies={"ping": "pong"}) as server:
        assert make_client(server).chat(PING) == "pong"


def test_request_payload_shape():
    with MockChatServer(default_reply="ok") as server:
        make_client(server, temperature=0.25).chat(PING)
        assert server.requests == [
            {"model": "test-model", "messages": PING, "temperature": 0.25}
        ]


def test_bearer_header_comes_from_env(monkeypatch):
    monkeypatch.setenv("CAPT_API_KEY", "sk-test-123")
    with MockChatServer(default_reply="ok") as server:
        make_client(server).chat(PING)
        assert server.request_headers[0]["Authorization"] == "Bearer sk-test-123"


def test_no_auth_header_when_env_unset(monkeypatch):
    monkeypatch.delenv("CAPT_API_KEY", raising=False)
    with MockChatServer(default_reply="ok") as server:
        make_client(server).chat(PING)
        assert "Authorization" not in server.request_headers[0]


def test_alternate_key_env(monkeypatch):
    monkeypatch.delenv("CAPT_API_KEY", raising=False)
    monkeypatch.setenv("OTHER_KEY", "zzz")
    with MockChatServer(default_reply="ok") as server:
        make_client(server, api_key_env="OTHER_KEY").chat(PING)
        assert server.request_headers[0]["Authorization"] == "Bearer zzz"


def test_retries_transient_server_faults():
    with MockChatServer(default_reply="ok", fail_first=2) as server:
        assert make_client(server, retry_max=2).chat(PING) == "ok"
        assert len(server.requests) == 3


def test_retry_budget_exhaustion():
    with MockChatServer(default_reply="ok", fail_first=5) as server:
        with pytest.raises(EndpointError, match="failed after 2 attempts"):
            make_client(server, retry_max=1).chat(PING)
        assert len(server.requests) == 2


def test_non_retryable_status_raises_immediately():
    # no scripted reply -> 404, which must not burn the retry budget
    with MockChatServer() as server:
        with pytest.raises(EndpointError, match="404"):
            make_client(server, retry_max=3).chat(PING)
        assert len(server.requests) == 1


def test_transport_error_surfaces_after_retries():
    client = ChatClient(
        "http://127.0.0.1:9", "test-model", retry_max=1, backoff_base_s=0.0,
        timeout_ms=2000,
    )
    with pytest.raises(EndpointError, match="transport error"):
        client.chat(PING)
