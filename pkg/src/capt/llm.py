"""Minimal chat-completions client with retry and bearer-token auth."""

from __future__ import annotations

import os
import time

import requests

from capt.errors import EndpointError

RETRYABLE_STATUS = {429, 500, 502, 503, 504}


class ChatClient:
    """Talks to an OpenAI-compatible /chat/completions endpoint.

    The API key is read from the environment at call time so the value
    never sits in config files or logs.
    """

    def __init__(
        self,
        base_url: str,
        model_name: str,
        api_key_env: str = "CAPT_API_KEY",
        temperature: float = 0.0,
        timeout_ms: int = 30000,
        retry_max: int = 2,
        backoff_base_s: float = 0.5,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.model_name = model_name
        self.api_key_env = api_key_env
        self.temperature = temperature
        self.timeout_s = timeout_ms / 1000.0
        self.retry_max = retry_max
        self.backoff_base_s = backoff_base_s
        self.session = session or requests.Session()

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def chat(self, messages: list[dict[str, str]]) -> str:
        """One completion for the given message list; retries transient faults."""
        url = f"{self.base_url}/chat/completions"
        payload = {
            "model": self.model_name,
            "messages": messages,
            "temperature": self.temperature,
        }
        last_fault = ""
        for attempt in range(self.retry_max + 1):
            if attempt:
                time.sleep(self.backoff_base_s * (2 ** (attempt - 1)))
            try:
                response = self.session.post(
                    url, json=payload, headers=self._headers(), timeout=self.timeout_s
                )
            except requests.RequestException as exc:
                last_fault = f"transport error: {exc}"
                continue
            if response.status_code in RETRYABLE_STATUS:
                last_fault = f"status {response.status_code}: {response.text[:200]}"
                continue
            if response.status_code != 200:
                raise EndpointError(
                    f"{url} answered {response.status_code}: {response.text[:200]}"
                )
            try:
                body = response.json()
                content = body["choices"][0]["message"]["content"]
            except (ValueError, LookupError, TypeError) as exc:
                raise EndpointError(f"{url} returned an unexpected payload: {exc}")
            if not isinstance(content, str):
                raise EndpointError(f"{url} returned non-text content")
            return content
        raise EndpointError(
            f"{url} failed after {self.retry_max + 1} attempts; last fault: {last_fault}"
        )
