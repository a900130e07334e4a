"""Client for an HTTP JSON text-completion endpoint (OpenAI-style ``/v1/completions``)."""

from __future__ import annotations

import logging
import os
import time

import httpx

from .errors import EndpointUnavailable

log = logging.getLogger(__name__)

URL_ENV = "METAREPAIR_ENDPOINT_URL"
TOKEN_ENV = "METAREPAIR_API_TOKEN"


def completions_url(base: str) -> str:
    base = base.rstrip("/")
    if base.endswith("/completions"):
        return base
    if base.endswith("/v1"):
        return base + "/completions"
    return base + "/v1/completions"


class CompletionClient:
    def __init__(self, base_url: str | None = None, model: str = "default", token: str | None = None,
                 timeout: float = 120.0, retries: int = 3, backoff: float = 0.5):
        base_url = base_url or os.environ.get(URL_ENV)
        if not base_url:
            raise EndpointUnavailable(f"no endpoint URL given and {URL_ENV} is unset")
        self.url = completions_url(base_url)
        self.model = model
        self.token = token if token is not None else os.environ.get(TOKEN_ENV)
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        # one pooled client: building a fresh one per request costs tens of milliseconds
        self._http = httpx.Client(timeout=timeout)

    def complete(self, prompt: str, *, n: int = 1, temperature: float = 0.8, top_p: float = 0.95,
                 max_tokens: int = 2048, stop: list[str] | None = None) -> list[str]:
        payload = {
            "model": self.model,
            "prompt": prompt,
            "temperature": temperature,
            "top_p": top_p,
            "max_tokens": max_tokens,
            "n": n,
        }
        if stop:
            payload["stop"] = stop
        headers = {"Authorization": f"Bearer {self.token}"} if self.token else {}
        last: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                resp = self._http.post(self.url, json=payload, headers=headers)
                if resp.status_code >= 500 or resp.status_code == 429:
                    raise httpx.HTTPStatusError(f"status {resp.status_code}", request=resp.request, response=resp)
                resp.raise_for_status()
                choices = resp.json()["choices"]
                return [c.get("text", "") for c in choices]
            except (httpx.TransportError, httpx.HTTPStatusError, KeyError, ValueError) as exc:
                last = exc
                if isinstance(exc, httpx.HTTPStatusError) and exc.response.status_code < 500 and exc.response.status_code != 429:
                    break
                log.warning("completion request failed (attempt %d): %s", attempt + 1, exc)
                if attempt < self.retries:
                    time.sleep(self.backoff * (2**attempt))
        raise EndpointUnavailable(f"{self.url}: {last}")
