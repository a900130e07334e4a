"""Drawing completions for a prompt, persisted as they arrive so a run can resume."""

from __future__ import annotations

import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from ..endpoint import CompletionClient
from ..errors import EndpointUnavailable


@dataclass(frozen=True)
class SamplingConfig:
    top_p: float = 0.95
    temperature: float = 0.8
    samples_per_bug: int = 200
    max_new_tokens: int = 2048
    endpoint_url: str | None = None
    model: str = "default"
    timeout: float = 120.0
    window: int = 8  # requests in flight

    def __post_init__(self) -> None:
        if not 0 < self.top_p <= 1:
            raise ValueError("top_p must be in (0, 1]")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.samples_per_bug < 1:
            raise ValueError("samples_per_bug must be >= 1")
        if self.window < 1:
            raise ValueError("window must be >= 1")

    def to_dict(self) -> dict:
        return asdict(self)

    def client(self) -> CompletionClient:
        return CompletionClient(self.endpoint_url, model=self.model, timeout=self.timeout)


def load_samples(path: str | os.PathLike) -> dict[int, str]:
    """Completions already stored, keyed by sample index; a torn last line is ignored."""
    out: dict[int, str] = {}
    p = Path(path)
    if not p.exists():
        return out
    for line in p.read_text(encoding="utf-8").splitlines():
        try:
            row = json.loads(line)
        except json.JSONDecodeError:
            continue
        out[int(row["sample_index"])] = row["completion"]
    return out


def _marker(path: Path) -> Path:
    return path.with_name(path.name + ".partial")


def is_complete(path: str | os.PathLike, cfg: SamplingConfig) -> bool:
    p = Path(path)
    return p.exists() and not _marker(p).exists() and len(load_samples(p)) >= cfg.samples_per_bug


def sample_patches(prompt: str, cfg: SamplingConfig, store: str | os.PathLike, client=None,
                   meta: dict | None = None) -> list[str]:
    """Return ``samples_per_bug`` completions, requesting only those not yet in ``store``.

    While sampling, a ``.partial`` marker sits next to the store; it is removed
    once every sample is on disk.
    """
    store = Path(store)
    store.parent.mkdir(parents=True, exist_ok=True)
    have = load_samples(store)
    missing = [i for i in range(cfg.samples_per_bug) if i not in have]
    if missing:
        client = client or cfg.client()
        marker = _marker(store)
        marker.write_text(json.dumps({"missing": len(missing)}) + "\n", encoding="utf-8")
        lock = threading.Lock()
        # rewrite cleanly so a line torn by an earlier kill does not glue onto new output
        with open(store, "w", encoding="utf-8") as fh:
            for i in sorted(have):
                fh.write(json.dumps({**(meta or {}), "sample_index": i, "completion": have[i]}) + "\n")

        def draw(index: int) -> None:
            texts = client.complete(prompt, n=1, temperature=cfg.temperature, top_p=cfg.top_p,
                                    max_tokens=cfg.max_new_tokens)
            if not texts:
                raise EndpointUnavailable("endpoint returned no choices")
            row = json.dumps({**(meta or {}), "sample_index": index, "completion": texts[0]})
            with lock, open(store, "a", encoding="utf-8") as fh:
                fh.write(row + "\n")
                fh.flush()
            have[index] = texts[0]

        with ThreadPoolExecutor(max_workers=cfg.window) as pool:
            futures = [pool.submit(draw, i) for i in missing]
            errors = [f.exception() for f in futures if f.exception() is not None]
        if errors:
            raise errors[0]
        marker.unlink(missing_ok=True)
    return [have[i] for i in range(cfg.samples_per_bug)]
