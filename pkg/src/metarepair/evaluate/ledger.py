"""Per-candidate verdicts and their reduction to fixed-bug counts."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

from .judge import PLAUSIBLE, VERDICT_ORDER

log = logging.getLogger(__name__)

ORIGINAL = "original"
TRANSFORMED = "transformed"


@dataclass
class PatchCandidate:
    bug_id: str
    sample_index: int
    raw_completion: str
    extracted_fn: str | None
    normalized_hash: str
    verdict: str
    flagged_correct: bool = False  # filled in by a human reviewer
    note: str = ""

    def __post_init__(self) -> None:
        if self.verdict not in VERDICT_ORDER:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == PLAUSIBLE and self.extracted_fn is None:
            raise ValueError("a plausible candidate needs an extracted function")
        if self.flagged_correct and self.verdict != PLAUSIBLE:
            raise ValueError("only plausible candidates can be flagged correct")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class BugSummary:
    best_verdict: str
    samples: int
    correct: bool = False


@dataclass
class LedgerEntry:
    model: str
    prompt_kind: str
    dataset: str
    fixed_plausible: int
    fixed_correct: int
    reviewed: bool = False
    bugs: dict[str, BugSummary] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 <= self.fixed_correct <= self.fixed_plausible:
            raise ValueError("need 0 <= fixed_correct <= fixed_plausible")
        if self.bugs and self.fixed_plausible > len(self.bugs):
            raise ValueError("more fixed bugs than bugs")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.model, self.prompt_kind, self.dataset)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bugs"] = {k: asdict(v) for k, v in sorted(self.bugs.items())}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> LedgerEntry:
        bugs = {k: BugSummary(**v) for k, v in (d.get("bugs") or {}).items()}
        return cls(d["model"], d["prompt_kind"], d["dataset"], int(d["fixed_plausible"]),
                   int(d.get("fixed_correct") or 0), bool(d.get("reviewed", False)), bugs)


@dataclass
class EvalLedger:
    entries: list[LedgerEntry] = field(default_factory=list)

    def get(self, model: str, prompt_kind: str, dataset: str) -> LedgerEntry | None:
        for e in self.entries:
            if e.key == (model, prompt_kind, dataset):
                return e
        return None

    def put(self, entry: LedgerEntry) -> None:
        self.entries = [e for e in self.entries if e.key != entry.key] + [entry]

    def models(self) -> list[str]:
        seen: list[str] = []
        for e in self.entries:
            if e.model not in seen:
                seen.append(e.model)
        return seen

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries]}

    def dump(self, path: str | os.PathLike) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | os.PathLike) -> EvalLedger:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls([LedgerEntry.from_dict(e) for e in data.get("entries", [])])


def best_verdict(verdicts: Iterable[str]) -> str:
    return max(verdicts, key=VERDICT_ORDER.index)


def aggregate(candidates: Iterable[PatchCandidate], model: str, prompt_kind: str, dataset: str,
              bug_ids: Iterable[str] | None = None, reviewed: bool = False) -> LedgerEntry:
    """Best verdict per bug; a bug counts as fixed with at least one qualifying sample."""
    by_bug: dict[str, list[PatchCandidate]] = {}
    for c in candidates:
        by_bug.setdefault(c.bug_id, []).append(c)
    for bug_id in bug_ids or ():
        if bug_id not in by_bug:
            log.warning("bug %s has no samples and is left out of %s/%s/%s", bug_id, model, prompt_kind, dataset)
    bugs = {
        bug_id: BugSummary(best_verdict(c.verdict for c in cs), len(cs), any(c.flagged_correct for c in cs))
        for bug_id, cs in sorted(by_bug.items())
    }
    plausible = sum(b.best_verdict == PLAUSIBLE for b in bugs.values())
    correct = sum(b.correct for b in bugs.values())
    return LedgerEntry(model, prompt_kind, dataset, plausible, correct, reviewed or correct > 0, bugs)
