from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable

RENAME = "T1"
LOOPS = "T2"
SWITCH = "T3"
DEAD_CODE = "T4"
NEGATE = "T5"
OPERATORS = (RENAME, LOOPS, SWITCH, DEAD_CODE, NEGATE)

APPLIED = "applied"
SKIPPED = "skipped"


@dataclass(frozen=True)
class TransformConfig:
    seed: int = 0
    enabled_ops: tuple[str, ...] = OPERATORS
    max_dead_blocks: int = 3
    rename_provider: str = "deterministic"  # or "endpoint"
    endpoint_url: str | None = None
    endpoint_model: str | None = None

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.max_dead_blocks < 0:
            raise ValueError("max_dead_blocks must be >= 0")
        unknown = set(self.enabled_ops) - set(OPERATORS)
        if unknown:
            raise ValueError(f"unknown operators: {sorted(unknown)}")
        # pipeline order is fixed regardless of how the set was given
        object.__setattr__(self, "enabled_ops", tuple(op for op in OPERATORS if op in self.enabled_ops))
        if self.rename_provider not in ("deterministic", "endpoint"):
            raise ValueError(f"unknown rename provider {self.rename_provider!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class EditRecord:
    op: str
    start_byte: int
    end_byte: int
    summary: str
    status: str = APPLIED
    skip_reason: str | None = None


@dataclass
class TransformRecord:
    bug_id: str
    edits: list[EditRecord] = field(default_factory=list)

    def extend(self, records: Iterable[EditRecord]) -> None:
        self.edits.extend(records)

    def counts(self) -> dict[str, dict[str, int]]:
        out = {op: {APPLIED: 0, SKIPPED: 0} for op in OPERATORS}
        for e in self.edits:
            out[e.op][e.status] += 1
        return out

    def jsonl_rows(self) -> list[dict]:
        rows = []
        for e in self.edits:
            row = {
                "bug_id": self.bug_id,
                "op": e.op,
                "start_byte": e.start_byte,
                "end_byte": e.end_byte,
                "status": e.status,
            }
            if e.skip_reason is not None:
                row["skip_reason"] = e.skip_reason
            row["summary"] = e.summary
            rows.append(row)
        return rows

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.jsonl_rows())
