"""Transforming every bug of a manifest into a mirrored output tree."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import shutil
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable

from ..errors import MetarepairError
from ..syntax import OffsetMap, SourceUnit
from ..transform import APPLIED, OPERATORS, SKIPPED, FunctionLocator, TransformConfig, TransformRecord
from ..transform.pipeline import transform_pipeline
from .manifest import BugCase, Manifest

log = logging.getLogger(__name__)


@dataclass
class BugOutcome:
    bug_id: str
    ok: bool
    error: str | None = None
    record: TransformRecord | None = None
    bug: BugCase | None = None  # the bug as it reads against the transformed tree
    diagnostics: list[dict] = field(default_factory=list)


@dataclass
class DatasetBuild:
    out_dir: str
    outcomes: list[BugOutcome]

    @property
    def failures(self) -> list[BugOutcome]:
        return [o for o in self.outcomes if not o.ok]

    def summary(self) -> dict:
        counts = {op: {APPLIED: 0, SKIPPED: 0} for op in OPERATORS}
        for o in self.outcomes:
            if o.record is None:
                continue
            for op, c in o.record.counts().items():
                counts[op][APPLIED] += c[APPLIED]
                counts[op][SKIPPED] += c[SKIPPED]
        return {
            "bugs": len(self.outcomes),
            "transformed": sum(o.ok for o in self.outcomes),
            "failed": {o.bug_id: o.error for o in self.failures},
            "operators": counts,
        }


def _nearest_line(before: SourceUnit, after: SourceUnit, offsets: OffsetMap, line: int) -> int:
    """Line of ``after`` holding the last surviving byte at or before the end of ``line``."""
    pos = before.line_end(line) - 1
    while pos >= 0:
        new = offsets.lookup(pos)
        if new is not None:
            return after.line_of(new)
        pos -= 1
    return 1


def remap_bug(bug: BugCase, before: SourceUnit, after: SourceUnit, offsets: OffsetMap, checkout: str) -> BugCase:
    from ..syntax import map_lines

    lines = map_lines(before, after, offsets, bug.buggy_lines)
    insertion = bug.insertion_after_line
    if insertion is not None:
        hits = map_lines(before, after, offsets, [insertion]) if insertion > 0 else []
        insertion = hits[-1] if hits else (_nearest_line(before, after, offsets, insertion) if insertion else 0)
    hint = map_lines(before, after, offsets, [bug.function_line_hint])
    hint_line = hint[0] if hint else _nearest_line(before, after, offsets, bug.function_line_hint)
    return replace(bug, checkout_dir=checkout, buggy_lines=tuple(lines), insertion_after_line=insertion,
                   function_line_hint=hint_line)


def transform_bug(bug: BugCase, config: TransformConfig, out_dir: str) -> BugOutcome:
    """Copy the checkout under ``out_dir/<bug_id>`` and rewrite the buggy function in place."""
    dest = Path(out_dir) / bug.bug_id
    try:
        unit = SourceUnit.from_path(bug.source_path)
        result = transform_pipeline(unit, FunctionLocator(bug.function_name, bug.function_line_hint), config,
                                    bug.bug_id)
        if dest.exists():
            shutil.rmtree(dest)
        shutil.copytree(bug.checkout_dir, dest, symlinks=True)
        (dest / bug.file_relpath).write_bytes(result.unit.text)
        moved = remap_bug(bug, unit, result.unit, result.offsets, str(dest))
        return BugOutcome(bug.bug_id, True, record=result.record, bug=moved, diagnostics=result.diagnostics)
    except (MetarepairError, OSError) as exc:
        log.warning("bug %s failed: %s", bug.bug_id, exc)
        return BugOutcome(bug.bug_id, False, error=f"{type(exc).__name__}: {exc}")


def tree_hash(root: str | os.PathLike, exclude: Iterable[str] = ("run.json",)) -> str:
    """SHA-256 over every file path and its bytes under ``root``.

    ``run.json`` is left out by default: it records invocation paths, not output.
    """
    root = Path(root)
    skip = set(exclude)
    h = hashlib.sha256()
    for p in sorted(root.rglob("*")):
        if p.is_file() and p.name not in skip:
            h.update(p.relative_to(root).as_posix().encode("utf-8") + b"\0")
            h.update(hashlib.sha256(p.read_bytes()).digest())
    return h.hexdigest()


def export_provenance(records: Iterable[TransformRecord], path: str | os.PathLike) -> None:
    """Write one JSON line per edit, ordered by (bug_id, start_byte)."""
    rows = [row for r in records for row in r.jsonl_rows()]
    rows.sort(key=lambda r: (r["bug_id"], r["start_byte"], r["end_byte"], r["op"]))
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")


def build_transformed_dataset(manifest: Manifest, config: TransformConfig, out_dir: str | os.PathLike,
                              parallelism: int = 1) -> DatasetBuild:
    """Transform all bugs, isolating failures, then write provenance, diagnostics and a remapped manifest."""
    out_dir = str(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    if parallelism > 1 and len(manifest.bugs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            outcomes = list(pool.map(transform_bug, manifest.bugs, [config] * len(manifest.bugs),
                                     [out_dir] * len(manifest.bugs)))
    else:
        outcomes = [transform_bug(b, config, out_dir) for b in manifest.bugs]
    build = DatasetBuild(out_dir, outcomes)
    export_provenance([o.record for o in outcomes if o.record is not None], Path(out_dir) / "provenance.jsonl")
    with open(Path(out_dir) / "diagnostics.jsonl", "w", encoding="utf-8") as fh:
        for o in outcomes:
            for d in o.diagnostics:
                fh.write(json.dumps(d, sort_keys=True) + "\n")
    # checkouts are named relative to the output tree so it can be moved or compared
    moved = [replace(o.bug, checkout_dir=os.path.relpath(o.bug.checkout_dir, out_dir)) for o in outcomes if o.ok]
    if moved:
        Manifest(manifest.schema_version, moved).dump(Path(out_dir) / "manifest.json")
    summary = build.summary()
    summary["config"] = config.to_dict()
    (Path(out_dir) / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n",
                                                encoding="utf-8")
    return build
