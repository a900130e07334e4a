"""Project-level equivalence of original and transformed bug checkouts."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..dataset.manifest import BugCase, Manifest
from ..errors import CommandFailure, CommandTimeout, SchemaError
from .outcome import OutcomeSignature, TestPatterns, outcome_of

log = logging.getLogger(__name__)


@dataclass
class Verification:
    bug_id: str
    equivalent: bool
    before: OutcomeSignature
    after: OutcomeSignature

    def to_dict(self) -> dict:
        return {"bug_id": self.bug_id, "equivalent": self.equivalent, "before": self.before.to_dict(),
                "after": self.after.to_dict()}


def verify_bug_case(bug: BugCase, transformed_dir: str, timeout: float = 300.0,
                    patterns: TestPatterns = TestPatterns()) -> Verification:
    """Equivalent when both versions compile and pass and fail exactly the same tests."""
    before = outcome_of(bug.checkout_dir, bug.build_cmd, bug.test_cmd, timeout, patterns)
    after = outcome_of(transformed_dir, bug.build_cmd, bug.test_cmd, timeout, patterns)
    equivalent = before.compiled and after.compiled and before == after
    return Verification(bug.bug_id, equivalent, before, after)


@dataclass
class BatchReport:
    results: list[Verification] = field(default_factory=list)
    errors: dict[str, str] = field(default_factory=dict)

    @property
    def excluded(self) -> list[str]:
        """Bugs a human should inspect before they enter the transformed dataset."""
        return sorted([r.bug_id for r in self.results if not r.equivalent] + list(self.errors))

    def to_dict(self) -> dict:
        return {"excluded": self.excluded, "errors": dict(sorted(self.errors.items())),
                "results": [r.to_dict() for r in sorted(self.results, key=lambda r: r.bug_id)]}


def batch_verify(manifest: Manifest, transformed_tree: str, parallelism: int = 2, timeout: float = 300.0,
                 patterns: TestPatterns = TestPatterns()) -> BatchReport:
    if not manifest.bugs:
        raise SchemaError("manifest has no bugs", field="bugs")
    report = BatchReport()

    def one(bug: BugCase):
        target = Path(transformed_tree) / bug.bug_id
        try:
            return verify_bug_case(bug, str(target), timeout, patterns)
        except (CommandFailure, CommandTimeout, OSError) as exc:
            log.warning("bug %s: %s", bug.bug_id, exc)
            return (bug.bug_id, f"{type(exc).__name__}: {exc}")

    with ThreadPoolExecutor(max_workers=max(1, parallelism)) as pool:
        for out in pool.map(one, manifest.bugs):
            if isinstance(out, Verification):
                report.results.append(out)
            else:
                report.errors[out[0]] = out[1]
    return report
