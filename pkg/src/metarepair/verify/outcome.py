"""Running build/test commands and reading test outcomes from their output."""

from __future__ import annotations

import os
import re
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import CommandFailure, CommandTimeout

TEST_ID = r"(?P<id>[\w$]+\([\w.$]+\))"
DEFAULT_FAIL = rf"^\s*(?:FAIL(?:ED|URE)?|ERROR|\d+\))\s*:?\s*{TEST_ID}(?:\s*[:\-]\s*(?P<msg>.*))?$"
DEFAULT_PASS = rf"^\s*(?:PASS(?:ED)?|OK)\s*:?\s*{TEST_ID}"


@dataclass(frozen=True)
class TestPatterns:
    """Regexes over test output; each needs an ``id`` group, failures may add ``msg``."""

    __test__ = False

    fail: str = DEFAULT_FAIL
    passed: str = DEFAULT_PASS

    def compiled(self) -> tuple[re.Pattern, re.Pattern]:
        return re.compile(self.fail, re.M), re.compile(self.passed, re.M)


@dataclass(frozen=True)
class OutcomeSignature:
    compiled: bool
    passing_tests: frozenset[str] = frozenset()
    failing_tests: frozenset[str] = frozenset()
    messages: dict[str, str] = field(default_factory=dict, compare=False, hash=False)
    test_exit: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.passing_tests & self.failing_tests:
            raise ValueError("a test cannot both pass and fail")

    def to_dict(self) -> dict:
        return {
            "compiled": self.compiled,
            "passing_tests": sorted(self.passing_tests),
            "failing_tests": sorted(self.failing_tests),
            "messages": dict(sorted(self.messages.items())),
            "test_exit": self.test_exit,
        }


def parse_test_output(text: str, patterns: TestPatterns = TestPatterns()) -> tuple[set[str], set[str], dict]:
    fail_re, pass_re = patterns.compiled()
    failing: set[str] = set()
    messages: dict[str, str] = {}
    for m in fail_re.finditer(text):
        tid = m.group("id")
        failing.add(tid)
        msg = m.groupdict().get("msg")
        if msg and tid not in messages:
            messages[tid] = msg.strip().splitlines()[0] if msg.strip() else ""
    passing = {m.group("id") for m in pass_re.finditer(text)} - failing
    return passing, failing, messages


def run_command(cmd: str, cwd: str | os.PathLike, timeout: float) -> subprocess.CompletedProcess:
    """Run a shell command with the caller's environment."""
    try:
        proc = subprocess.run(cmd, shell=True, cwd=cwd, capture_output=True, text=True, timeout=timeout,
                              errors="replace")
    except subprocess.TimeoutExpired as exc:
        raise CommandTimeout(f"{cmd!r} exceeded {timeout}s in {cwd}") from exc
    except OSError as exc:
        raise CommandFailure(f"{cmd!r} could not start: {exc}") from exc
    if proc.returncode in (126, 127):
        raise CommandFailure(f"{cmd!r} not runnable (exit {proc.returncode}): {proc.stderr.strip()[:500]}")
    return proc


def outcome_of(directory: str | os.PathLike, build_cmd: str, test_cmd: str, timeout: float = 300.0,
               patterns: TestPatterns = TestPatterns(), isolate: bool = True) -> OutcomeSignature:
    """Build and test a project; with ``isolate`` the work happens in a private copy."""
    if isolate:
        with tempfile.TemporaryDirectory(prefix="metarepair-") as tmp:
            work = Path(tmp) / "work"
            shutil.copytree(directory, work, symlinks=True)
            return outcome_of(work, build_cmd, test_cmd, timeout, patterns, isolate=False)
    build = run_command(build_cmd, directory, timeout)
    if build.returncode != 0:
        return OutcomeSignature(False)
    test = run_command(test_cmd, directory, timeout)
    passing, failing, messages = parse_test_output(test.stdout + "\n" + test.stderr, patterns)
    return OutcomeSignature(True, frozenset(passing), frozenset(failing), messages, test.returncode)
