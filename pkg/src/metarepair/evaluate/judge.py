"""Plausibility of a candidate function: splice it in, build, run the tests."""

from __future__ import annotations

import shutil
import tempfile
from dataclasses import dataclass
from pathlib import Path

from ..dataset.manifest import BugCase
from ..errors import CommandTimeout
from ..syntax import SourceUnit, locate_function, parse
from ..verify.outcome import TestPatterns, parse_test_output, run_command

UNPARSED = "unparsed"
COMPILE_FAIL = "compile_fail"
TEST_FAIL = "test_fail"
PLAUSIBLE = "plausible"
VERDICT_ORDER = (UNPARSED, COMPILE_FAIL, TEST_FAIL, PLAUSIBLE)


@dataclass(frozen=True)
class Judgement:
    verdict: str
    note: str = ""
    failing_tests: tuple[str, ...] = ()


def splice(bug: BugCase, candidate: str, root: str | Path) -> None:
    """Replace the target function in the checkout copy at ``root`` with ``candidate``."""
    path = Path(root) / bug.file_relpath
    unit = SourceUnit.from_path(path)
    fn = locate_function(parse(unit), bug.function_name, bug.function_line_hint)
    text = candidate.strip("\n").replace("\n", unit.eol).encode("utf-8")
    path.write_bytes(unit.text[: fn.start_byte] + text.lstrip() + unit.text[fn.end_byte :])


def judge_plausible(bug: BugCase, candidate: str | None, workspace: str | None = None, timeout: float = 300.0,
                    patterns: TestPatterns = TestPatterns()) -> Judgement:
    """``plausible`` when the project builds and the test command passes with no failing test reported."""
    if candidate is None or not candidate.strip():
        return Judgement(UNPARSED)
    with tempfile.TemporaryDirectory(prefix="metarepair-judge-", dir=workspace) as tmp:
        work = Path(tmp) / "work"
        shutil.copytree(bug.checkout_dir, work, symlinks=True)
        splice(bug, candidate, work)
        try:
            build = run_command(bug.build_cmd, work, timeout)
        except CommandTimeout:
            return Judgement(COMPILE_FAIL, "build timeout")
        if build.returncode != 0:
            return Judgement(COMPILE_FAIL)
        try:
            test = run_command(bug.test_cmd, work, timeout)
        except CommandTimeout:
            return Judgement(TEST_FAIL, "timeout")
        _, failing, _ = parse_test_output(test.stdout + "\n" + test.stderr, patterns)
        if test.returncode == 0 and not failing:
            return Judgement(PLAUSIBLE)
        return Judgement(TEST_FAIL, failing_tests=tuple(sorted(failing)))
