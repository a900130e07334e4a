"""Differential execution of an original and a transformed self-contained program."""

from __future__ import annotations

import os
import re
import subprocess
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..syntax import SourceUnit
from .toolchain import Toolchain, find_toolchain

EQUAL = "equal"
UNEQUAL = "unequal"
TIMEOUT = "timeout"
COMPILE_ERROR = "compile_error"


@dataclass(frozen=True)
class GridPoint:
    args: tuple[str, ...] = ()
    stdin: str = ""


@dataclass(frozen=True)
class ExecProbe:
    grid: tuple[GridPoint, ...]
    main_class: str = "Main"
    timeout: float = 30.0

    def __post_init__(self) -> None:
        if not self.grid:
            raise ValueError("probe grid must not be empty")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


@dataclass(frozen=True)
class RunResult:
    stdout: bytes
    exit_status: int | None  # None on timeout


@dataclass
class PointVerdict:
    point: GridPoint
    verdict: str
    original: RunResult | None = None
    transformed: RunResult | None = None


@dataclass
class DiffReport:
    verdicts: list[PointVerdict] = field(default_factory=list)
    compile_errors: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.verdicts) and all(v.verdict == EQUAL for v in self.verdicts)


def _public_class(unit: SourceUnit, default: str) -> str:
    m = re.search(rb"public\s+(?:final\s+|abstract\s+)*class\s+([A-Za-z_$][\w$]*)", unit.text)
    return m.group(1).decode() if m else default


def compile_unit(unit: SourceUnit, outdir: str, toolchain: Toolchain, main_class: str = "Main",
                 timeout: float = 120.0) -> str | None:
    """Compile one source file into ``outdir``; returns compiler output on failure."""
    src_dir = Path(outdir) / "src"
    src_dir.mkdir(parents=True, exist_ok=True)
    path = src_dir / f"{_public_class(unit, main_class)}.java"
    path.write_bytes(unit.text)
    classes = Path(outdir) / "classes"
    classes.mkdir(exist_ok=True)
    proc = subprocess.run(toolchain.compile_cmd([str(path)], str(classes)), capture_output=True, timeout=timeout)
    if proc.returncode != 0:
        return (proc.stdout + proc.stderr).decode("utf-8", "replace")
    return None


def run_point(classes: str, probe: ExecProbe, point: GridPoint, toolchain: Toolchain) -> RunResult:
    try:
        proc = subprocess.run(toolchain.run_cmd(classes, probe.main_class, list(point.args)),
                              input=point.stdin.encode(), capture_output=True, timeout=probe.timeout)
    except subprocess.TimeoutExpired:
        return RunResult(b"", None)
    return RunResult(proc.stdout, proc.returncode)


def differential_check(original: SourceUnit, transformed: SourceUnit, probe: ExecProbe,
                       toolchain: Toolchain | None = None, workers: int = 4) -> DiffReport:
    """Compare stdout bytes and exit status of both programs on every grid point."""
    toolchain = toolchain or find_toolchain()
    report = DiffReport()
    with tempfile.TemporaryDirectory(prefix="metarepair-diff-") as tmp:
        dirs = {}
        for label, unit in (("original", original), ("transformed", transformed)):
            d = os.path.join(tmp, label)
            err = compile_unit(unit, d, toolchain, probe.main_class)
            if err is not None:
                report.compile_errors[label] = err
            dirs[label] = os.path.join(d, "classes")
        if report.compile_errors:
            report.verdicts = [PointVerdict(p, COMPILE_ERROR) for p in probe.grid]
            return report

        def judge(point: GridPoint) -> PointVerdict:
            a = run_point(dirs["original"], probe, point, toolchain)
            b = run_point(dirs["transformed"], probe, point, toolchain)
            if a.exit_status is None or b.exit_status is None:
                verdict = TIMEOUT
            elif a == b:
                verdict = EQUAL
            else:
                verdict = UNEQUAL
            return PointVerdict(point, verdict, a, b)

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            report.verdicts = list(pool.map(judge, probe.grid))
    return report
