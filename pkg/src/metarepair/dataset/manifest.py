"""Bug manifest: a standalone JSON description of Defects4J-style bug cases."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ..errors import JavaSyntaxError, MetarepairError, SchemaError
from ..syntax import SourceUnit, locate_function, parse

SCHEMA_VERSIONS = (1,)


@dataclass(frozen=True)
class BugReport:
    title: str
    content: str


@dataclass(frozen=True)
class TriggerTest:
    name: str
    source_snippet: str
    error_message: str


@dataclass(frozen=True)
class BugCase:
    bug_id: str
    project: str
    checkout_dir: str
    file_relpath: str
    function_name: str
    function_line_hint: int
    build_cmd: str
    test_cmd: str
    buggy_lines: tuple[int, ...] = ()
    # for omission faults: the fix goes right after this line
    insertion_after_line: int | None = None
    bug_report: BugReport | None = None
    trigger_tests: tuple[TriggerTest, ...] = ()
    developer_patch: str | None = None

    @property
    def source_path(self) -> Path:
        return Path(self.checkout_dir) / self.file_relpath

    def to_dict(self) -> dict:
        d = asdict(self)
        d["buggy_lines"] = list(self.buggy_lines)
        d["trigger_tests"] = [asdict(t) for t in self.trigger_tests]
        return d


@dataclass
class Manifest:
    schema_version: int
    bugs: list[BugCase] = field(default_factory=list)
    path: str | None = None

    def by_id(self) -> dict[str, BugCase]:
        return {b.bug_id: b for b in self.bugs}

    def project_bugs(self, project: str) -> list[BugCase]:
        return [b for b in self.bugs if b.project == project]

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "bugs": [b.to_dict() for b in self.bugs]}

    def dump(self, path: str | os.PathLike) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")


_REQUIRED_TEXT = ("bug_id", "project", "checkout_dir", "file_relpath", "function_name", "build_cmd", "test_cmd")


def _text(raw: dict, key: str, bug_id: str | None) -> str:
    if key not in raw:
        raise SchemaError("missing", bug_id, key)
    value = raw[key]
    if not isinstance(value, str) or not value.strip():
        raise SchemaError("must be a non-empty string", bug_id, key)
    return value


def _int(value, bug_id: str, key: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise SchemaError(f"must be an integer >= {minimum}", bug_id, key)
    return value


def bug_from_dict(raw: dict, base_dir: str | os.PathLike = ".") -> BugCase:
    if not isinstance(raw, dict):
        raise SchemaError("bug entry must be an object")
    bug_id = raw.get("bug_id") if isinstance(raw.get("bug_id"), str) else None
    values = {k: _text(raw, k, bug_id) for k in _REQUIRED_TEXT}
    if "function_line_hint" not in raw:
        raise SchemaError("missing", bug_id, "function_line_hint")
    hint = _int(raw["function_line_hint"], bug_id, "function_line_hint")
    lines = raw.get("buggy_lines", [])
    if not isinstance(lines, list):
        raise SchemaError("must be a list", bug_id, "buggy_lines")
    lines = tuple(sorted({_int(x, bug_id, "buggy_lines") for x in lines}))
    insertion = raw.get("insertion_after_line")
    if insertion is not None:
        insertion = _int(insertion, bug_id, "insertion_after_line", 0)
    report = raw.get("bug_report")
    if report is not None:
        if not isinstance(report, dict) or not isinstance(report.get("title"), str) \
                or not isinstance(report.get("content"), str):
            raise SchemaError("must have string title and content", bug_id, "bug_report")
        report = BugReport(report["title"], report["content"])
    tests = []
    for t in raw.get("trigger_tests", []) or []:
        if not isinstance(t, dict) or not all(isinstance(t.get(k), str)
                                              for k in ("name", "source_snippet", "error_message")):
            raise SchemaError("entries need name, source_snippet and error_message", bug_id, "trigger_tests")
        tests.append(TriggerTest(t["name"], t["source_snippet"], t["error_message"]))
    patch = raw.get("developer_patch")
    if patch is not None and not isinstance(patch, str):
        raise SchemaError("must be a string", bug_id, "developer_patch")
    checkout = values["checkout_dir"]
    if not os.path.isabs(checkout):
        checkout = os.path.normpath(os.path.join(base_dir, checkout))
    values["checkout_dir"] = checkout
    return BugCase(function_line_hint=hint, buggy_lines=lines, insertion_after_line=insertion, bug_report=report,
                   trigger_tests=tuple(tests), developer_patch=patch, **values)


def check_lines(bug: BugCase) -> None:
    """Buggy lines must fall inside the target function. Files that fail to parse are left for later stages."""
    if not bug.buggy_lines and bug.insertion_after_line is None:
        return
    try:
        unit = SourceUnit.from_path(bug.source_path)
        fn = locate_function(parse(unit), bug.function_name, bug.function_line_hint)
    except (OSError, JavaSyntaxError):
        return
    except MetarepairError as exc:
        raise SchemaError(str(exc), bug.bug_id, "function_name") from exc
    for line in bug.buggy_lines:
        if not fn.start_line <= line <= fn.end_line:
            raise SchemaError(f"line {line} outside function span {fn.start_line}-{fn.end_line}", bug.bug_id,
                              "buggy_lines")
    if bug.insertion_after_line is not None and not fn.start_line <= bug.insertion_after_line <= fn.end_line:
        raise SchemaError("outside function span", bug.bug_id, "insertion_after_line")


def manifest_from_dict(data: dict, base_dir: str | os.PathLike = ".", check_spans: bool = True) -> Manifest:
    if not isinstance(data, dict):
        raise SchemaError("manifest must be a JSON object")
    version = data.get("schema_version")
    if version not in SCHEMA_VERSIONS:
        raise SchemaError(f"unrecognised schema_version {version!r}", field="schema_version")
    raw_bugs = data.get("bugs")
    if not isinstance(raw_bugs, list) or not raw_bugs:
        raise SchemaError("must be a non-empty list", field="bugs")
    bugs = [bug_from_dict(b, base_dir) for b in raw_bugs]
    seen = set()
    for b in bugs:
        if b.bug_id in seen:
            raise SchemaError("duplicate bug_id", b.bug_id, "bug_id")
        seen.add(b.bug_id)
        if check_spans:
            check_lines(b)
    return Manifest(version, bugs)


def load_manifest(path: str | os.PathLike, check_spans: bool = True) -> Manifest:
    """Read and validate a manifest; relative ``checkout_dir`` values resolve against its directory."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    manifest = manifest_from_dict(data, path.parent, check_spans)
    manifest.path = str(path)
    return manifest
