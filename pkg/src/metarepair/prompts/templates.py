"""The four repair prompts with their comment markers."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..dataset.manifest import BugCase
from ..errors import BudgetExceeded, MissingIngredient, NoExampleAvailable, PreconditionViolation
from .examples import RepairExample, toy_example
from .source import fault_lines, function_text

HEADER = "// Provide a fix for the buggy function"
BUGGY = "// Buggy Function"
FIXED = "// Fixed Function"
REPORT_TITLE = "// Bug Report Title"
REPORT_CONTENT = "// Bug Report Content"
TRIGGER_TEST = "// Trigger Test"
ERROR_MESSAGE = "// Error Message"

TWO_SHOT = "TwoShot"
TWO_SHOT_FL = "TwoShotFL"
BUG_REPORT = "BugReport"
TRIGGER = "TriggerTest"
KINDS = (TWO_SHOT, TWO_SHOT_FL, BUG_REPORT, TRIGGER)

DEFAULT_BUDGET = 8192
TRUNCATION_NOTE = "..."


@dataclass(frozen=True)
class PromptConfig:
    budget: int = DEFAULT_BUDGET
    chars_per_token: int = 4

    def estimate(self, text: str) -> int:
        return math.ceil(len(text) / self.chars_per_token)


@dataclass
class PromptDocument:
    kind: str
    bug_id: str
    text: str
    token_estimate: int
    ingredients: dict = field(default_factory=dict)

    @property
    def filename(self) -> str:
        return f"{self.bug_id}.{self.kind}.prompt.txt"


def _block(marker: str, body: str) -> str:
    return marker + "\n" + (body if body.endswith("\n") else body + "\n")


def _target(target: str) -> str:
    if not target.strip():
        raise PreconditionViolation("target function text is empty")
    return HEADER + "\n" + _block(BUGGY, target) + FIXED + "\n"


def _finish(kind: str, bug: BugCase, text: str, cfg: PromptConfig, ingredients: dict) -> PromptDocument:
    est = cfg.estimate(text)
    if est > cfg.budget:
        raise BudgetExceeded(f"{bug.bug_id} {kind}: {est} tokens over budget {cfg.budget}")
    return PromptDocument(kind, bug.bug_id, text, est, ingredients)


def _two_shot(kind: str, bug: BugCase, target: str, toy: RepairExample, proj: RepairExample | None,
              cfg: PromptConfig, ingredients: dict) -> PromptDocument:
    def render(examples: list[RepairExample]) -> str:
        parts = [HEADER + "\n"]
        for ex in examples:
            parts.append(_block(BUGGY, ex.buggy_fn) + _block(FIXED, ex.fixed_fn))
        parts.append(_target(target))
        return "".join(parts)

    examples = [toy] + ([proj] if proj is not None else [])
    text = render(examples)
    if proj is not None and cfg.estimate(text) > cfg.budget:
        examples = [toy]
        text = render(examples)
        ingredients = {**ingredients, "project_example_dropped": "budget"}
    ingredients = {**ingredients, "examples": [{"origin": e.origin, "bug_id": e.bug_id} for e in examples]}
    return _finish(kind, bug, text, cfg, ingredients)


def build_two_shot(bug: BugCase, toy: RepairExample | None = None, proj: RepairExample | None = None,
                   cfg: PromptConfig = PromptConfig(), target: str | None = None) -> PromptDocument:
    """Toy pair, then (when available) the shortest same-project pair, then the target."""
    target = function_text(bug) if target is None else target
    return _two_shot(TWO_SHOT, bug, target, toy or toy_example(), proj, cfg, {"function": bug.function_name})


def build_two_shot_fl(bug: BugCase, toy: RepairExample | None = None, proj: RepairExample | None = None,
                      cfg: PromptConfig = PromptConfig(), target: str | None = None) -> PromptDocument:
    """Two-shot with every faulty line of the target carrying the fault marker."""
    lines = fault_lines(bug)
    target = function_text(bug, lines) if target is None else target
    return _two_shot(TWO_SHOT_FL, bug, target, toy or toy_example(), proj, cfg,
                     {"function": bug.function_name, "marked_lines": list(lines)})


def build_bug_report(bug: BugCase, cfg: PromptConfig = PromptConfig(), target: str | None = None) -> PromptDocument:
    """Report title and content ahead of the target; only the content is ever shortened."""
    if bug.bug_report is None:
        raise MissingIngredient(f"{bug.bug_id} has no bug report")
    target = function_text(bug) if target is None else target
    title, content = bug.bug_report.title, bug.bug_report.content

    def render(body: str) -> str:
        return HEADER + "\n" + _block(REPORT_TITLE, title) + _block(REPORT_CONTENT, body) + _target(target)

    text = render(content)
    truncated = False
    if cfg.estimate(text) > cfg.budget:
        truncated = True
        spare = cfg.budget * cfg.chars_per_token - len(render(""))
        keep = spare - len(TRUNCATION_NOTE) - 1
        if keep < 0:
            raise BudgetExceeded(f"{bug.bug_id} {BUG_REPORT}: no room for report content")
        text = render(content[:keep] + TRUNCATION_NOTE)
    return _finish(BUG_REPORT, bug, text, cfg, {"function": bug.function_name, "report_truncated": truncated})


def build_trigger_test(bug: BugCase, cfg: PromptConfig = PromptConfig(), target: str | None = None) -> PromptDocument:
    """The shortest trigger test (by lines) and its error message ahead of the target."""
    if not bug.trigger_tests:
        raise MissingIngredient(f"{bug.bug_id} has no trigger test")
    test = min(bug.trigger_tests, key=lambda t: len(t.source_snippet.splitlines()))
    target = function_text(bug) if target is None else target
    text = (HEADER + "\n" + _block(TRIGGER_TEST, test.source_snippet) + _block(ERROR_MESSAGE, test.error_message)
            + _target(target))
    return _finish(TRIGGER, bug, text, cfg, {"function": bug.function_name, "trigger_test": test.name})


def build_prompt(kind: str, bug: BugCase, project_bugs: list[BugCase], cfg: PromptConfig = PromptConfig()):
    from .examples import select_shortest_example

    if kind in (TWO_SHOT, TWO_SHOT_FL):
        try:
            proj = select_shortest_example(project_bugs, bug.bug_id)
            fallback = None
        except NoExampleAvailable as exc:
            proj, fallback = None, str(exc)
        builder = build_two_shot if kind == TWO_SHOT else build_two_shot_fl
        doc = builder(bug, None, proj, cfg)
        if fallback:
            doc.ingredients["fallback"] = "toy-only"
        return doc
    if kind == BUG_REPORT:
        return build_bug_report(bug, cfg)
    if kind == TRIGGER:
        return build_trigger_test(bug, cfg)
    raise ValueError(f"unknown prompt kind {kind!r}")


def write_prompts(docs: list[PromptDocument], out_dir: str | os.PathLike, skipped: dict | None = None) -> Path:
    """Write each document and an index mapping bug_id to its files and token estimates."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    index: dict = {}
    for d in sorted(docs, key=lambda d: (d.bug_id, d.kind)):
        (out / d.filename).write_bytes(d.text.encode("utf-8"))
        index.setdefault(d.bug_id, {})[d.kind] = {"file": d.filename, "token_estimate": d.token_estimate,
                                                  "ingredients": d.ingredients}
    payload = {"prompts": index, "skipped": skipped or {}}
    path = out / "index.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
