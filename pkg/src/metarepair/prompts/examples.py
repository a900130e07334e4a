"""Buggy/fixed example pairs shown to the model before the target."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..dataset.manifest import BugCase
from ..errors import MetarepairError, NoExampleAvailable
from .source import function_text

TOY = "toy"
SAME_PROJECT = "same-project"


@dataclass(frozen=True)
class RepairExample:
    buggy_fn: str
    fixed_fn: str
    origin: str
    bug_id: str | None = None

    def __post_init__(self) -> None:
        if not self.buggy_fn.strip() or not self.fixed_fn.strip():
            raise ValueError("example texts must be non-empty")

    @property
    def context_size(self) -> int:
        return len(self.buggy_fn) + len(self.fixed_fn)


@lru_cache(maxsize=1)
def toy_example() -> RepairExample:
    data = json.loads(resources.files(__package__).joinpath("assets/toy_example.json").read_text("utf-8"))
    return RepairExample(data["buggy"], data["fixed"], TOY)


def select_shortest_example(project_bugs: list[BugCase], exclude: str) -> RepairExample:
    """The same-project pair with the fewest characters; ties go to the smaller bug id."""
    best = None
    for bug in sorted(project_bugs, key=lambda b: b.bug_id):
        if bug.bug_id == exclude or not bug.developer_patch or not bug.developer_patch.strip():
            continue
        try:
            buggy = function_text(bug)
        except (OSError, MetarepairError):
            continue
        ex = RepairExample(buggy, bug.developer_patch, SAME_PROJECT, bug.bug_id)
        if best is None or ex.context_size < best.context_size:
            best = ex
    if best is None:
        raise NoExampleAvailable(f"no other bug with a developer patch in the project of {exclude}")
    return best
