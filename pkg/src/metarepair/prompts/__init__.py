"""Repair prompts built from bug cases."""

from .examples import RepairExample, select_shortest_example, toy_example
from .source import FL_MARKER, fault_lines, function_text
from .templates import (
    BUG_REPORT,
    KINDS,
    TRIGGER,
    TWO_SHOT,
    TWO_SHOT_FL,
    PromptConfig,
    PromptDocument,
    build_bug_report,
    build_prompt,
    build_trigger_test,
    build_two_shot,
    build_two_shot_fl,
    write_prompts,
)

__all__ = [
    "BUG_REPORT",
    "FL_MARKER",
    "KINDS",
    "TRIGGER",
    "TWO_SHOT",
    "TWO_SHOT_FL",
    "PromptConfig",
    "PromptDocument",
    "RepairExample",
    "build_bug_report",
    "build_prompt",
    "build_trigger_test",
    "build_two_shot",
    "build_two_shot_fl",
    "fault_lines",
    "function_text",
    "select_shortest_example",
    "toy_example",
    "write_prompts",
]
