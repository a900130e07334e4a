"""Indentation helpers so generated code sits naturally in the surrounding file."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from ..syntax import Node, SourceUnit


@lru_cache(maxsize=64)
def indent_unit(unit: SourceUnit) -> str:
    tabbed = spaced = 0
    steps: Counter[int] = Counter()
    prev = 0
    for raw in unit.text.split(b"\n"):
        stripped = raw.lstrip(b" \t")
        if not stripped.strip() or stripped.startswith(b"*"):
            continue
        lead = raw[: len(raw) - len(stripped)]
        if lead.startswith(b"\t"):
            tabbed += 1
        elif lead:
            spaced += 1
        width = len(lead.replace(b"\t", b"    "))
        if width > prev:
            steps[width - prev] += 1
        prev = width
    if tabbed > spaced:
        return "\t"
    for step, _ in steps.most_common():
        if 2 <= step <= 8:
            return " " * step
    return "    "


def line_indent(node: Node) -> str:
    return node.tree.unit.indent_of_line(node.start_line)


def single_line(node: Node) -> bool:
    return node.start_line == node.end_line


def starts_line(node: Node) -> bool:
    """True if only whitespace precedes ``node`` on its line."""
    unit = node.tree.unit
    before = unit.text[unit.line_start(node.start_line) : node.start_byte]
    return not before.strip()
