"""Pulling the target function's text out of a bug checkout."""

from __future__ import annotations

import textwrap

from ..dataset.manifest import BugCase
from ..syntax import SourceUnit, locate_function, parse

FL_MARKER = "/*bug is here*/"


def function_lines(bug: BugCase) -> tuple[list[str], int]:
    """Lines of the target function (from the start of its first line) and the first line's number."""
    unit = SourceUnit.from_path(bug.source_path)
    fn = locate_function(parse(unit), bug.function_name, bug.function_line_hint)
    text = unit.text[unit.line_start(fn.start_line) : fn.end_byte].decode("utf-8")
    return text.replace("\r\n", "\n").split("\n"), fn.start_line


def function_text(bug: BugCase, mark_lines: tuple[int, ...] = ()) -> str:
    """The function, dedented, ending with a newline; ``mark_lines`` get the fault marker suffix."""
    lines, first = function_lines(bug)
    for line in mark_lines:
        i = line - first
        if 0 <= i < len(lines):
            lines[i] = lines[i].rstrip() + " " + FL_MARKER
    return textwrap.dedent("\n".join(lines)).rstrip("\n") + "\n"


def fault_lines(bug: BugCase) -> tuple[int, ...]:
    """Lines to mark: the buggy lines, or for an omission fault the line before the insertion point."""
    if bug.buggy_lines:
        return bug.buggy_lines
    if bug.insertion_after_line:
        return (bug.insertion_after_line,)
    return ()
