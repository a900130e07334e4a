"""Insertion of unreachable ``if (false)`` blocks."""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import Node, Rewriter
from ..syntax.tree import OPAQUE_KINDS
from .config import DEAD_CODE, EditRecord
from .layout import indent_unit, line_indent, single_line
from .names import fresh_temp, identifiers_in


@dataclass(frozen=True)
class Insertion:
    """Where a payload went: original byte ``at`` plus the payload's place inside the inserted text."""

    at: int
    prefix: int
    length: int
    inserted: int


def payload(name: str) -> str:
    return f"if (false) {{ long {name} = 0L; {name} = {name} + 1L; }}"


def eligible_blocks(function: Node) -> list[Node]:
    body = function.child_by_field("body")
    if body is None:
        return []
    return [n for n in body.walk_pruned(OPAQUE_KINDS)
            if n.kind in ("block", "constructor_body") and not n.synthetic]


def t4_dead_code(function: Node, max_blocks: int = 3, taken: set[str] | None = None,
                 rewriter: Rewriter | None = None):
    """Put a self-contained dead block at the head of the first ``max_blocks`` blocks in pre-order.

    Returns ``(edits, records, insertions)``.
    """
    rw = rewriter or Rewriter(function.tree.unit)
    unit = function.tree.unit
    taken = taken if taken is not None else identifiers_in(function.tree.root)
    u = indent_unit(unit)
    records, insertions = [], []
    for k, block in enumerate(eligible_blocks(function)[:max_blocks]):
        code = payload(fresh_temp(f"__dead_{k}", taken))
        stmts = [c for c in block.children if c.kind not in ("{", "}")]
        first = next((c for c in stmts if not c.is_comment), None)
        if first is not None and first.kind == "explicit_constructor_invocation":
            at = first.end_byte
            prefix = " " if single_line(block) else "\n" + line_indent(first)
            text = prefix + code
        else:
            at = block.children[0].end_byte
            if single_line(block):
                prefix = " "
                after = unit.text[at : at + 1]
                text = prefix + code + ("" if after in (b" ", b"\t") else " ")
            else:
                ind = line_indent(stmts[0]) if stmts and stmts[0].start_line > block.start_line \
                    else line_indent(block) + u
                prefix = "\n" + ind
                text = prefix + code
        edit = rw.insert(at, text)
        insertions.append(Insertion(at, len(rw.fix_eol(prefix).encode()), len(code.encode()), len(edit.text)))
        records.append(EditRecord(DEAD_CODE, at, at, f"dead block {code.split()[4]}"))
    return rw.edits, records, insertions
