"""Double negation of if-statement predicates."""

from __future__ import annotations

from ..syntax import Node, Rewriter
from .config import NEGATE, EditRecord


def t5_double_negate(function: Node, rewriter: Rewriter | None = None):
    """Rewrite every non-synthetic ``if (P)`` as ``if (!(!(P)))``.

    Ifs inside lambdas and local classes are included; the rewrite is safe
    anywhere a boolean predicate appears.
    """
    rw = rewriter or Rewriter(function.tree.unit)
    records = []
    ifs = [n for n in function.walk() if n.kind == "if_statement" and not n.synthetic]
    # innermost first so an enclosing predicate absorbs nested rewrites
    for node in sorted(ifs, key=lambda n: (n.end_byte - n.start_byte, n.start_byte)):
        cond = node.child_by_field("condition")
        inner = [c for c in cond.children if c.kind not in ("(", ")")]
        a, b = inner[0].start_byte, inner[-1].end_byte
        rw.replace(a, b, rw.fragment().lit("!(!(").src(a, b).lit("))"))
        records.append(EditRecord(NEGATE, cond.start_byte, cond.end_byte, "predicate double-negated"))
    records.sort(key=lambda r: r.start_byte)
    return rw.edits, records
