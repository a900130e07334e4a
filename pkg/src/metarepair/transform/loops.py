from __future__ import annotations

from ..syntax import Fragment, Node, Rewriter
from ..syntax.tree import OPAQUE_KINDS
from .config import LOOPS, SKIPPED, EditRecord
from .flow import bound_jumps, can_complete
from .layout import indent_unit, line_indent, single_line


def _loops(function: Node) -> list[Node]:
    body = function.child_by_field("body")
    if body is None:
        return []
    return [n for n in body.walk_pruned(OPAQUE_KINDS)
            if n.kind in ("for_statement", "while_statement") and not n.synthetic]


def _inner_range(paren: Node) -> tuple[int, int]:
    inner = [c for c in paren.children if c.kind not in ("(", ")")]
    return inner[0].start_byte, inner[-1].end_byte


def _kw_gap(node: Node, kw: str) -> str:
    """Whitespace between the loop keyword and its opening parenthesis."""
    kw_node = node.children[0]
    paren = node.children[1]
    return node.tree.unit.text[kw_node.end_byte : paren.start_byte].decode()


def _for_parts(loop: Node):
    inits, updates = [], []
    cond = None
    for c in loop.children:
        if c.field == "init":
            inits.append(c)
        elif c.field == "condition":
            cond = c
        elif c.field == "update":
            updates.append(c)
    return inits, cond, updates, loop.child_by_field("body")


def _block_inner(block: Node) -> tuple[int, int] | None:
    inner = [c for c in block.children if c.kind not in ("{", "}")]
    if not inner:
        return None
    return inner[0].start_byte, inner[-1].end_byte


def _needs_nested_body(body: Node, updates: list[Node]) -> bool:
    """Keep the body braces when an update mentions a name the body declares at top level."""
    if body.kind != "block" or not updates:
        return False
    declared = set()
    for st in body.named_children:
        if st.kind == "local_variable_declaration":
            declared |= {d.child_by_field("name").text for d in st.children if d.kind == "variable_declarator"}
        elif st.kind in ("class_declaration", "record_declaration", "interface_declaration", "enum_declaration"):
            name = st.child_by_field("name")
            if name is not None:
                declared.add(name.text)
    used = {n.text for u in updates for n in u.walk() if n.kind in ("identifier", "type_identifier")}
    return bool(declared & used)


def _for_to_while(rw: Rewriter, loop: Node) -> EditRecord:
    unit = loop.tree.unit
    if bound_jumps(loop, "continue_statement"):
        return EditRecord(LOOPS, loop.start_byte, loop.end_byte, "for kept", SKIPPED, "continue-bound-loop")
    inits, cond, updates, body = _for_parts(loop)
    keep_updates = True
    if updates:
        completes = can_complete(body)
        if completes is None:
            return EditRecord(LOOPS, loop.start_byte, loop.end_byte, "for kept", SKIPPED, "completion-unknown")
        # an update after a body that never completes would be an unreachable statement
        keep_updates = completes
    nested = _needs_nested_body(body, updates)
    gap = _kw_gap(loop, "for")
    ind = line_indent(loop)
    u = indent_unit(unit)
    compact = single_line(loop)
    wrap = bool(inits)

    f = rw.fragment()
    inner_ind = ind + u if wrap else ind

    def emit_inits() -> None:
        for i, init in enumerate(inits):
            if i:
                f.lit(" " if compact else "\n" + inner_ind)
            f.src(init.start_byte, init.end_byte)
            if init.kind != "local_variable_declaration":
                f.lit(";")

    def emit_cond() -> None:
        if cond is None:
            f.lit("true")
        else:
            f.src(cond.start_byte, cond.end_byte)

    upd_nodes = updates if keep_updates else []
    after_paren = unit.text[loop.children[-2].end_byte : body.start_byte].decode() if body is not None else " "
    if compact:
        if wrap:
            f.lit("{ ")
            emit_inits()
            f.lit(" ")
        f.lit(f"while{gap}(")
        emit_cond()
        f.lit(")" + (after_paren if "\n" not in after_paren else " ") + "{ ")
        _emit_body(f, body, nested, None, None)
        for upd in upd_nodes:
            f.lit(" ")
            f.src(upd.start_byte, upd.end_byte)
            f.lit(";")
        f.lit(" }")
        if wrap:
            f.lit(" }")
    else:
        if wrap:
            f.lit("{\n" + inner_ind)
            emit_inits()
            f.lit("\n" + inner_ind)
        f.lit(f"while{gap}(")
        emit_cond()
        f.lit(") {\n" + inner_ind + u)
        shift = (ind, inner_ind) if wrap else (ind, ind)
        if body.kind == "block" and not nested:
            stmt_line_ind = None
            rng = _block_inner(body)
            if rng is not None:
                first_line = unit.line_of(rng[0])
                stmt_line_ind = unit.indent_of_line(first_line)
            _emit_body(f, body, nested, shift, stmt_line_ind)
        else:
            _emit_body(f, body, nested, shift, None)
        for upd in upd_nodes:
            f.lit("\n" + inner_ind + u)
            f.src(upd.start_byte, upd.end_byte)
            f.lit(";")
        f.lit("\n" + inner_ind + "}")
        if wrap:
            f.lit("\n" + ind + "}")
    rw.replace(loop.start_byte, loop.end_byte, f)
    dropped = " (unreachable update dropped)" if updates and not keep_updates else ""
    return EditRecord(LOOPS, loop.start_byte, loop.end_byte, "for -> while" + dropped)


def _emit_body(f: Fragment, body: Node | None, nested: bool, shift: tuple[str, str] | None,
               stmt_ind: str | None) -> None:
    if body is None or body.kind in (";", "empty_statement"):
        return
    if body.kind == "block" and not nested:
        rng = _block_inner(body)
        if rng is None:
            return
        start, end = rng
        if shift is None:
            f.src(start, end)
        else:
            old, new = shift
            f.src_reindented(start, end, old, new)
        return
    if shift is None:
        f.src(body.start_byte, body.end_byte)
    else:
        old, new = shift
        f.src_reindented(body.start_byte, body.end_byte, old, new)


def _while_to_for(rw: Rewriter, loop: Node) -> EditRecord:
    cond = loop.child_by_field("condition")
    a, b = _inner_range(cond)
    f = rw.fragment().lit("for (; ").src(a, b).lit("; )")
    rw.replace(loop.children[0].start_byte, cond.end_byte, f)
    return EditRecord(LOOPS, loop.start_byte, loop.end_byte, "while -> for")


def t2_loops(function: Node, rewriter: Rewriter | None = None):
    """Swap basic ``for`` and ``while`` loops, each loop converted at most once."""
    rw = rewriter or Rewriter(function.tree.unit)
    records = []
    loops = _loops(function)
    # innermost first so an outer rewrite absorbs the inner one
    for loop in sorted(loops, key=lambda n: (n.end_byte - n.start_byte, n.start_byte)):
        if loop.kind == "for_statement":
            records.append(_for_to_while(rw, loop))
        else:
            records.append(_while_to_for(rw, loop))
    records.sort(key=lambda r: r.start_byte)
    return rw.edits, records
