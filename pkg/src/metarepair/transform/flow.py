"""Jump binding and a conservative approximation of Java's "can complete normally"."""

from __future__ import annotations

from ..syntax import Node
from ..syntax.tree import OPAQUE_KINDS

LOOP_KINDS = frozenset({"for_statement", "enhanced_for_statement", "while_statement", "do_statement"})
SWITCH_KINDS = frozenset({"switch_expression", "switch_statement"})
STATEMENT_PARENTS = frozenset({"block", "constructor_body", "switch_block_statement_group", "labeled_statement",
                               "if_statement", "while_statement", "for_statement", "enhanced_for_statement",
                               "do_statement", "switch_rule"})

UNKNOWN = None  # tri-state: True, False, or unknown

# expression kinds that make a loop condition certainly non-constant
_RUNTIME_KINDS = frozenset({"method_invocation", "object_creation_expression", "array_access", "assignment_expression",
                            "update_expression", "instanceof_expression", "this", "field_access", "cast_expression",
                            "array_creation_expression"})


def labels_of(stmt: Node) -> set[str]:
    out = set()
    node = stmt
    while node.parent is not None and node.parent.kind == "labeled_statement":
        node = node.parent
        out.add(node.children[0].text)
    return out


def _label(jump: Node) -> str | None:
    ident = jump.first_child("identifier")
    return ident.text if ident is not None else None


def bound_jumps(target: Node, kind: str) -> list[Node]:
    """``break_statement``/``continue_statement`` nodes that transfer control to ``target``."""
    labels = labels_of(target)
    is_loop = target.kind in LOOP_KINDS
    out = []

    def visit(node: Node, nested: bool) -> None:
        for c in node.children:
            if c.kind in OPAQUE_KINDS:
                continue
            if c.kind == kind:
                lab = _label(c)
                if lab is not None:
                    if lab in labels:
                        out.append(c)
                elif not nested:
                    out.append(c)
                continue
            inner = nested
            if c.kind in LOOP_KINDS:
                inner = True
            elif c.kind in SWITCH_KINDS and kind == "break_statement":
                inner = True
            visit(c, inner)

    if kind == "continue_statement" and not is_loop:
        return []
    visit(target, False)
    return out


def constant_true(cond: Node | None) -> bool | None:
    """Whether a loop condition is the constant ``true``; ``None`` when undecidable syntactically."""
    if cond is None:
        return True
    expr = cond
    while expr.kind == "parenthesized_expression" and expr.named_children:
        expr = expr.named_children[0]
    if expr.kind == "true":
        return True
    if expr.kind == "false":
        return False
    kinds = {n.kind for n in expr.walk()}
    if kinds & _RUNTIME_KINDS:
        return False
    if "identifier" not in kinds:
        # only literals and operators: a constant expression of unknown value
        return None
    # locals and fields read by name; a constant variable here is possible but rare
    return False


def _or(a: bool | None, b: bool | None) -> bool | None:
    if a is True or b is True:
        return True
    if a is False and b is False:
        return False
    return UNKNOWN


def can_complete(stmt: Node) -> bool | None:
    k = stmt.kind
    if k in ("expression_statement", "local_variable_declaration", ";", "assert_statement", "class_declaration",
             "explicit_constructor_invocation", "enhanced_for_statement", "empty_statement",
             "interface_declaration", "enum_declaration", "record_declaration"):
        return True
    if k in ("return_statement", "throw_statement", "break_statement", "continue_statement", "yield_statement"):
        return False
    if k in ("block", "constructor_body"):
        stmts = [c for c in stmt.named_children]
        return can_complete(stmts[-1]) if stmts else True
    if k == "if_statement":
        alt = stmt.child_by_field("alternative")
        if alt is None:
            return True
        return _or(can_complete(stmt.child_by_field("consequence")), can_complete(alt))
    if k in ("while_statement", "for_statement"):
        const = constant_true(stmt.child_by_field("condition"))
        if const is False:
            return True
        if bound_jumps(stmt, "break_statement"):
            return True
        return False if const is True else UNKNOWN
    if k == "do_statement":
        if bound_jumps(stmt, "break_statement"):
            return True
        const = constant_true(stmt.child_by_field("condition"))
        if const is True:
            return False
        body = can_complete(stmt.child_by_field("body"))
        if body is True or bound_jumps(stmt, "continue_statement"):
            return True if const is False else UNKNOWN
        return body
    if k == "labeled_statement":
        inner = stmt.named_children[-1]
        label = stmt.children[0].text
        for j in inner.walk_pruned(OPAQUE_KINDS):
            if j.kind == "break_statement" and _label(j) == label:
                return True
        return can_complete(inner)
    if k in SWITCH_KINDS:
        body = stmt.child_by_field("body")
        if body is None:
            return UNKNOWN
        if any(c.kind == "switch_rule" for c in body.children):
            return UNKNOWN
        groups = [c for c in body.children if c.kind == "switch_block_statement_group"]
        has_default = any(lbl.text.strip().startswith("default") for g in groups for lbl in g.children
                          if lbl.kind == "switch_label")
        if not has_default or not groups or bound_jumps(stmt, "break_statement"):
            return True
        last = [c for c in groups[-1].named_children if c.kind != "switch_label"]
        return can_complete(last[-1]) if last else True
    if k == "try_statement" or k == "try_with_resources_statement":
        result = can_complete(stmt.child_by_field("body"))
        fin = None
        for c in stmt.children:
            if c.kind == "catch_clause":
                result = _or(result, can_complete(c.child_by_field("body")))
            elif c.kind == "finally_clause":
                fin = c.first_child("block")
        if fin is not None:
            f = can_complete(fin)
            if f is False:
                return False
            if f is None:
                return UNKNOWN
        return result
    if k == "synchronized_statement":
        return can_complete(stmt.child_by_field("body") or stmt.first_child("block"))
    return UNKNOWN


def is_statement_switch(node: Node) -> bool:
    """A ``switch`` used as a statement rather than as a value."""
    return node.kind in SWITCH_KINDS and node.parent is not None and node.parent.kind in STATEMENT_PARENTS


def body_statements(block: Node) -> list[Node]:
    return [c for c in block.children if c.named and not c.is_comment]
