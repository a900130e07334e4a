from __future__ import annotations

from ..errors import AmbiguousFunction, FunctionNotFound
from .tree import METHOD_KINDS, Node, SyntaxTree


def function_name(node: Node) -> str:
    name = node.child_by_field("name")
    return name.text if name is not None else ""


def locate_function(tree: SyntaxTree, name: str, line_hint: int) -> Node:
    """Find the method or constructor called ``name`` whose span covers ``line_hint``.

    When several do (local or anonymous classes), the innermost wins.
    """
    candidates = [n for n in tree.root.walk() if n.kind in METHOD_KINDS and function_name(n) == name]
    if not candidates:
        raise FunctionNotFound(f"no method or constructor named {name!r}")
    covering = [n for n in candidates if n.start_line <= line_hint <= n.end_line]
    if not covering:
        lines = ", ".join(str(n.start_line) for n in candidates)
        raise AmbiguousFunction(f"{name!r} declared at line(s) {lines}, none spans line {line_hint}")
    return min(covering, key=lambda n: n.end_byte - n.start_byte)


def function_by_start(tree: SyntaxTree, start_byte: int) -> Node:
    for n in tree.root.walk():
        if n.kind in METHOD_KINDS and n.start_byte == start_byte:
            return n
    raise FunctionNotFound(f"no function starts at byte {start_byte}")


def function_body(function: Node) -> Node | None:
    return function.child_by_field("body")
