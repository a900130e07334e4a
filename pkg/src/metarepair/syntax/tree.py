"""Lossless syntax trees for Java built on tree-sitter.

Every byte of the source is either inside a token leaf or in a trivia gap
(whitespace, comments), so a tree renders back to its exact input.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import tree_sitter
import tree_sitter_java

from ..errors import JavaSyntaxError
from .source import SourceUnit, Span

COMMENT_KINDS = frozenset({"line_comment", "block_comment"})
METHOD_KINDS = frozenset({"method_declaration", "constructor_declaration", "compact_constructor_declaration"})
BLOCK_KINDS = frozenset({"block", "constructor_body"})
# regions inside a function whose statements belong to another body
OPAQUE_KINDS = frozenset({"lambda_expression", "class_body", "enum_body", "interface_body", "record_declaration"})


@lru_cache(maxsize=1)
def _parser() -> tree_sitter.Parser:
    return tree_sitter.Parser(tree_sitter.Language(tree_sitter_java.language()))


class Node:
    """Immutable view of one concrete syntax node."""

    __slots__ = ("tree", "kind", "start_byte", "end_byte", "field", "named", "synthetic", "parent", "children", "_index")

    def __init__(self, tree: SyntaxTree, kind: str, start: int, end: int, field: str | None, named: bool,
                 synthetic: bool, parent: Node | None):
        self.tree = tree
        self.kind = kind
        self.start_byte = start
        self.end_byte = end
        self.field = field
        self.named = named
        self.synthetic = synthetic
        self.parent = parent
        self.children: tuple[Node, ...] = ()
        self._index = 0

    def __repr__(self) -> str:
        return f"<Node {self.kind} {self.start_byte}..{self.end_byte}{' synthetic' if self.synthetic else ''}>"

    @property
    def span(self) -> Span:
        return self.tree.unit.span(self.start_byte, self.end_byte)

    @property
    def start_line(self) -> int:
        return self.tree.unit.line_of(self.start_byte)

    @property
    def end_line(self) -> int:
        return self.span.end_line

    @property
    def text(self) -> str:
        return self.tree.unit.text[self.start_byte : self.end_byte].decode("utf-8")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_comment(self) -> bool:
        return self.kind in COMMENT_KINDS

    @property
    def named_children(self) -> list[Node]:
        return [c for c in self.children if c.named and not c.is_comment]

    @property
    def next_sibling(self) -> Node | None:
        if self.parent is None:
            return None
        sibs = self.parent.children
        return sibs[self._index + 1] if self._index + 1 < len(sibs) else None

    def child_by_field(self, name: str) -> Node | None:
        for c in self.children:
            if c.field == name:
                return c
        return None

    def children_by_field(self, name: str) -> list[Node]:
        return [c for c in self.children if c.field == name]

    def first_child(self, kind: str) -> Node | None:
        for c in self.children:
            if c.kind == kind:
                return c
        return None

    def walk(self) -> Iterator[Node]:
        """Pre-order traversal including this node."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def walk_pruned(self, prune: Iterable[str]) -> Iterator[Node]:
        """Pre-order traversal that does not descend below nodes of the given kinds."""
        prune = frozenset(prune)
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if node is not self and node.kind in prune:
                continue
            stack.extend(reversed(node.children))

    def ancestors(self) -> Iterator[Node]:
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def leaves(self) -> Iterator[Node]:
        for node in self.walk():
            if not node.children:
                yield node

    def contains(self, other: Node) -> bool:
        return self.start_byte <= other.start_byte and other.end_byte <= self.end_byte


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    trivia: bool


class SyntaxTree:
    """A parsed :class:`SourceUnit` together with its root node."""

    def __init__(self, unit: SourceUnit, root: Node | None = None):
        self.unit = unit
        self.root: Node = root  # type: ignore[assignment]

    def segments(self) -> list[Segment]:
        """Tokens and trivia in source order, covering every byte exactly once."""
        out: list[Segment] = []
        pos = 0
        for leaf in self.root.leaves():
            if leaf.start_byte == leaf.end_byte:
                continue
            if leaf.start_byte < pos:
                raise AssertionError(f"leaf {leaf!r} overlaps previous token")
            if leaf.start_byte > pos:
                out.append(Segment(pos, leaf.start_byte, True))
            out.append(Segment(leaf.start_byte, leaf.end_byte, leaf.is_comment))
            pos = leaf.end_byte
        if pos < len(self.unit.text):
            out.append(Segment(pos, len(self.unit.text), True))
        return out

    def functions(self) -> list[Node]:
        return [n for n in self.root.walk() if n.kind in METHOD_KINDS]

    def node_at(self, start: int, end: int, kind: str | None = None) -> Node | None:
        best = None
        for n in self.root.walk():
            if n.start_byte == start and n.end_byte == end and (kind is None or n.kind == kind):
                best = n
        return best


def _first_error(node: tree_sitter.Node) -> tree_sitter.Node | None:
    stack = [node]
    while stack:
        n = stack.pop()
        if n.type == "ERROR" or n.is_missing:
            return n
        if n.has_error:
            stack.extend(reversed(n.children))
    return None


def parse(unit: SourceUnit, synthetic: Sequence[tuple[int, int]] = ()) -> SyntaxTree:
    """Parse ``unit`` into a lossless tree.

    ``synthetic`` lists byte ranges produced by a generator; nodes lying
    entirely inside one of them are flagged ``synthetic``.
    """
    ts_tree = _parser().parse(unit.text)
    ts_root = ts_tree.root_node
    if ts_root.has_error:
        bad = _first_error(ts_root) or ts_root
        row, col = bad.start_point
        what = "missing token" if bad.is_missing else "unexpected syntax"
        raise JavaSyntaxError(what, row + 1, col + 1, unit.path)

    # merged, so containment in any range is one bisect away
    ranges: list[list[int]] = []
    for a, b in sorted(synthetic):
        if ranges and a <= ranges[-1][1]:
            ranges[-1][1] = max(ranges[-1][1], b)
        else:
            ranges.append([a, b])
    starts = [a for a, _ in ranges]

    def is_synthetic(start: int, end: int) -> bool:
        i = bisect.bisect_right(starts, start) - 1
        return i >= 0 and end <= ranges[i][1]

    tree = SyntaxTree(unit)
    root = Node(tree, ts_root.type, 0, len(unit.text), None, True, False, None)
    stack: list[tuple[tree_sitter.Node, Node]] = [(ts_root, root)]
    while stack:
        ts_node, node = stack.pop()
        kids = []
        for i, ts_child in enumerate(ts_node.children):
            child = Node(
                tree,
                ts_child.type,
                ts_child.start_byte,
                ts_child.end_byte,
                ts_node.field_name_for_child(i),
                ts_child.is_named,
                bool(ranges) and is_synthetic(ts_child.start_byte, ts_child.end_byte),
                node,
            )
            child._index = i
            kids.append(child)
            if ts_child.child_count:
                stack.append((ts_child, child))
        node.children = tuple(kids)
    tree.root = root
    return tree


def parse_text(text: str, path: str | None = None) -> SyntaxTree:
    return parse(SourceUnit.from_string(text, path))


def render_tree(tree: SyntaxTree) -> bytes:
    """Reassemble the source from tokens and trivia."""
    src = tree.unit.text
    return b"".join(src[s.start : s.end] for s in tree.segments())


def in_opaque_region(node: Node, function: Node) -> bool:
    """True if ``node`` sits inside a lambda or nested class body within ``function``."""
    for anc in node.ancestors():
        if anc is function:
            return False
        if anc.kind in OPAQUE_KINDS:
            return True
    return False


def opaque_regions(function: Node) -> list[Node]:
    out = []
    for n in function.walk_pruned(OPAQUE_KINDS):
        if n is not function and n.kind in OPAQUE_KINDS:
            out.append(n)
    return out
