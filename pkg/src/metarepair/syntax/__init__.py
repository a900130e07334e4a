"""Lossless Java parsing, byte-exact rendering and scope analysis."""

from .bindings import Binding, BindingTable, resolve_bindings
from .edits import Edit, EditScript, Fragment, OffsetMap, Rewriter, apply_edits, map_lines, render
from .locate import function_by_start, function_name, locate_function
from .source import SourceUnit, Span
from .tree import Node, SyntaxTree, in_opaque_region, opaque_regions, parse, parse_text, render_tree

__all__ = [
    "Binding",
    "BindingTable",
    "Edit",
    "EditScript",
    "Fragment",
    "Node",
    "OffsetMap",
    "Rewriter",
    "SourceUnit",
    "Span",
    "SyntaxTree",
    "apply_edits",
    "function_by_start",
    "function_name",
    "in_opaque_region",
    "locate_function",
    "map_lines",
    "opaque_regions",
    "parse",
    "parse_text",
    "render",
    "render_tree",
    "resolve_bindings",
]
