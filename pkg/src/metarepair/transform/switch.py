"""Lowering of statement ``switch`` into an if-chain driven by fall-through and break flags."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..syntax import Fragment, Node, Rewriter
from ..syntax.tree import OPAQUE_KINDS
from .config import SKIPPED, SWITCH, EditRecord
from .flow import can_complete, is_statement_switch
from .layout import indent_unit, line_indent, single_line, starts_line
from .names import fresh_temp, identifiers_in

_INT_LITERALS = frozenset({"decimal_integer_literal", "hex_integer_literal", "octal_integer_literal",
                           "binary_integer_literal", "character_literal"})
_SEQUENCE_PARENTS = frozenset({"block", "constructor_body", "switch_block_statement_group"})


class _Skip(Exception):
    pass


@dataclass
class _Group:
    labels: list[Node] = field(default_factory=list)  # label expressions
    default: bool = False
    items: list[Node] = field(default_factory=list)  # statements and comments
    label_line: int = 0


def _label_kind(expr: Node) -> str:
    if expr.kind in _INT_LITERALS:
        return "int"
    if expr.kind == "unary_expression" and len(expr.named_children) == 1:
        op = expr.children[0].text
        if op in ("-", "+") and expr.named_children[0].kind in _INT_LITERALS - {"character_literal"}:
            return "int"
    if expr.kind == "string_literal":
        return "string"
    raise _Skip("label-needs-type-info")


def _groups(switch: Node) -> list[_Group]:
    body = switch.child_by_field("body")
    groups = []
    for g in body.children:
        if g.kind == "switch_rule":
            raise _Skip("arrow-form")
        if g.kind != "switch_block_statement_group":
            continue
        grp = _Group(label_line=g.start_line)
        for c in g.children:
            if c.kind == "switch_label":
                exprs = c.named_children
                if not exprs and c.children and c.children[0].kind == "default":
                    grp.default = True
                elif c.children and c.children[0].kind == "default":
                    raise _Skip("label-needs-type-info")
                else:
                    grp.labels.extend(exprs)
            elif c.kind == ":":
                continue
            else:
                grp.items.append(c)
        groups.append(grp)
    return groups


def _declared_names(stmt: Node) -> set[str]:
    out = set()
    if stmt.kind == "local_variable_declaration":
        for d in stmt.children:
            if d.kind == "variable_declarator":
                out.add(d.child_by_field("name").text)
    elif stmt.kind in ("class_declaration", "record_declaration", "interface_declaration", "enum_declaration"):
        name = stmt.child_by_field("name")
        if name is not None:
            out.add(name.text)
    return out


def _uninitialised_locals(function: Node, switch: Node) -> set[str]:
    names = set()
    for n in function.walk_pruned(OPAQUE_KINDS):
        if n.kind == "variable_declarator" and n.parent.kind == "local_variable_declaration":
            if n.child_by_field("value") is None and not switch.contains(n):
                names.add(n.child_by_field("name").text)
    return names


def _assigned_names(node: Node) -> set[str]:
    out = set()
    for n in node.walk():
        if n.kind == "assignment_expression":
            left = n.child_by_field("left")
            if left is not None and left.kind == "identifier":
                out.add(left.text)
        elif n.kind == "update_expression":
            for c in n.children:
                if c.kind == "identifier":
                    out.add(c.text)
    return out


def _bound_breaks(switch: Node) -> list[Node]:
    out = []

    def visit(node: Node) -> None:
        for c in node.children:
            if c.kind in OPAQUE_KINDS or c.kind in ("for_statement", "enhanced_for_statement", "while_statement",
                                                    "do_statement", "switch_expression", "switch_statement"):
                continue
            if c.kind == "break_statement" and c.first_child("identifier") is None:
                out.append(c)
                continue
            visit(c)

    visit(switch.child_by_field("body"))
    return out


def check_eligible(function: Node, switch: Node) -> None:
    groups = _groups(switch)
    kinds = {_label_kind(e) for g in groups for e in g.labels}
    if len(kinds) > 1:
        raise _Skip("mixed-label-kinds")
    for i, g in enumerate(groups):
        declared = set()
        for item in g.items:
            declared |= _declared_names(item)
        if declared:
            later = set()
            for h in groups[i + 1 :]:
                for item in h.items:
                    later |= identifiers_in(item)
            if declared & later:
                raise _Skip("cross-group-local")
    if _uninitialised_locals(function, switch) & _assigned_names(switch):
        raise _Skip("definite-assignment")
    completes = can_complete(switch)
    if completes is False:
        raise _Skip("switch-cannot-complete-normally")
    if completes is None:
        raise _Skip("completion-unknown")


class _Lowering:
    def __init__(self, rw: Rewriter, switch: Node, taken: set[str]):
        self.rw = rw
        self.switch = switch
        self.unit = switch.tree.unit
        self.u = indent_unit(self.unit)
        self.compact = single_line(switch)
        self.breaks = _bound_breaks(switch)
        self.sel = fresh_temp("__sel", taken)
        self.ft = fresh_temp("__ft", taken)
        groups = [g for g in _groups(switch) if g.items or g.labels or g.default]
        default_only = bool(groups) and all(g.default and not g.labels for g in groups)
        self.brk = fresh_temp("__brk", taken) if self.breaks or default_only else None

    def has_break(self, node: Node) -> bool:
        return any(node.contains(b) for b in self.breaks)

    def nl(self, ind: str) -> str:
        return " " if self.compact else "\n" + ind

    @staticmethod
    def shift(ind: str, old: str, new: str) -> str:
        return new + ind[len(old):] if ind.startswith(old) else new

    # statement emission ------------------------------------------------

    def copy(self, f: Fragment, a: int, b: int, old: str, new: str) -> None:
        if a < b:
            f.src_reindented(a, b, old, new)

    def emit_node(self, f: Fragment, node: Node, old: str, new: str) -> None:
        """Copy ``node`` while lowering the bound breaks it contains."""
        if not self.has_break(node):
            self.copy(f, node.start_byte, node.end_byte, old, new)
            return
        if node.kind == "break_statement":
            f.lit(f"{self.brk} = true;")
            return
        if node.kind in ("block", "constructor_body"):
            self.emit_block(f, node, old, new)
            return
        pos = node.start_byte
        for c in node.children:
            if self.has_break(c):
                self.copy(f, pos, c.start_byte, old, new)
                self.emit_node(f, c, old, new)
                pos = c.end_byte
        self.copy(f, pos, node.end_byte, old, new)

    def emit_block(self, f: Fragment, block: Node, old: str, new: str) -> None:
        items = [c for c in block.children if c.kind not in ("{", "}")]
        if not items:
            self.copy(f, block.start_byte, block.end_byte, old, new)
            return
        if single_line(block) or self.compact:
            f.lit("{ ")
            self.emit_seq(f, items, old, new, inline=True)
            f.lit(" }")
            return
        item_old = self.unit.indent_of_line(items[0].start_line) if starts_line(items[0]) else old + self.u
        item_new = self.shift(item_old, old, new)
        close_new = self.shift(self.unit.indent_of_line(block.end_line), old, new)
        f.lit("{\n" + item_new)
        self.emit_seq(f, items, item_old, item_new)
        f.lit("\n" + close_new + "}")

    def emit_seq(self, f: Fragment, items: list[Node], old: str, new: str, inline: bool = False) -> None:
        """Emit a statement sequence; everything after a statement that may break is guarded."""
        sep = (lambda ind: " ") if (inline or self.compact) else (lambda ind: "\n" + ind)
        for i, item in enumerate(items):
            if i:
                gap = self.unit.text[items[i - 1].end_byte : item.start_byte].decode()
                if "\n" not in gap and not (inline or self.compact):
                    f.lit(gap)
                elif gap.count("\n") > 1 and not (inline or self.compact):
                    f.lit("\n" + sep(new))
                else:
                    f.lit(sep(new))
            self.emit_node(f, item, old, new)
            rest = items[i + 1 :]
            if self.has_break(item) and rest and any(not r.is_comment for r in rest):
                inner = new + self.u
                f.lit(sep(new) + f"if (!{self.brk}) {{" + sep(inner))
                self.emit_seq(f, rest, old if inline or self.compact else old, inner, inline)
                f.lit(sep(new) + "}")
                return

    # switch --------------------------------------------------------------

    def match(self, labels: list[Node], kind: str, f: Fragment) -> None:
        for i, e in enumerate(labels):
            if i:
                f.lit(" || ")
            if kind == "string":
                f.lit(f"{self.sel}.equals(").src(e.start_byte, e.end_byte).lit(")")
            else:
                f.lit(f"{self.sel} == ").src(e.start_byte, e.end_byte)

    def lower(self) -> Fragment:
        sw = self.switch
        groups = _groups(sw)
        kind = next((_label_kind(e) for g in groups for e in g.labels), "int")
        all_labels = [(gi, e) for gi, g in enumerate(groups) for e in g.labels]

        # fold label-only groups into the group that follows them
        merged: list[tuple[int, _Group]] = []
        pending: list[tuple[int, _Group]] = []
        for gi, g in enumerate(groups):
            if not any(not it.is_comment for it in g.items):
                pending.append((gi, g))
                continue
            combo = _Group(labels=[e for _, p in pending for e in p.labels] + g.labels,
                           default=g.default or any(p.default for _, p in pending), items=g.items,
                           label_line=(pending[0][1] if pending else g).label_line)
            members = {gi, *(pi for pi, _ in pending)}
            merged.append((min(members), combo))
            merged[-1] = (members, combo)  # type: ignore[assignment]
            pending = []
        # trailing label-only groups execute nothing and are dropped

        parent = sw.parent
        wrap = parent is None or parent.kind not in _SEQUENCE_PARENTS
        ind = line_indent(sw)
        base = ind + self.u if wrap else ind
        body_ind = base + self.u
        f = self.rw.fragment()
        nl = self.nl
        if wrap:
            f.lit("{" + nl(base))
        cond = sw.child_by_field("condition")
        inner = [c for c in cond.children if c.kind not in ("(", ")")]
        f.lit(("String" if kind == "string" else "int") + f" {self.sel} = ")
        f.src(inner[0].start_byte, inner[-1].end_byte).lit(";")
        f.lit(nl(base) + f"boolean {self.ft} = false;")
        if self.brk:
            f.lit(nl(base) + f"boolean {self.brk} = false;")
        for pos, (members, g) in enumerate(merged):
            last = pos == len(merged) - 1
            f.lit(nl(base))
            others = [e for gi, e in all_labels if gi not in members]
            guard = f"!{self.brk}" if self.brk else None
            if g.default:
                if last and guard:
                    f.lit(f"if ({guard}) {{")
                elif not others:
                    f.lit(f"if ({guard}) {{" if guard else "{")
                else:
                    f.lit("if (" + (f"{guard} && " if guard else "") + f"({self.ft} || !(")
                    self.match(others, kind, f)
                    f.lit("))) {")
            else:
                f.lit("if (" + (f"{guard} && " if guard else "") + f"({self.ft} || ")
                self.match(g.labels, kind, f)
                f.lit(")) {")
            f.lit(nl(body_ind) + f"{self.ft} = true;")
            items = g.items
            first_real = items[0]
            old = self.unit.indent_of_line(first_real.start_line) if starts_line(first_real) else \
                self.unit.indent_of_line(g.label_line) + self.u
            f.lit(nl(body_ind))
            self.emit_seq(f, items, old, body_ind)
            f.lit(nl(base) + "}")
        if wrap:
            f.lit(nl(ind) + "}")
        return f


def _switches(function: Node) -> list[Node]:
    body = function.child_by_field("body")
    if body is None:
        return []
    return [n for n in body.walk_pruned(OPAQUE_KINDS) if is_statement_switch(n) and not n.synthetic]


def t3_switch(function: Node, taken: set[str] | None = None, rewriter: Rewriter | None = None):
    """Replace each eligible statement switch with an equivalent flag-driven if-chain."""
    rw = rewriter or Rewriter(function.tree.unit)
    taken = taken if taken is not None else identifiers_in(function.tree.root)
    records = []
    for sw in sorted(_switches(function), key=lambda n: (n.end_byte - n.start_byte, n.start_byte)):
        try:
            check_eligible(function, sw)
        except _Skip as skip:
            records.append(EditRecord(SWITCH, sw.start_byte, sw.end_byte, "switch kept", SKIPPED, str(skip)))
            continue
        lowering = _Lowering(rw, sw, taken)
        rw.replace(sw.start_byte, sw.end_byte, lowering.lower())
        records.append(EditRecord(SWITCH, sw.start_byte, sw.end_byte, "switch -> if-chain"))
    records.sort(key=lambda r: r.start_byte)
    return rw.edits, records
