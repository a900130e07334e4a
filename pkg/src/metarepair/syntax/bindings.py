"""Syntactic, block-scoped resolution of locals and parameters inside one function."""

from __future__ import annotations

from dataclasses import dataclass, field

from .tree import OPAQUE_KINDS, Node

LOCAL = "local"
PARAMETER = "parameter"

# (parent kind, field) pairs where an identifier is not a variable reference
_NON_REFERENCE_FIELDS = {
    ("method_invocation", "name"),
    ("field_access", "field"),
    ("variable_declarator", "name"),
    ("formal_parameter", "name"),
    ("catch_formal_parameter", "name"),
    ("enhanced_for_statement", "name"),
    ("resource", "name"),
    ("instanceof_expression", "name"),
    ("annotation", "name"),
    ("marker_annotation", "name"),
    ("element_value_pair", "key"),
    ("class_declaration", "name"),
    ("interface_declaration", "name"),
    ("enum_declaration", "name"),
    ("record_declaration", "name"),
}
_LABEL_PARENTS = {"labeled_statement", "break_statement", "continue_statement"}
_PATTERN_KINDS = {"type_pattern", "record_pattern", "record_pattern_component", "pattern"}


@dataclass
class Binding:
    declaration: Node  # the declaring identifier
    name: str
    kind: str
    references: list[Node] = field(default_factory=list)

    @property
    def sites(self) -> list[Node]:
        return [self.declaration, *self.references]


@dataclass
class BindingTable:
    entries: list[Binding] = field(default_factory=list)
    diagnostics: list[dict] = field(default_factory=list)
    # bindings left out of ``entries`` together with the reason
    excluded: list[tuple[Binding, str]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def by_name(self, name: str) -> list[Binding]:
        return [b for b in self.entries if b.name == name]

    def shape(self) -> list[tuple[str, int]]:
        """Declaration kinds and reference counts in declaration order."""
        return [(b.kind, len(b.references)) for b in self.entries]

    def site_map(self) -> dict[int, int]:
        """Start byte of every site mapped to the index of its entry."""
        out = {}
        for i, b in enumerate(self.entries):
            for s in b.sites:
                out[s.start_byte] = i
        return out


def _is_reference(ident: Node) -> bool:
    parent = ident.parent
    if parent is None:
        return False
    if (parent.kind, ident.field) in _NON_REFERENCE_FIELDS:
        return False
    if parent.kind in _LABEL_PARENTS:
        return False
    if parent.kind == "method_reference" and ident is not parent.children[0]:
        return False
    if parent.kind in _PATTERN_KINDS or parent.kind == "scoped_identifier":
        return False
    return True


class _Resolver:
    def __init__(self, function: Node):
        self.function = function
        self.scopes: list[dict[str, Binding]] = []
        self.table = BindingTable()
        self.excluded: dict[int, str] = {}  # id(binding) -> reason
        self.pattern_names: set[str] = set()

    def lookup(self, name: str) -> Binding | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def declare(self, ident: Node, kind: str) -> None:
        b = Binding(ident, ident.text, kind)
        self.table.entries.append(b)
        self.scopes[-1][b.name] = b

    def exclude(self, name: str, reason: str, where: Node) -> None:
        b = self.lookup(name)
        if b is not None and id(b) not in self.excluded:
            self.excluded[id(b)] = reason
            self.table.diagnostics.append({"name": name, "reason": reason, "line": where.start_line})

    def run(self) -> BindingTable:
        self.scopes.append({})
        params = self.function.child_by_field("parameters")
        if params is not None:
            for p in params.named_children:
                ident = None
                if p.kind == "formal_parameter":
                    ident = p.child_by_field("name")
                elif p.kind == "spread_parameter":
                    decl = p.first_child("variable_declarator")
                    ident = decl.child_by_field("name") if decl else None
                if ident is not None:
                    self.declare(ident, PARAMETER)
        body = self.function.child_by_field("body")
        if body is not None:
            self.visit(body)
        self.scopes.pop()
        keep = []
        for b in self.table.entries:
            if id(b) in self.excluded:
                self.table.excluded.append((b, self.excluded[id(b)]))
                continue
            if b.name in self.pattern_names:
                self.table.diagnostics.append({"name": b.name, "reason": "pattern-variable-name", "line": b.declaration.start_line})
                self.table.excluded.append((b, "pattern-variable-name"))
                continue
            keep.append(b)
        self.table.entries = keep
        return self.table

    def visit_all(self, nodes) -> None:
        for n in nodes:
            self.visit(n)

    def visit(self, node: Node) -> None:
        k = node.kind
        if k in OPAQUE_KINDS:
            self.opaque(node)
        elif k in ("block", "constructor_body"):
            self.scoped(node.children)
        elif k == "switch_block":
            if any(c.kind == "switch_rule" for c in node.children):
                for c in node.children:
                    if c.kind == "switch_rule":
                        self.scoped(c.children)
            else:
                self.scoped(node.children)
        elif k == "local_variable_declaration":
            for c in node.children:
                if c.kind == "variable_declarator":
                    self.declare(c.child_by_field("name"), LOCAL)
                    self.visit_all(x for x in c.children if x.field != "name")
                else:
                    self.visit(c)
        elif k == "for_statement":
            self.scoped(node.children)
        elif k == "enhanced_for_statement":
            value = node.child_by_field("value")
            if value is not None:
                self.visit(value)
            self.scopes.append({})
            name = node.child_by_field("name")
            if name is not None and name.kind == "identifier":
                self.declare(name, LOCAL)
            else:
                self.visit_all(c for c in node.children if c.field not in ("value", "body"))
            body = node.child_by_field("body")
            if body is not None:
                self.visit(body)
            self.scopes.pop()
        elif k == "catch_clause":
            self.scopes.append({})
            for c in node.children:
                if c.kind == "catch_formal_parameter":
                    self.declare(c.child_by_field("name"), LOCAL)
                else:
                    self.visit(c)
            self.scopes.pop()
        elif k == "try_with_resources_statement":
            self.scopes.append({})
            resources = node.child_by_field("resources")
            if resources is not None:
                for r in resources.named_children:
                    name = r.child_by_field("name")
                    if name is not None:
                        self.declare(name, LOCAL)
                        self.visit_all(c for c in r.children if c.field != "name")
                    else:
                        self.visit(r)
            body = node.child_by_field("body")
            if body is not None:
                self.visit(body)
            self.scopes.pop()
            self.visit_all(c for c in node.children if c is not resources and c is not body)
        elif k == "instanceof_expression":
            for c in node.children:
                if c.field == "name":
                    self.pattern_names.add(c.text)
                elif c.kind in _PATTERN_KINDS or c.field == "pattern":
                    for d in c.walk():
                        if d.kind == "identifier" and d.parent.kind in ("type_pattern", "record_pattern_component"):
                            self.pattern_names.add(d.text)
                else:
                    self.visit(c)
        elif k == "switch_label":
            for d in node.walk():
                if d.kind == "identifier":
                    self.exclude(d.text, "identifier-in-case-label", d)
        elif k == "identifier":
            if _is_reference(node):
                b = self.lookup(node.text)
                if b is not None:
                    b.references.append(node)
                else:
                    self.table.diagnostics.append({"name": node.text, "reason": "unresolved", "line": node.start_line})
        else:
            self.visit_all(node.children)

    def scoped(self, children) -> None:
        self.scopes.append({})
        self.visit_all(children)
        self.scopes.pop()

    def opaque(self, node: Node) -> None:
        self.table.diagnostics.append({"name": None, "reason": f"opaque-{node.kind}", "line": node.start_line})
        for d in node.walk():
            if d.kind == "identifier":
                self.exclude(d.text, "used-in-opaque-region", d)


def resolve_bindings(function: Node) -> BindingTable:
    """Bind every local and parameter of ``function`` to its reference sites.

    Identifiers that do not resolve to a local or parameter (fields, types,
    statics, methods) are left out. Variables whose uses cannot be decided
    syntactically are dropped and reported in ``diagnostics``.
    """
    return _Resolver(function).run()
