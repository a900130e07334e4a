from __future__ import annotations

from ..syntax import BindingTable, Node, Rewriter, resolve_bindings
from .config import RENAME, SKIPPED, EditRecord
from .names import NameProvider, NameRequest, declared_type, identifiers_in


def t1_rename(function: Node, bindings: BindingTable | None = None, provider: NameProvider | None = None,
              seed: int = 0, rewriter: Rewriter | None = None, taken: set[str] | None = None):
    """Give every local and parameter of ``function`` a fresh name.

    Fresh names avoid every identifier in the file, so no reference can be
    captured and no new shadowing arises.
    """
    if bindings is None:
        bindings = resolve_bindings(function)
    provider = provider or NameProvider(seed)
    rw = rewriter or Rewriter(function.tree.unit)
    taken = taken if taken is not None else identifiers_in(function.tree.root)
    context = function.text
    records = []
    for index, b in enumerate(bindings.entries):
        req = NameRequest(index, b.name, declared_type(b.declaration), context)
        new = provider.fresh(req, taken)
        taken.add(new)
        for site in b.sites:
            rw.replace(site.start_byte, site.end_byte, new)
        records.append(EditRecord(RENAME, b.declaration.start_byte, b.declaration.end_byte,
                                  f"{b.name} -> {new} ({len(b.references)} refs)"))
    for b, reason in bindings.excluded:
        records.append(EditRecord(RENAME, b.declaration.start_byte, b.declaration.end_byte,
                                  f"{b.name} kept", SKIPPED, reason))
    records.sort(key=lambda r: r.start_byte)
    return rw.edits, records
