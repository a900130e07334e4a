"""Sequential application of the five operators to one function, re-parsing between stages."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..endpoint import CompletionClient
from ..errors import JavaSyntaxError, StageParseFailure
from ..syntax import (
    Node,
    OffsetMap,
    Rewriter,
    SourceUnit,
    function_by_start,
    locate_function,
    map_lines,
    opaque_regions,
    parse,
    resolve_bindings,
)
from .config import DEAD_CODE, EditRecord, LOOPS, RENAME, SKIPPED, SWITCH, TransformConfig, TransformRecord
from .deadcode import t4_dead_code
from .loops import t2_loops
from .names import EndpointNameProvider, NameProvider, identifiers_in
from .negate import t5_double_negate
from .rename import t1_rename
from .switch import t3_switch


@dataclass(frozen=True)
class FunctionLocator:
    name: str
    line_hint: int


@dataclass
class PipelineResult:
    unit: SourceUnit
    record: TransformRecord
    offsets: OffsetMap
    synthetic: list[tuple[int, int]] = field(default_factory=list)
    diagnostics: list[dict] = field(default_factory=list)

    def map_lines(self, original: SourceUnit, lines: list[int]) -> list[int]:
        return map_lines(original, self.unit, self.offsets, lines)


def make_provider(config: TransformConfig) -> NameProvider:
    if config.rename_provider == "endpoint":
        client = CompletionClient(config.endpoint_url, model=config.endpoint_model or "default")
        return EndpointNameProvider(client, config.seed)
    return NameProvider(config.seed)


def _identity(unit: SourceUnit) -> OffsetMap:
    return OffsetMap([(0, len(unit.text), 0)])


def _carry(ranges: list[tuple[int, int]], offsets: OffsetMap) -> list[tuple[int, int]]:
    out = []
    for a, b in ranges:
        na, nb = offsets.lookup(a), offsets.lookup(b - 1)
        if na is not None and nb is not None:
            out.append((na, nb + 1))
    return out


def transform_function(unit: SourceUnit, function: Node, config: TransformConfig, bug_id: str = "",
                       provider: NameProvider | None = None, file_names: set[str] | None = None) -> PipelineResult:
    """Run the enabled operators over ``function`` (a node of a tree parsed from ``unit``).

    New names avoid ``file_names`` (by default every identifier of the file)
    and every identifier of the function itself.
    """
    record = TransformRecord(bug_id)
    offsets = _identity(unit)
    synthetic: list[tuple[int, int]] = []
    diagnostics: list[dict] = []
    taken = set(file_names if file_names is not None else identifiers_in(function.tree.root))
    taken |= identifiers_in(function)
    provider = provider or make_provider(config)
    for region in opaque_regions(function):
        diagnostics.append({"bug_id": bug_id, "kind": "opaque", "node": region.kind,
                            "start_byte": region.start_byte, "end_byte": region.end_byte})
    start = function.start_byte
    current = unit
    for op in config.enabled_ops:
        rw = Rewriter(current)
        insertions = []
        if op == RENAME:
            bindings = resolve_bindings(function)
            for d in bindings.diagnostics:
                diagnostics.append({"bug_id": bug_id, "kind": "binding", **d})
            edits, records = t1_rename(function, bindings, provider, config.seed, rw, taken)
        elif op == LOOPS:
            edits, records = t2_loops(function, rw)
        elif op == SWITCH:
            edits, records = t3_switch(function, taken, rw)
        elif op == DEAD_CODE:
            edits, records, insertions = t4_dead_code(function, config.max_dead_blocks, taken, rw)
        else:
            edits, records = t5_double_negate(function, rw)
        record.extend(_to_origin(records, offsets))
        for r in records:
            if r.status == SKIPPED:
                diagnostics.append({"bug_id": bug_id, "kind": "skipped", "op": r.op, "reason": r.skip_reason,
                                    "start_byte": r.start_byte, "end_byte": r.end_byte})
        if not edits:
            continue
        new_unit, step = rw.apply()
        synthetic = _carry(synthetic, step)
        for ins in insertions:
            end = step.lookup(ins.at)
            begin = end - ins.inserted + ins.prefix
            synthetic.append((begin, begin + ins.length))
        try:
            tree = parse(new_unit, synthetic=synthetic)
        except JavaSyntaxError as exc:
            raise StageParseFailure(op, exc) from exc
        start = step.lookup(start)
        function = function_by_start(tree, start)
        offsets = offsets.then(step)
        current = new_unit
    return PipelineResult(current, record, offsets, sorted(synthetic), diagnostics)


def transform_pipeline(unit: SourceUnit, locator: FunctionLocator, config: TransformConfig, bug_id: str = "",
                       provider: NameProvider | None = None) -> PipelineResult:
    """Locate a function and transform it in place within its file."""
    tree = parse(unit)
    function = locate_function(tree, locator.name, locator.line_hint)
    return transform_function(unit, function, config, bug_id, provider)


def transform_file(unit: SourceUnit, config: TransformConfig, bug_id: str = "") -> PipelineResult:
    """Transform every top-level function of a file, one after another.

    Functions nested in local or anonymous classes are covered by their
    enclosing function.
    """
    tree = parse(unit)
    outer = [f for f in tree.functions() if not any(a.kind in ("method_declaration", "constructor_declaration",
                                                                 "compact_constructor_declaration")
                                                    for a in f.ancestors())]
    starts = [f.start_byte for f in outer]
    record = TransformRecord(bug_id)
    offsets = _identity(unit)
    synthetic: list[tuple[int, int]] = []
    diagnostics: list[dict] = []
    current = unit
    provider = make_provider(config)
    file_names = identifiers_in(tree.root)
    for i in range(len(starts)):
        function = function_by_start(tree, starts[i])
        result = transform_function(current, function, config, bug_id, provider, file_names)
        record.extend(_to_origin(result.record.edits, offsets))
        synthetic = _carry(synthetic, result.offsets) + result.synthetic
        diagnostics.extend(result.diagnostics)
        starts = [result.offsets.lookup(s) for s in starts]
        offsets = offsets.then(result.offsets)
        current = result.unit
        tree = parse(current, synthetic=synthetic)
    return PipelineResult(current, record, offsets, sorted(synthetic), diagnostics)


def _to_origin(records: list[EditRecord], offsets: OffsetMap) -> list[EditRecord]:
    out = []
    for r in records:
        a = offsets.back(r.start_byte)
        b = a if r.end_byte == r.start_byte else max(a, offsets.back(r.end_byte - 1) + 1)
        out.append(replace(r, start_byte=a, end_byte=b))
    return out
