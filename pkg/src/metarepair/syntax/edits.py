"""Byte-exact splicing of replacement text into a source unit.

Replacement text is assembled from literal strings and verbatim copies of
original byte ranges. The copies are remembered so original positions
(for example buggy line numbers) can be carried through a rewrite.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import OverlappingEdits
from .source import SourceUnit
from .tree import SyntaxTree


@dataclass(frozen=True)
class Edit:
    start: int
    end: int
    text: bytes
    # (src_start, src_end, offset into text) for bytes copied from the original
    keeps: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def replace(cls, start: int, end: int, text: str) -> Edit:
        return cls(start, end, text.encode("utf-8"))


EditScript = Sequence[Edit]


def _check(edits: EditScript, size: int) -> list[Edit]:
    ordered = sorted(edits, key=lambda e: (e.start, e.end))
    prev = None
    for e in ordered:
        if e.start < 0 or e.end > size or e.end < e.start:
            raise ValueError(f"edit {e.start}..{e.end} outside unit of {size} bytes")
        if prev is not None and (e.start < prev.end or (e.start == prev.start and e.start == e.end == prev.end)):
            raise OverlappingEdits(f"edits {prev.start}..{prev.end} and {e.start}..{e.end} overlap")
        prev = e
    return ordered


@dataclass
class OffsetMap:
    """Where surviving original bytes ended up in the rewritten text."""

    # sorted by original start: (orig_start, orig_end, new_start)
    runs: list[tuple[int, int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.runs.sort()
        self._starts = [r[0] for r in self.runs]
        self._reach = []
        best = -1
        for _, b, _ in self.runs:
            best = max(best, b)
            self._reach.append(best)

    def lookup(self, offset: int) -> int | None:
        i = bisect.bisect_right(self._starts, offset) - 1
        while i >= 0 and self._reach[i] > offset:
            a, b, n = self.runs[i]
            if a <= offset < b:
                return n + (offset - a)
            i -= 1
        return None

    def back(self, offset: int) -> int:
        """Original position of a rewritten byte, or of the nearest surviving byte before it."""
        best_end, best = -1, 0
        for a, b, n in self.runs:
            if n <= offset < n + (b - a):
                return a + (offset - n)
            if n + (b - a) <= offset and n + (b - a) > best_end:
                best_end, best = n + (b - a), b
        return best

    def then(self, later: OffsetMap) -> OffsetMap:
        """Compose with the map of a subsequent rewrite."""
        out: list[tuple[int, int, int]] = []
        for a, b, n in self.runs:
            lo, hi = n, n + (b - a)
            i = bisect.bisect_right(later._starts, hi - 1)
            j = bisect.bisect_right(later._reach, lo)
            for c, d, m in later.runs[j:i]:
                s, e = max(lo, c), min(hi, d)
                if s < e:
                    out.append((a + (s - lo), a + (e - lo), m + (s - c)))
        return OffsetMap(out)


def apply_edits(unit: SourceUnit, edits: EditScript) -> tuple[SourceUnit, OffsetMap]:
    src = unit.text
    ordered = _check(edits, len(src))
    parts: list[bytes] = []
    runs: list[tuple[int, int, int]] = []
    pos = 0
    out_len = 0
    for e in ordered:
        if e.start > pos:
            runs.append((pos, e.start, out_len))
            parts.append(src[pos : e.start])
            out_len += e.start - pos
        for a, b, off in e.keeps:
            runs.append((a, b, out_len + off))
        parts.append(e.text)
        out_len += len(e.text)
        pos = e.end
    if pos < len(src):
        runs.append((pos, len(src), out_len))
        parts.append(src[pos:])
    return SourceUnit(unit.path, b"".join(parts)), OffsetMap(runs)


def render(tree: SyntaxTree, edits: EditScript = ()) -> SourceUnit:
    """Apply a non-overlapping edit script; bytes outside every edit are untouched."""
    if not edits:
        from .tree import render_tree

        return SourceUnit(tree.unit.path, render_tree(tree))
    return apply_edits(tree.unit, edits)[0]


def map_lines(before: SourceUnit, after: SourceUnit, offsets: OffsetMap, lines: Sequence[int]) -> list[int]:
    """Translate 1-based lines of ``before`` to the lines of ``after`` holding their surviving bytes."""
    out: set[int] = set()
    for line in lines:
        start, end = before.line_start(line), before.line_end(line)
        text = before.text
        found: set[int] = set()
        for b in range(start, end):
            if text[b : b + 1] in (b" ", b"\t"):
                continue
            new = offsets.lookup(b)
            if new is not None:
                found.add(after.line_of(new))
        out.update(found)
    return sorted(out)


def _runs_from_origin(origin: list[int]) -> list[tuple[int, int, int]]:
    runs = []
    i = 0
    while i < len(origin):
        if origin[i] < 0:
            i += 1
            continue
        j = i + 1
        while j < len(origin) and origin[j] == origin[j - 1] + 1:
            j += 1
        runs.append((origin[i], origin[i] + (j - i), i))
        i = j
    return runs


class Fragment:
    """Replacement text under construction."""

    def __init__(self, rewriter: Rewriter):
        self._rw = rewriter
        self._parts: list[bytes] = []
        self._keeps: list[tuple[int, int, int]] = []
        self._size = 0

    def lit(self, text: str) -> Fragment:
        data = self._rw.fix_eol(text).encode("utf-8")
        self._parts.append(data)
        self._size += len(data)
        return self

    def src(self, start: int, end: int) -> Fragment:
        """Copy original bytes, splicing in any edits already recorded inside the range."""
        pos = start
        for e in self._rw.edits_within(start, end):
            if e.start > pos:
                self._copy(pos, e.start)
            for a, b, off in e.keeps:
                self._keeps.append((a, b, self._size + off))
            self._parts.append(e.text)
            self._size += len(e.text)
            pos = e.end
        if end > pos:
            self._copy(pos, end)
        return self

    def src_reindented(self, start: int, end: int, old: str, new: str) -> Fragment:
        """Copy a range, swapping the ``old`` indentation prefix for ``new`` on continuation lines."""
        sub = Fragment(self._rw).src(start, end)
        text = sub.bytes()
        if old == new or b'"""' in text:
            # text blocks carry their indentation into the string value
            return self._append(sub)
        origin = [-1] * len(text)
        for a, b, off in sub._keeps:
            origin[off : off + (b - a)] = range(a, b)
        oldb, newb = self._rw.fix_eol(old).encode(), self._rw.fix_eol(new).encode()
        out = bytearray()
        out_origin: list[int] = []
        pos = 0
        first = True
        for line in text.split(b"\n"):
            if not first and line.startswith(oldb):
                out += newb
                out_origin += [-1] * len(newb)
                skip = len(oldb)
            else:
                skip = 0
            out += line[skip:]
            out_origin += origin[pos + skip : pos + len(line)]
            pos += len(line)
            if pos < len(text):
                out += b"\n"
                out_origin.append(origin[pos])
                pos += 1
            first = False
        frag = Fragment(self._rw)
        frag._parts = [bytes(out)]
        frag._size = len(out)
        frag._keeps = _runs_from_origin(out_origin)
        return self._append(frag)

    def _append(self, other: Fragment) -> Fragment:
        for a, b, off in other._keeps:
            self._keeps.append((a, b, self._size + off))
        self._parts.extend(other._parts)
        self._size += other._size
        return self

    def _copy(self, a: int, b: int) -> None:
        self._keeps.append((a, b, self._size))
        self._parts.append(self._rw.unit.text[a:b])
        self._size += b - a

    def bytes(self) -> bytes:
        return b"".join(self._parts)

    def text(self) -> str:
        return self.bytes().decode("utf-8")


class Rewriter:
    """Collects edits against one source unit, letting outer rewrites absorb inner ones."""

    def __init__(self, unit: SourceUnit):
        self.unit = unit
        self._eol = unit.eol
        self._edits: list[Edit] = []

    def fix_eol(self, text: str) -> str:
        if self._eol == "\n":
            return text
        return text.replace("\r\n", "\n").replace("\n", self._eol)

    def fragment(self) -> Fragment:
        return Fragment(self)

    def edits_within(self, start: int, end: int) -> list[Edit]:
        inside = []
        for e in self._edits:
            if start <= e.start and e.end <= end:
                inside.append(e)
            elif e.end > start and e.start < end:
                raise OverlappingEdits(f"edit {e.start}..{e.end} straddles {start}..{end}")
        inside.sort(key=lambda e: (e.start, e.end))
        return inside

    def replace(self, start: int, end: int, frag: Fragment | str) -> Edit:
        if isinstance(frag, str):
            frag = self.fragment().lit(frag)
        absorbed = self.edits_within(start, end)
        if start == end:
            # a pure insertion never absorbs and may coexist with others at the same point
            absorbed = []
        for e in absorbed:
            self._edits.remove(e)
        edit = Edit(start, end, frag.bytes(), tuple(frag._keeps))
        self._edits.append(edit)
        return edit

    def insert(self, at: int, frag: Fragment | str) -> Edit:
        return self.replace(at, at, frag)

    def text_of(self, start: int, end: int) -> str:
        return self.fragment().src(start, end).text()

    @property
    def edits(self) -> list[Edit]:
        return sorted(self._edits, key=lambda e: (e.start, e.end))

    def apply(self) -> tuple[SourceUnit, OffsetMap]:
        return apply_edits(self.unit, self.edits)
