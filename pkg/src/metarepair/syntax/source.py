from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import EncodingError

LF = "LF"
CRLF = "CRLF"
MIXED = "mixed"


def detect_eol(text: bytes) -> str:
    crlf = text.count(b"\r\n")
    lf = text.count(b"\n") - crlf
    if crlf and lf:
        return MIXED
    return CRLF if crlf else LF


def dominant_eol(text: bytes) -> str:
    """The line terminator new text should use: CRLF only if it is the majority."""
    crlf = text.count(b"\r\n")
    lf = text.count(b"\n") - crlf
    return "\r\n" if crlf > lf else "\n"


@dataclass(frozen=True)
class SourceUnit:
    """A Java source file held as raw UTF-8 bytes."""

    path: str | None
    text: bytes
    _line_starts: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        try:
            self.text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"{self.path or '<memory>'}: invalid UTF-8 at byte {exc.start}") from exc
        starts = [0]
        pos = self.text.find(b"\n")
        while pos != -1:
            starts.append(pos + 1)
            pos = self.text.find(b"\n", pos + 1)
        object.__setattr__(self, "_line_starts", tuple(starts))

    @classmethod
    def from_path(cls, path: str | Path) -> SourceUnit:
        path = Path(path)
        return cls(str(path), path.read_bytes())

    @classmethod
    def from_string(cls, text: str, path: str | None = None) -> SourceUnit:
        return cls(path, text.encode("utf-8"))

    @property
    def eol_style(self) -> str:
        return detect_eol(self.text)

    @property
    def eol(self) -> str:
        return dominant_eol(self.text)

    @property
    def line_count(self) -> int:
        return len(self._line_starts)

    def decoded(self) -> str:
        return self.text.decode("utf-8")

    def line_of(self, byte: int) -> int:
        """1-based line containing ``byte``."""
        return bisect.bisect_right(self._line_starts, byte)

    def line_start(self, line: int) -> int:
        return self._line_starts[line - 1]

    def line_end(self, line: int) -> int:
        """Offset of the line terminator (exclusive end of the line's content)."""
        if line < len(self._line_starts):
            end = self._line_starts[line] - 1
        else:
            end = len(self.text)
        if end > 0 and end <= len(self.text) and self.text[end - 1 : end] == b"\r":
            end -= 1
        return end

    def line_text(self, line: int) -> bytes:
        return self.text[self.line_start(line) : self.line_end(line)]

    def indent_of_line(self, line: int) -> str:
        raw = self.line_text(line)
        stripped = raw.lstrip(b" \t")
        return raw[: len(raw) - len(stripped)].decode("utf-8")

    def span(self, start_byte: int, end_byte: int) -> Span:
        end_line = self.line_of(max(start_byte, end_byte - 1)) if end_byte > start_byte else self.line_of(start_byte)
        return Span(start_byte, end_byte, self.line_of(start_byte), end_line)


@dataclass(frozen=True, order=True)
class Span:
    start_byte: int
    end_byte: int
    start_line: int
    end_line: int

    def __post_init__(self) -> None:
        if self.start_byte < 0 or self.end_byte < self.start_byte:
            raise ValueError(f"bad span {self.start_byte}..{self.end_byte}")

    def contains(self, other: Span) -> bool:
        return self.start_byte <= other.start_byte and other.end_byte <= self.end_byte

    def contains_line(self, line: int) -> bool:
        return self.start_line <= line <= self.end_line

    def __len__(self) -> int:
        return self.end_byte - self.start_byte
