"""Finding the fixed function inside a raw completion."""

from __future__ import annotations

import hashlib
import re

from ..errors import JavaSyntaxError
from ..syntax import SourceUnit, parse
from ..syntax.tree import METHOD_KINDS

_FENCE = re.compile(r"```[^\n`]*\n(.*?)(?:```|\Z)", re.S)
_SIGNATURE = re.compile(
    r"^[ \t]*(?:@\w+(?:\([^)]*\))?\s+)*(?:(?:public|protected|private|static|final|synchronized|abstract|native"
    r"|strictfp|default)\s+)*(?:<[^>]*>\s*)?[\w$.<>\[\],? ]+?\s+[\w$]+\s*\([^;{]*\)\s*(?:throws\s+[\w$., ]+)?\{",
    re.M,
)
SHELL_OPEN = "class __Shell {\n"
SHELL_CLOSE = "\n}\n"


def _balanced_end(text: str, open_at: int) -> int | None:
    depth = 0
    i = open_at
    n = len(text)
    while i < n:
        c = text[i]
        if c in "\"'":
            quote = c
            i += 1
            while i < n and text[i] != quote:
                i += 2 if text[i] == "\\" else 1
        elif text.startswith("//", i):
            nl = text.find("\n", i)
            i = n if nl < 0 else nl
        elif text.startswith("/*", i):
            end = text.find("*/", i + 2)
            i = n if end < 0 else end + 1
        elif c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
            if depth == 0:
                return i + 1
        i += 1
    return None


def parses_as_method(code: str) -> bool:
    try:
        tree = parse(SourceUnit.from_string(SHELL_OPEN + code + SHELL_CLOSE))
    except (JavaSyntaxError, ValueError):
        return False
    body = tree.root.named_children[0].child_by_field("body")
    members = body.named_children if body is not None else []
    return len(members) == 1 and members[0].kind in METHOD_KINDS


def _regions(text: str) -> list[str]:
    out = []
    for m in _SIGNATURE.finditer(text):
        end = _balanced_end(text, m.end() - 1)
        if end is not None:
            out.append(text[m.start() : end])
    return out


def extract_function(completion: str) -> str | None:
    """The first fenced block, else the longest brace-balanced method; ``None`` if it does not parse."""
    fence = _FENCE.search(completion)
    if fence:
        code = fence.group(1).strip("\n")
        if parses_as_method(code):
            return code.rstrip() + "\n"
        regions = [r for r in _regions(code) if parses_as_method(r)]
        return max(regions, key=len).rstrip() + "\n" if regions else None
    regions = [r for r in _regions(completion) if parses_as_method(r)]
    if not regions:
        return None
    return max(regions, key=len).rstrip() + "\n"


def normalized_hash(code: str | None) -> str:
    """Digest over the token texts, so comments and layout do not matter."""
    if code is None:
        return hashlib.sha256(b"<none>").hexdigest()
    try:
        tree = parse(SourceUnit.from_string(SHELL_OPEN + code + SHELL_CLOSE))
        tokens = [leaf.text for leaf in tree.root.leaves() if not leaf.is_comment]
        data = "\x00".join(tokens)
    except JavaSyntaxError:
        data = re.sub(r"\s+", "", code)
    return hashlib.sha256(data.encode("utf-8")).hexdigest()
