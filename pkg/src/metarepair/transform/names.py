"""Fresh identifier providers for renaming and generated temporaries."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from ..errors import ProviderExhausted
from ..syntax import Node

JAVA_RESERVED = frozenset(
    """abstract assert boolean break byte case catch char class const continue default do double else enum
    extends final finally float for goto if implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch synchronized this throw throws transient
    try void volatile while true false null var yield record sealed permits non-sealed _""".split()
)

IDENTIFIER = re.compile(r"^[A-Za-z_$][A-Za-z0-9_$]*$")

# pools of everyday names, keyed by the rough shape of the declared type
WORD_POOLS: dict[str, tuple[str, ...]] = {
    "int": ("count", "index", "total", "offset", "size", "limit", "pos", "step", "len", "num", "idx", "counter",
            "amount", "width", "depth", "cursor", "level", "start", "end", "bound", "k", "n", "pivot", "span"),
    "long": ("millis", "total", "stamp", "bits", "sum", "value", "length", "ticks", "mask", "acc", "nanos", "big"),
    "double": ("ratio", "weight", "score", "factor", "delta", "scale", "amount", "rate", "norm", "alpha", "epsilon",
               "result", "estimate", "threshold"),
    "boolean": ("flag", "done", "found", "valid", "ok", "matched", "enabled", "ready", "changed", "active",
                "isSet", "hasMore", "success", "visible"),
    "char": ("ch", "c", "letter", "symbol", "glyph", "chr", "token", "mark"),
    "String": ("text", "label", "message", "str", "token", "line", "key", "content", "word", "prefix", "suffix",
               "title", "input", "output", "source"),
    "array": ("values", "items", "elements", "data", "entries", "buffer", "parts", "slots", "cells", "list"),
    "collection": ("items", "elements", "entries", "values", "list", "result", "pending", "queue", "bucket",
                   "collected", "batch"),
    "map": ("lookup", "table", "index", "mapping", "cache", "registry", "dict", "byKey", "counts"),
    "object": ("value", "item", "current", "target", "element", "obj", "instance", "candidate", "entry", "node",
               "other", "ref", "subject", "holder"),
    "exception": ("ex", "err", "failure", "cause", "problem", "thrown"),
}

_CATEGORY_BY_TYPE = {
    "int": "int", "short": "int", "byte": "int", "Integer": "int", "Short": "int", "Byte": "int",
    "long": "long", "Long": "long",
    "double": "double", "float": "double", "Double": "double", "Float": "double", "BigDecimal": "double",
    "boolean": "boolean", "Boolean": "boolean",
    "char": "char", "Character": "char",
    "String": "String", "CharSequence": "String", "StringBuilder": "String", "StringBuffer": "String",
}
_COLLECTIONS = ("List", "Set", "Collection", "Iterable", "Deque", "Queue", "Stack", "Vector", "Iterator")


def type_category(type_text: str | None) -> str:
    if not type_text:
        return "object"
    t = type_text.strip()
    if t.endswith("[]") or t.endswith("..."):
        return "array"
    base = t.split("<", 1)[0].split(".")[-1].strip()
    if base in _CATEGORY_BY_TYPE:
        return _CATEGORY_BY_TYPE[base]
    if base.endswith("Map"):
        return "map"
    if any(base.endswith(c) for c in _COLLECTIONS):
        return "collection"
    if base.endswith("Exception") or base.endswith("Error") or base == "Throwable" or "|" in t:
        return "exception"
    return "object"


def _type_words(type_text: str | None) -> list[str]:
    """Names derived from a class type, e.g. ``DateTimeZone`` -> ``zone``, ``timeZone``, ``dateTimeZone``."""
    if not type_text:
        return []
    base = type_text.split("<", 1)[0].split(".")[-1].strip().rstrip("[]. ")
    if not base or not base[0].isupper() or base in _CATEGORY_BY_TYPE:
        return []
    words = re.findall(r"[A-Z]+(?![a-z])|[A-Z][a-z0-9]*", base)
    if not words:
        return []
    out = []
    for i in range(len(words) - 1, -1, -1):
        tail = words[i:]
        name = tail[0].lower() + "".join(w.capitalize() if w.isupper() and len(w) > 1 else w for w in tail[1:])
        out.append(name)
    return out


def declared_type(decl: Node) -> str | None:
    """Source text of the type attached to a declaring identifier."""
    parent = decl.parent
    holder = parent
    if parent is not None and parent.kind == "variable_declarator":
        holder = parent.parent
    if holder is None:
        return None
    if holder.kind == "spread_parameter":
        for c in holder.children:
            if c.named and c.kind != "variable_declarator" and c.kind != "modifiers":
                return c.text + "..."
    if holder.kind == "catch_formal_parameter":
        ct = holder.first_child("catch_type")
        return ct.text if ct is not None else "Exception"
    t = holder.child_by_field("type")
    if t is None:
        return None
    text = t.text
    dims = parent.child_by_field("dimensions") if parent is not None else None
    if dims is not None:
        text += dims.text
    return text


@dataclass
class NameRequest:
    index: int
    original: str
    type_text: str | None = None
    context: str | None = None


def is_valid_identifier(name: str) -> bool:
    return bool(IDENTIFIER.match(name)) and name not in JAVA_RESERVED


class NameProvider:
    """Seeded provider of natural-looking variable names.

    Output depends only on the seed, the request (declaration index, type)
    and the set of names already taken, so runs are reproducible.
    """

    kind = "deterministic"

    def __init__(self, seed: int = 0, word_pool: dict[str, tuple[str, ...]] | None = None):
        self.seed = seed
        self.pools = word_pool or WORD_POOLS

    def candidates(self, req: NameRequest) -> list[str]:
        rng = random.Random(f"{self.seed}:{req.index}:{req.original}")
        cat = type_category(req.type_text)
        primary = list(_type_words(req.type_text)) + list(self.pools.get(cat, ()))
        rng.shuffle(primary)
        general = [w for w in self.pools["object"] if w not in primary]
        rng.shuffle(general)
        return primary + general

    def fresh(self, req: NameRequest, taken: set[str]) -> str:
        for name in self.candidates(req):
            if name != req.original and name not in taken and is_valid_identifier(name):
                return name
        # pool exhausted: fall back to numbered variants of the first candidate
        stem = self.candidates(req)[0] if self.candidates(req) else "var"
        for i in range(1, 1_000_000):
            name = f"{stem}{i}"
            if name not in taken:
                return name
        raise ProviderExhausted(f"no fresh name for {req.original!r}")


class EndpointNameProvider(NameProvider):
    """Asks a completion endpoint for a replacement name, falling back to the word pool."""

    kind = "external-endpoint"

    def __init__(self, client, seed: int = 0, word_pool: dict[str, tuple[str, ...]] | None = None):
        super().__init__(seed, word_pool)
        self.client = client

    def fresh(self, req: NameRequest, taken: set[str]) -> str:
        prompt = (
            (req.context or "")
            + f"\n// Suggest a new, natural name for the variable `{req.original}`"
            + (f" of type {req.type_text}" if req.type_text else "")
            + ".\n// New name:"
        )
        try:
            texts = self.client.complete(prompt, n=1, temperature=0.0, top_p=1.0, max_tokens=8)
        except Exception:  # noqa: BLE001 - any endpoint trouble falls back to the pool
            texts = []
        for text in texts:
            m = re.search(r"[A-Za-z_$][A-Za-z0-9_$]*", text)
            if m:
                name = m.group(0)
                if name != req.original and name not in taken and is_valid_identifier(name):
                    return name
        return super().fresh(req, taken)


def fresh_temp(stem: str, taken: set[str]) -> str:
    """``stem`` itself if unused, else ``stem1``, ``stem2``, ... The result is added to ``taken``."""
    name = stem
    i = 0
    while name in taken:
        i += 1
        name = f"{stem}{i}"
    taken.add(name)
    return name


def identifiers_in(node: Node) -> set[str]:
    return {n.text for n in node.walk() if n.kind in ("identifier", "type_identifier")}
