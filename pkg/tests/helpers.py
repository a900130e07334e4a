"""Small helpers shared by the transform tests."""

from __future__ import annotations

from metarepair.syntax import SourceUnit, locate_function, parse
from metarepair.transform import FunctionLocator, PipelineResult, TransformConfig, transform_pipeline


def wrap(body: str, sig: str = "void m(int x)") -> SourceUnit:
    """A one-method class around ``body``; the method starts on line 2."""
    return SourceUnit.from_string("class A {\n    " + sig + " {\n" + body + "\n    }\n}\n")


def run_ops(body: str, ops: tuple[str, ...], sig: str = "void m(int x)", seed: int = 0) -> PipelineResult:
    return transform_pipeline(wrap(body, sig), FunctionLocator("m", 2), TransformConfig(seed=seed, enabled_ops=ops))


def method_text(result: PipelineResult) -> str:
    return locate_function(parse(result.unit), "m", 2).text


def inner(result: PipelineResult) -> str:
    """The method body between its braces, stripped."""
    text = method_text(result)
    return text[text.index("{") + 1 : text.rindex("}")].strip()
