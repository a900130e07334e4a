"""Semantics-preserving source rewrites applied to a single Java function."""

from .config import (
    APPLIED,
    DEAD_CODE,
    LOOPS,
    NEGATE,
    OPERATORS,
    RENAME,
    SKIPPED,
    SWITCH,
    EditRecord,
    TransformConfig,
    TransformRecord,
)
from .deadcode import t4_dead_code
from .loops import t2_loops
from .names import EndpointNameProvider, NameProvider, NameRequest
from .negate import t5_double_negate
from .pipeline import FunctionLocator, PipelineResult, transform_file, transform_function, transform_pipeline
from .rename import t1_rename
from .switch import t3_switch

__all__ = [
    "APPLIED",
    "DEAD_CODE",
    "LOOPS",
    "NEGATE",
    "OPERATORS",
    "RENAME",
    "SKIPPED",
    "SWITCH",
    "EditRecord",
    "EndpointNameProvider",
    "FunctionLocator",
    "NameProvider",
    "NameRequest",
    "PipelineResult",
    "TransformConfig",
    "TransformRecord",
    "t1_rename",
    "t2_loops",
    "t3_switch",
    "t4_dead_code",
    "t5_double_negate",
    "transform_file",
    "transform_function",
    "transform_pipeline",
]
