"""Checking that transformed code behaves like the original."""

from .batch import BatchReport, Verification, batch_verify, verify_bug_case
from .differential import (
    COMPILE_ERROR,
    EQUAL,
    TIMEOUT,
    UNEQUAL,
    DiffReport,
    ExecProbe,
    GridPoint,
    differential_check,
)
from .outcome import OutcomeSignature, TestPatterns, outcome_of, parse_test_output
from .toolchain import Toolchain, available, find_toolchain

__all__ = [
    "COMPILE_ERROR",
    "EQUAL",
    "TIMEOUT",
    "UNEQUAL",
    "BatchReport",
    "DiffReport",
    "ExecProbe",
    "GridPoint",
    "OutcomeSignature",
    "TestPatterns",
    "Toolchain",
    "Verification",
    "available",
    "batch_verify",
    "differential_check",
    "find_toolchain",
    "outcome_of",
    "parse_test_output",
    "verify_bug_case",
]
