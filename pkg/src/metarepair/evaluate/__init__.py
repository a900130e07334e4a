"""Sampling repairs from an endpoint, judging them, and reporting the counts."""

from .arithmetic import average, compute_decline, compute_improvement
from .extract import extract_function, normalized_hash
from .judge import COMPILE_FAIL, PLAUSIBLE, TEST_FAIL, UNPARSED, Judgement, judge_plausible, splice
from .ledger import ORIGINAL, TRANSFORMED, EvalLedger, LedgerEntry, PatchCandidate, aggregate
from .report import PENDING, decline_table, improvement_table, render_report
from .runner import EvalRun, evaluate, judge_samples
from .sampling import SamplingConfig, load_samples, sample_patches

__all__ = [
    "COMPILE_FAIL",
    "ORIGINAL",
    "PENDING",
    "PLAUSIBLE",
    "TEST_FAIL",
    "TRANSFORMED",
    "UNPARSED",
    "EvalLedger",
    "EvalRun",
    "Judgement",
    "LedgerEntry",
    "PatchCandidate",
    "SamplingConfig",
    "aggregate",
    "average",
    "compute_decline",
    "compute_improvement",
    "decline_table",
    "evaluate",
    "extract_function",
    "improvement_table",
    "judge_plausible",
    "judge_samples",
    "load_samples",
    "normalized_hash",
    "render_report",
    "sample_patches",
    "splice",
]
