"""Sampling, judging and counting for every bug of a manifest, resumable at each step."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..dataset.manifest import BugCase, Manifest
from ..errors import BudgetExceeded, MissingIngredient, PreconditionViolation
from ..prompts.templates import TWO_SHOT, PromptConfig, build_prompt
from .extract import extract_function, normalized_hash
from .judge import UNPARSED, Judgement, judge_plausible
from .ledger import TRANSFORMED, EvalLedger, PatchCandidate, aggregate
from .sampling import SamplingConfig, sample_patches

log = logging.getLogger(__name__)


@dataclass
class EvalRun:
    ledger: EvalLedger
    skipped: dict[str, str] = field(default_factory=dict)  # "bug_id/kind" -> reason
    failures: dict[str, str] = field(default_factory=dict)


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name)


def judge_samples(bug: BugCase, completions: list[str], timeout: float = 300.0,
                  workspace: str | None = None, annotations: set[int] = frozenset()) -> list[PatchCandidate]:
    """Judge each distinct normalized candidate once and share its verdict."""
    cache: dict[str, Judgement] = {}
    out = []
    for i, raw in enumerate(completions):
        fn = extract_function(raw)
        digest = normalized_hash(fn)
        if fn is None:
            j = Judgement(UNPARSED)
        elif digest in cache:
            j = cache[digest]
        else:
            j = cache[digest] = judge_plausible(bug, fn, workspace, timeout)
        out.append(PatchCandidate(bug.bug_id, i, raw, fn, digest, j.verdict,
                                  flagged_correct=i in annotations and j.verdict == "plausible", note=j.note))
    return out


def _load_candidates(path: Path) -> list[PatchCandidate]:
    return [PatchCandidate(**json.loads(line)) for line in path.read_text(encoding="utf-8").splitlines() if line]


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def evaluate(manifest: Manifest, out_dir: str | os.PathLike, sampling: SamplingConfig, kinds=(TWO_SHOT,),
             dataset: str = TRANSFORMED, client=None, parallelism: int = 1, judge_timeout: float = 300.0,
             prompt_cfg: PromptConfig = PromptConfig(), annotations: dict | None = None) -> EvalRun:
    """Run every (bug, prompt kind) through sampling and judging and fold the results into a ledger.

    ``annotations`` maps bug_id to the sample indices a reviewer marked correct.
    """
    out = Path(out_dir)
    model = sampling.model
    client = client or sampling.client()
    ledger_path = out / "ledger.json"
    ledger = EvalLedger.load(ledger_path) if ledger_path.exists() else EvalLedger()
    run = EvalRun(ledger)
    for kind in kinds:
        base = out / _safe(model) / dataset / kind
        (base / "samples").mkdir(parents=True, exist_ok=True)
        (base / "candidates").mkdir(parents=True, exist_ok=True)

        def one(bug: BugCase):
            key = f"{bug.bug_id}/{kind}"
            cand_path = base / "candidates" / f"{_safe(bug.bug_id)}.jsonl"
            if cand_path.exists():
                return _load_candidates(cand_path)
            try:
                doc = build_prompt(kind, bug, manifest.project_bugs(bug.project), prompt_cfg)
            except (MissingIngredient, BudgetExceeded, PreconditionViolation) as exc:
                run.skipped[key] = f"{type(exc).__name__}: {exc}"
                return []
            (base / "prompts").mkdir(exist_ok=True)
            (base / "prompts" / doc.filename).write_text(doc.text, encoding="utf-8")
            completions = sample_patches(doc.text, sampling, base / "samples" / f"{_safe(bug.bug_id)}.jsonl",
                                         client, {"bug_id": bug.bug_id, "prompt_kind": kind})
            marks = set((annotations or {}).get(bug.bug_id, ()))
            cands = judge_samples(bug, completions, judge_timeout, annotations=marks)
            _write_atomic(cand_path, "".join(json.dumps(c.to_dict(), sort_keys=True) + "\n" for c in cands))
            return cands

        with ThreadPoolExecutor(max_workers=max(1, parallelism)) as pool:
            results = list(pool.map(one, manifest.bugs))
        cands = [c for r in results for c in r]
        entry = aggregate(cands, model, kind, dataset, [b.bug_id for b in manifest.bugs],
                          reviewed=annotations is not None)
        ledger.put(entry)
        ledger.dump(ledger_path)
    return run
