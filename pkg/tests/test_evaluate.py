from __future__ import annotations

from decimal import Decimal
from pathlib import Path

import pytest

from corpus import BUGS_DIR, DATA
from metarepair.dataset import load_manifest
from metarepair.errors import EndpointUnavailable, ZeroBaseline
from metarepair.evaluate import (
    COMPILE_FAIL,
    PLAUSIBLE,
    TEST_FAIL,
    UNPARSED,
    EvalLedger,
    PatchCandidate,
    SamplingConfig,
    aggregate,
    compute_decline,
    compute_improvement,
    extract_function,
    judge_plausible,
    load_samples,
    normalized_hash,
    render_report,
    sample_patches,
)
from metarepair.evaluate.arithmetic import average
from metarepair.evaluate.sampling import is_complete
from metarepair.prompts import function_text
from stub_endpoint import StubEndpoint

FIXTURES = DATA / "fixtures"
BUGS = load_manifest(BUGS_DIR / "manifest.json").by_id()

METHOD = "public int f(int a) {\n    return a + 1;\n}"


# arithmetic

def test_decline_and_improvement_round_half_up():
    assert compute_decline(65, 34) == Decimal("47.69")
    assert compute_decline(8, 7) == Decimal("12.50")
    assert compute_decline(3, 2) == Decimal("33.33")
    assert compute_decline(200, 1) == Decimal("99.50")
    assert compute_improvement(34, 44) == Decimal("29.41")
    assert compute_improvement(3, 2) == Decimal("-33.33")
    assert average([1, 2]) == Decimal("1.50")


def test_zero_baseline():
    with pytest.raises(ZeroBaseline):
        compute_decline(0, 1)
    with pytest.raises(ZeroBaseline):
        compute_improvement(0, 3)


# extraction

def test_extract_from_fence():
    text = "Here you go:\n```java\n" + METHOD + "\n```\nand\n```java\npublic void g() {}\n```"
    assert extract_function(text) == METHOD + "\n"


def test_extract_without_fence_takes_longest_method():
    text = "Fixed:\n" + METHOD + "\nAlso:\nint g() { return 0; }\n"
    assert extract_function(text) == METHOD + "\n"


def test_extract_prose_only():
    assert extract_function("I think the bug is the loop bound.") is None


def test_extract_rejects_broken_code():
    assert extract_function("```java\npublic int f( {\n```") is None


def test_normalized_hash_ignores_layout_and_comments():
    a = normalized_hash(METHOD)
    b = normalized_hash("public int f(int a) { // add\n  return a+1; }")
    assert a == b
    assert a != normalized_hash(METHOD.replace("+ 1", "+ 2"))


# sampling

def test_sampling_persists_and_resumes(tmp_path: Path):
    cfg = SamplingConfig(samples_per_bug=5, window=2)
    store = tmp_path / "s.jsonl"
    with StubEndpoint(lambda p: "fix") as stub:
        got = sample_patches("prompt", cfg, store, SamplingConfig(endpoint_url=stub.url).client())
        assert got == ["fix"] * 5 and stub.requests == 5
        assert is_complete(store, cfg)
        lines = store.read_text().splitlines()
        store.write_text("\n".join(lines[:2]) + "\n" + lines[2][:7])  # two kept, one torn
        again = sample_patches("prompt", cfg, store, SamplingConfig(endpoint_url=stub.url).client())
        assert again == got and stub.requests == 8
    assert sorted(load_samples(store)) == [0, 1, 2, 3, 4]


def test_sampling_unreachable_endpoint(tmp_path: Path):
    from metarepair.endpoint import CompletionClient

    client = CompletionClient("http://127.0.0.1:9", retries=0)
    with pytest.raises(EndpointUnavailable):
        sample_patches("p", SamplingConfig(samples_per_bug=2), tmp_path / "s.jsonl", client)
    assert load_samples(tmp_path / "s.jsonl") == {}
    assert not is_complete(tmp_path / "s.jsonl", SamplingConfig(samples_per_bug=2))


def test_sampling_config_validation():
    with pytest.raises(ValueError):
        SamplingConfig(top_p=0)
    with pytest.raises(ValueError):
        SamplingConfig(samples_per_bug=0)


def test_canned_fix_dedups_to_one_hash(tmp_path: Path):
    cfg = SamplingConfig(samples_per_bug=200, window=16)
    with StubEndpoint(lambda p: "```java\n" + METHOD + "\n```") as stub:
        got = sample_patches("p", cfg, tmp_path / "s.jsonl", SamplingConfig(endpoint_url=stub.url).client())
    assert len(got) == 200
    assert len({normalized_hash(extract_function(g)) for g in got}) == 1


# judging

@pytest.mark.java
def test_judge_verdicts():
    bug = BUGS["calc-1"]
    assert judge_plausible(bug, bug.developer_patch).verdict == PLAUSIBLE
    buggy = judge_plausible(bug, function_text(bug))
    assert buggy.verdict == TEST_FAIL and buggy.failing_tests == ("testSumToFive(SeriesTest)",)
    assert judge_plausible(bug, "public static int sumTo(int n) { return n +; }").verdict == COMPILE_FAIL
    assert judge_plausible(bug, None).verdict == UNPARSED


# ledger

def _cand(bug_id, i, verdict, flagged=False):
    fn = None if verdict == UNPARSED else METHOD
    return PatchCandidate(bug_id, i, "raw", fn, "h", verdict, flagged)


def test_aggregate_counts_best_verdict():
    cands = [_cand("a", i, TEST_FAIL) for i in range(199)] + [_cand("a", 199, PLAUSIBLE)]
    cands += [_cand("b", 0, COMPILE_FAIL), _cand("b", 1, UNPARSED)]
    entry = aggregate(cands, "m", "TwoShot", "original", ["a", "b", "c"])
    assert entry.fixed_plausible == 1 and entry.fixed_correct == 0
    assert not entry.reviewed
    assert sorted(entry.bugs) == ["a", "b"]
    assert entry.bugs["b"].best_verdict == COMPILE_FAIL


def test_candidate_invariants():
    with pytest.raises(ValueError):
        _cand("a", 0, TEST_FAIL, flagged=True)
    with pytest.raises(ValueError):
        PatchCandidate("a", 0, "raw", None, "h", PLAUSIBLE)


def test_ledger_round_trip(tmp_path: Path):
    ledger = EvalLedger.load(FIXTURES / "table1_ledger.json")
    ledger.dump(tmp_path / "l.json")
    assert EvalLedger.load(tmp_path / "l.json") == ledger
    assert len(ledger.models()) == 11


def test_table1_averages():
    _, data = render_report(EvalLedger.load(FIXTURES / "table1_ledger.json"))
    avg = data["decline"]["average"]
    assert avg["plausible"] == {"original": "124.18", "transformed": "70.91", "decline": "42.90"}
    assert avg["correct"] == {"original": "78.27", "transformed": "39.55", "decline": "49.48"}


def test_unreviewed_counts_render_pending():
    cands = [_cand("a", 0, PLAUSIBLE), _cand("b", 0, TEST_FAIL)]
    ledger = EvalLedger()
    ledger.put(aggregate(cands, "m", "TwoShot", "original"))
    ledger.put(aggregate(cands[:1], "m", "TwoShot", "transformed"))
    text, data = render_report(ledger)
    assert "0 (pending review)" in text
    row = data["decline"]["rows"][0]
    assert row["correct"]["status"] == "pending review"
    assert row["plausible"] == {"original": 1, "transformed": 1, "decline": "0.00"}


def test_entries_listed_without_a_counterpart():
    ledger = EvalLedger()
    ledger.put(aggregate([_cand("a", 0, PLAUSIBLE)], "m", "TwoShot", "transformed"))
    text, data = render_report(ledger)
    assert "(no matching ledger entries)" in text
    assert data["entries"]["rows"] == [{"model": "m", "prompt_kind": "TwoShot", "dataset": "transformed",
                                        "plausible": 1, "correct": None, "status": "pending review"}]
    assert "m      TwoShot  transformed          1  0 (pending review)" in text
