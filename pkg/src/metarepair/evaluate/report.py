"""Result tables: decline from original to transformed data, and gains from richer prompts."""

from __future__ import annotations

from decimal import Decimal

from ..prompts.templates import BUG_REPORT, TRIGGER, TWO_SHOT, TWO_SHOT_FL
from .arithmetic import average, compute_decline, compute_improvement, signed
from .ledger import ORIGINAL, TRANSFORMED, EvalLedger, LedgerEntry

PENDING = "pending review"
ENRICHED_KINDS = (TWO_SHOT_FL, TRIGGER, BUG_REPORT)


def _fmt(x) -> str:
    return str(x) if not isinstance(x, Decimal) else f"{x}"


def _table(header: list[str], rows: list[list[str]]) -> str:
    if not rows:
        return "(no matching ledger entries)\n"
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]

    def line(cells: list[str]) -> str:
        return "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(cells, widths))).rstrip()

    out = [line(header), "  ".join("-" * w for w in widths)]
    out += [line(r) for r in rows]
    return "\n".join(out) + "\n"


def _correct(entry: LedgerEntry):
    return entry.fixed_correct if entry.reviewed else None


def decline_table(ledger: EvalLedger, prompt_kind: str = TWO_SHOT) -> tuple[str, dict]:
    header = ["Model", "Correct orig", "Correct trans", "Dec.(%)", "Plausible orig", "Plausible trans", "Dec.(%)"]
    rows, data = [], []
    pairs = []
    for model in ledger.models():
        a, b = ledger.get(model, prompt_kind, ORIGINAL), ledger.get(model, prompt_kind, TRANSFORMED)
        if a is not None and b is not None:
            pairs.append((model, a, b))
    for model, a, b in pairs:
        ca, cb = _correct(a), _correct(b)
        c_dec = compute_decline(ca, cb) if ca is not None and cb is not None and ca > 0 else None
        p_dec = compute_decline(a.fixed_plausible, b.fixed_plausible) if a.fixed_plausible > 0 else None
        data.append({"model": model,
                     "correct": {"original": ca, "transformed": cb, "decline": _num(c_dec),
                                 "status": "reviewed" if ca is not None and cb is not None else PENDING},
                     "plausible": {"original": a.fixed_plausible, "transformed": b.fixed_plausible,
                                   "decline": _num(p_dec)}})
        rows.append([model, _count(a), _count(b), _pct(c_dec), str(a.fixed_plausible), str(b.fixed_plausible),
                     _pct(p_dec)])
    avg = None
    if len(pairs) > 1:
        reviewed = all(a.reviewed and b.reviewed for _, a, b in pairs)
        ca = sum(a.fixed_correct for _, a, _ in pairs)
        cb = sum(b.fixed_correct for _, _, b in pairs)
        pa = sum(a.fixed_plausible for _, a, _ in pairs)
        pb = sum(b.fixed_plausible for _, _, b in pairs)
        # aggregate percentages come from summed counts, not from averaging row percentages
        c_dec = compute_decline(ca, cb) if reviewed and ca > 0 else None
        p_dec = compute_decline(pa, pb) if pa > 0 else None
        avg_c = (average(a.fixed_correct for _, a, _ in pairs), average(b.fixed_correct for _, _, b in pairs))
        avg_p = (average(a.fixed_plausible for _, a, _ in pairs), average(b.fixed_plausible for _, _, b in pairs))
        avg = {"correct": {"original": _num(avg_c[0]) if reviewed else None,
                           "transformed": _num(avg_c[1]) if reviewed else None, "decline": _num(c_dec)},
               "plausible": {"original": _num(avg_p[0]), "transformed": _num(avg_p[1]), "decline": _num(p_dec)}}
        rows.append(["Average", _fmt(avg_c[0]) if reviewed else PENDING, _fmt(avg_c[1]) if reviewed else PENDING,
                     _pct(c_dec), _fmt(avg_p[0]), _fmt(avg_p[1]), _pct(p_dec)])
    title = f"Fixed bugs with the {prompt_kind} prompt, original vs transformed\n"
    return title + _table(header, rows), {"table": "decline", "prompt_kind": prompt_kind, "rows": data,
                                          "average": avg}


def improvement_table(ledger: EvalLedger, dataset: str = TRANSFORMED) -> tuple[str, dict]:
    header = ["Model", f"{TWO_SHOT} correct", f"{TWO_SHOT} plausible"]
    for k in ENRICHED_KINDS:
        header += [f"{k} correct", f"{k} plausible"]
    rows, data = [], []
    models = [m for m in ledger.models() if ledger.get(m, TWO_SHOT, dataset) is not None
              and any(ledger.get(m, k, dataset) is not None for k in ENRICHED_KINDS)]
    for model in models:
        base = ledger.get(model, TWO_SHOT, dataset)
        row = [model, _count(base), str(base.fixed_plausible)]
        item = {"model": model, "base": {"correct": _correct(base), "plausible": base.fixed_plausible}, "kinds": {}}
        for k in ENRICHED_KINDS:
            e = ledger.get(model, k, dataset)
            if e is None:
                row += ["-", "-"]
                continue
            c_imp = compute_improvement(base.fixed_correct, e.fixed_correct) \
                if base.reviewed and e.reviewed and base.fixed_correct > 0 else None
            p_imp = compute_improvement(base.fixed_plausible, e.fixed_plausible) if base.fixed_plausible > 0 else None
            item["kinds"][k] = {"correct": _correct(e), "correct_improvement": _num(c_imp),
                                "plausible": e.fixed_plausible, "plausible_improvement": _num(p_imp)}
            row += [_with_pct(_count(e), c_imp), _with_pct(str(e.fixed_plausible), p_imp)]
        rows.append(row)
        data.append(item)
    avg = None
    if len(models) > 1:
        avg = {"base": {}, "kinds": {}}
        bases = [ledger.get(m, TWO_SHOT, dataset) for m in models]
        reviewed = all(b.reviewed for b in bases)
        bc, bp = average(b.fixed_correct for b in bases), average(b.fixed_plausible for b in bases)
        avg["base"] = {"correct": _num(bc) if reviewed else None, "plausible": _num(bp)}
        row = ["Average", _fmt(bc) if reviewed else PENDING, _fmt(bp)]
        for k in ENRICHED_KINDS:
            es = [ledger.get(m, k, dataset) for m in models]
            if any(e is None for e in es):
                row += ["-", "-"]
                continue
            ok = reviewed and all(e.reviewed for e in es)
            ec, ep = average(e.fixed_correct for e in es), average(e.fixed_plausible for e in es)
            c_imp = compute_improvement(bc, ec) if ok and bc > 0 else None
            p_imp = compute_improvement(bp, ep) if bp > 0 else None
            avg["kinds"][k] = {"correct": _num(ec) if ok else None, "correct_improvement": _num(c_imp),
                               "plausible": _num(ep), "plausible_improvement": _num(p_imp)}
            row += [_with_pct(_fmt(ec) if ok else PENDING, c_imp), _with_pct(_fmt(ep), p_imp)]
        rows.append(row)
    title = f"Fixed bugs on the {dataset} data by prompt\n"
    return title + _table(header, rows), {"table": "improvement", "dataset": dataset, "rows": data, "average": avg}


def entries_table(ledger: EvalLedger) -> tuple[str, dict]:
    """Every ledger entry as recorded, whether or not it has a counterpart to compare with."""
    header = ["Model", "Prompt", "Dataset", "Plausible", "Correct"]
    entries = sorted(ledger.entries, key=lambda e: e.key)
    rows = [[e.model, e.prompt_kind, e.dataset, str(e.fixed_plausible), _count(e)] for e in entries]
    data = [{"model": e.model, "prompt_kind": e.prompt_kind, "dataset": e.dataset,
             "plausible": e.fixed_plausible, "correct": _correct(e),
             "status": "reviewed" if e.reviewed else PENDING} for e in entries]
    return "Ledger entries\n" + _table(header, rows), {"table": "entries", "rows": data}


def render_report(ledger: EvalLedger, prompt_kind: str = TWO_SHOT) -> tuple[str, dict]:
    """The comparison tables and the raw entries as aligned text plus a JSON-ready dict."""
    t1, j1 = decline_table(ledger, prompt_kind)
    t2, j2 = improvement_table(ledger)
    t3, j3 = entries_table(ledger)
    return t1 + "\n" + t2 + "\n" + t3, {"decline": j1, "improvement": j2, "entries": j3}


def _count(entry: LedgerEntry) -> str:
    return str(entry.fixed_correct) if entry.reviewed else f"{entry.fixed_correct} ({PENDING})"


def _pct(x: Decimal | None) -> str:
    return "-" if x is None else f"{x}"


def _with_pct(text: str, x: Decimal | None) -> str:
    return text if x is None else f"{text} ({signed(x)}%)"


def _num(x: Decimal | None) -> str | None:
    return None if x is None else str(x)
