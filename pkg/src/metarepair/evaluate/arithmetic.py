"""Percentages and averages rounded the way the result tables print them."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable

from ..errors import ZeroBaseline

CENT = Decimal("0.01")


def _dec(x) -> Decimal:
    return x if isinstance(x, Decimal) else Decimal(str(x))


def round2(x) -> Decimal:
    return _dec(x).quantize(CENT, rounding=ROUND_HALF_UP)


def compute_decline(orig, trans) -> Decimal:
    """Percentage drop from ``orig`` to ``trans``, two decimals, half-up."""
    o, t = _dec(orig), _dec(trans)
    if o == 0:
        raise ZeroBaseline("decline undefined for a zero baseline")
    return round2(Decimal(100) * (o - t) / o)


def compute_improvement(base, enriched) -> Decimal:
    """Signed percentage change from ``base`` to ``enriched``, two decimals, half-up."""
    b, e = _dec(base), _dec(enriched)
    if b == 0:
        raise ZeroBaseline("improvement undefined for a zero baseline")
    return round2(Decimal(100) * (e - b) / b)


def average(values: Iterable) -> Decimal:
    vals = [_dec(v) for v in values]
    if not vals:
        raise ValueError("average of nothing")
    return round2(sum(vals, Decimal(0)) / len(vals))


def signed(x: Decimal) -> str:
    return f"+{x}" if x >= 0 else str(x)
