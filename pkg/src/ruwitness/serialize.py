"""Deterministic text output: 12-significant-digit numbers, stable JSON."""

from __future__ import annotations

import json
from decimal import Decimal


def fmt12(x: float) -> str:
    """Positional decimal with exactly 12 significant digits (no exponent)."""
    x = float(x)
    if x == 0.0:  # normalise -0.0
        x = 0.0
    d = Decimal(f"{x:.11e}")
    return format(d, "f")


def round12(x: float) -> float:
    """Round to 12 significant digits; keeps JSON float output byte-stable."""
    return float(fmt12(x))


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
