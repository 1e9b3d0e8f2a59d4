"""Welch-type lower bound on worst-case error and gap reports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .protocol import FingerprintScheme, worst_case_error
from .tensor_core import SCHMIDT_TOLERANCE


@dataclass
class BoundReport:
    m: int
    schmidt_number: int
    raw_bound: float
    effective_bound: float
    achieved: float | None = None
    gap: float | None = None


def welch_lower_bound(m: int, schmidt_number: int) -> BoundReport:
    """(m - N_s^2) / (N_s^2 (m - 1)), plus the same value clamped at zero.

    The raw value is negative, hence vacuous, whenever m < N_s^2.
    """
    if m < 2:
        raise DimensionError("the worst case over distinct messages needs m >= 2")
    if schmidt_number < 1:
        raise DimensionError("Schmidt number must be at least 1")
    d = schmidt_number * schmidt_number
    raw = (m - d) / (d * (m - 1))
    return BoundReport(m=m, schmidt_number=schmidt_number, raw_bound=raw, effective_bound=max(raw, 0.0))


def gap_report(scheme: FingerprintScheme) -> BoundReport:
    """Compare a scheme's worst-case error with the bound for its m and N_s."""
    achieved = worst_case_error(scheme).p_wce
    ns = int(np.sum(scheme.lam > SCHMIDT_TOLERANCE))
    report = welch_lower_bound(scheme.m, ns)
    report.achieved = achieved
    report.gap = achieved - report.effective_bound
    return report
