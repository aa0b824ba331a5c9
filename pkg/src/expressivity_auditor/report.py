"""Structured audit results.

Every numeric check in the package reports through AuditReport so the CLI and
the campaign CSV can serialize them uniformly. Upper-bound audits pass when
measured <= bound, lower-bound audits when measured >= bound, both within the
stated tolerance. Search-based estimates that carry no pass/fail semantics use
the verdict "estimate".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

import numpy as np

PASS = "pass"
FAIL = "fail"
ESTIMATE = "estimate"


@dataclass(frozen=True)
class AuditReport:
    kind: str
    parameters: Mapping[str, Any]
    measured: float
    bound: float
    margin: float
    verdict: str
    provenance: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameters": {k: _json_safe(v) for k, v in self.parameters.items()},
            "measured": _json_safe(self.measured),
            "bound": _json_safe(self.bound),
            "margin": _json_safe(self.margin),
            "verdict": self.verdict,
            "provenance": self.provenance,
        }


def upper_audit(kind, measured, bound, parameters=None, tol=0.0, provenance=""):
    """Audit of measured <= bound (+ tol)."""
    measured = float(measured)
    bound = float(bound)
    margin = bound - measured
    verdict = PASS if margin >= -tol else FAIL
    return AuditReport(kind, dict(parameters or {}), measured, bound, margin, verdict, provenance)


def lower_audit(kind, measured, bound, parameters=None, tol=0.0, provenance=""):
    """Audit of measured >= bound (- tol)."""
    measured = float(measured)
    bound = float(bound)
    margin = measured - bound
    verdict = PASS if margin >= -tol else FAIL
    return AuditReport(kind, dict(parameters or {}), measured, bound, margin, verdict, provenance)


def estimate_report(kind, value, parameters=None, provenance=""):
    """A search result reported without pass/fail semantics."""
    value = float(value)
    return AuditReport(kind, dict(parameters or {}), value, value, 0.0, ESTIMATE, provenance)


def _json_safe(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, np.ndarray):
        return [float(x) for x in np.asarray(v, dtype=float).ravel()]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (tuple, list)):
        return [_json_safe(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    return v
