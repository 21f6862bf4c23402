"""Structured lhs/rhs comparison records emitted by every identity check."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Comparison of two routes to the same quantity, with verdict.

    abs_err = |lhs - rhs|; rel_err = abs_err / max(|lhs|, |rhs|, 1e-300).
    ``trace`` holds (parameter, value) pairs -- the T- or sigma-history that
    produced the comparison, never just the final number.
    """

    name: str
    lhs: float
    rhs: float
    tol: float
    params: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    # "rel" / "abs": two-sided comparison at tol.
    # "upper": one-sided bound check, pass iff lhs <= rhs + tol.
    # "gap":   one-sided floor check, pass iff lhs >= rhs - tol.
    tol_mode: str = "rel"
    notes: str = ""
    constraints_ok: bool = True  # extra side conditions (monotone trace, ...)

    @property
    def abs_err(self):
        return abs(self.lhs - self.rhs)

    @property
    def rel_err(self):
        return self.abs_err / max(abs(self.lhs), abs(self.rhs), 1e-300)

    @property
    def passed(self):
        if self.tol_mode == "upper":
            ok = self.lhs <= self.rhs + self.tol
        elif self.tol_mode == "gap":
            ok = self.lhs >= self.rhs - self.tol
        elif self.tol_mode == "abs":
            ok = self.abs_err <= self.tol
        else:
            ok = self.rel_err <= self.tol
        return bool(ok and self.constraints_ok)

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "abs_err": float(self.abs_err),
            "rel_err": float(self.rel_err),
            "tol": float(self.tol),
            "tol_mode": self.tol_mode,
            "verdict": self.verdict,
            "params": _jsonable(self.params),
            "trace": [[float(x), float(v)] for x, v in self.trace],
            "notes": self.notes,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def __str__(self):
        return (f"[{self.verdict}] {self.name}: lhs={self.lhs:.10g} "
                f"rhs={self.rhs:.10g} abs_err={self.abs_err:.3e} "
                f"rel_err={self.rel_err:.3e} tol={self.tol:g} ({self.tol_mode})")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "item"):
        return obj.item()
    return obj
