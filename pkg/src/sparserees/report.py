"""Check reports and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

STATUSES = ("pass", "fail", "skip")


@dataclass
class InvariantComparison:
    quantity: str
    formula: Any
    computed: Any

    @property
    def equal(self) -> bool:
        return self.formula == self.computed

    def to_json(self) -> Dict[str, Any]:
        return {"quantity": self.quantity, "formula": self.formula, "computed": self.computed, "equal": self.equal}

    @classmethod
    def from_json(cls, d: Dict[str, Any]) -> "InvariantComparison":
        return cls(d["quantity"], d["formula"], d["computed"])


@dataclass
class CheckReport:
    """Outcome of one verification.  ``shape`` is ``(n, r, s)`` or None for
    engine-level checks."""

    name: str
    status: str
    witnesses: List[str] = field(default_factory=list)
    params: Dict[str, Any] = field(default_factory=dict)
    millis: float = 0.0
    shape: Optional[tuple] = None
    comparisons: List[InvariantComparison] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and not self.witnesses:
            self.witnesses = ["check failed without a recorded witness"]

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def skipped(self) -> bool:
        return self.status == "skip"

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {
            "name": self.name,
            "status": self.status,
            "witnesses": list(self.witnesses),
            "params": dict(self.params),
            "millis": round(self.millis, 3),
        }
        if self.comparisons:
            d["comparisons"] = [c.to_json() for c in self.comparisons]
        if self.values:
            d["values"] = dict(self.values)
        return d

    @classmethod
    def from_json(cls, d: Dict[str, Any], shape: Optional[tuple] = None) -> "CheckReport":
        return cls(
            name=d["name"],
            status=d["status"],
            witnesses=list(d.get("witnesses", [])),
            params=dict(d.get("params", {})),
            millis=float(d.get("millis", 0.0)),
            shape=shape,
            comparisons=[InvariantComparison.from_json(c) for c in d.get("comparisons", [])],
            values=dict(d.get("values", {})),
        )

    def summary_line(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "skip": "SKIP"}[self.status]
        extra = ""
        if self.status != "pass" and self.witnesses:
            extra = f"  ({self.witnesses[0]})"
        return f"[{tag}] {self.name:<22} {self.millis:9.1f} ms{extra}"


def shape_report_json(shape: tuple, reports: Sequence[CheckReport]) -> Dict[str, Any]:
    n, r, s = shape
    return {"shape": {"n": n, "r": r, "s": s}, "checks": [rep.to_json() for rep in reports]}


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def parse_shape_report(d: Dict[str, Any]):
    """Inverse of :func:`shape_report_json`: ``(shape, reports)``."""
    sh = d["shape"]
    shape = (sh["n"], sh["r"], sh["s"])
    return shape, [CheckReport.from_json(c, shape) for c in d["checks"]]
