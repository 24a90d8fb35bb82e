"""Structured pass/fail reports shared by the checking modules."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ConditionReport:
    """Outcome of a named group of checks.

    Every failing check carries a witness dictionary in ``failures``.
    """

    name: str
    passed: bool = True
    checks: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def record(self, check, ok, **detail):
        entry = {"check": check, "passed": bool(ok), **detail}
        self.checks.append(entry)
        if not ok:
            self.passed = False
            self.failures.append(entry)
        return ok

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [jsonable(c) for c in self.checks],
            "failures": [jsonable(f) for f in self.failures],
            "data": jsonable(self.data),
        }


def jsonable(obj):
    """Convert numpy scalars, tuples and int-keyed dicts into plain JSON types."""
    import numpy as np

    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [jsonable(v) for v in sorted(obj)]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj
