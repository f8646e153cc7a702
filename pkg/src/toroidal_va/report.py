"""Verification reports shared by every check suite."""

import json
from dataclasses import dataclass, field


def _fmt(value):
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


@dataclass
class Report:
    """Outcome of an exhaustive check.

    Only failing instances are stored in full (up to ``max_failures``); passing
    instances are counted.  Each stored entry has the keys
    ``identity, tuple, lhs, rhs, pass``.
    """

    name: str
    params: dict = field(default_factory=dict)
    n_checked: int = 0
    n_failed: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    max_failures: int = 50

    @property
    def passed(self):
        return self.n_failed == 0

    def record(self, identity, args, lhs, rhs, ok):
        self.n_checked += 1
        if ok:
            return True
        self.n_failed += 1
        if len(self.failures) < self.max_failures:
            self.failures.append(
                {
                    "identity": identity,
                    "tuple": _fmt(args),
                    "lhs": _fmt(lhs),
                    "rhs": _fmt(rhs),
                    "pass": False,
                }
            )
        return False

    def check_equal(self, identity, args, lhs, rhs):
        return self.record(identity, args, lhs, rhs, lhs == rhs)

    def merge(self, other):
        self.n_checked += other.n_checked
        self.n_failed += other.n_failed
        room = self.max_failures - len(self.failures)
        self.failures.extend(other.failures[: max(room, 0)])
        self.notes.extend(other.notes)
        return self

    def to_dict(self):
        return {
            "name": self.name,
            "params": {k: _fmt(v) if isinstance(v, (list, tuple)) else v for k, v in self.params.items()},
            "passed": self.passed,
            "n_checked": self.n_checked,
            "n_failed": self.n_failed,
            "failures": self.failures,
            "notes": self.notes,
            "extra": self.extra,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=str)

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.n_checked} checked, {self.n_failed} failed"
