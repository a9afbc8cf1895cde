"""Pass/fail records shared by the verification routines and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: str = "exact"
    detail: str = ""

    @classmethod
    def exact(cls, name: str, passed: bool, detail: str = "") -> "Check":
        return cls(name, bool(passed), "exact", detail)

    @classmethod
    def numeric(cls, name: str, residual, tol, detail: str = "") -> "Check":
        from mpmath import mp, nstr

        return cls(name, bool(residual < tol), nstr(residual, 5, min_fixed=0, max_fixed=0) if residual else "0",
                   detail or f"tol {nstr(tol, 3)}")

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": "pass" if self.passed else "fail", "residual": self.residual}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.checks],
        }
