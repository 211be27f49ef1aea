"""Check results and their JSON / CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

MAX_WITNESSES = 10


@dataclass
class CheckResult:
    check: str
    N: int | None = None
    trials: int = 0
    violations: list = field(default_factory=list)
    unresolved: int = 0
    info: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def violate(self, **witness) -> None:
        self.violations.append(witness)

    def to_dict(self) -> dict:
        witnesses = sorted(self.violations, key=lambda w: json.dumps(w, sort_keys=True))
        out = {"check": self.check, "N": self.N, "trials": self.trials,
               "violations": len(self.violations), "unresolved": self.unresolved,
               "pass": self.passed}
        if witnesses:
            out["witness"] = witnesses[0]
            out["witnesses"] = witnesses[:MAX_WITNESSES]
        if self.info:
            out["info"] = self.info
        if self.rows:
            out["rows"] = self.rows
        return out


@dataclass
class Report:
    title: str
    header: dict = field(default_factory=dict)
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def violations(self) -> int:
        return sum(len(r.violations) for r in self.results)

    def get(self, check: str) -> CheckResult:
        for r in self.results:
            if r.check == check:
                return r
        raise KeyError(check)

    def to_dict(self) -> dict:
        return {"title": self.title, "header": self.header,
                "pass": self.passed, "violations": self.violations,
                "checks": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        """One line per row-carrying cell, else one per check."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cell", "premise_index", "conclusion_index", "pass"])
        for r in self.results:
            if r.rows:
                for row in r.rows:
                    w.writerow([f"{r.check}/{row['cell']}", _blank(row.get("premise_index")),
                                _blank(row.get("conclusion_index")), int(row["pass"])])
            else:
                w.writerow([r.check, "", "", int(r.passed)])
        return buf.getvalue()


def _blank(v):
    return "" if v is None else v
