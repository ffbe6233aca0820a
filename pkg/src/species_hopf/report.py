from __future__ import annotations

from dataclasses import dataclass, field

MAX_LISTED = 20


@dataclass
class Report:
    """Outcome of a verification run: number of identities checked and failures."""

    name: str
    checks: int = 0
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, condition: bool, description: str) -> bool:
        self.checks += 1
        if not condition:
            self.violations.append(description)
        return condition

    def note(self, text: str) -> None:
        self.notes.append(text)

    def absorb(self, other: "Report") -> "Report":
        self.checks += other.checks
        self.violations.extend(f"{other.name}: {v}" for v in other.violations)
        self.notes.extend(other.notes)
        return self

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checks} checks, {len(self.violations)} violations"

    def lines(self) -> list[str]:
        out = [self.summary()]
        out.extend(f"  note: {n}" for n in self.notes)
        shown = self.violations[:MAX_LISTED]
        out.extend(f"  violation: {v}" for v in shown)
        if len(self.violations) > MAX_LISTED:
            out.append(f"  ... {len(self.violations) - MAX_LISTED} more")
        return out
