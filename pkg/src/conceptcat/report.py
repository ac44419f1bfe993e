"""Result records for the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_MESSAGES = 20


@dataclass
class Report:
    """Counts of checked instances and the (first few) failures of one suite."""

    name: str
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    messages: list[str] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def check(self, ok: bool, message: str = "") -> bool:
        self.checked += 1
        if not ok:
            self.fail(message)
        return ok

    def fail(self, message: str) -> None:
        self.failed += 1
        if len(self.messages) < MAX_MESSAGES:
            self.messages.append(message)

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failed += other.failed
        self.skipped += other.skipped
        room = MAX_MESSAGES - len(self.messages)
        self.messages.extend(other.messages[: max(room, 0)])
        for k, v in other.notes.items():
            self.notes[k] = self.notes.get(k, 0) + v if isinstance(v, int) else v
        return self

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f", {self.skipped} skipped" if self.skipped else ""
        return f"{status} {self.name}: {self.checked} checked, {self.failed} failed{extra}"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failed": self.failed,
            "skipped": self.skipped,
            "messages": list(self.messages),
            "notes": dict(self.notes),
        }
