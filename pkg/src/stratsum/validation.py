"""Shared validation report type used by all structural checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ValidationReport:
    """Accumulates invariant violations as (code, detail) entries.

    An empty report means the checked object is valid.  Checkers never
    raise on bad data; every failure becomes an entry.
    """

    entries: list[tuple[str, str]] = field(default_factory=list)

    def add(self, code: str, detail: str) -> None:
        self.entries.append((code, detail))

    @property
    def ok(self) -> bool:
        return not self.entries

    def codes(self) -> set[str]:
        return {code for code, _ in self.entries}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{code}: {detail}" for code, detail in self.entries)
