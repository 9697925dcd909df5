"""Result records shared by the exhaustive checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of an exhaustive check; serialises to the sweep JSON schema."""

    lemma: str
    group: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    skipped: str | None = None

    @property
    def passed(self) -> bool:
        return self.skipped is None and not self.counterexamples

    def to_json(self) -> dict:
        out = {
            "lemma": self.lemma,
            "group": self.group,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
        }
        if self.skipped is not None:
            out["skipped"] = self.skipped
        return out
