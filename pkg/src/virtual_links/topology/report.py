"""Validation reports shared by the kernel checkers."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ValidationIssue:
    """A single violated invariant."""

    code: str  # short machine-readable rule name, e.g. "duplicate-over"
    message: str
    label: int | None = None


@dataclass
class ValidationReport:
    """Result of a validation pass; empty means every invariant holds."""

    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Check if no issue was found."""
        return not self.issues

    def __len__(self) -> int:
        return len(self.issues)

    def add(self, code: str, message: str, label: int | None = None) -> None:
        """Record a violation."""
        self.issues.append(ValidationIssue(code=code, message=message, label=label))

    def codes(self) -> list[str]:
        """Rule names of all recorded issues, in order."""
        return [issue.code for issue in self.issues]
