from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Tri:
    """Three-valued answer; Yes and No always name the criterion that fired."""

    verdict: Verdict
    criterion: str
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is not Verdict.UNKNOWN and not self.criterion:
            raise ValueError("a decided verdict needs a criterion")

    @classmethod
    def yes(cls, criterion: str, **details) -> "Tri":
        return cls(Verdict.YES, criterion, details)

    @classmethod
    def no(cls, criterion: str, **details) -> "Tri":
        return cls(Verdict.NO, criterion, details)

    @classmethod
    def unknown(cls, reason: str, **details) -> "Tri":
        return cls(Verdict.UNKNOWN, reason, details)

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN

    def as_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict.value, "criterion": self.criterion, **self.details}
