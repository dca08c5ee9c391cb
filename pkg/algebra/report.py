"""
Verification reports shared by every checker
"""
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, computed_field


class Status(str, Enum):
    """Outcome of a single check"""
    PASS = "PASS"
    FAIL = "FAIL"


class Witness(BaseModel):
    indices: List[int] = Field(default_factory=list)
    difference: str = ""
    detail: Optional[str] = None


class CheckItem(BaseModel):
    check: str
    status: Status
    witness: Optional[Witness] = None
    note: Optional[str] = None


class Report(BaseModel):
    title: str
    items: List[CheckItem] = Field(default_factory=list)

    @computed_field
    @property
    def overall(self) -> Status:
        if all(item.status == Status.PASS for item in self.items):
            return Status.PASS
        return Status.FAIL

    @property
    def passed(self) -> bool:
        return self.overall == Status.PASS

    def item(self, check: str) -> Optional[CheckItem]:
        for entry in self.items:
            if entry.check == check:
                return entry
        return None

    def status_of(self, check: str) -> Optional[Status]:
        entry = self.item(check)
        return entry.status if entry else None

    def failures(self) -> List[CheckItem]:
        return [i for i in self.items if i.status == Status.FAIL]

    def to_text(self) -> str:
        """Human-readable lines, one per check"""
        mark = "✅" if self.passed else "❌"
        lines = [f"{mark} {self.title}: {self.overall.value}"]
        for entry in self.items:
            sign = "✅" if entry.status == Status.PASS else "❌"
            line = f"  {sign} {entry.check}"
            if entry.witness is not None:
                line += f"  at {tuple(entry.witness.indices)}: {entry.witness.difference}"
                if entry.witness.detail:
                    line += f" ({entry.witness.detail})"
            if entry.note:
                line += f"  [{entry.note}]"
            lines.append(line)
        return "\n".join(lines)


def is_zero(value: Any) -> bool:
    if isinstance(value, (int, Fraction)):
        return value == 0
    return value.is_zero()


class ReportBuilder:
    """Collects check items; a check stops at its first nonzero difference"""

    def __init__(self, title: str):
        self.title = title
        self.items: List[CheckItem] = []

    def check(self, check: str, differences: Iterable[Tuple[Sequence[int], Any]], detail: Optional[str] = None) -> bool:
        """
        Record PASS, or FAIL with the first nonzero difference as witness

        Args:
            check: Check identifier
            differences: (indices, difference) pairs; zero differences pass
            detail: Optional text attached to a failing witness

        Returns:
            True when every difference vanished
        """
        for indices, diff in differences:
            if not is_zero(diff):
                self.items.append(CheckItem(
                    check=check,
                    status=Status.FAIL,
                    witness=Witness(indices=list(indices), difference=str(diff), detail=detail),
                ))
                return False
        self.items.append(CheckItem(check=check, status=Status.PASS))
        return True

    def require(self, check: str, ok: bool, indices: Sequence[int] = (), detail: Optional[str] = None) -> bool:
        if ok:
            self.items.append(CheckItem(check=check, status=Status.PASS))
        else:
            self.items.append(CheckItem(
                check=check, status=Status.FAIL,
                witness=Witness(indices=list(indices), difference="", detail=detail),
            ))
        return ok

    def note(self, check: str, text: str) -> None:
        self.items.append(CheckItem(check=check, status=Status.PASS, note=text))

    def extend(self, prefix: str, report: Report) -> bool:
        for entry in report.items:
            self.items.append(entry.model_copy(update={"check": f"{prefix}.{entry.check}"}))
        return report.passed

    def build(self) -> Report:
        return Report(title=self.title, items=list(self.items))
