from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Precision:
    """Working precision in bits, doubled on demand up to ``cap``."""

    working: int = 64
    cap: int = 4096

    def __post_init__(self):
        if self.working < 1 or self.working > self.cap:
            raise ValueError(f"need 1 <= working ({self.working}) <= cap ({self.cap})")

    def escalate(self) -> Precision | None:
        if self.working >= self.cap:
            return None
        return Precision(min(2 * self.working, self.cap), self.cap)

    def ladder(self) -> Iterator[int]:
        """Working bits: working, 2*working, ... , cap."""
        p: Precision | None = self
        while p is not None:
            yield p.working
            p = p.escalate()


DEFAULT = Precision(64, 4096)


class PrecisionExhausted(ArithmeticError):
    def __init__(self, cap: int, what: str = ""):
        super().__init__(f"precision cap {cap} bits exhausted{': ' + what if what else ''}")
        self.cap = cap
