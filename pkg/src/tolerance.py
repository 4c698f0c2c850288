"""Relative/absolute slack used by every inequality assertion."""
from dataclasses import dataclass

DEFAULT_REL_SLACK = 1e-9
DEFAULT_ABS_SLACK = 1e-12


@dataclass(frozen=True)
class Slack:
    """Tolerance max(rel * scale, abs) where scale is the larger magnitude."""

    rel: float = DEFAULT_REL_SLACK
    abs: float = DEFAULT_ABS_SLACK

    def amount(self, a: float, b: float) -> float:
        return max(self.rel * max(abs(a), abs(b)), self.abs)

    def leq(self, a: float, b: float) -> bool:
        """a <= b up to slack."""
        return a <= b + self.amount(a, b)

    def geq(self, a: float, b: float) -> bool:
        """a >= b up to slack."""
        return a >= b - self.amount(a, b)

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.amount(a, b)

    def to_dict(self) -> dict:
        return {"rel": self.rel, "abs": self.abs}
