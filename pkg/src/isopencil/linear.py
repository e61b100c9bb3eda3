"""Integer linear forms in one parameter, used for family columns."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["LinearForm"]


@dataclass(frozen=True, order=True)
class LinearForm:
    slope: int
    intercept: int

    def __call__(self, m: int) -> int:
        return self.slope * m + self.intercept

    def shift(self, delta: int) -> "LinearForm":
        """The same form with the parameter replaced by (parameter + delta)."""
        return LinearForm(self.slope, self.intercept + self.slope * delta)

    def render(self, var: str = "m") -> str:
        if self.slope == 0:
            return str(self.intercept)
        if self.slope == 1:
            head = var
        elif self.slope == -1:
            head = f"-{var}"
        else:
            head = f"{self.slope}{var}"
        if self.intercept > 0:
            return f"{head}+{self.intercept}"
        if self.intercept < 0:
            return f"{head}{self.intercept}"
        return head
