"""
Wall-clock budgets for pfrees.
Long computations poll a Budget and stop with a typed failure once it runs out.
"""
import time
from typing import Any, Optional, Union

from .error_handler import BudgetExceededError, ValidationError


class Budget:
    """A wall-clock allowance measured from construction."""

    def __init__(self, seconds: Optional[float] = None):
        """Initialize the budget.

        Args:
            seconds: Allowed wall-clock seconds; None means unlimited
        """
        self.seconds = seconds
        self._validate_values()
        self.started = time.monotonic()

    def _validate_values(self):
        """Validate budget values."""
        if self.seconds is not None and self.seconds <= 0:
            raise ValidationError(f"Invalid budget value: {self.seconds}")

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls(None)

    @classmethod
    def coerce(cls, value: Union["Budget", float, int, None]) -> "Budget":
        """Accept a Budget, a number of seconds, or None."""
        if isinstance(value, Budget):
            return value
        return cls(value)

    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def elapsed_ms(self) -> int:
        return int(self.elapsed() * 1000)

    def exhausted(self) -> bool:
        return self.seconds is not None and self.elapsed() > self.seconds

    def check(self, partial: Any = None, what: str = "computation") -> None:
        """Raise BudgetExceededError once the allowance is spent.

        Args:
            partial: State to attach to the error for the caller
            what: Name of the computation for the error message

        Raises:
            BudgetExceededError: If the budget is exhausted
        """
        if self.exhausted():
            elapsed = self.elapsed()
            raise BudgetExceededError(
                f"{what} exceeded budget of {self.seconds}s after {elapsed:.2f}s",
                partial=partial,
                elapsed_s=elapsed,
            )

    def __repr__(self):
        return f"Budget(seconds={self.seconds})"
