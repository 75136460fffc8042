"""
Argument validation utilities for pfrees.
"""
from typing import Any, Iterable

from .error_handler import RingMismatchError, ValidationError


class Validator:
    """Argument validation utility class."""

    @staticmethod
    def validate_integer(value: Any, name: str) -> None:
        """Validate that a value is a plain integer."""
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{name} must be an integer")

    @staticmethod
    def validate_nonnegative(value: Any, name: str) -> None:
        """Validate non-negative integers."""
        Validator.validate_integer(value, name)
        if value < 0:
            raise ValidationError(f"{name} cannot be negative")

    @staticmethod
    def validate_range(value: Any, min_val: int, max_val: int, name: str) -> None:
        """Validate a value is within range.

        Args:
            value: Value to validate
            min_val: Minimum allowed value
            max_val: Maximum allowed value
            name: Name of the value being validated

        Raises:
            ValidationError: If validation fails
        """
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"{name} must be a number")
        if value < min_val or value > max_val:
            raise ValidationError(f"{name} must be between {min_val} and {max_val}")

    @staticmethod
    def validate_odd(value: Any, name: str, minimum: int = 1) -> None:
        """Validate an odd integer of at least ``minimum``.

        Raises:
            ValidationError: If the value is even, too small or not an integer
        """
        Validator.validate_integer(value, name)
        if value % 2 == 0:
            raise ValidationError(f"{name} must be odd, got {value}")
        if value < minimum:
            raise ValidationError(f"{name} must be at least {minimum}, got {value}")

    @staticmethod
    def validate_even(value: Any, name: str) -> None:
        """Validate an even integer."""
        Validator.validate_integer(value, name)
        if value % 2 != 0:
            raise ValidationError(f"{name} must be even, got {value}")

    @staticmethod
    def validate_same_ring(a: Any, b: Any) -> None:
        """Validate that two ring-bound values share one ring."""
        if a.ring is not b.ring and a.ring != b.ring:
            raise RingMismatchError(
                f"ring mismatch: {list(a.ring.vars)} vs {list(b.ring.vars)}"
            )

    @staticmethod
    def validate_homogeneous(polys: Iterable[Any], name: str = "generators") -> None:
        """Validate that every polynomial is homogeneous in the total grading."""
        for p in polys:
            if not p.is_homogeneous():
                raise ValidationError(f"{name} must be homogeneous, got {p}")

    @staticmethod
    def validate_equigenerated(polys: Iterable[Any], name: str = "generators") -> int:
        """Validate that all nonzero polynomials are homogeneous of one degree.

        Returns:
            int: The common degree
        """
        degrees = set()
        for p in polys:
            if p.is_zero():
                continue
            if not p.is_homogeneous():
                raise ValidationError(f"{name} must be homogeneous, got {p}")
            degrees.add(p.total_degree())
        if len(degrees) > 1:
            raise ValidationError(f"{name} must share one degree, got degrees {sorted(degrees)}")
        if not degrees:
            raise ValidationError(f"{name} must contain a nonzero polynomial")
        return degrees.pop()
