"""
Error handling module for pfrees.
Provides the exception hierarchy, centralized error logging and exit codes.
"""
import json
import logging
import traceback
from datetime import datetime
from typing import Any, Dict, Optional


class PfreesError(Exception):
    """Base exception for pfrees errors."""
    pass


class ValidationError(PfreesError):
    """Exception raised for invalid user input."""
    pass


class RingMismatchError(ValidationError):
    """Operands live in different polynomial rings."""
    pass


class ParseError(ValidationError):
    """Text or JSON input does not follow the expected grammar."""
    pass


class UnitIdealError(ValidationError):
    """The ideal is the whole ring where a proper ideal is required."""
    pass


class BudgetExceededError(PfreesError):
    """A wall-clock budget ran out; carries whatever was computed so far."""

    def __init__(self, message: str, partial: Any = None, elapsed_s: float = 0.0):
        super().__init__(message)
        self.partial = partial
        self.elapsed_s = elapsed_s


class InvariantError(PfreesError):
    """An internal invariant was violated."""
    pass


class SearchSpaceExceededError(PfreesError):
    """A combinatorial search was refused because its space is too large."""
    pass


EXIT_PASS = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class ErrorHandler:
    """Centralized error handler with structured logging."""

    LOGGER_NAME = "pfrees"

    def __init__(self):
        self.log_file: Optional[str] = None
        self.configured = False
        # Initialize error counts for monitoring
        self.error_counts: Dict[str, int] = {}

    def configure(self, log_file: Optional[str] = "pfrees.log", level: str = "INFO") -> None:
        """Set up file and console logging for the pfrees logger tree.

        Args:
            log_file: Path of the log file, or None to log to the console only
            level: Logging level name for the file handler
        """
        logger = logging.getLogger(self.LOGGER_NAME)
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
        logger.setLevel(getattr(logging, level.upper(), logging.INFO))
        formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - [%(name)s] - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S',
        )
        if log_file:
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

        # Console handler for immediate feedback
        console = logging.StreamHandler()
        console.setLevel(logging.WARNING)
        console.setFormatter(formatter)
        logger.addHandler(console)
        self.log_file = log_file
        self.configured = True

    def handle_error(self, error: Exception, context: Optional[Dict] = None) -> str:
        """Log an error with its context and return a user-facing message.

        Args:
            error: The exception that occurred
            context: Optional dictionary with contextual information

        Returns:
            str: User-friendly error message
        """
        error_type = error.__class__.__name__
        self.error_counts[error_type] = self.error_counts.get(error_type, 0) + 1

        friendly_messages = {
            "ValidationError": "Invalid input",
            "RingMismatchError": "Operands belong to different rings",
            "ParseError": "Could not parse input",
            "UnitIdealError": "The ideal is the unit ideal",
            "BudgetExceededError": "Time budget exceeded",
            "InvariantError": "Internal invariant violated",
            "SearchSpaceExceededError": "Search space too large",
            "ValueError": "Invalid value provided",
            "KeyError": "Required information is missing",
        }
        friendly_message = friendly_messages.get(error_type, "An unexpected error occurred")

        error_details = {
            "time": datetime.now().isoformat(),
            "type": error_type,
            "message": str(error),
            "context": context or {},
        }
        # bad input needs no trace
        if not isinstance(error, ValidationError):
            error_details["stack_trace"] = traceback.format_exc()
        if isinstance(error, BudgetExceededError):
            error_details["elapsed_s"] = round(error.elapsed_s, 3)

        logger = logging.getLogger(self.LOGGER_NAME)
        if isinstance(error, (ValidationError, BudgetExceededError)):
            logger.warning(json.dumps(error_details, default=str))
        else:
            logger.error(json.dumps(error_details, default=str))

        if self.error_counts[error_type] >= 5:
            logger.critical(f"Frequent {error_type} errors detected: {self.error_counts[error_type]} occurrences")

        return f"Error: {friendly_message} - {str(error)}"

    def log_warning(self, message: str, context: Optional[Dict] = None) -> None:
        """Log a structured warning."""
        warning_details = {
            "time": datetime.now().isoformat(),
            "message": message,
            "context": context or {},
        }
        logging.getLogger(self.LOGGER_NAME).warning(json.dumps(warning_details, default=str))

    @staticmethod
    def exit_code(error: BaseException) -> int:
        """Map an exception to the command-line exit code."""
        if isinstance(error, ValidationError):
            return EXIT_USAGE
        if isinstance(error, BudgetExceededError):
            return EXIT_BUDGET
        return EXIT_INTERNAL


error_handler = ErrorHandler()
