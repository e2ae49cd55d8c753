"""
Error handlers mapping exceptions to command-line messages and exit codes
"""
import logging
import traceback
from typing import Callable, Dict, Optional, Type

import click
from pydantic import ValidationError as PydanticValidationError

from app.core.exceptions import VisibilityToolkitError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2


def create_error_message(
    error_code: str,
    message: str,
    suggestions: Optional[list] = None,
) -> str:
    """Create standardized error text for the error stream"""
    lines = [f"error[{error_code}]: {message}"]
    for suggestion in suggestions or []:
        lines.append(f"  hint: {suggestion}")
    return "\n".join(lines)


def toolkit_exception_handler(exc: VisibilityToolkitError) -> int:
    """Handler for VisibilityToolkitError and its subclasses"""
    logger.error(
        f"{exc.error_code} - {exc.message}",
        extra={"error_code": exc.error_code, "details": exc.details}
    )
    click.echo(create_error_message(exc.error_code, exc.message, exc.suggestions), err=True)
    return exc.exit_code


def pydantic_validation_handler(exc: PydanticValidationError) -> int:
    """Handler for pydantic model validation errors"""
    problems = [
        f"{'.'.join(str(part) for part in error['loc']) or 'value'}: {error['msg']}"
        for error in exc.errors()
    ]
    logger.error(f"Validation failed: {problems}")
    click.echo(create_error_message("VALIDATION_ERROR", "; ".join(problems)), err=True)
    return EXIT_USAGE


def os_error_handler(exc: OSError) -> int:
    """Handler for file system errors"""
    logger.error(f"I/O error: {exc}")
    click.echo(create_error_message("IO_ERROR", str(exc)), err=True)
    return EXIT_UNEXPECTED


def general_exception_handler(exc: Exception) -> int:
    """Handler for unexpected exceptions"""
    logger.error(
        f"Unexpected error: {type(exc).__name__}: {exc}",
        extra={"traceback": traceback.format_exc()}
    )
    click.echo(create_error_message("INTERNAL_ERROR", f"{type(exc).__name__}: {exc}"), err=True)
    return EXIT_UNEXPECTED


EXCEPTION_HANDLERS: Dict[Type[BaseException], Callable] = {
    VisibilityToolkitError: toolkit_exception_handler,
    PydanticValidationError: pydantic_validation_handler,
    OSError: os_error_handler,
    Exception: general_exception_handler,
}


def handle_exception(exc: Exception) -> int:
    """Dispatch to the most specific registered handler; return the exit code"""
    for exc_type in type(exc).__mro__:
        handler = EXCEPTION_HANDLERS.get(exc_type)
        if handler is not None:
            return handler(exc)
    return general_exception_handler(exc)
