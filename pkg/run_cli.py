"""
Script to run the visibility command-line tool
"""
import sys

from app.core.error_handlers import handle_exception
from app.core.exceptions import ConfigurationError

if __name__ == "__main__":
    try:
        from app.cli.main import cli
    except ConfigurationError as exc:
        sys.exit(handle_exception(exc))
    cli(prog_name="visibility")
