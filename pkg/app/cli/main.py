"""
Command-line entry point for the Image Visibility Toolkit
"""
from typing import Optional

import click

from app.cli.commands.analyze import analyze
from app.cli.commands.apply import apply
from app.cli.commands.compare import compare
from app.cli.commands.curve import curve
from app.cli.commands.histogram import histogram
from app.cli.commands.optimize import optimize
from app.core.error_handlers import handle_exception
from app.core.logging import configure_logging


class ToolkitGroup(click.Group):
    """Group that turns toolkit exceptions into messages and exit codes"""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (click.exceptions.ClickException, click.exceptions.Exit, click.exceptions.Abort):
            raise
        except Exception as exc:
            ctx.exit(handle_exception(exc))


@click.group(
    cls=ToolkitGroup,
    commands=[
        analyze,
        apply,
        curve,
        optimize,
        histogram,
        compare,
    ]
)
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default from settings)")
@click.option("--json-logs/--console-logs", default=None, help="Log renderer (default: console on a TTY)")
def cli(log_level: Optional[str], json_logs: Optional[bool]):
    """
    Tone-curve variations of grey-tone images and the visibility functional.
    Check the help for each sub-command for details.
    """
    configure_logging(level=log_level, json_logs=json_logs)


if __name__ == "__main__":
    cli()
