"""
analyze: functional values of an image
"""
import click

from app.cli.common import echo_report, read_image
from app.schemas.run import RunConfig, Subcommand
from app.services.functionals import report


@click.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
def analyze(input_path: str):
    """Print mean, variance, sub-means, subset counts and visibility of INPUT_PATH."""
    config = RunConfig(subcommand=Subcommand.ANALYZE, input_path=input_path)
    image = read_image(config.input_path)
    echo_report(report(image))
