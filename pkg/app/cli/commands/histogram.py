"""
histogram: pixel counts per tone as CSV
"""
import click

from app.cli.common import read_image, write_output
from app.schemas.run import RunConfig, Subcommand
from app.services.image_model import compute_histogram
from app.services.result_export import histogram_to_csv


@click.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None,
              help="CSV file; stdout when omitted")
def histogram(input_path: str, output_path: str):
    """Write 256 lines "tone,count" for INPUT_PATH."""
    config = RunConfig(subcommand=Subcommand.HISTOGRAM, input_path=input_path, output_path=output_path)
    image = read_image(config.input_path)
    write_output(config.output_path, histogram_to_csv(compute_histogram(image)))
