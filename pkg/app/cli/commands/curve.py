"""
curve: export a tone curve as CSV
"""
import click

from app.cli.common import build_curve, curve_options, read_image, write_output
from app.core.config import settings
from app.schemas.run import RunConfig, Subcommand
from app.services.curves import validate_range
from app.services.image_model import compute_histogram
from app.services.result_export import curve_to_csv


@click.command()
@curve_options
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Image supplying the pivot (its mean) and the occupied tones")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None,
              help="CSV file; stdout when omitted")
def curve(a1, a2, alpha, beta, pivot, points, preset, mode, input_path, output_path):
    """Write the 256 lines "tone,value" of a tone curve.

    Without --input, reject mode checks all 256 tones.
    """
    config = RunConfig(
        subcommand=Subcommand.CURVE,
        input_path=input_path,
        output_path=output_path,
        a1=a1, a2=a2, alpha=alpha, beta=beta, pivot=pivot,
        points=points,
        preset=preset,
        mode=mode or settings.RANGE_MODE,
    )
    image = read_image(config.input_path) if config.input_path else None
    histogram = compute_histogram(image) if image is not None else None
    tone_curve = validate_range(build_curve(config, image), histogram, config.mode)
    write_output(config.output_path, curve_to_csv(tone_curve))
