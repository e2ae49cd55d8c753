"""
apply: transform an image with a tone curve
"""
import click

from app.cli.common import build_curve, curve_options, echo_report, read_image, write_output
from app.core.config import settings
from app.schemas.run import RunConfig, Subcommand
from app.services.curves import apply_curve, validate_range
from app.services.functionals import report
from app.services.image_model import compute_histogram, save_pgm


@click.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@curve_options
@click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None,
              help="Transformed PGM file")
def apply(input_path, a1, a2, alpha, beta, pivot, points, preset, mode, output_path):
    """Apply a parametric or control-point curve to INPUT_PATH and print before/after reports."""
    config = RunConfig(
        subcommand=Subcommand.APPLY,
        input_path=input_path,
        output_path=output_path,
        a1=a1, a2=a2, alpha=alpha, beta=beta, pivot=pivot,
        points=points,
        preset=preset,
        mode=mode or settings.RANGE_MODE,
    )
    image = read_image(config.input_path)
    curve = validate_range(build_curve(config, image), compute_histogram(image), config.mode)
    transformed = apply_curve(image, curve)
    write_output(config.output_path, save_pgm(transformed))

    echo_report(report(image), suffix="_before")
    echo_report(report(transformed), suffix="_after")
