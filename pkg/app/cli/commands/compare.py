"""
compare: variance and visibility of several variations of one image
"""
from typing import Tuple

import click

from app.cli.common import format_value, read_image
from app.core.config import settings
from app.schemas.params import ControlPointCurve
from app.schemas.run import RunConfig, Subcommand
from app.services.curves import CURVE_PRESETS, curve_from_points, preset_curve
from app.services.functionals import compare_curves


@click.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--preset", "presets", multiple=True, type=click.Choice(list(CURVE_PRESETS)),
              help="Preset to include (repeatable); all presets when neither --preset nor --points is given")
@click.option("--points", "points", multiple=True, help="Control-point curve to include (repeatable)")
@click.option("--mode", type=click.Choice(["reject", "clamp"]), default=None,
              help="Out-of-range brightness handling")
def compare(input_path: str, presets: Tuple[str, ...], points: Tuple[str, ...], mode: str):
    """Print variance and visibility of INPUT_PATH under several tone curves."""
    config = RunConfig(subcommand=Subcommand.COMPARE, input_path=input_path, mode=mode or settings.RANGE_MODE)
    image = read_image(config.input_path)

    if not presets and not points:
        presets = tuple(CURVE_PRESETS)
    curves = [preset_curve(name) for name in presets]
    curves += [curve_from_points(ControlPointCurve.parse(text)) for text in points]

    for comparison in compare_curves(image, curves, config.mode):
        click.echo(
            f"curve={comparison.label} "
            f"variance={format_value(comparison.report.variance)} "
            f"visibility={format_value(comparison.report.visibility)} "
            f"accepted={'true' if comparison.accepted else 'false'}"
        )
