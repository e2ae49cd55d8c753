"""
Shared helpers for the command-line subcommands
"""
import logging
from pathlib import Path
from typing import Optional, Union

import click

from app.core.config import settings
from app.core.validation import InputValidator
from app.schemas.params import ControlPointCurve, TransformParams
from app.schemas.reports import VisibilityReport
from app.schemas.run import RunConfig
from app.services.curves import ToneCurve, curve_from_points, eq7_curve, preset_curve
from app.services.functionals import brightness_mean
from app.services.image_model import BrightnessImage, load_pnm

logger = logging.getLogger(__name__)


def read_image(path: str) -> BrightnessImage:
    """Read a PGM/PPM file as a brightness image"""
    data = Path(path).read_bytes()
    image = load_pnm(data, conversion=settings.GREY_CONVERSION)
    logger.info(f"Read {path}: {image.width}x{image.height}")
    return image


def write_output(path: Optional[str], content: Union[bytes, str]):
    """Write content to path, or text content to stdout when no path is given"""
    if path is None:
        click.echo(content, nl=False)
        return
    target = Path(path)
    if isinstance(content, bytes):
        target.write_bytes(content)
    else:
        target.write_text(content, encoding="utf-8", newline="\n")
    logger.info(f"Wrote {path}")


def format_value(value: float) -> str:
    return format(value, f"#.{settings.REPORT_SIGNIFICANT_DIGITS}g")


def echo_report(report: VisibilityReport, suffix: str = ""):
    """Print a report as key=value lines"""
    for key, text in report.as_lines(settings.REPORT_SIGNIFICANT_DIGITS).items():
        click.echo(f"{key}{suffix}={text}")


def build_curve(config: RunConfig, image: Optional[BrightnessImage]) -> ToneCurve:
    """Tone curve selected by the parameter, --points or --preset options"""
    if config.has_eq7_params:
        if config.pivot is not None:
            pivot = config.pivot
            if image is not None:
                logger.warning(f"Pivot overridden: {pivot:g} instead of the image mean {brightness_mean(image):g}")
        else:
            pivot = brightness_mean(image)
        params = TransformParams(a1=config.a1, a2=config.a2, alpha=config.alpha, beta=config.beta, pivot=pivot)
        return eq7_curve(params)
    if config.points is not None:
        return curve_from_points(ControlPointCurve.parse(config.points))
    return preset_curve(config.preset)


def finite_number(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[float]:
    """Option callback: a finite real number, or None when the option is absent"""
    if value is None:
        return None
    return InputValidator.parse_number(value, field=param.name)


def curve_options(command):
    """Options selecting a tone curve"""
    options = [
        click.option("--a1", default=None, callback=finite_number, help="Darkening amplitude (tones <= pivot)"),
        click.option("--a2", default=None, callback=finite_number, help="Brightening amplitude (tones > pivot)"),
        click.option("--alpha", default=None, callback=finite_number, help="Darkening exponent"),
        click.option("--beta", default=None, callback=finite_number, help="Brightening exponent"),
        click.option("--pivot", default=None, callback=finite_number,
                     help="Branch point; defaults to the input image mean (override is for experimentation)"),
        click.option("--points", type=str, default=None, help="Control points 't0,v0;t1,v1;...;255,v'"),
        click.option("--preset", type=str, default=None, help="Named control-point curve"),
        click.option("--mode", type=click.Choice(["reject", "clamp"]), default=None,
                     help="Out-of-range brightness handling"),
    ]
    for option in reversed(options):
        command = option(command)
    return command
