"""
optimize: exhaustive search for the most visible parametric variation
"""
import click

from app.cli.common import format_value, read_image, write_output
from app.core.config import settings
from app.core.logging import logger
from app.schemas.run import RunConfig, Subcommand
from app.schemas.search import SearchGrid
from app.services.curves import apply_curve, eq7_curve
from app.services.functionals import report
from app.services.image_model import save_pgm
from app.services.optimizer import optimize as run_search
from app.services.result_export import trace_to_csv


@click.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--grid-a1", default=None, help="a1 axis 'start:stop:step' (default from settings, 0:5:0.1)")
@click.option("--grid-a2", default=None, help="a2 axis 'start:stop:step' (default 0:3:0.1)")
@click.option("--grid-alpha", default=None, help="alpha axis 'start:stop:step' (default 0.1:1.0:0.1)")
@click.option("--grid-beta", default=None, help="beta axis 'start:stop:step' (default 0.1:1.0:0.1)")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None,
              help="CSV file receiving every candidate")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None,
              help="Enhanced PGM file")
@click.option("--workers", type=int, default=None, help="Evaluation threads")
def optimize(input_path, grid_a1, grid_a2, grid_alpha, grid_beta, trace_path, output_path, workers):
    """Search the parameter grid for the variation of INPUT_PATH with maximum visibility."""
    config = RunConfig(
        subcommand=Subcommand.OPTIMIZE,
        input_path=input_path,
        output_path=output_path,
        grid_a1=grid_a1, grid_a2=grid_a2, grid_alpha=grid_alpha, grid_beta=grid_beta,
        trace_path=trace_path,
        workers=workers if workers is not None else settings.OPTIMIZER_WORKERS,
    )
    image = read_image(config.input_path)
    grid = SearchGrid.from_strings(config.grid_a1, config.grid_a2, config.grid_alpha, config.grid_beta)

    result = run_search(image, grid, workers=config.workers, record_trace=config.trace_path is not None)
    before = report(image)
    params = result.best_params

    for key, value in (("a1", params.a1), ("a2", params.a2), ("alpha", params.alpha), ("beta", params.beta)):
        click.echo(f"{key}={value:g}")
    click.echo(f"pivot={format_value(params.pivot)}")
    click.echo(f"visibility_before={format_value(before.visibility)}")
    click.echo(f"visibility_after={format_value(result.best_report.visibility)}")
    click.echo(f"variance_before={format_value(before.variance)}")
    click.echo(f"variance_after={format_value(result.best_report.variance)}")
    click.echo(f"candidates_total={result.candidates_total}")
    click.echo(f"candidates_rejected={result.candidates_rejected}")

    if config.output_path:
        write_output(config.output_path, save_pgm(apply_curve(image, eq7_curve(params))))
    if config.trace_path:
        write_output(config.trace_path, trace_to_csv(result))
        logger.info("trace_written", path=config.trace_path, rows=result.candidates_total)
