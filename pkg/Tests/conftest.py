"""
Shared fixtures for the visibility toolkit test suite
"""
import os
import re
import sys
from pathlib import Path
from typing import Callable, Dict, Sequence

import numpy as np
import pytest
from click.testing import CliRunner

# Add the project root to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from app.services.image_model import BrightnessImage, save_pgm  # noqa: E402

KEY_VALUE_LINE = re.compile(r"^([a-z_0-9]+)=(\S+)$")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def make_image() -> Callable[..., BrightnessImage]:
    """Build an image from a flat sample list and its width"""
    def _make(samples: Sequence[float], width: int = None) -> BrightnessImage:
        samples = list(samples)
        width = width or len(samples)
        return BrightnessImage.from_samples(width, len(samples) // width, samples)
    return _make


@pytest.fixture
def write_pgm(tmp_path: Path) -> Callable[..., Path]:
    """Write an image as a binary PGM file under tmp_path"""
    def _write(image: BrightnessImage, name: str = "input.pgm") -> Path:
        path = tmp_path / name
        path.write_bytes(save_pgm(image))
        return path
    return _write


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def parse_key_values(output: str) -> Dict[str, str]:
    """Collect the key=value result lines of a command's output"""
    values = {}
    for line in output.splitlines():
        match = KEY_VALUE_LINE.match(line.strip())
        if match:
            values[match.group(1)] = match.group(2)
    return values


def random_integer_image(rng: np.random.Generator, max_side: int = 32) -> BrightnessImage:
    height, width = rng.integers(1, max_side + 1, size=2)
    low, high = sorted(rng.integers(0, 256, size=2))
    return BrightnessImage(rng.integers(low, high + 1, size=(height, width)))
