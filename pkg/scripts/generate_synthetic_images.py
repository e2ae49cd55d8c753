#!/usr/bin/env python3
"""
Synthetic image generation for visibility experiments.

Writes PGM files that stand in for real photographs:
- low_contrast.pgm: grey and dull, tones in [90, 160] from an integer texture
  with a faint figure slightly brighter than the ground
- four_tone.pgm: black, white and two greys in vertical bands
- two_tone.pgm: checkerboard of tones 100 and 200
"""

import logging
import os
import sys
from pathlib import Path

import numpy as np

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from app.services.image_model import BrightnessImage, save_pgm

# Setup logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

DEFAULT_SIZE = 256


class SyntheticImageGenerator:
    """Generates deterministic test images"""

    def __init__(self, size: int = DEFAULT_SIZE):
        self.size = size

    def low_contrast(self) -> BrightnessImage:
        """Textured ground in [90, 150] with a ring-shaped figure lifted by 10 tones

        The texture is integer arithmetic on the pixel coordinates, so the image is
        the same on every platform.
        """
        y, x = np.mgrid[0:self.size, 0:self.size]
        ground = 90 + (37 * x + 101 * y + 13 * ((x * y) % 53)) % 61
        radius = np.hypot(x - self.size / 2, y - self.size / 2)
        figure = (radius > self.size * 0.2) & (radius < self.size * 0.3)
        return BrightnessImage(np.where(figure, ground + 10, ground))

    def four_tone(self) -> BrightnessImage:
        bands = np.array([0, 85, 170, 255])
        columns = np.arange(self.size) * len(bands) // self.size
        return BrightnessImage(np.tile(bands[columns], (self.size, 1)))

    def two_tone(self) -> BrightnessImage:
        y, x = np.mgrid[0:self.size, 0:self.size]
        return BrightnessImage(np.where((x // 8 + y // 8) % 2 == 0, 100, 200))

    def generate_all(self, output_dir: Path) -> bool:
        output_dir.mkdir(parents=True, exist_ok=True)
        images = {
            "low_contrast.pgm": self.low_contrast(),
            "four_tone.pgm": self.four_tone(),
            "two_tone.pgm": self.two_tone(),
        }
        for name, image in images.items():
            (output_dir / name).write_bytes(save_pgm(image))
            logger.info(f"Wrote {output_dir / name} ({image.width}x{image.height})")
        return True


def main() -> bool:
    """Main function to generate the synthetic images."""
    output_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("samples")
    try:
        return SyntheticImageGenerator().generate_all(output_dir)
    except OSError as e:
        logger.error(f"Image generation failed: {e}")
        return False


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
