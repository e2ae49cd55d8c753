"""
Input validation and parsing utilities for command-line and settings values
"""
import math
import logging
import re
from typing import List, Tuple

from app.core.exceptions import (
    ValidationError,
    CurveDefinitionError,
    GridSpecificationError,
)

logger = logging.getLogger(__name__)


RANGE_MODES = ("reject", "clamp")
GREY_CONVERSIONS = ("luma", "average")


class InputValidator:
    """Validation and parsing of the toolkit's text formats"""

    # "start:stop:step" with plain decimal numbers
    AXIS_PATTERN = re.compile(r"^\s*([^:]+):([^:]+):([^:]+)\s*$")

    @staticmethod
    def parse_number(value: str, field: str) -> float:
        """Parse a finite real number"""
        try:
            number = float(value.strip())
        except (ValueError, AttributeError):
            raise ValidationError(f"Expected a number for {field}, got {value!r}", field=field)
        if not math.isfinite(number):
            raise ValidationError(f"{field} must be finite, got {value!r}", field=field)
        return number

    @staticmethod
    def parse_axis(text: str, axis: str = "axis") -> Tuple[float, float, float]:
        """Parse a search axis "start:stop:step" into a validated triple"""

        if not isinstance(text, str):
            raise GridSpecificationError(f"Axis specification must be a string, got {type(text).__name__}", axis=axis)

        match = InputValidator.AXIS_PATTERN.match(text)
        if not match:
            raise GridSpecificationError(f"Malformed axis specification {text!r}", axis=axis)

        try:
            start, stop, step = (float(part) for part in match.groups())
        except ValueError:
            raise GridSpecificationError(f"Non-numeric axis specification {text!r}", axis=axis)

        if not all(math.isfinite(v) for v in (start, stop, step)):
            raise GridSpecificationError(f"Axis bounds must be finite: {text!r}", axis=axis)
        if step <= 0:
            raise GridSpecificationError(f"Axis step must be positive: {text!r}", axis=axis)
        if start > stop:
            raise GridSpecificationError(f"Axis start exceeds stop: {text!r}", axis=axis)

        return start, stop, step

    @staticmethod
    def parse_control_points(text: str) -> List[Tuple[float, float]]:
        """Parse control points "t0,v0;t1,v1;..." into (tone, value) pairs"""

        if not text or not isinstance(text, str):
            raise CurveDefinitionError("Control points must be a non-empty string")

        points = []
        for chunk in text.strip().strip(";").split(";"):
            pair = chunk.split(",")
            if len(pair) != 2:
                raise CurveDefinitionError(f"Malformed control point {chunk!r}", points=text)
            try:
                tone, value = float(pair[0]), float(pair[1])
            except ValueError:
                raise CurveDefinitionError(f"Non-numeric control point {chunk!r}", points=text)
            points.append((tone, value))

        return points

    @staticmethod
    def validate_range_mode(mode: str) -> str:
        """Validate the out-of-range handling mode"""
        normalized = (mode or "").strip().lower()
        if normalized not in RANGE_MODES:
            raise ValidationError(
                f"Unknown range mode {mode!r}. Use one of: {', '.join(RANGE_MODES)}",
                field="mode"
            )
        return normalized

    @staticmethod
    def validate_grey_conversion(conversion: str) -> str:
        """Validate the colour-to-grey conversion name"""
        normalized = (conversion or "").strip().lower()
        if normalized not in GREY_CONVERSIONS:
            raise ValidationError(
                f"Unknown grey conversion {conversion!r}. Use one of: {', '.join(GREY_CONVERSIONS)}",
                field="conversion"
            )
        return normalized
