"""
Pydantic schemas for the exhaustive parameter search grid
"""
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings
from app.core.exceptions import GridSpecificationError
from app.core.validation import InputValidator
from app.schemas.params import TransformParams

# Slack on span/step so that a step dividing the span keeps the stop value
_SPAN_SLACK = 1e-9
# Lattice values are rounded to this many decimals
_LATTICE_DECIMALS = 12


class AxisRange(BaseModel):
    """One search axis: start, stop (inclusive when the step divides the span), step"""
    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    step: float = Field(..., gt=0)

    @model_validator(mode="after")
    def check_bounds(self) -> "AxisRange":
        if self.start > self.stop:
            raise GridSpecificationError(f"Axis start {self.start:g} exceeds stop {self.stop:g}")
        return self

    @classmethod
    def parse(cls, text: str, axis: str = "axis") -> "AxisRange":
        start, stop, step = InputValidator.parse_axis(text, axis=axis)
        return cls(start=start, stop=stop, step=step)

    @property
    def count(self) -> int:
        return math.floor((self.stop - self.start) / self.step + _SPAN_SLACK) + 1

    def values(self) -> np.ndarray:
        """Lattice values start + k*step, never accumulated by repeated addition"""
        k = np.arange(self.count, dtype=np.float64)
        return np.round(self.start + k * self.step, _LATTICE_DECIMALS)

    def __str__(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.step:g}"


class SearchGrid(BaseModel):
    """Lattice over (a1, a2, alpha, beta)"""
    model_config = ConfigDict(frozen=True)

    a1_range: AxisRange
    a2_range: AxisRange
    alpha_range: AxisRange
    beta_range: AxisRange

    @model_validator(mode="after")
    def check_domains(self) -> "SearchGrid":
        if self.a1_range.start < 0 or self.a2_range.start < 0:
            raise GridSpecificationError("Amplitude axes a1 and a2 must be non-negative")
        if self.alpha_range.start <= 0 or self.beta_range.start <= 0:
            raise GridSpecificationError("Exponent axes alpha and beta must be positive")
        return self

    @classmethod
    def from_strings(
        cls,
        a1: Optional[str] = None,
        a2: Optional[str] = None,
        alpha: Optional[str] = None,
        beta: Optional[str] = None,
    ) -> "SearchGrid":
        """Build from axis strings, falling back to the configured defaults"""
        return cls(
            a1_range=AxisRange.parse(a1 or settings.GRID_A1, axis="a1"),
            a2_range=AxisRange.parse(a2 or settings.GRID_A2, axis="a2"),
            alpha_range=AxisRange.parse(alpha or settings.GRID_ALPHA, axis="alpha"),
            beta_range=AxisRange.parse(beta or settings.GRID_BETA, axis="beta"),
        )

    @classmethod
    def default(cls) -> "SearchGrid":
        return cls.from_strings()

    @classmethod
    def single_point(cls, a1: float, a2: float, alpha: float, beta: float) -> "SearchGrid":
        def point(value: float) -> AxisRange:
            return AxisRange(start=value, stop=value, step=1.0)

        return cls(a1_range=point(a1), a2_range=point(a2), alpha_range=point(alpha), beta_range=point(beta))

    def axis_values(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (
            self.a1_range.values(),
            self.a2_range.values(),
            self.alpha_range.values(),
            self.beta_range.values(),
        )

    @property
    def shape(self) -> Tuple[int, int, int, int]:
        return (self.a1_range.count, self.a2_range.count, self.alpha_range.count, self.beta_range.count)

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def contains(self, params: TransformParams, atol: float = 1e-12) -> bool:
        """Whether (a1, a2, alpha, beta) lies on the lattice within atol"""
        return all(
            bool(np.any(np.abs(values - target) <= atol))
            for values, target in zip(self.axis_values(), params.key)
        )
