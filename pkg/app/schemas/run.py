"""
Pydantic schema for one command-line invocation
"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.exceptions import ValidationError
from app.core.validation import InputValidator


class Subcommand(str, Enum):
    ANALYZE = "analyze"
    APPLY = "apply"
    CURVE = "curve"
    OPTIMIZE = "optimize"
    HISTOGRAM = "histogram"
    COMPARE = "compare"


class RunConfig(BaseModel):
    """Validated options of a subcommand"""
    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    input_path: Optional[str] = None
    output_path: Optional[str] = None

    # parametric curve
    a1: Optional[float] = Field(None, ge=0)
    a2: Optional[float] = Field(None, ge=0)
    alpha: Optional[float] = Field(None, gt=0)
    beta: Optional[float] = Field(None, gt=0)
    pivot: Optional[float] = Field(None, ge=0, le=255)

    # freehand curve
    points: Optional[str] = None
    preset: Optional[str] = None

    # search grid axes, "start:stop:step"
    grid_a1: Optional[str] = None
    grid_a2: Optional[str] = None
    grid_alpha: Optional[str] = None
    grid_beta: Optional[str] = None

    mode: str = "reject"
    trace_path: Optional[str] = None
    workers: int = Field(1, ge=1)

    @field_validator("mode")
    @classmethod
    def check_mode(cls, v: str) -> str:
        return InputValidator.validate_range_mode(v)

    @property
    def has_eq7_params(self) -> bool:
        return any(v is not None for v in (self.a1, self.a2, self.alpha, self.beta))

    @model_validator(mode="after")
    def check_curve_source(self) -> "RunConfig":
        if self.subcommand not in (Subcommand.APPLY, Subcommand.CURVE):
            return self

        eq7_values = (self.a1, self.a2, self.alpha, self.beta)
        if self.has_eq7_params and any(v is None for v in eq7_values):
            raise ValidationError("--a1, --a2, --alpha and --beta must be given together", field="params")

        sources = sum([self.has_eq7_params, self.points is not None, self.preset is not None])
        if sources != 1:
            raise ValidationError(
                "Give exactly one curve: the four parameters, --points or --preset",
                field="curve"
            )

        if self.has_eq7_params and self.pivot is None and self.input_path is None:
            raise ValidationError("The parametric curve needs --pivot or an input image", field="pivot")
        return self

    @model_validator(mode="after")
    def check_paths(self) -> "RunConfig":
        if self.subcommand is not Subcommand.CURVE and self.input_path is None:
            raise ValidationError(f"{self.subcommand.value} requires an input image", field="input_path")
        if self.subcommand is Subcommand.APPLY and self.output_path is None:
            raise ValidationError("apply requires --out", field="output_path")
        return self
