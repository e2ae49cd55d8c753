"""
Pydantic schemas for tone-curve parameters
"""
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.exceptions import CurveDefinitionError
from app.core.validation import InputValidator


class TransformParams(BaseModel):
    """Parameters of the two-branch brightness variation around the pivot mean"""
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"a1": 4.5, "a2": 1.2, "alpha": 0.3, "beta": 0.5, "pivot": 118.4}
        },
    )

    a1: float = Field(..., ge=0, description="Amplitude of the darkening branch (tones <= pivot)")
    a2: float = Field(..., ge=0, description="Amplitude of the brightening branch (tones > pivot)")
    alpha: float = Field(..., gt=0, description="Exponent of the darkening branch")
    beta: float = Field(..., gt=0, description="Exponent of the brightening branch")
    pivot: float = Field(..., ge=0, le=255, description="Mean brightness of the source image")

    @property
    def key(self) -> Tuple[float, float, float, float]:
        """Tie-break ordering key"""
        return (self.a1, self.a2, self.alpha, self.beta)

    @property
    def label(self) -> str:
        return (
            f"a1={self.a1:g} a2={self.a2:g} alpha={self.alpha:g} "
            f"beta={self.beta:g} pivot={self.pivot:g}"
        )


class ControlPointCurve(BaseModel):
    """Freehand curve given by (tone, value) control points"""
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"points": [[0, 0], [128, 200], [255, 255]]}},
    )

    points: List[Tuple[float, float]]

    @model_validator(mode="after")
    def check_points(self) -> "ControlPointCurve":
        points = self.points
        if len(points) < 2:
            raise CurveDefinitionError("At least two control points are required")

        tones = [tone for tone, _ in points]
        if tones[0] != 0 or tones[-1] != 255:
            raise CurveDefinitionError("Control points must start at tone 0 and end at tone 255")
        for previous, current in zip(tones, tones[1:]):
            if current <= previous:
                raise CurveDefinitionError(
                    f"Control point tones must be strictly increasing ({previous:g} then {current:g})"
                )
        for tone, value in points:
            if not 0 <= value <= 255:
                raise CurveDefinitionError(f"Control value {value:g} at tone {tone:g} is outside [0, 255]")
        return self

    @classmethod
    def parse(cls, text: str) -> "ControlPointCurve":
        """Build from the text form "t0,v0;t1,v1;...;255,v" """
        return cls(points=InputValidator.parse_control_points(text))

    @property
    def label(self) -> str:
        return ";".join(f"{tone:g},{value:g}" for tone, value in self.points)
