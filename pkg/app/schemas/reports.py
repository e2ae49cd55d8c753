"""
Pydantic schemas for functional reports
"""
from typing import Dict

from pydantic import BaseModel, ConfigDict, Field


class VisibilityReport(BaseModel):
    """Functional values of one image or one candidate variation"""
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "mean": 127.5,
                "variance": 16256.25,
                "sub_mean_low": 0.0,
                "sub_mean_high": 255.0,
                "count_low": 2,
                "count_high": 2,
                "visibility": 1.0,
            }
        },
    )

    mean: float = Field(..., description="Mean brightness")
    variance: float = Field(..., ge=0, description="Population variance of the brightness")
    sub_mean_low: float = Field(..., description="Mean of pixels at or below the mean")
    sub_mean_high: float = Field(..., description="Mean of pixels at or above the mean")
    count_low: int = Field(..., ge=1, description="Pixels at or below the mean")
    count_high: int = Field(..., ge=1, description="Pixels at or above the mean")
    visibility: float = Field(..., description="Fringe-visibility analogue of the sub-means")

    def as_lines(self, digits: int = 6) -> Dict[str, str]:
        """Labelled values with the given number of significant digits"""
        fmt = f"#.{digits}g"
        return {
            "mean": format(self.mean, fmt),
            "variance": format(self.variance, fmt),
            "sub_mean_low": format(self.sub_mean_low, fmt),
            "sub_mean_high": format(self.sub_mean_high, fmt),
            "count_low": str(self.count_low),
            "count_high": str(self.count_high),
            "visibility": format(self.visibility, fmt),
        }
