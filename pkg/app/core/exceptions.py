"""
Custom exception classes for the Image Visibility Toolkit
"""
from typing import Optional, List, Dict, Any


class VisibilityToolkitError(Exception):
    """Base exception class for the Image Visibility Toolkit"""

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        error_code: str = "GENERAL_ERROR",
        suggestions: Optional[List[str]] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.error_code = error_code
        self.suggestions = suggestions or []
        self.details = details or {}
        super().__init__(self.message)


class ValidationError(VisibilityToolkitError):
    """Raised when input validation fails"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        suggestions: Optional[List[str]] = None
    ):
        super().__init__(
            message=message,
            error_code="VALIDATION_ERROR",
            suggestions=suggestions or [
                "Check input parameters",
                "Ensure all required options are provided",
            ],
            details={"field": field} if field else {}
        )


class ImageFormatError(VisibilityToolkitError):
    """Raised when a PGM/PNM file cannot be parsed"""

    exit_code = 3

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        offset: Optional[int] = None,
        suggestions: Optional[List[str]] = None
    ):
        details: Dict[str, Any] = {}
        if field:
            details["field"] = field
        if offset is not None:
            details["offset"] = offset
        super().__init__(
            message=message,
            error_code="IMAGE_FORMAT_ERROR",
            suggestions=suggestions or [
                "Use a binary (P5) or ASCII (P2) PGM file with maxval <= 255",
                "Check that the file is not truncated",
            ],
            details=details
        )


class CurveDefinitionError(VisibilityToolkitError):
    """Raised when control points do not define a valid tone curve"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        points: Optional[str] = None,
        suggestions: Optional[List[str]] = None
    ):
        super().__init__(
            message=message,
            error_code="CURVE_DEFINITION_ERROR",
            suggestions=suggestions or [
                "Use the form 't0,v0;t1,v1;...;255,v'",
                "Tones must be strictly increasing and include 0 and 255",
            ],
            details={"points": points} if points else {}
        )


class GridSpecificationError(VisibilityToolkitError):
    """Raised when a search axis specification is malformed"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        axis: Optional[str] = None,
        suggestions: Optional[List[str]] = None
    ):
        super().__init__(
            message=message,
            error_code="GRID_SPECIFICATION_ERROR",
            suggestions=suggestions or [
                "Use the form 'start:stop:step', e.g. '0:5:0.1'",
                "Require start <= stop and step > 0",
            ],
            details={"axis": axis} if axis else {}
        )


class RangeRejectionError(VisibilityToolkitError):
    """Raised when a tone curve sends an occupied tone outside [0, 255]"""

    exit_code = 4

    def __init__(
        self,
        tone: int,
        value: float,
        suggestions: Optional[List[str]] = None
    ):
        self.tone = tone
        self.value = value
        super().__init__(
            message=f"Tone {tone} maps to {value:.6g}, outside [0, 255]",
            error_code="RANGE_REJECTED",
            suggestions=suggestions or [
                "Reduce the curve amplitudes a1/a2",
                "Use --mode clamp to clip the transformed brightness",
            ],
            details={"tone": tone, "value": value}
        )


class DomainError(VisibilityToolkitError):
    """Raised when a functional is evaluated outside its domain"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        arguments: Optional[Dict[str, Any]] = None,
        suggestions: Optional[List[str]] = None
    ):
        super().__init__(
            message=message,
            error_code="DOMAIN_ERROR",
            suggestions=suggestions or [],
            details={"arguments": arguments} if arguments else {}
        )


class InfeasibleSearchError(VisibilityToolkitError):
    """Raised when every grid candidate is rejected"""

    exit_code = 5

    def __init__(
        self,
        candidates_total: int,
        suggestions: Optional[List[str]] = None
    ):
        super().__init__(
            message="No feasible variation: every candidate was rejected",
            error_code="NO_FEASIBLE_VARIATION",
            suggestions=suggestions or [
                "Include a1 = 0 and a2 = 0 in the grid",
                "Narrow the amplitude ranges",
            ],
            details={"candidates_total": candidates_total}
        )


class ConfigurationError(VisibilityToolkitError):
    """Raised when configuration is invalid or missing"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        config_key: Optional[str] = None,
        suggestions: Optional[List[str]] = None
    ):
        super().__init__(
            message=message,
            error_code="CONFIGURATION_ERROR",
            suggestions=suggestions or [
                "Check environment variables",
                "Verify the .env file",
            ],
            details={"config_key": config_key} if config_key else {}
        )
