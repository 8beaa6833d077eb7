"""Exception hierarchy shared by every module.

Each class carries a short machine-readable ``code`` used by the CLI when it
turns an exception into an ``{"error": code, "detail": text}`` object.
"""


class GmfError(Exception):
    code = "error"


class ShapeError(GmfError, ValueError):
    code = "shape"


class ValidationError(GmfError, ValueError):
    code = "validation"


class CapacityError(GmfError):
    code = "capacity"


class DecompositionError(GmfError):
    code = "decomposition"


class ConsistencyError(GmfError):
    """An internal identity that must hold to rounding failed to hold."""

    code = "consistency"


class FormatError(GmfError, ValueError):
    code = "format"
