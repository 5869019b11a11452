from typing import Any


class KnotError(Exception):
    """Base class of every domain error raised by libknots.

    Each subclass carries a module-qualified ``code`` which the command line
    front end reports verbatim, so callers can match on it.
    """

    code = "knots.error"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


# --- diagram ---
class MalformedInput(KnotError):
    code = "diagram.malformed_input"


class ArcDegreeError(KnotError):
    code = "diagram.arc_degree"


class MultiComponent(KnotError):
    code = "diagram.multi_component"


class OrientationError(KnotError):
    code = "diagram.orientation"


# --- seifert ---
class SeifertInternalError(KnotError):
    code = "seifert.internal"


# --- exactalg ---
class NonSquare(KnotError):
    code = "exactalg.non_square"


class SymmetryError(KnotError):
    code = "exactalg.not_symmetric"


class NearSingular(KnotError):
    code = "exactalg.near_singular"


# --- invariants ---
class SamplingError(KnotError):
    code = "invariants.sampling"


# --- symmetric ---
class FixedPointCount(KnotError):
    code = "symmetric.fixed_point_count"


class PairingError(KnotError):
    code = "symmetric.pairing"


# --- catalog ---
class CatalogMissing(KnotError):
    code = "catalog.missing"


class CatalogIOError(KnotError):
    code = "catalog.io"


class SchemaError(KnotError):
    code = "catalog.schema"


class ParseError(KnotError):
    code = "catalog.parse"


class CrossCheckMismatch(KnotError):
    code = "catalog.mismatch"


# --- cli ---
class FileAccessError(KnotError):
    code = "cli.file_access"
