"""Exception hierarchy.

Every error carries a short machine-readable ``kind`` so the CLI can emit
JSON error payloads without string matching.
"""


class GorError(Exception):
    kind = "error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class DomainError(GorError, ValueError):
    """An argument lies outside the domain of the operation."""

    kind = "domain"


class CapacityError(GorError):
    """Materializing 2^N items would exceed the configured cap."""

    kind = "capacity"


class RangeError(GorError, OverflowError):
    kind = "range"


# -- data ingestion ----------------------------------------------------------


class DataError(GorError):
    kind = "data"


class ValidationError(DataError):
    """A cell is not a literal 0/1 (or a weight is not positive)."""

    kind = "validation"

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column

    def to_dict(self):
        d = super().to_dict()
        d.update(row=self.row, column=self.column)
        return d


class SchemaError(DataError):
    kind = "schema"


class DegenerateResponseError(DataError):
    kind = "degenerate_response"


# -- fitting -------------------------------------------------------------------


class FitError(GorError):
    kind = "fit"


class ConvergenceError(FitError):
    kind = "convergence"

    def __init__(self, message, trajectory=()):
        super().__init__(message)
        self.trajectory = list(trajectory)

    def to_dict(self):
        d = super().to_dict()
        d["trajectory"] = [list(step) for step in self.trajectory]
        return d


class SeparationError(FitError):
    kind = "separation"

    def __init__(self, message, coefficients=None):
        super().__init__(message)
        self.coefficients = coefficients


class CollinearityError(FitError):
    kind = "collinearity"

    def __init__(self, message, columns=()):
        super().__init__(message)
        self.columns = list(columns)

    def to_dict(self):
        d = super().to_dict()
        d["columns"] = self.columns
        return d
