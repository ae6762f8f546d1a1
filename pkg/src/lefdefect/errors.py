"""Error types shared across the package.

The CLI maps these onto its exit-code contract: schema/input problems exit
with 2, internal consistency failures with 3, and failed verification checks
with 1.
"""


class SchemaError(ValueError):
    """Malformed or invalid input document; carries the offending field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class ConsistencyError(RuntimeError):
    """An internal exactness invariant failed (e.g. J^2 != -I)."""


class NotHodgeClass(ValueError):
    """A form that was required to lie in the Neron-Severi space does not."""
