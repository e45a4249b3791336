"""Exception types raised across the package."""


class SizeError(ValueError):
    """Dimension or register-size mismatch."""


class QubitIndexError(IndexError):
    """Qubit index out of range, or control equal to target."""


class UnitarityError(ValueError):
    """Matrix failed the unitarity check."""


class SymmetryError(ValueError):
    """Matrix expected to be Hermitian is not."""


class CapabilityError(NotImplementedError):
    """Requested feature is outside what the implementation supports."""


class EmissionError(ValueError):
    """Circuit contains an op that cannot be written as OpenQASM."""


class QasmSyntaxError(ValueError):
    """Malformed OpenQASM input. Carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
