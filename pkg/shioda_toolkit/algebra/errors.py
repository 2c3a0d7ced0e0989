"""
Exception types raised by the algebra modules.

Validation failures derive from ShiodaInputError (a ValueError) and map to
exit code 1 in the command-line tool; recomputed invariants that fail map to
InternalInconsistencyError and exit code 2.
"""


class ShiodaInputError(ValueError):
    """Input matrix, vector or document failed validation."""


class NonSquareError(ShiodaInputError):
    """Matrix is not square."""


class SingularMatrixError(ShiodaInputError):
    """Matrix has determinant zero."""


class NegativeEntryError(ShiodaInputError):
    """Exponent matrix has a negative entry."""


class NonPositiveWeightError(ShiodaInputError):
    """A derived weight q_i or dual weight q'_k is not strictly positive."""

    def __init__(self, which: str, index: int, value: int):
        self.which = which
        self.index = index
        self.value = value
        super().__init__(
            f"{which}[{index}] = {value} is not positive; all derived weights must be > 0"
        )


class NotCalabiYauError(ShiodaInputError):
    """Operation needs the Calabi-Yau degree condition sum(q) == d."""


class WrongCountError(ShiodaInputError):
    """Number of monomials does not match the number of variables."""


class ModulusMismatchError(ShiodaInputError):
    """Cyclotomic vector modulus differs from the matrix's d."""


class LengthMismatchError(ShiodaInputError):
    """Vectors of different lengths were combined."""


class NegativeExponentError(ShiodaInputError):
    """An exponent that must be non-negative came out negative."""


class DimensionMismatchError(ShiodaInputError):
    """Matrix or map shapes do not compose."""


class InputFormatError(ShiodaInputError):
    """Input document could not be parsed."""


class FixtureNotFoundError(ShiodaInputError):
    """No fixture with the requested name exists in the registry."""


class InternalInconsistencyError(RuntimeError):
    """A recomputed invariant did not hold."""
