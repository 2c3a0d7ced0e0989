"""
Shioda Core Invariants

Derives the scalar and vector invariants of an exponent matrix A: the
integer d with B = d * A^-1 integral, the weights q = B e, the dual weights
q' = e^T B and their gcd reductions. Also builds the polynomial F_A, its
one-parameter deformation F_{A,t} and the Fermat family on the other side of
the Shioda map.

Features:
- ExponentMatrix validation (square, non-negative, invertible)
- ShiodaData with every derived invariant checked on construction
- Calabi-Yau degree condition in two independent forms
- Exact rational or symbolic deformation parameter t

Usage:
    from shioda_toolkit.algebra.shioda_core import ExponentMatrix, analyze

    data = analyze(ExponentMatrix.from_rows([[5, 0], [0, 5]]))
    data.q, data.q_prime, data.is_cy
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    InputFormatError,
    InternalInconsistencyError,
    NegativeEntryError,
    NonPositiveWeightError,
    SingularMatrixError,
    WrongCountError,
)
from .exact_lattice import (
    as_int_matrix,
    det_fraction_free,
    gcd_all,
    rational_inverse,
    scaled_inverse,
    to_nested_list,
    require_square,
)

logger = logging.getLogger(__name__)

Parameter = Union[Fraction, str]


@dataclass(frozen=True)
class ExponentMatrix:
    """Square non-negative integer matrix whose rows are the exponents of F_A."""
    A: np.ndarray = field(compare=False)
    det: int
    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "ExponentMatrix":
        matrix = as_int_matrix(rows)
        require_square(matrix)
        for (i, j), value in np.ndenumerate(matrix):
            if value < 0:
                raise NegativeEntryError(f"A[{i}][{j}] = {value} is negative")
        det = det_fraction_free(matrix)
        if det == 0:
            raise SingularMatrixError("Exponent matrix is singular (det = 0)")
        return cls(A=matrix, det=det, rows=tuple(tuple(int(x) for x in row) for row in matrix))

    @property
    def n(self) -> int:
        return len(self.rows)

    def transpose(self) -> "ExponentMatrix":
        return ExponentMatrix.from_rows(self.A.T)

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.rows]


def ensure_matrix(A) -> ExponentMatrix:
    return A if isinstance(A, ExponentMatrix) else ExponentMatrix.from_rows(A)


@dataclass(frozen=True)
class ShiodaData:
    """
    Invariants derived from an exponent matrix.

    A q = d e holds exactly; q are the row sums of B and q' its column sums.
    """
    matrix: ExponentMatrix
    d: int
    B: np.ndarray = field(compare=False)
    q: Tuple[int, ...]
    m: int
    q_reduced: Tuple[int, ...]
    q_prime: Tuple[int, ...]
    m_prime: int
    a_prime: int
    a_prime_vec: Tuple[int, ...]
    is_cy: bool

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def A(self) -> np.ndarray:
        return self.matrix.A

    @property
    def Q(self) -> int:
        return sum(self.q)

    def B_list(self) -> List[List[int]]:
        return to_nested_list(self.B)


def analyze(A) -> ShiodaData:
    """
    Compute d, B, q, q', m, m', a' and the a'-vector of an exponent matrix.

    Parameters:
    -----------
    A : ExponentMatrix or nested integer rows

    Returns:
    --------
    ShiodaData

    Raises:
    -------
    SingularMatrixError, NonPositiveWeightError
    """
    matrix = ensure_matrix(A)
    d, B = scaled_inverse(matrix.A)
    n = matrix.n
    q = tuple(int(sum(B[i, :])) for i in range(n))
    q_prime = tuple(int(sum(B[:, k])) for k in range(n))

    for i, value in enumerate(q):
        if value <= 0:
            raise NonPositiveWeightError("q", i, value)
    for k, value in enumerate(q_prime):
        if value <= 0:
            raise NonPositiveWeightError("q_prime", k, value)

    if list(matrix.A.dot(np.array(q, dtype=object))) != [d] * n:
        raise InternalInconsistencyError("A q != d e")

    m = gcd_all(q)
    m_prime = gcd_all((d,) + q_prime)
    data = ShiodaData(
        matrix=matrix,
        d=d,
        B=B,
        q=q,
        m=m,
        q_reduced=tuple(x // m for x in q),
        q_prime=q_prime,
        m_prime=m_prime,
        a_prime=d // m_prime,
        a_prime_vec=tuple(x // m_prime for x in q_prime),
        is_cy=sum(q) == d,
    )
    if data.is_cy and sum(q_prime) != d:
        raise InternalInconsistencyError("sum(q) == d but sum(q') != d")
    logger.debug(f"Analyzed {n}x{n} matrix: d={d}, q={q}, q'={q_prime}, m'={m_prime}")
    return data


def check_cy(A) -> bool:
    """
    Calabi-Yau degree condition: sum(q) == d, equivalently e^T A^-1 e == 1.

    Both forms are evaluated and must agree.
    """
    matrix = ensure_matrix(A)
    d, B = scaled_inverse(matrix.A)
    by_weights = int(sum(B.flat)) == d
    by_rationals = sum((x for row in rational_inverse(matrix.A) for x in row), Fraction(0)) == 1
    if by_weights != by_rationals:
        raise InternalInconsistencyError("Weight-sum and rational forms of the CY condition disagree")
    return by_weights


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def parse_parameter(value) -> Parameter:
    """
    Parse a deformation parameter: an exact rational or a symbol name.

    Floats are rejected; decimal and fraction strings are read exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InputFormatError(f"Parameter must be exact, got {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        if text.isidentifier():
            return text
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputFormatError(f"Cannot parse parameter {value!r} as an exact rational")
    raise InputFormatError(f"Unsupported parameter type {type(value).__name__}")


def is_zero_parameter(t: Optional[Parameter]) -> bool:
    return t is None or (isinstance(t, Fraction) and t == 0)


@dataclass(frozen=True)
class MonomialTerm:
    """coefficient * parameter * x^exponents; parameter is None for numeric terms."""
    coefficient: Fraction
    exponents: Tuple[int, ...]
    parameter: Optional[str] = None


@dataclass
class MonomialPolynomial:
    variables: int
    terms: List[MonomialTerm]
    variable_name: str = "x"

    def exponent_vectors(self) -> List[Tuple[int, ...]]:
        return [term.exponents for term in self.terms]

    def sorted_terms(self) -> List[MonomialTerm]:
        return sorted(self.terms, key=lambda term: term.exponents)

    def weighted_degrees(self, weights: Sequence[int]) -> List[int]:
        if len(weights) != self.variables:
            raise WrongCountError(f"Expected {self.variables} weights, got {len(weights)}")
        return [sum(e * w for e, w in zip(term.exponents, weights)) for term in self.terms]

    def is_weighted_homogeneous(self, weights: Sequence[int]) -> bool:
        return len(set(self.weighted_degrees(weights))) <= 1


def build_F(A) -> MonomialPolynomial:
    """F_A: one monomial per row of A, coefficient 1."""
    matrix = ensure_matrix(A)
    terms = [MonomialTerm(Fraction(1), row) for row in matrix.rows]
    return MonomialPolynomial(variables=matrix.n, terms=terms)


def build_F_t(A, t: Parameter) -> MonomialPolynomial:
    """F_{A,t} = F_A - t x_1 ... x_n; t = 0 gives F_A itself."""
    polynomial = build_F(A)
    if is_zero_parameter(t):
        return polynomial
    ones = tuple([1] * polynomial.variables)
    if isinstance(t, str):
        polynomial.terms.append(MonomialTerm(Fraction(-1), ones, parameter=t))
    else:
        polynomial.terms.append(MonomialTerm(-Fraction(t), ones))
    return polynomial


def build_fermat_family(data: ShiodaData, t: Parameter) -> MonomialPolynomial:
    """Fermat deformation sum y_i^d - t prod y_i^{q'_i}, pulled back to F_{A,t} by the Shioda map."""
    n, d = data.n, data.d
    terms = [MonomialTerm(Fraction(1), tuple(d if k == i else 0 for k in range(n))) for i in range(n)]
    if not is_zero_parameter(t):
        if isinstance(t, str):
            terms.append(MonomialTerm(Fraction(-1), data.q_prime, parameter=t))
        else:
            terms.append(MonomialTerm(-Fraction(t), data.q_prime))
    return MonomialPolynomial(variables=n, terms=terms, variable_name="y")


def matrix_from_polynomial(terms: Sequence[Sequence[int]]) -> ExponentMatrix:
    """Exponent matrix whose rows are the given exponent vectors, in order."""
    vectors = [list(v) for v in terms]
    n = len(vectors)
    if n == 0 or any(len(v) != n for v in vectors):
        raise WrongCountError(
            f"Need exactly n exponent vectors of length n, got {n} vectors of lengths "
            f"{sorted(set(len(v) for v in vectors))}"
        )
    return ExponentMatrix.from_rows(vectors)


def weight_relation(data: ShiodaData, weights: Sequence[int]) -> str:
    """
    Relation between user-listed weights w and the derived weights.

    Returns "q_reduced" when w == q/m (also when m = 1), "q" when w == q
    with m > 1, and "proportional" otherwise. Raises InputFormatError
    when A w is not a constant vector.
    """
    w = [int(x) for x in weights]
    if len(w) != data.n:
        raise WrongCountError(f"Expected {data.n} weights, got {len(w)}")
    if any(x <= 0 for x in w):
        raise InputFormatError(f"Listed weights {tuple(w)} must be positive")
    degrees = set(int(x) for x in data.A.dot(np.array(w, dtype=object)))
    if len(degrees) != 1:
        raise InputFormatError(f"Listed weights {tuple(w)} do not make F_A weighted homogeneous")
    if tuple(w) == data.q_reduced:
        return "q_reduced"
    if tuple(w) == data.q:
        return "q"
    return "proportional"
