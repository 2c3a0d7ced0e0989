"""
Exact Integer Lattice Toolkit

Arbitrary-precision integer and rational linear algebra used by every other
module: fraction-free determinants, scaled inverses, Smith normal form,
linear Diophantine solving and finite quotients of full-rank lattices.

Matrices are numpy arrays with dtype=object holding Python ints, so no entry
is ever truncated to 64 bits. Rational inverses, rational solves and
prime factorizations are delegated to sympy. Nothing in this module uses
floating point.

Usage:
    from shioda_toolkit.algebra.exact_lattice import scaled_inverse, smith_normal_form

    d, B = scaled_inverse([[5, 0], [0, 10]])
    snf = smith_normal_form([[2, 4], [6, 8]])
    snf.diagonal   # [2, 4]
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from .errors import (
    DimensionMismatchError,
    InternalInconsistencyError,
    NonSquareError,
    ShiodaInputError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

# Laplace expansion is used as an independent check of the Bareiss result
# up to this size.
COFACTOR_CHECK_MAX_N = 5


def _as_int(value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ShiodaInputError(f"Matrix entries must be integers, got {value!r}")
    return int(value)


def as_int_matrix(data) -> np.ndarray:
    """
    Convert nested sequences (or an integer ndarray) to an exact integer matrix.

    Parameters:
    -----------
    data : array_like
        Rectangular 2-D integer data with at least one row and one column.

    Returns:
    --------
    np.ndarray
        dtype=object array of Python ints.
    """
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        rows = data.tolist()
    else:
        rows = [list(row) for row in (data.tolist() if isinstance(data, np.ndarray) else data)]
    if not rows or not rows[0]:
        raise ShiodaInputError("Matrix must have at least one row and one column")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ShiodaInputError("Matrix rows have different lengths")
    matrix = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            matrix[i, j] = _as_int(value)
    return matrix


def as_int_vector(data) -> np.ndarray:
    """Convert a sequence of integers to a dtype=object vector."""
    values = data.tolist() if isinstance(data, np.ndarray) else list(data)
    vector = np.empty(len(values), dtype=object)
    for i, value in enumerate(values):
        vector[i] = _as_int(value)
    return vector


def identity_matrix(n: int) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def zeros_matrix(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def to_nested_list(matrix: np.ndarray) -> List[List[int]]:
    """Plain nested list of ints, for JSON output and comparisons."""
    return [[int(x) for x in row] for row in np.asarray(matrix)]


def to_int_list(vector) -> List[int]:
    return [int(x) for x in vector]


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, (int(v) for v in values), 0)


def lcm_all(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b) if a and b else 0, (int(v) for v in values), 1)


def prime_factors(n: int) -> Dict[int, int]:
    """Prime factorization {p: e} of |n|; empty for 0 and 1."""
    n = abs(int(n))
    if n <= 1:
        return {}
    return {int(p): int(e) for p, e in sp.factorint(n).items()}


def require_square(A: np.ndarray) -> int:
    rows, cols = A.shape
    if rows != cols:
        raise NonSquareError(f"Expected a square matrix, got {rows}x{cols}")
    return rows


# ---------------------------------------------------------------------------
# Determinants and inverses
# ---------------------------------------------------------------------------

def det_cofactor(A) -> int:
    """Determinant by Laplace expansion along the first row (small matrices only)."""
    M = as_int_matrix(A)
    n = require_square(M)
    return _laplace([[int(x) for x in row] for row in M], n)


def _laplace(rows: List[List[int]], n: int) -> int:
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * _laplace(minor, n - 1)
    return total


def det_fraction_free(A) -> int:
    """
    Exact determinant by Bareiss fraction-free elimination.

    Every intermediate division is exact, so entries never leave the integers.
    For n <= COFACTOR_CHECK_MAX_N the result is cross-checked by cofactor
    expansion.

    Raises:
    -------
    NonSquareError
        If A is not square.
    """
    M = as_int_matrix(A).copy()
    n = require_square(M)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if M[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i, k] != 0), None)
            if swap is None:
                return 0
            M[[k, swap], :] = M[[swap, k], :]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i, j] = (M[i, j] * M[k, k] - M[i, k] * M[k, j]) // previous
        previous = M[k, k]
    det = sign * int(M[n - 1, n - 1])

    if n <= COFACTOR_CHECK_MAX_N:
        check = det_cofactor(A)
        if check != det:
            raise InternalInconsistencyError(
                f"Bareiss determinant {det} disagrees with cofactor expansion {check}"
            )
    return det


def _to_sympy(M: np.ndarray) -> sp.Matrix:
    return sp.Matrix([[int(x) for x in row] for row in M])


def _to_fraction(value) -> Fraction:
    rational = sp.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def rational_inverse(A) -> List[List[Fraction]]:
    """Exact inverse over the rationals."""
    M = as_int_matrix(A)
    n = require_square(M)
    try:
        inverse = _to_sympy(M).inv()
    except ValueError:
        raise SingularMatrixError("Matrix is singular (det = 0)")
    return [[_to_fraction(inverse[i, j]) for j in range(n)] for i in range(n)]


def scaled_inverse(A) -> Tuple[int, np.ndarray]:
    """
    Smallest positive d with B = d * A^-1 integral, together with B.

    Parameters:
    -----------
    A : array_like
        Square integer matrix with non-zero determinant.

    Returns:
    --------
    (d, B) : Tuple[int, np.ndarray]
        d is the lcm of the lowest-terms denominators of A^-1;
        A @ B == B @ A == d * I exactly.

    Raises:
    -------
    NonSquareError, SingularMatrixError
    """
    M = as_int_matrix(A)
    n = require_square(M)
    inverse = rational_inverse(M)
    d = lcm_all(x.denominator for row in inverse for x in row)
    B = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            B[i, j] = int(inverse[i][j] * d)

    scaled_identity = identity_matrix(n) * d
    if not (np.array_equal(M.dot(B), scaled_identity) and np.array_equal(B.dot(M), scaled_identity)):
        raise InternalInconsistencyError("A @ B != d * I after scaled inversion")
    logger.debug(f"Scaled inverse of {n}x{n} matrix: d = {d}")
    return d, B


def solve_rational(A, b: Sequence[int]) -> List[Fraction]:
    """Unique rational solution x of A x = b for square invertible A."""
    M = as_int_matrix(A)
    n = require_square(M)
    if len(b) != n:
        raise DimensionMismatchError("Right-hand side length differs from matrix size")
    if det_fraction_free(M) == 0:
        raise SingularMatrixError("Matrix is singular (det = 0)")
    x = _to_sympy(M).LUsolve(sp.Matrix([int(v) for v in b]))
    return [_to_fraction(x[i, 0]) for i in range(n)]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass
class SNFDecomposition:
    """
    U @ M @ V == S with U, V unimodular and S diagonal in divisibility order.

    U_inv is carried along so that lattice generators can be read off
    without a second inversion.
    """
    U: np.ndarray
    S: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    steps: int = 0

    @property
    def diagonal(self) -> List[int]:
        size = min(self.S.shape)
        return [int(self.S[i, i]) for i in range(size)]

    @property
    def rank(self) -> int:
        return sum(1 for s in self.diagonal if s != 0)


def _smallest_entry(S: np.ndarray, t: int) -> Optional[Tuple[int, int]]:
    best = None
    rows, cols = S.shape
    for i in range(t, rows):
        for j in range(t, cols):
            value = S[i, j]
            if value != 0:
                key = (abs(value), i, j)
                if best is None or key < best:
                    best = key
    return None if best is None else (best[1], best[2])


def _first_non_multiple(S: np.ndarray, t: int, pivot: int) -> Optional[int]:
    rows, cols = S.shape
    for i in range(t + 1, rows):
        for j in range(t + 1, cols):
            if S[i, j] % pivot != 0:
                return i
    return None


def smith_normal_form(M) -> SNFDecomposition:
    """
    Smith normal form with deterministic smallest-absolute-value pivoting.

    Ties between equal pivots are broken by (row, column) order, so U and V
    are reproducible; the diagonal s1 | s2 | ... is canonical regardless.
    """
    original = as_int_matrix(M)
    S = original.copy()
    rows, cols = S.shape
    U = identity_matrix(rows)
    U_inv = identity_matrix(rows)
    V = identity_matrix(cols)
    steps = 0

    for t in range(min(rows, cols)):
        while True:
            position = _smallest_entry(S, t)
            if position is None:
                break
            i, j = position
            if i != t:
                S[[t, i], :] = S[[i, t], :]
                U[[t, i], :] = U[[i, t], :]
                U_inv[:, [t, i]] = U_inv[:, [i, t]]
            if j != t:
                S[:, [t, j]] = S[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]

            pivot = S[t, t]
            cleared = True
            for r in range(t + 1, rows):
                factor = S[r, t] // pivot
                if factor:
                    S[r, :] = S[r, :] - factor * S[t, :]
                    U[r, :] = U[r, :] - factor * U[t, :]
                    U_inv[:, t] = U_inv[:, t] + factor * U_inv[:, r]
                if S[r, t] != 0:
                    cleared = False
            for c in range(t + 1, cols):
                factor = S[t, c] // pivot
                if factor:
                    S[:, c] = S[:, c] - factor * S[:, t]
                    V[:, c] = V[:, c] - factor * V[:, t]
                if S[t, c] != 0:
                    cleared = False
            steps += 1
            if not cleared:
                continue

            offender = _first_non_multiple(S, t, pivot)
            if offender is None:
                break
            S[t, :] = S[t, :] + S[offender, :]
            U[t, :] = U[t, :] + U[offender, :]
            U_inv[:, offender] = U_inv[:, offender] - U_inv[:, t]

        if S[t, t] < 0:
            S[t, :] = -S[t, :]
            U[t, :] = -U[t, :]
            U_inv[:, t] = -U_inv[:, t]

    if not np.array_equal(U.dot(original).dot(V), S):
        raise InternalInconsistencyError("U @ M @ V != S after Smith reduction")
    logger.debug(f"Smith normal form of {rows}x{cols} matrix in {steps} pivot steps")
    return SNFDecomposition(U=U, S=S, V=V, U_inv=U_inv, steps=steps)


# ---------------------------------------------------------------------------
# Diophantine systems and lattices
# ---------------------------------------------------------------------------

@dataclass
class DiophantineSolution:
    """Integer solution set particular + span(kernel_basis) of M x = b."""
    particular: np.ndarray
    kernel_basis: List[np.ndarray] = field(default_factory=list)


def solve_diophantine(M, b: Sequence[int]) -> Optional[DiophantineSolution]:
    """
    Solve M x = b over the integers.

    Returns None when no integer solution exists. The kernel basis is a
    lattice basis of {x : M x = 0}.
    """
    matrix = as_int_matrix(M)
    rhs = as_int_vector(b)
    rows, cols = matrix.shape
    if len(rhs) != rows:
        raise DimensionMismatchError(f"Right-hand side has length {len(rhs)}, expected {rows}")

    snf = smith_normal_form(matrix)
    transformed = snf.U.dot(rhs)
    y = np.zeros(cols, dtype=object)
    for i in range(rows):
        s = snf.S[i, i] if i < cols else 0
        if s == 0:
            if transformed[i] != 0:
                return None
            continue
        if transformed[i] % s != 0:
            return None
        y[i] = transformed[i] // s

    particular = snf.V.dot(y)
    kernel = [snf.V[:, j].copy() for j in range(snf.rank, cols)]
    return DiophantineSolution(particular=particular, kernel_basis=kernel)


def kernel_basis(M) -> List[np.ndarray]:
    """Lattice basis of the integer kernel {x : M x = 0}."""
    matrix = as_int_matrix(M)
    snf = smith_normal_form(matrix)
    return [snf.V[:, j].copy() for j in range(snf.rank, matrix.shape[1])]


def lattice_basis(generators) -> np.ndarray:
    """
    Basis (as columns) of the lattice spanned by the columns of a generator matrix.

    The generators must span a lattice of full rank in Z^n.
    """
    G = as_int_matrix(generators)
    n = G.shape[0]
    snf = smith_normal_form(G)
    if snf.rank != n:
        raise InternalInconsistencyError(
            f"Generators span a rank-{snf.rank} lattice, expected full rank {n}"
        )
    basis = zeros_matrix(n, n)
    for i in range(n):
        basis[:, i] = snf.U_inv[:, i] * snf.S[i, i]
    return basis


def quotient_structure(basis, sublattice_generators) -> Tuple[List[int], List[np.ndarray]]:
    """
    Invariant factors and generator lifts of L / N.

    Parameters:
    -----------
    basis : array_like
        n x n matrix whose columns are a basis of L.
    sublattice_generators : array_like
        n x k matrix whose columns generate a full-rank sublattice N of L.

    Returns:
    --------
    (factors, lifts)
        factors d1 | d2 | ... (ones omitted); lifts[i] is a vector of L whose
        class generates the i-th cyclic factor.
    """
    L = as_int_matrix(basis)
    N = as_int_matrix(sublattice_generators)
    if L.shape[0] != N.shape[0]:
        raise DimensionMismatchError("Lattice and sublattice live in different dimensions")
    d_L, B_L = scaled_inverse(L)
    coordinates = B_L.dot(N)
    if any(x % d_L != 0 for x in coordinates.flat):
        raise InternalInconsistencyError("Sublattice is not contained in the lattice")
    coordinates = coordinates // d_L

    snf = smith_normal_form(coordinates)
    n = L.shape[0]
    diagonal = snf.diagonal
    if len(diagonal) < n or any(s == 0 for s in diagonal[:n]):
        raise InternalInconsistencyError("Sublattice does not have full rank; quotient is infinite")

    factors: List[int] = []
    lifts: List[np.ndarray] = []
    for i in range(n):
        if diagonal[i] != 1:
            factors.append(diagonal[i])
            lifts.append(L.dot(snf.U_inv[:, i]))
    return factors, lifts
