"""
Monomial Maps and Shioda Quotient Equations

Integer exponent tables for the Shioda map phi_A (y -> x, exponents B), the
quotient map q_A (x -> u, exponents e and the rows of A) and their
composition; the linear and monomial equations of the Shioda quotient and
of its one-parameter family; verification and construction of explicit
monomial birational inverses; the transpose construction and the
birational fingerprint used to group families.

Exponent rows index target coordinates and columns index source
variables. Negative exponents are allowed: the maps are rational.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DimensionMismatchError,
    InternalInconsistencyError,
    NotCalabiYauError,
)
from .exact_lattice import (
    as_int_matrix,
    gcd_all,
    identity_matrix,
    solve_diophantine,
    solve_rational,
    to_nested_list,
    zeros_matrix,
)
from .quotient_groups import h_A
from .shioda_core import Parameter, ShiodaData, analyze, ensure_matrix, is_zero_parameter
from ..utils.config import SLACK_BOUND_FACTOR

logger = logging.getLogger(__name__)

GREEDY_PASSES = 8


# ---------------------------------------------------------------------------
# Monomial maps
# ---------------------------------------------------------------------------

@dataclass
class MonomialMap:
    """Rational map given by exponents[j][k] = power of source variable k in target j."""
    source_weights: Tuple[int, ...]
    target_weights: Tuple[int, ...]
    exponents: np.ndarray = field(repr=False)
    label: str = ""

    @property
    def source_dimension(self) -> int:
        return self.exponents.shape[1]

    @property
    def target_dimension(self) -> int:
        return self.exponents.shape[0]

    @property
    def target_degrees(self) -> Tuple[int, ...]:
        weights = np.array(self.source_weights, dtype=object)
        return tuple(int(x) for x in self.exponents.dot(weights))

    def is_weighted_homogeneous(self) -> bool:
        """Target degrees are proportional to the target weights."""
        degrees = self.target_degrees
        return all(
            degrees[i] * self.target_weights[0] == degrees[0] * self.target_weights[i]
            for i in range(len(degrees))
        )

    def exponent_rows(self) -> List[List[int]]:
        return to_nested_list(self.exponents)


def phi_map(data: ShiodaData) -> MonomialMap:
    """x_j = prod_k y_k^{B_jk}; target coordinate j has degree q_j."""
    mapping = MonomialMap(
        source_weights=tuple([1] * data.n),
        target_weights=data.q,
        exponents=data.B.copy(),
        label="phi_A",
    )
    if mapping.target_degrees != data.q:
        raise InternalInconsistencyError("phi_A target degrees differ from q")
    return mapping


def q_map(A) -> MonomialMap:
    """u_0 = x_1 ... x_n and u_k = x^{row k of A}, into ordinary projective space."""
    data = A if isinstance(A, ShiodaData) else analyze(ensure_matrix(A))
    n = data.n
    exponents = zeros_matrix(n + 1, n)
    exponents[0, :] = 1
    exponents[1:, :] = data.A
    return MonomialMap(
        source_weights=data.q,
        target_weights=tuple([1] * (n + 1)),
        exponents=exponents,
        label="q_A",
    )


def compose(outer: MonomialMap, inner: MonomialMap) -> MonomialMap:
    """outer after inner: exponent tables multiply."""
    if outer.source_dimension != inner.target_dimension:
        raise DimensionMismatchError(
            f"Cannot compose: outer takes {outer.source_dimension} variables, "
            f"inner produces {inner.target_dimension}"
        )
    return MonomialMap(
        source_weights=inner.source_weights,
        target_weights=outer.target_weights,
        exponents=outer.exponents.dot(inner.exponents),
        label=f"{outer.label} o {inner.label}",
    )


def check_composition_law(data: ShiodaData) -> MonomialMap:
    """q_A o phi_A must be (prod y^{q'} : y_1^d : ... : y_n^d)."""
    composed = compose(q_map(data), phi_map(data))
    expected = zeros_matrix(data.n + 1, data.n)
    expected[0, :] = np.array(data.q_prime, dtype=object)
    expected[1:, :] = identity_matrix(data.n) * data.d
    if not np.array_equal(composed.exponents, expected):
        raise InternalInconsistencyError("q_A o phi_A differs from (y^q' : y_1^d : ... : y_n^d)")
    return composed


def projection_map(data: ShiodaData) -> MonomialMap:
    """(u_0 : ... : u_n) -> (u_1 : ... : u_n), a cyclic cover of degree a' on the quotient."""
    n = data.n
    exponents = zeros_matrix(n, n + 1)
    exponents[:, 1:] = identity_matrix(n)
    return MonomialMap(
        source_weights=tuple([1] * (n + 1)),
        target_weights=tuple([1] * n),
        exponents=exponents,
        label="projection",
    )


def root_identity_check(data: ShiodaData) -> bool:
    """
    x_j^d = prod_k u_k^{B_jk} once u_k is replaced by x^{row k of A}.

    Raises InternalInconsistencyError when any row fails.
    """
    for j in range(data.n):
        exponent = sum((data.B[j, k] * data.A[k, :] for k in range(data.n)), np.zeros(data.n, dtype=object))
        expected = [data.d if i == j else 0 for i in range(data.n)]
        if [int(x) for x in exponent] != expected:
            raise InternalInconsistencyError(f"Root identity fails for x_{j + 1}")
    return True


# ---------------------------------------------------------------------------
# Equations of the Shioda quotient
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialRelation:
    """u_0^power = prod u_k^exponents[k]."""
    power: int
    exponents: Tuple[int, ...]

    @property
    def is_balanced(self) -> bool:
        return self.power == sum(self.exponents)

    def reduced(self) -> "MonomialRelation":
        g = gcd_all((self.power,) + self.exponents)
        return MonomialRelation(self.power // g, tuple(x // g for x in self.exponents))


@dataclass(frozen=True)
class EquationSet:
    """
    sum u_k + u0_coefficient * u_0 = 0 together with a monomial relation.

    For a family with t != 0 the eliminated form
    (sum u_k)^power = t^power prod u_k^exponents is carried as well.
    """
    n: int
    relation: MonomialRelation
    u0_coefficient: Parameter = Fraction(0)
    parameter: Optional[Parameter] = None
    eliminated: Optional[MonomialRelation] = None

    @property
    def linear_coefficients(self) -> Tuple[int, ...]:
        return tuple([1] * self.n)


def _require_cy(data: ShiodaData) -> None:
    if not data.is_cy:
        raise NotCalabiYauError(f"sum(q) = {data.Q} != d = {data.d}; the Shioda quotient needs the CY condition")


def mbar_equations(data: ShiodaData) -> Tuple[EquationSet, EquationSet]:
    """Unreduced (d; q') and reduced (a'; a'_vec) equations, both with sum u_k = 0."""
    _require_cy(data)
    unreduced = EquationSet(n=data.n, relation=MonomialRelation(data.d, data.q_prime))
    reduced = EquationSet(n=data.n, relation=MonomialRelation(data.a_prime, data.a_prime_vec))
    if reduced.relation != unreduced.relation.reduced():
        raise InternalInconsistencyError("a' and a'_vec are not the gcd reduction of (d, q')")
    if not unreduced.relation.is_balanced:
        raise InternalInconsistencyError("sum(q') != d on a Calabi-Yau matrix")
    return unreduced, reduced


def family_equations(data: ShiodaData, t: Optional[Parameter]) -> EquationSet:
    """
    sum u_k - t u_0 = 0 and u_0^d = prod u_k^{q'_k}; for t != 0 also
    (sum u_k)^d = t^d prod u_k^{q'_k}.
    """
    unreduced, _ = mbar_equations(data)
    if is_zero_parameter(t):
        return unreduced
    u0_coefficient = f"-{t}" if isinstance(t, str) else -Fraction(t)
    return EquationSet(
        n=data.n,
        relation=unreduced.relation,
        u0_coefficient=u0_coefficient,
        parameter=t,
        eliminated=MonomialRelation(data.d, data.q_prime),
    )


# ---------------------------------------------------------------------------
# Birational inverse
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InverseLine:
    """M^s x_j = u_0^{c0} prod u_k^{c_k}."""
    s: int
    c0: int
    c: Tuple[int, ...]


@dataclass(frozen=True)
class InverseMap:
    mu: Tuple[int, ...]
    lines: Tuple[InverseLine, ...]
    kappa: Optional[int] = None


@dataclass
class LineDiagnostic:
    index: int
    valid: bool
    residual: Tuple[int, ...]
    u0_correction: Optional[int]
    canonical: Tuple[int, Tuple[int, ...]]

    def to_dict(self) -> dict:
        return {
            'line': self.index,
            'valid': self.valid,
            'residual': list(self.residual),
            'u0_correction': self.u0_correction,
            'canonical_c0': self.canonical[0],
            'canonical_c': list(self.canonical[1]),
        }


@dataclass
class InverseVerification:
    valid: bool
    lines: List[LineDiagnostic]

    @property
    def valid_count(self) -> int:
        return sum(1 for line in self.lines if line.valid)


def _line_residual(A: np.ndarray, j: int, line: InverseLine, mu: Sequence[int]) -> Tuple[int, ...]:
    n = A.shape[0]
    lhs = A.T.dot(np.array(line.c, dtype=object)) + line.c0
    return tuple(int(lhs[i]) - (1 if i == j else 0) - line.s * int(mu[i]) for i in range(n))


def canonical_line(data: ShiodaData, c0: int, c: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Reduce (c0, c) by the relation u_0^{a'} = prod u^{a'_vec} so that 0 <= c0 < a'."""
    shift = c0 // data.a_prime
    return (
        c0 - shift * data.a_prime,
        tuple(int(ck) + shift * ak for ck, ak in zip(c, data.a_prime_vec)),
    )


def verify_inverse(A, inverse: InverseMap) -> InverseVerification:
    """
    Check c0 e + A^T c = e_j + s_j mu for every line.

    A line whose residual is a constant vector r e is reported with
    u0_correction = -r, the change of c0 that repairs it.
    """
    data = A if isinstance(A, ShiodaData) else analyze(ensure_matrix(A))
    n = data.n
    if len(inverse.mu) != n or len(inverse.lines) != n:
        raise DimensionMismatchError(f"Inverse has {len(inverse.lines)} lines and |mu| = {len(inverse.mu)}; expected {n}")
    diagnostics = []
    for j, line in enumerate(inverse.lines):
        if len(line.c) != n:
            raise DimensionMismatchError(f"Line {j + 1} has {len(line.c)} u-exponents, expected {n}")
        residual = _line_residual(data.A, j, line, inverse.mu)
        correction = None
        if len(set(residual)) == 1 and residual[0] != 0:
            correction = -residual[0]
        diagnostics.append(LineDiagnostic(
            index=j,
            valid=not any(residual),
            residual=residual,
            u0_correction=correction,
            canonical=canonical_line(data, line.c0 + (correction or 0), line.c),
        ))
    result = InverseVerification(valid=all(line.valid for line in diagnostics), lines=diagnostics)
    logger.debug(f"Inverse verification: {result.valid_count}/{n} lines valid")
    return result


def apply_u0_corrections(inverse: InverseMap, verification: InverseVerification) -> InverseMap:
    """Inverse with every reported u0_correction added to c0."""
    lines = tuple(
        replace(line, c0=line.c0 + (diag.u0_correction or 0))
        for line, diag in zip(inverse.lines, verification.lines)
    )
    return replace(inverse, lines=lines)


def _inverse_system(data: ShiodaData, s: Sequence[int]) -> Tuple[np.ndarray, List[int]]:
    """
    Unknowns [mu | c0_1, c_1 | ... | c0_n, c_n]; block j reads
    c0_j e + A^T c_j - s_j mu = e_j.
    """
    n = data.n
    width = n + n * (n + 1)
    system = zeros_matrix(n * n, width)
    rhs = [0] * (n * n)
    for j in range(n):
        rows = slice(j * n, (j + 1) * n)
        system[rows, :n] = identity_matrix(n) * (-s[j])
        offset = n + j * (n + 1)
        system[rows, offset] = 1
        system[rows, offset + 1:offset + 1 + n] = data.A.T
        rhs[j * n + j] = 1
    return system, rhs


def _shift_mu(data: ShiodaData, x: np.ndarray, s: Sequence[int], k: int, steps: int) -> None:
    """mu_k += steps d, compensated by c_j += steps s_j (row k of B)."""
    n = data.n
    x[k] += steps * data.d
    for j in range(n):
        offset = n + j * (n + 1) + 1
        x[offset:offset + n] = x[offset:offset + n] + steps * s[j] * data.B[k, :]


def _normalize_mu(data: ShiodaData, x: np.ndarray, s: Sequence[int], kernel: List[np.ndarray]) -> np.ndarray:
    n, d = data.n, data.d
    for k in range(n):
        target = (int(x[k]) - 1) % d + 1
        _shift_mu(data, x, s, k, (target - int(x[k])) // d)

    for _ in range(GREEDY_PASSES):
        improved = False
        for vector in kernel:
            for sign in (1, -1):
                candidate = x + sign * vector
                if all(candidate[k] >= 1 for k in range(n)) and sum(candidate[:n]) < sum(x[:n]):
                    x = candidate
                    improved = True
        if not improved:
            break
    return x


def construct_inverse(data: ShiodaData, bound_factor: int = SLACK_BOUND_FACTOR) -> Optional[InverseMap]:
    """
    Some verified monomial inverse of q_A, or None when H_A is not trivial
    or no slack scale up to the bound admits one.

    Slack exponents are s = kappa q_reduced, so (M^{s_1} x_1 : ... : M^{s_n} x_n)
    is the point x of WP(q) rescaled by M^kappa.
    """
    _require_cy(data)
    if not h_A(data).is_trivial:
        logger.debug("H_A is not trivial; q_A is not birational onto its image")
        return None

    n = data.n
    kappa = 1
    while kappa * max(data.q_reduced) <= bound_factor * data.d:
        s = [kappa * x for x in data.q_reduced]
        system, rhs = _inverse_system(data, s)
        solution = solve_diophantine(system, rhs)
        if solution is not None:
            x = _normalize_mu(data, solution.particular.copy(), s, solution.kernel_basis)
            lines = []
            for j in range(n):
                offset = n + j * (n + 1)
                c0, c = canonical_line(data, int(x[offset]), [int(v) for v in x[offset + 1:offset + 1 + n]])
                lines.append(InverseLine(s=s[j], c0=c0, c=c))
            inverse = InverseMap(mu=tuple(int(v) for v in x[:n]), lines=tuple(lines), kappa=kappa)
            if not verify_inverse(data, inverse).valid:
                raise InternalInconsistencyError("Constructed inverse fails verification")
            logger.debug(f"Inverse found with kappa={kappa}, mu={inverse.mu}")
            return inverse
        kappa += 1
    logger.warning(f"No monomial inverse found with kappa * max(q_reduced) <= {bound_factor} d")
    return None


# ---------------------------------------------------------------------------
# Transpose construction and fingerprints
# ---------------------------------------------------------------------------

def mirror_transpose(A) -> EquationSet:
    """Family equations at t = 1 of the transposed exponent matrix."""
    matrix = ensure_matrix(A)
    transposed = analyze(matrix.transpose())
    return family_equations(transposed, Fraction(1))


def mirror_matches_weights(data: ShiodaData, mirror: EquationSet) -> bool:
    """Monomial relation exponents of the transpose are proportional to q of the original."""
    exponents = mirror.relation.exponents
    return all(exponents[i] * data.q[0] == exponents[0] * data.q[i] for i in range(data.n))


def fingerprint(data: ShiodaData) -> Tuple[int, Tuple[int, ...]]:
    """(a', a'_vec sorted ascending)."""
    _require_cy(data)
    return data.a_prime, tuple(sorted(data.a_prime_vec))


@dataclass(frozen=True)
class EigenCertificate:
    """c A = scale e with c a primitive positive integer vector."""
    c: Tuple[int, ...]
    scale: int

    @property
    def fingerprint(self) -> Tuple[int, Tuple[int, ...]]:
        g = gcd_all((self.scale,) + self.c)
        return self.scale // g, tuple(sorted(x // g for x in self.c))


def left_eigenvector_certificate(A) -> EigenCertificate:
    """
    Certificate for q' being proportional to c: solve A^T c = e over the
    rationals and scale to a primitive integer vector.
    """
    matrix = ensure_matrix(A)
    rational = solve_rational(matrix.A.T, [1] * matrix.n)
    denominator = 1
    for value in rational:
        denominator = denominator * value.denominator // gcd_all([denominator, value.denominator])
    integral = [int(value * denominator) for value in rational]
    g = gcd_all(integral)
    c = tuple(x // g for x in integral)
    if any(x <= 0 for x in c):
        raise InternalInconsistencyError(f"Left eigenvector c = {c} has a non-positive entry")
    products = {int(x) for x in as_int_matrix([c]).dot(matrix.A)[0]}
    if len(products) != 1:
        raise InternalInconsistencyError(f"c A is not constant for c = {c}")
    return EigenCertificate(c=c, scale=products.pop())
