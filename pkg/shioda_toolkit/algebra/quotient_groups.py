"""
Finite Abelian Group Computations

Builds the diagonal root-of-unity groups attached to an exponent matrix as
quotients of integer lattices, using the Smith normal form:

- Gamma_d        = Z^n / (d Z^n + Z e)
- Gamma(q')      = L / (d Z^n + Z e),   L = {k : q'.k = 0 mod d}
- Gamma_A        = L_A / (d Z^n + Z e), L_A = {k in L : B k in d Z^n + Z q_reduced}
- H_A            = L / L_A, reported through the images B k mod d

A root-of-unity vector acts on WP(q) trivially exactly when it is a
multiple of q_reduced mod d, which is why L_A is defined modulo q_reduced
and not modulo q.

Usage:
    from shioda_toolkit.algebra.quotient_groups import compute_groups

    groups = compute_groups(data)
    groups.gamma_q_prime.invariant_factors, groups.h_A.order
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from .errors import (
    InternalInconsistencyError,
    LengthMismatchError,
    ModulusMismatchError,
    NegativeExponentError,
    NotCalabiYauError,
)
from .exact_lattice import (
    identity_matrix,
    kernel_basis,
    lattice_basis,
    quotient_structure,
    solve_diophantine,
    zeros_matrix,
)
from .shioda_core import ShiodaData, analyze, ensure_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CyclotomicVector:
    """g_k: y_i -> zeta^{k_i} y_i with zeta a primitive d-th root of unity."""
    d: int
    k: Tuple[int, ...]

    @classmethod
    def of(cls, d: int, k: Sequence[int]) -> "CyclotomicVector":
        return cls(d=int(d), k=tuple(int(x) % d for x in k))

    def __len__(self) -> int:
        return len(self.k)


@dataclass
class AbelianGroupStructure:
    """Invariant factors d1 | d2 | ... (ones omitted) with a lift per cyclic factor."""
    name: str
    invariant_factors: List[int]
    generator_lifts: List[CyclotomicVector] = field(default_factory=list)

    @property
    def order(self) -> int:
        order = 1
        for factor in self.invariant_factors:
            order *= factor
        return order

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def to_dict(self) -> dict:
        return {
            'invariant_factors': list(self.invariant_factors),
            'order': str(self.order),
            'generator_lifts': [list(g.k) for g in self.generator_lifts],
        }


@dataclass
class GroupSet:
    """The three groups of an exponent matrix, checked against each other."""
    gamma_q_prime: AbelianGroupStructure
    gamma_A: AbelianGroupStructure
    h_A: AbelianGroupStructure

    @property
    def quotient_degree(self) -> int:
        return self.gamma_q_prime.order


def _require_cy(data: ShiodaData) -> None:
    if not data.is_cy:
        raise NotCalabiYauError(
            f"sum(q) = {data.Q} != d = {data.d}; group computations need the Calabi-Yau condition"
        )


def _column_matrix(vectors: Sequence[Sequence[int]], n: int) -> np.ndarray:
    matrix = zeros_matrix(n, len(vectors))
    for j, vector in enumerate(vectors):
        for i in range(n):
            matrix[i, j] = int(vector[i])
    return matrix


def boundary_generators(n: int, d: int) -> np.ndarray:
    """Columns d e_1, ..., d e_n, e generating d Z^n + Z e."""
    return np.concatenate([identity_matrix(n) * d, _column_matrix([[1] * n], n)], axis=1)


def congruence_lattice_basis(data: ShiodaData) -> np.ndarray:
    """Basis (columns) of L = {k : q'.k = 0 mod d}."""
    n, d = data.n, data.d
    system = zeros_matrix(1, n + 1)
    for k in range(n):
        system[0, k] = data.q_prime[k]
    system[0, n] = -d
    generators = [vector[:n] for vector in kernel_basis(system)]
    return lattice_basis(_column_matrix(generators, n))


def kernel_lattice_basis(data: ShiodaData) -> np.ndarray:
    """
    Basis (columns) of L_A.

    Unknowns (k, s0, c, s): q'.k - d s0 = 0 and B k - c q_reduced - d s = 0.
    """
    n, d = data.n, data.d
    width = n + 2 + n
    system = zeros_matrix(1 + n, width)
    for k in range(n):
        system[0, k] = data.q_prime[k]
    system[0, n] = -d
    for i in range(n):
        for k in range(n):
            system[1 + i, k] = data.B[i, k]
        system[1 + i, n + 1] = -data.q_reduced[i]
        system[1 + i, n + 2 + i] = -d
    generators = [vector[:n] for vector in kernel_basis(system)]
    return lattice_basis(_column_matrix(generators, n))


def _check_contains_e(basis: np.ndarray, label: str) -> None:
    n = basis.shape[0]
    e = [1] * n
    if not lattice_contains(basis, e):
        raise InternalInconsistencyError(f"e is not a member of {label}")


def lattice_contains(basis: np.ndarray, vector: Sequence[int]) -> bool:
    return solve_diophantine(basis, vector) is not None


def gamma_d(n: int, d: int) -> AbelianGroupStructure:
    """Gamma_d = (Z/d)^n / diagonal, isomorphic to (Z/d)^(n-1)."""
    factors, lifts = quotient_structure(identity_matrix(n), boundary_generators(n, d))
    return AbelianGroupStructure(
        name="gamma_d",
        invariant_factors=factors,
        generator_lifts=[CyclotomicVector.of(d, v) for v in lifts],
    )


def gamma_q_prime(data: ShiodaData) -> AbelianGroupStructure:
    """
    Subgroup of Gamma_d cut out by q'.k = 0 mod d.

    Raises:
    -------
    NotCalabiYauError
    InternalInconsistencyError
        If the order differs from d^(n-2) m'.
    """
    _require_cy(data)
    n, d = data.n, data.d
    basis = congruence_lattice_basis(data)
    _check_contains_e(basis, "L")
    factors, lifts = quotient_structure(basis, boundary_generators(n, d))
    group = AbelianGroupStructure(
        name="gamma_q_prime",
        invariant_factors=factors,
        generator_lifts=[CyclotomicVector.of(d, v) for v in lifts],
    )
    if n >= 2 and group.order != d ** (n - 2) * data.m_prime:
        raise InternalInconsistencyError(
            f"|Gamma(q')| = {group.order} but d^(n-2) m' = {d ** (n - 2) * data.m_prime}"
        )
    return group


def gamma_A(data: ShiodaData) -> AbelianGroupStructure:
    """Kernel of g_k -> g_{Bk} on Gamma(q')."""
    _require_cy(data)
    n, d = data.n, data.d
    basis = kernel_lattice_basis(data)
    _check_contains_e(basis, "L_A")
    factors, lifts = quotient_structure(basis, boundary_generators(n, d))
    return AbelianGroupStructure(
        name="gamma_A",
        invariant_factors=factors,
        generator_lifts=[CyclotomicVector.of(d, v) for v in lifts],
    )


def h_A(data: ShiodaData) -> AbelianGroupStructure:
    """
    Image of g_k -> g_{Bk}; generator lifts are the images B k mod d,
    defined up to multiples of q_reduced.
    """
    _require_cy(data)
    d = data.d
    factors, lifts = quotient_structure(congruence_lattice_basis(data), kernel_lattice_basis(data))
    images = [CyclotomicVector.of(d, data.B.dot(k)) for k in lifts]
    return AbelianGroupStructure(name="h_A", invariant_factors=factors, generator_lifts=images)


def compute_groups(data: ShiodaData) -> GroupSet:
    """All three groups, with |Gamma_A| |H_A| = |Gamma(q')| checked."""
    groups = GroupSet(gamma_q_prime=gamma_q_prime(data), gamma_A=gamma_A(data), h_A=h_A(data))
    if groups.gamma_A.order * groups.h_A.order != groups.gamma_q_prime.order:
        raise InternalInconsistencyError(
            f"|Gamma_A| |H_A| = {groups.gamma_A.order * groups.h_A.order} "
            f"!= |Gamma(q')| = {groups.gamma_q_prime.order}"
        )
    for lift in groups.h_A.generator_lifts:
        if not is_automorphism_vector(lift, data):
            raise InternalInconsistencyError(f"H_A lift {lift.k} does not preserve F_A = 0")
    logger.debug(
        f"Groups: Gamma(q')={groups.gamma_q_prime.invariant_factors} "
        f"Gamma_A={groups.gamma_A.invariant_factors} H_A={groups.h_A.invariant_factors}"
    )
    return groups


def quotient_degree(data: ShiodaData) -> int:
    """Degree of the quotient map from the Fermat family onto the Shioda quotient."""
    return gamma_q_prime(data).order


# ---------------------------------------------------------------------------
# Membership predicates and characters
# ---------------------------------------------------------------------------

def scaling_residues(data: ShiodaData) -> Set[Tuple[int, ...]]:
    """All c q_reduced mod d: the root-of-unity vectors acting trivially on WP(q)."""
    d = data.d
    return {tuple((c * x) % d for x in data.q_reduced) for c in range(d)}


def in_gamma_q_prime(data: ShiodaData, k: Sequence[int]) -> bool:
    return sum(a * b for a, b in zip(data.q_prime, k)) % data.d == 0


def in_gamma_A(data: ShiodaData, k: Sequence[int], scaling: Optional[Set[Tuple[int, ...]]] = None) -> bool:
    if not in_gamma_q_prime(data, k):
        return False
    image = tuple(int(x) % data.d for x in data.B.dot(np.array([int(v) for v in k], dtype=object)))
    return image in (scaling if scaling is not None else scaling_residues(data))


def _modulus_of(target) -> Tuple[int, np.ndarray]:
    if isinstance(target, ShiodaData):
        return target.d, target.A
    data = analyze(ensure_matrix(target))
    return data.d, data.A


def is_automorphism_vector(w: CyclotomicVector, target) -> bool:
    """True iff A w = c e mod d for some c, so every monomial of F_A rescales alike."""
    d, A = _modulus_of(target)
    if w.d != d:
        raise ModulusMismatchError(f"Vector modulus {w.d} differs from d = {d}")
    if len(w.k) != A.shape[0]:
        raise LengthMismatchError(f"Vector has length {len(w.k)}, matrix has size {A.shape[0]}")
    residues = {int(x) % d for x in A.dot(np.array(w.k, dtype=object))}
    return len(residues) == 1


def form_character(k: CyclotomicVector, b: Sequence[int]) -> int:
    """Residue sum (b_i + 1) k_i mod d by which g_k scales the form with exponents b."""
    if len(k.k) != len(b):
        raise LengthMismatchError(f"k has length {len(k.k)}, b has length {len(b)}")
    if any(x < 0 for x in b):
        raise NegativeExponentError(f"Form exponents {tuple(b)} must be non-negative")
    return sum((bi + 1) * ki for bi, ki in zip(b, k.k)) % k.d


def invariant_form_exponents(data: ShiodaData) -> Tuple[int, ...]:
    """b = q' - e, exponents of the unique Gamma(q')-invariant holomorphic form."""
    _require_cy(data)
    b = tuple(x - 1 for x in data.q_prime)
    if any(x < 0 for x in b):
        raise NegativeExponentError(f"q' - e = {b} has a negative entry")
    if sum(b) != data.d - data.n:
        raise InternalInconsistencyError(f"sum(q' - e) = {sum(b)} != d - n = {data.d - data.n}")
    return b


def u0_character(data: ShiodaData, k: Sequence[int]) -> int:
    """Residue q'.k mod d: g_k acts on u_0 = prod y^{q'} through zeta to this power."""
    if len(k) != data.n:
        raise LengthMismatchError(f"k has length {len(k)}, expected {data.n}")
    return sum(a * int(b) for a, b in zip(data.q_prime, k)) % data.d


def in_h_A_image(data: ShiodaData, w: Sequence[int]) -> bool:
    """True iff w = B k + c q_reduced mod d for some k in L."""
    _require_cy(data)
    n, d = data.n, data.d
    if len(w) != n:
        raise LengthMismatchError(f"w has length {len(w)}, expected {n}")
    images = data.B.dot(congruence_lattice_basis(data))
    generators = np.concatenate(
        [images, identity_matrix(n) * d, _column_matrix([data.q_reduced], n)], axis=1
    )
    return lattice_contains(generators, [int(x) for x in w])
