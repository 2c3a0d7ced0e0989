"""
Weighted Projective Space Utilities

Combinatorics of a weight system (q_1, ..., q_n): gcd reduction,
well-formedness, the coordinate strata carrying cyclic quotient
singularities and the divisibility test for the canonical sheaf being a
line bundle.

Indices are 0-based throughout.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import NonPositiveWeightError
from .exact_lattice import gcd_all, lcm_all, prime_factors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights of WP(q_1, ..., q_n)."""
    weights: Tuple[int, ...]

    def __post_init__(self):
        for i, value in enumerate(self.weights):
            if value < 1:
                raise NonPositiveWeightError("weights", i, value)

    @classmethod
    def of(cls, weights: Sequence[int]) -> "WeightSystem":
        return weights if isinstance(weights, WeightSystem) else cls(tuple(int(w) for w in weights))

    @property
    def Q(self) -> int:
        return sum(self.weights)

    @property
    def n(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class SingularStratum:
    """
    Coordinate subspace {x_j = 0 for j not in indices} where every nonzero
    coordinate has weight divisible by prime.
    """
    prime: int
    indices: Tuple[int, ...]
    contained_in_hypersurface: Optional[bool] = None

    @property
    def dimension(self) -> int:
        return len(self.indices) - 1

    def to_dict(self) -> dict:
        return {
            'prime': self.prime,
            'indices': list(self.indices),
            'dimension': self.dimension,
            'contained_in_hypersurface': self.contained_in_hypersurface,
        }


def reduce_gcd(q) -> Tuple[int, WeightSystem]:
    """Return m = gcd(q) and the coprime weight system q / m."""
    system = WeightSystem.of(q)
    m = gcd_all(system.weights)
    return m, WeightSystem(tuple(w // m for w in system.weights))


def _well_form_step(weights: Tuple[int, ...]) -> Tuple[int, ...]:
    n = len(weights)
    others_gcd = [gcd_all(weights[:i] + weights[i + 1:]) for i in range(n)]
    divisors = [lcm_all(others_gcd[:i] + others_gcd[i + 1:]) for i in range(n)]
    return tuple(w // a for w, a in zip(weights, divisors))


def well_form(q) -> WeightSystem:
    """
    Iterate q_i -> q_i / a_i, a_i = lcm of d_j (j != i), d_j = gcd of all
    weights except q_j, until nothing changes.
    """
    system = WeightSystem.of(q)
    if system.n == 1:
        return WeightSystem((1,))
    current = system.weights
    passes = 0
    while True:
        reduced = _well_form_step(current)
        passes += 1
        if reduced == current:
            break
        current = reduced
    logger.debug(f"well_form{system.weights} -> {current} after {passes} passes")
    return WeightSystem(current)


def is_well_formed(q) -> bool:
    """Every n-1 of the weights are coprime as a set."""
    weights = WeightSystem.of(q).weights
    if len(weights) == 1:
        return weights == (1,)
    return all(gcd_all(weights[:i] + weights[i + 1:]) == 1 for i in range(len(weights)))


def singular_strata(q, exponent_rows: Optional[Sequence[Sequence[int]]] = None) -> List[SingularStratum]:
    """
    One stratum per prime dividing some weight, ordered by prime.

    When exponent_rows (the rows of A) are given, each stratum also records
    whether every monomial of F_A vanishes identically on it, i.e. whether
    every monomial involves a coordinate outside the index set.
    """
    weights = WeightSystem.of(q).weights
    primes = sorted(set(p for w in weights for p in prime_factors(w)))
    strata = []
    for p in primes:
        indices = tuple(i for i, w in enumerate(weights) if w % p == 0)
        contained = None
        if exponent_rows is not None:
            contained = all(
                any(row[j] > 0 for j in range(len(weights)) if j not in indices)
                for row in exponent_rows
            )
        strata.append(SingularStratum(prime=p, indices=indices, contained_in_hypersurface=contained))
    return strata


def fano_divisibility(q) -> bool:
    """True iff q_i divides Q = sum(q) for every i."""
    system = WeightSystem.of(q)
    return all(system.Q % w == 0 for w in system.weights)
