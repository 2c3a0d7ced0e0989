"""
Brute-Force Group Oracle

Independent cross-check of the SNF group structures by exhaustive
enumeration. Every class of (Z/d)^n / <e> has a unique representative with
k_1 = 0, so the d^(n-1) such vectors are enumerated, the three groups are
cut out by their defining congruences, and the invariant factors are
rebuilt from the number of elements killed by each prime power.

Only used when d^n is below the configured bound (10^6 by default).
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from .errors import InternalInconsistencyError
from .exact_lattice import prime_factors
from .quotient_groups import GroupSet
from .shioda_core import ShiodaData
from ..utils.config import ORACLE_ENUMERATION_BOUND

logger = logging.getLogger(__name__)


@dataclass
class OracleResult:
    gamma_q_prime: List[int]
    gamma_A: List[int]
    h_A: List[int]
    elements_enumerated: int


def _exact_log(value: int, base: int) -> int:
    exponent = 0
    while value > 1:
        if value % base != 0:
            raise InternalInconsistencyError(f"Element count ratio is not a power of {base}")
        value //= base
        exponent += 1
    return exponent


def _primary_powers(killed_counts: List[int], p: int) -> List[int]:
    """
    Orders of the cyclic p-factors, largest first, from
    killed_counts[j] = #{x : p^j x = 0} for j = 0..e.
    """
    ranks = [_exact_log(killed_counts[j] // killed_counts[j - 1], p) for j in range(1, len(killed_counts))]
    ranks.append(0)
    powers: List[int] = []
    for j in range(len(ranks) - 1, 0, -1):
        powers.extend([p ** j] * (ranks[j - 1] - ranks[j]))
    return powers


def invariant_factors_from_primary(primary: Dict[int, List[int]]) -> List[int]:
    """Combine p-primary cyclic orders into invariant factors, ascending, ones omitted."""
    length = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(length):
        factor = 1
        for powers in primary.values():
            if i < len(powers):
                factor *= powers[i]
        factors.append(factor)
    return sorted(f for f in factors if f != 1)


def _encode(rows: np.ndarray, d: int) -> np.ndarray:
    weights = d ** np.arange(rows.shape[1], dtype=np.int64)
    return rows.dot(weights)


def enumerate_groups(data: ShiodaData, bound: int = ORACLE_ENUMERATION_BOUND) -> Optional[OracleResult]:
    """
    Invariant factors of Gamma(q'), Gamma_A and H_A by enumeration.

    Returns None when d^n exceeds bound.
    """
    n, d = data.n, data.d
    if n < 2 or d ** n > bound:
        logger.debug(f"Oracle skipped: d^n = {d ** n} exceeds bound {bound}")
        return None

    B = np.array(data.B.tolist(), dtype=np.int64)
    if int(np.abs(B).max()) * d * d * n >= 2 ** 62:
        logger.debug("Oracle skipped: int64 range too small for this matrix")
        return None

    tail = np.indices((d,) * (n - 1)).reshape(n - 1, -1).T
    reps = np.concatenate([np.zeros((tail.shape[0], 1), dtype=np.int64), tail.astype(np.int64)], axis=1)

    q_prime = np.array(data.q_prime, dtype=np.int64)
    gamma = reps[(reps.dot(q_prime) % d) == 0]
    images = gamma.dot(B.T) % d

    q_reduced = np.array(data.q_reduced, dtype=np.int64)
    scaling = np.unique(_encode((np.arange(d, dtype=np.int64)[:, None] * q_reduced[None, :]) % d, d))
    in_kernel = np.isin(_encode(images, d), scaling)
    kernel = gamma[in_kernel]
    kernel_order = int(in_kernel.sum())

    primary_gamma: Dict[int, List[int]] = {}
    primary_kernel: Dict[int, List[int]] = {}
    primary_image: Dict[int, List[int]] = {}
    for p, e in prime_factors(d).items():
        counts_gamma, counts_kernel, counts_image = [1], [1], [1]
        for j in range(1, e + 1):
            power = p ** j
            counts_gamma.append(int(np.all((power * gamma) % d == 0, axis=1).sum()))
            counts_kernel.append(int(np.all((power * kernel) % d == 0, axis=1).sum()))
            lifted = np.isin(_encode((power * images) % d, d), scaling).sum()
            if lifted % kernel_order:
                raise InternalInconsistencyError("Coset count is not a multiple of |Gamma_A|")
            counts_image.append(int(lifted) // kernel_order)
        primary_gamma[p] = _primary_powers(counts_gamma, p)
        primary_kernel[p] = _primary_powers(counts_kernel, p)
        primary_image[p] = _primary_powers(counts_image, p)

    result = OracleResult(
        gamma_q_prime=invariant_factors_from_primary(primary_gamma),
        gamma_A=invariant_factors_from_primary(primary_kernel),
        h_A=invariant_factors_from_primary(primary_image),
        elements_enumerated=int(reps.shape[0]),
    )
    logger.debug(f"Oracle enumerated {result.elements_enumerated} classes for d={d}, n={n}")
    return result


def compare_with_oracle(groups: GroupSet, oracle: OracleResult) -> List[str]:
    """Field-level differences between SNF structures and the enumeration; empty when they agree."""
    differences = []
    for name in ('gamma_q_prime', 'gamma_A', 'h_A'):
        computed = getattr(groups, name).invariant_factors
        enumerated = getattr(oracle, name)
        if list(computed) != list(enumerated):
            differences.append(f"{name}: SNF {computed} != enumeration {enumerated}")
    return differences
