"""
Seeded random suite of Calabi-Yau exponent matrices.

Weights q are drawn first; every row is then a monomial of weighted
degree sum(q), either x_i^a or x_i^a x_j with 2 <= a <= max_exponent.
Such matrices satisfy A q = sum(q) e, so each accepted matrix is
Calabi-Yau. With calabi_yau=False one diagonal exponent of the drawn matrix
is then raised by 1 to 3, which breaks the Calabi-Yau condition.
A draw is kept when det(A) != 0 and analyze() succeeds.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..algebra.errors import ShiodaInputError
from ..algebra.shioda_core import ExponentMatrix, ShiodaData, analyze

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240917
MAX_EXPONENT = 10


@dataclass
class RandomCase:
    """A drawn matrix with the weights its rows were built from."""
    index: int
    weights: List[int]
    data: ShiodaData

    @property
    def matrix(self) -> ExponentMatrix:
        return self.data.matrix


def _row_candidates(weights: List[int], i: int, max_exponent: int) -> List[List[int]]:
    n, total = len(weights), sum(weights)
    candidates = []
    for a in range(2, max_exponent + 1):
        rest = total - a * weights[i]
        if rest < 0:
            break
        if rest == 0:
            candidates.append([a if k == i else 0 for k in range(n)])
            continue
        for j in range(n):
            if j != i and weights[j] == rest:
                candidates.append([a if k == i else (1 if k == j else 0) for k in range(n)])
    return candidates


def _draw_matrix(rng: np.random.Generator, weights: List[int], max_exponent: int) -> Optional[List[List[int]]]:
    rows = []
    for i in range(len(weights)):
        candidates = _row_candidates(weights, i, max_exponent)
        if not candidates:
            return None
        rows.append(candidates[int(rng.integers(len(candidates)))])
    return rows


def _raise_diagonal(rng: np.random.Generator, rows: List[List[int]]) -> List[List[int]]:
    raised = [list(row) for row in rows]
    i = int(rng.integers(len(raised)))
    raised[i][i] += int(rng.integers(1, 4))
    return raised


def random_suite(count: int = 10, n: int = 5, seed: int = DEFAULT_SEED, max_weight: int = 12,
                 max_exponent: int = MAX_EXPONENT, max_attempts: int = 50000,
                 calabi_yau: bool = True) -> List[RandomCase]:
    """
    Up to `count` random exponent matrices, reproducible from `seed`.

    Parameters:
    -----------
    count : int
        Number of matrices wanted
    n : int
        Matrix size
    max_weight : int
        Weights are drawn from 1..max_weight
    max_attempts : int
        Weight draws before giving up; fewer cases are returned then
    calabi_yau : bool
        False draws admissible matrices that fail the Calabi-Yau condition
    """
    rng = np.random.default_rng(seed)
    cases: List[RandomCase] = []
    seen = set()
    attempts = 0
    while len(cases) < count and attempts < max_attempts:
        attempts += 1
        weights = [int(w) for w in rng.integers(1, max_weight + 1, size=n)]
        rows = _draw_matrix(rng, weights, max_exponent)
        if rows is not None and not calabi_yau:
            rows = _raise_diagonal(rng, rows)
        if rows is None or tuple(map(tuple, rows)) in seen:
            continue
        try:
            data = analyze(ExponentMatrix.from_rows(rows))
        except ShiodaInputError:
            continue
        seen.add(tuple(map(tuple, rows)))
        cases.append(RandomCase(index=len(cases), weights=weights, data=data))

    if len(cases) < count:
        logger.warning(f"Random suite: only {len(cases)} of {count} matrices after {attempts} draws")
    else:
        logger.debug(f"Random suite: {count} matrices after {attempts} draws (seed {seed})")
    return cases
