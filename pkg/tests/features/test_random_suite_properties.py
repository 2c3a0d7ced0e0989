#!/usr/bin/env python3
"""
Property checks over a seeded suite of random Calabi-Yau exponent matrices:
group order law, root identity, composition law, fingerprints and
eigenvector certificates. A second seeded suite of non-Calabi-Yau
matrices checks the degree condition and homogeneity.
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

import numpy as np
import pytest

from shioda_toolkit.algebra.exact_lattice import smith_normal_form
from shioda_toolkit.algebra.monomial_maps import (
    check_composition_law,
    fingerprint,
    left_eigenvector_certificate,
    root_identity_check,
)
from shioda_toolkit.algebra.quotient_groups import compute_groups
from shioda_toolkit.algebra.shioda_core import analyze, build_F, check_cy
from shioda_toolkit.data.random_suite import random_suite

SUITE_SIZE = 100


@pytest.fixture(scope="module")
def suite():
    cases = random_suite(count=SUITE_SIZE)
    assert len(cases) == SUITE_SIZE
    return cases


def test_suite_is_reproducible():
    first = [case.matrix.to_list() for case in random_suite(count=5, seed=42)]
    second = [case.matrix.to_list() for case in random_suite(count=5, seed=42)]
    assert first == second


def test_suite_matrices_are_calabi_yau(suite):
    for case in suite:
        data = case.data
        assert data.is_cy and check_cy(case.matrix)
        assert sum(data.q_prime) == data.d
        assert max(max(row) for row in case.matrix.to_list()) <= 10
        assert build_F(case.matrix).is_weighted_homogeneous(data.q)


def test_non_calabi_yau_matrices():
    """Raised diagonal exponents: the CY test tracks sum(q') == d and F_A stays homogeneous."""
    cases = random_suite(count=200, seed=7, calabi_yau=False)
    assert len(cases) == 200
    for case in cases:
        data = case.data
        assert check_cy(case.matrix) == (sum(data.q_prime) == data.d)
        assert data.is_cy == check_cy(case.matrix)
        assert not data.is_cy
        assert set(build_F(case.matrix).weighted_degrees(data.q)) == {data.d}
    print("✅ Non-Calabi-Yau suite")


def test_order_law(suite):
    for case in suite:
        data = case.data
        groups = compute_groups(data)
        assert groups.gamma_q_prime.order == data.d ** (data.n - 2) * data.m_prime
        assert groups.gamma_A.order * groups.h_A.order == groups.gamma_q_prime.order
    print(f"✅ Order law on {len(suite)} random matrices")


def test_root_identity_and_composition_law(suite):
    for case in suite:
        data = case.data
        assert root_identity_check(data)
        composed = check_composition_law(data).exponent_rows()
        assert composed[0] == list(data.q_prime)
        assert composed[1:] == [[data.d if i == j else 0 for j in range(data.n)] for i in range(data.n)]


def test_fingerprint_certificates(suite):
    for case in suite:
        certificate = left_eigenvector_certificate(case.matrix)
        assert certificate.fingerprint == fingerprint(case.data)
        assert all(c > 0 for c in certificate.c)


def test_fingerprint_permutation_invariance(suite):
    rng = np.random.default_rng(17)
    for case in suite[:25]:
        A = np.array(case.matrix.to_list(), dtype=object)
        perm = rng.permutation(case.data.n)
        permuted = analyze(A[perm][:, perm].tolist())
        assert fingerprint(permuted) == fingerprint(case.data)
        assert sorted(permuted.q) == sorted(case.data.q)


def test_smith_form_divisibility(suite):
    for case in suite[:25]:
        snf = smith_normal_form(case.data.B)
        diagonal = [abs(x) for x in snf.diagonal]
        assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]) if a)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
