#!/usr/bin/env python3
"""
Tests for the Shioda and quotient maps, quotient equations, birational
inverses, transposes and fingerprints.
"""

import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

import numpy as np
import pytest

from shioda_toolkit.algebra.errors import DimensionMismatchError, InternalInconsistencyError, NotCalabiYauError
from shioda_toolkit.algebra.monomial_maps import (
    InverseLine,
    InverseMap,
    MonomialRelation,
    apply_u0_corrections,
    canonical_line,
    check_composition_law,
    compose,
    construct_inverse,
    family_equations,
    fingerprint,
    left_eigenvector_certificate,
    mbar_equations,
    mirror_matches_weights,
    mirror_transpose,
    phi_map,
    projection_map,
    q_map,
    root_identity_check,
    verify_inverse,
)
from shioda_toolkit.algebra.shioda_core import analyze

EXAMPLE_A = [[5, 0, 0, 0, 0], [0, 10, 0, 0, 0], [0, 0, 10, 0, 0], [0, 0, 0, 10, 0], [0, 0, 0, 0, 2]]
EXAMPLE_B = [[15, 0, 0, 0, 1], [0, 5, 0, 0, 0], [0, 0, 5, 0, 0], [0, 0, 1, 5, 0], [0, 1, 0, 0, 2]]
EXAMPLE_D = [[5, 0, 0, 0, 0], [0, 9, 1, 0, 0], [0, 0, 9, 1, 0], [0, 0, 0, 10, 0], [0, 0, 0, 0, 2]]
QUINTIC = [[5 if i == j else 0 for j in range(5)] for i in range(5)]
D1 = [[5, 0, 1, 0, 0], [0, 0, 4, 1, 0], [0, 1, 0, 4, 0], [0, 4, 0, 0, 1], [0, 0, 0, 0, 4]]

PRINTED_D_INVERSE = InverseMap(
    mu=(2, 3, 1, 1, 2),
    lines=(
        InverseLine(s=162, c0=0, c=(65, 54, 12, 15, 162)),
        InverseLine(s=81, c0=0, c=(-2, 8, -11, -8, -5)),
        InverseLine(s=81, c0=0, c=(18, 19, -1, 1, 45)),
        InverseLine(s=81, c0=0, c=(0, 9, -10, -7, 0)),
        InverseLine(s=405, c0=0, c=(81, 90, -10, 1, 203)),
    ),
)


def test_maps_and_composition_law():
    data = analyze(EXAMPLE_B)
    phi = phi_map(data)
    assert phi.target_degrees == data.q
    assert q_map(data).is_weighted_homogeneous()

    composed = check_composition_law(data)
    assert composed.exponent_rows()[0] == list(data.q_prime)
    assert composed.exponent_rows()[1:] == [[150 if i == j else 0 for j in range(5)] for i in range(5)]
    assert composed.label == "q_A o phi_A"
    assert root_identity_check(data)

    with pytest.raises(DimensionMismatchError):
        compose(phi, q_map(data))
    print("✅ Maps and composition law")


def test_projection_map():
    data = analyze(EXAMPLE_A)
    projection = projection_map(data)
    assert projection.source_dimension == 6
    assert projection.target_dimension == 5
    assert compose(projection, q_map(data)).exponent_rows() == [list(row) for row in EXAMPLE_A]


def test_quotient_equations():
    unreduced, reduced = mbar_equations(analyze(EXAMPLE_B))
    assert unreduced.relation == MonomialRelation(150, (10, 16, 24, 30, 70))
    assert reduced.relation == MonomialRelation(75, (5, 8, 12, 15, 35))
    assert reduced.linear_coefficients == (1, 1, 1, 1, 1)
    assert unreduced.relation.reduced() == reduced.relation
    assert reduced.relation.is_balanced

    unreduced_d, reduced_d = mbar_equations(analyze(EXAMPLE_D))
    assert unreduced_d.relation == reduced_d.relation == MonomialRelation(810, (162, 90, 80, 73, 405))

    with pytest.raises(NotCalabiYauError):
        mbar_equations(analyze([[1, 0], [0, 1]]))
    print("✅ Quotient equations")


def test_family_equations():
    data = analyze(QUINTIC)
    assert family_equations(data, Fraction(0)) == mbar_equations(data)[0]
    assert family_equations(data, None) == mbar_equations(data)[0]

    symbolic = family_equations(data, "t")
    assert symbolic.parameter == "t"
    assert symbolic.u0_coefficient == "-t"
    assert symbolic.eliminated == MonomialRelation(5, (1, 1, 1, 1, 1))

    numeric = family_equations(data, Fraction(3, 2))
    assert numeric.u0_coefficient == Fraction(-3, 2)


def test_printed_inverse_example_d():
    data = analyze(EXAMPLE_D)
    verification = verify_inverse(data, PRINTED_D_INVERSE)
    assert not verification.valid
    assert verification.valid_count == 1
    assert [line.u0_correction for line in verification.lines] == [None, 172, 72, 162, 405]

    corrected = apply_u0_corrections(PRINTED_D_INVERSE, verification)
    assert [line.c0 for line in corrected.lines] == [0, 172, 72, 162, 405]
    assert verify_inverse(data, corrected).valid

    line = PRINTED_D_INVERSE.lines[0]
    lhs = [line.s * mu + (1 if i == 0 else 0) for i, mu in enumerate(PRINTED_D_INVERSE.mu)]
    rhs = [int(x) for x in np.array(EXAMPLE_D, dtype=object).T.dot(np.array(line.c, dtype=object))]
    assert lhs == rhs == [325, 486, 162, 162, 324]
    print("✅ Printed Example D inverse repaired")


def test_verify_inverse_relation_invariance():
    data = analyze(EXAMPLE_D)
    verification = verify_inverse(data, PRINTED_D_INVERSE)
    corrected = apply_u0_corrections(PRINTED_D_INVERSE, verification)
    shifted_lines = tuple(
        replace(line, c0=line.c0 + 3 * data.d, c=tuple(c - 3 * q for c, q in zip(line.c, data.q_prime)))
        for line in corrected.lines
    )
    assert verify_inverse(data, replace(corrected, lines=shifted_lines)).valid

    c0, c = canonical_line(data, 172 + 810, tuple(x - q for x, q in zip((-2, 8, -11, -8, -5), data.q_prime)))
    assert c0 == 172
    assert c == (-2, 8, -11, -8, -5)


def test_construct_inverse():
    data = analyze(EXAMPLE_D)
    inverse = construct_inverse(data)
    assert inverse is not None
    assert verify_inverse(data, inverse).valid
    assert all(mu >= 1 for mu in inverse.mu)
    assert all(line.s == inverse.kappa * q for line, q in zip(inverse.lines, data.q_reduced))
    assert all(0 <= line.c0 < data.a_prime for line in inverse.lines)

    conic = analyze([[2, 0], [0, 2]])
    assert verify_inverse(conic, construct_inverse(conic)).valid

    assert construct_inverse(analyze(QUINTIC)) is None
    assert construct_inverse(analyze(EXAMPLE_A)) is None
    print("✅ Inverse construction")


def test_mirror_transpose():
    for matrix in (EXAMPLE_A, QUINTIC):
        data = analyze(matrix)
        assert mirror_transpose(matrix) == family_equations(data, Fraction(1))

    data_b = analyze(EXAMPLE_B)
    mirror = mirror_transpose(EXAMPLE_B)
    assert mirror_matches_weights(data_b, mirror)
    assert mirror.relation.reduced().exponents == (1, 5, 5, 4, 10)
    assert mirror != family_equations(data_b, Fraction(1))
    print("✅ Transpose construction")


def test_fingerprints_and_certificates():
    assert fingerprint(analyze(EXAMPLE_B)) == (75, (5, 8, 12, 15, 35))
    assert fingerprint(analyze(EXAMPLE_A)) == (10, (1, 1, 1, 2, 5))

    certificate = left_eigenvector_certificate(D1)
    assert certificate.c == (1, 1, 1, 1, 1)
    assert certificate.scale == 5
    assert certificate.fingerprint == fingerprint(analyze(D1)) == (5, (1, 1, 1, 1, 1))

    # A^T c = e gives c = (1, -1)
    with pytest.raises(InternalInconsistencyError):
        left_eigenvector_certificate([[1, 2], [0, 1]])


def test_fingerprint_permutation_invariance():
    rng = np.random.default_rng(3)
    for matrix in (EXAMPLE_B, EXAMPLE_D, D1):
        A = np.array(matrix, dtype=object)
        expected = fingerprint(analyze(matrix))
        for _ in range(5):
            perm = rng.permutation(len(matrix))
            permuted = A[perm][:, perm]
            assert fingerprint(analyze(permuted.tolist())) == expected
    print("✅ Fingerprint permutation invariance")


if __name__ == "__main__":
    print("Testing monomial maps...")
    print("=" * 50)
    try:
        test_maps_and_composition_law()
        test_projection_map()
        test_quotient_equations()
        test_family_equations()
        test_printed_inverse_example_d()
        test_verify_inverse_relation_invariance()
        test_construct_inverse()
        test_mirror_transpose()
        test_fingerprints_and_certificates()
        test_fingerprint_permutation_invariance()
        print("\n" + "=" * 50)
        print("🎉 ALL MONOMIAL MAP TESTS PASSED!")
    except Exception as e:
        print(f"\n❌ TEST FAILED: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
