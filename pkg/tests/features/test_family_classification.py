#!/usr/bin/env python3
"""
Test classification of the twelve birational families by quotient
fingerprint, with left-eigenvector certificates.
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

import pytest

from shioda_toolkit.algebra.errors import FixtureNotFoundError, InputFormatError
from shioda_toolkit.data.fixture_manager import classify_families, get_fixture_manager, verify_fixture

EXPECTED_CLASSES = {
    (8, (1, 1, 1, 1, 4)): ['A1', 'A2', 'A3', 'A4'],
    (10, (1, 1, 1, 2, 5)): ['B1', 'B2', 'B3', 'B4'],
    (6, (1, 1, 1, 1, 2)): ['C1', 'C2'],
    (5, (1, 1, 1, 1, 1)): ['D1', 'D2'],
}


def test_twelve_families_partition_into_four_classes():
    classification = get_fixture_manager().classify_registry()
    assert classification.classes == EXPECTED_CLASSES
    assert classification.consistent
    assert len(classification.table) == 12
    assert classification.table['certified'].all()
    assert classification.table['matches_class'].all()
    print("✅ Four fingerprint classes")


def test_certificates_and_node_metadata():
    table = get_fixture_manager().classify_registry().table.set_index('family')
    assert table.loc['D1', 'certificate_c'] == (1, 1, 1, 1, 1)
    assert table.loc['D1', 'certificate_scale'] == 5
    assert table.loc['A1', 'certificate_c'] == (1, 1, 1, 1, 4)
    assert table.loc['A1', 'certificate_scale'] == 8
    assert table.loc['B2', 'node'] == "t^10 = 800000"
    assert table.loc['C1', 'class'] == 'C'


def test_family_fixtures_verify():
    for fixture in get_fixture_manager().fixtures('birational_families'):
        failed = [row['check'] for row in verify_fixture(fixture) if not row['passed']]
        assert failed == [], f"{fixture['name']}: {failed}"


def test_subset_classification():
    manager = get_fixture_manager()
    classification = manager.classify_registry(names=['D1', 'D2'])
    assert classification.classes == {(5, (1, 1, 1, 1, 1)): ['D1', 'D2']}
    assert classification.consistent

    single = manager.classify_registry(names=['B3'])
    assert list(single.classes) == [(10, (1, 1, 1, 2, 5))]

    with pytest.raises(FixtureNotFoundError):
        manager.classify_registry(names=['Z9'])


def test_families_without_class_labels():
    fixtures = [
        {'name': 'D2', 'monomials': [[0, 0, 5, 0, 0], [5, 0, 0, 1, 0], [0, 1, 0, 4, 0], [0, 4, 0, 0, 1], [0, 0, 0, 0, 4]]},
        {'name': 'D1', 'monomials': [[5, 0, 1, 0, 0], [0, 0, 4, 1, 0], [0, 1, 0, 4, 0], [0, 4, 0, 0, 1], [0, 0, 0, 0, 4]]},
    ]
    classification = classify_families(fixtures)
    assert classification.consistent
    assert list(classification.table['family']) == ['D1', 'D2']
    assert classification.table['class'].nunique() == 1


def test_mislabelled_family_is_inconsistent():
    fixtures = get_fixture_manager().fixtures('birational_families')
    relabelled = [dict(f, **{'class': 'A'}) if f['name'] == 'D1' else f for f in fixtures]
    metadata = get_fixture_manager().config_manager.get_registry_metadata('birational_families')
    classification = classify_families(relabelled, metadata['classes'])
    assert not classification.consistent


def test_invalid_family_names_the_family():
    with pytest.raises(InputFormatError) as excinfo:
        classify_families([{'name': 'broken', 'monomials': [[1, 1], [1, 1]]}])
    assert 'broken' in str(excinfo.value)


if __name__ == "__main__":
    print("Testing family classification...")
    print("=" * 50)
    try:
        test_twelve_families_partition_into_four_classes()
        test_certificates_and_node_metadata()
        test_family_fixtures_verify()
        test_subset_classification()
        test_families_without_class_labels()
        test_mislabelled_family_is_inconsistent()
        test_invalid_family_names_the_family()
        print("\n" + "=" * 50)
        print("🎉 ALL CLASSIFICATION TESTS PASSED!")
    except Exception as e:
        print(f"\n❌ TEST FAILED: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
