#!/usr/bin/env python3
"""
Test the shioda_cli subcommands: output formats, exit codes and the
output directory override.
"""

import json
import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

import pytest

from shioda_cli import EXIT_INPUT, EXIT_OK, main
from shioda_toolkit.components.report_builder import AnalysisReport
from shioda_toolkit.utils.config import OUTPUT_DIR_ENV, PROJECT_ROOT

EXAMPLES = PROJECT_ROOT / 'config' / 'examples'


@pytest.fixture(autouse=True)
def _stdout_only(monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)


def test_analyze_json(capsys):
    assert main(['analyze', str(EXAMPLES / 'example_a.json')]) == EXIT_OK
    report = AnalysisReport.from_json(capsys.readouterr().out)
    assert report.d == 10
    assert report.groups['h_A']['invariant_factors'] == [10, 10]
    print("✅ analyze (json)")


def test_analyze_text_and_latex(capsys):
    assert main(['analyze', '--fixture', 'exampleB', '--format', 'text']) == EXIT_OK
    assert "📋 exampleB" in capsys.readouterr().out
    assert main(['analyze', '--fixture', 'exampleB', '--format', 'latex']) == EXIT_OK
    assert "u_0^{75}" in capsys.readouterr().out


def test_equations_text(capsys):
    assert main(['equations', '--fixture', 'exampleB', '--format', 'text']) == EXIT_OK
    assert capsys.readouterr().out.strip() == "u0^75 = u1^5 u2^8 u3^12 u4^15 u5^35 ; u1+u2+u3+u4+u5 = 0"


def test_equations_family(capsys):
    assert main(['equations', str(EXAMPLES / 'quintic.json'), '--family', '--format', 'json']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['t'] == 't'
    assert payload['linear']['u0'] == '-t'
    assert payload['eliminated'] == {'power': 5, 'exponents': [1, 1, 1, 1, 1]}

    assert main(['equations', '--fixture', 'quintic', '-t', '3/2', '--format', 'json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['t'] == '3/2'


def test_groups_with_oracle(capsys):
    assert main(['groups', str(EXAMPLES / 'quintic.json'), '--oracle']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['groups']['h_A']['invariant_factors'] == [5, 5, 5]
    assert payload['oracle']['checked'] is True


def test_invert_and_mirror(capsys):
    assert main(['invert', '--fixture', 'conic']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['present'] is True
    assert all(line['valid'] for line in payload['verification'])

    assert main(['invert', '--fixture', 'quintic', '--format', 'text']) == EXIT_OK
    assert capsys.readouterr().out.startswith("❌ quintic")

    assert main(['mirror', '--fixture', 'exampleB', '--format', 'json']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['equals_family_at_one'] is False
    assert payload['proportional_to_q'] is True


def test_input_errors_exit_one(tmp_path, capsys):
    assert main(['analyze', str(EXAMPLES / 'identity.json')]) == EXIT_INPUT
    assert "NotCalabiYauError" in capsys.readouterr().err
    assert main(['analyze', str(EXAMPLES / 'identity.json'), '--basic']) == EXIT_OK
    capsys.readouterr()

    broken = tmp_path / 'broken.json'
    broken.write_text("{not json")
    assert main(['analyze', str(broken)]) == EXIT_INPUT
    assert main(['analyze', str(tmp_path / 'missing.json')]) == EXIT_INPUT
    assert main(['analyze']) == EXIT_INPUT
    assert main(['analyze', '--fixture', 'nope']) == EXIT_INPUT

    singular = tmp_path / 'singular.json'
    singular.write_text(json.dumps({'name': 'singular', 'matrix': [[1, 1], [1, 1]]}))
    assert main(['groups', str(singular)]) == EXIT_INPUT
    print("✅ Input errors exit with 1")


def test_monomials_with_weights(capsys):
    assert main(['analyze', str(EXAMPLES / 'family_c1.json')]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report['input']['weight_relation'] == 'q_reduced'
    assert report['fingerprint'] == {'a_prime': 6, 'exponents': [1, 1, 1, 1, 2]}


def test_verify_fixtures(capsys):
    assert main(['verify-fixtures', '--fixture', 'exampleD']) == EXIT_OK
    out = capsys.readouterr().out
    assert "Printed inverse of exampleD" in out
    assert "✅" in out

    assert main(['verify-fixtures', '--fixture', 'no-such-fixture']) == EXIT_OK
    assert "(no fixtures matched)" in capsys.readouterr().out

    assert main(['verify-fixtures', '--registry', 'paper_examples', '--format', 'json']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['passed'] is True
    assert 'exampleB' in payload['fixtures']


def test_verify_fixtures_full_run(capsys):
    assert main(['verify-fixtures']) == EXIT_OK
    out = capsys.readouterr().out
    assert "listed weights" in out
    assert "checks failed" not in out

    assert main(['verify-fixtures', '--registry', 'birational_families', '--format', 'json']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    weight_checks = [c for c in payload['checks'] if c['check'] == 'listed weights']
    assert len(weight_checks) == 12
    assert all(c['actual'] == 'q_reduced' for c in weight_checks)


def test_classify_family_without_exponents(tmp_path, capsys):
    families = tmp_path / 'families.json'
    families.write_text(json.dumps([{'name': 'X'}]))
    assert main(['classify', str(families)]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert "InputFormatError" in err
    assert "'X'" in err


def test_classify(capsys):
    assert main(['classify', '--format', 'json']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['consistent'] is True
    assert len(payload['classes']) == 4
    assert any(e['fixture'] == 'C1' for e in payload['errata'])

    assert main(['classify', str(EXAMPLES / 'families_d.json')]) == EXIT_OK
    assert "D1, D2" in capsys.readouterr().out

    assert main(['classify', '--family', 'A1', '--family', 'A3', '--format', 'json']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['classes'] == [{'fingerprint': [8, [1, 1, 1, 1, 4]], 'families': ['A1', 'A3']}]


def test_output_dir(tmp_path, capsys, monkeypatch):
    assert main(['--output-dir', str(tmp_path), 'analyze', '--fixture', 'exampleA']) == EXIT_OK
    assert capsys.readouterr().out == ""
    report = AnalysisReport.from_json((tmp_path / 'exampleA.analyze.json').read_text())
    assert report.name == 'exampleA'

    env_dir = tmp_path / 'env'
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(env_dir))
    assert main(['equations', '--fixture', 'exampleB', '--format', 'text']) == EXIT_OK
    assert (env_dir / 'exampleB.equations.txt').read_text().startswith("u0^75")
    print("✅ Output directory")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
