#!/usr/bin/env python3
"""
Shioda Toolkit Command-Line Interface

Analyzes exponent matrices of invertible polynomials: derived weights,
weighted projective geometry, root-of-unity groups, Shioda quotient
equations, birational inverses and transposes. Also verifies the fixture
registries and classifies families by their quotient fingerprint.

Features:
- analyze: full JSON/text/LaTeX report of one matrix
- verify-fixtures: recompute every stored expectation, exit 1 on mismatch
- classify: partition families by fingerprint with eigenvector certificates
- equations, groups, invert, mirror: single sections of the report
- --oracle: brute-force cross-check of the group structures (d^n <= 10^6)

Input is a JSON document {"name", "matrix"} or {"name", "monomials", "weights"},
or --fixture NAME for a registry entry.

Exit codes: 0 success, 1 invalid input or failed fixture check,
2 internal inconsistency.

Usage:
    python shioda_cli.py analyze config/examples/example_a.json --format text
    python shioda_cli.py equations --fixture exampleB --format text
    python shioda_cli.py verify-fixtures --fixture exampleD
    python shioda_cli.py classify
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import pandas as pd

from shioda_toolkit.algebra.errors import InputFormatError, InternalInconsistencyError, ShiodaInputError
from shioda_toolkit.algebra.monomial_maps import (
    construct_inverse,
    family_equations,
    mbar_equations,
    mirror_matches_weights,
    mirror_transpose,
    verify_inverse,
)
from shioda_toolkit.algebra.quotient_groups import compute_groups
from shioda_toolkit.algebra.shioda_core import analyze, parse_parameter
from shioda_toolkit.components.equation_formatter import equation_set_to_dict, format_equations, format_latex, format_text
from shioda_toolkit.components.report_builder import (
    build_report,
    inverse_to_dict,
    report_to_latex,
    report_to_text,
    run_oracle,
)
from shioda_toolkit.data.fixture_manager import (
    CHECK_COLUMNS,
    FixtureManager,
    classify_families,
    inverse_table,
    load_input_file,
    verify_fixture,
)
from shioda_toolkit.utils.config import (
    DEFAULT_FORMAT,
    JSON_INDENT,
    ORACLE_ENUMERATION_BOUND,
    REPORT_FORMATS,
    SLACK_BOUND_FACTOR,
    get_output_dir,
)
from shioda_toolkit.utils.json_config_manager import JSONConfigManager, setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2

EXTENSIONS = {'json': 'json', 'text': 'txt', 'latex': 'tex'}


class CommandContext:
    """Settings and registries shared by all subcommands."""

    def __init__(self, args, config_manager: JSONConfigManager):
        self.args = args
        self.config_manager = config_manager
        self.fixtures = FixtureManager(config_manager)
        self.oracle_bound = config_manager.get_setting('oracle', 'enumeration_bound', ORACLE_ENUMERATION_BOUND)
        self.slack_bound_factor = config_manager.get_setting('inverse_search', 'slack_bound_factor', SLACK_BOUND_FACTOR)
        self.indent = config_manager.get_setting('report', 'json_indent', JSON_INDENT)
        self.output_dir = get_output_dir(args.output_dir) or self._configured_output_dir()

    def _configured_output_dir(self):
        value = self.config_manager.get_setting('output', 'directory')
        return Path(value) if value else None

    def document(self):
        if getattr(self.args, 'fixture', None):
            return self.fixtures.fixture_document(self.args.fixture)
        if getattr(self.args, 'input', None):
            return load_input_file(self.args.input)
        raise InputFormatError("Give an input file or --fixture NAME")

    def to_json(self, payload) -> str:
        return json.dumps(payload, indent=self.indent, ensure_ascii=False)

    def emit(self, text: str, name: str, command: str, form: str):
        """Print to stdout, or write <name>.<command>.<ext> under the output directory."""
        if self.output_dir is None:
            print(text)
            return
        self.output_dir.mkdir(parents=True, exist_ok=True)
        path = self.output_dir / f"{name}.{command}.{EXTENSIONS.get(form, 'txt')}"
        path.write_text(text + "\n", encoding='utf-8')
        logger.info(f"Wrote {path}")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(ctx: CommandContext) -> int:
    args = ctx.args
    document = ctx.document()
    report = build_report(
        document.name, document.matrix,
        basic=args.basic, oracle=args.oracle,
        oracle_bound=ctx.oracle_bound, slack_bound_factor=ctx.slack_bound_factor,
        source=document.source,
    )
    if args.format == 'text':
        text = report_to_text(report)
    elif args.format == 'latex':
        text = report_to_latex(report)
    else:
        text = report.to_json(indent=ctx.indent)
    ctx.emit(text, document.name, 'analyze', args.format)
    return EXIT_OK


def cmd_equations(ctx: CommandContext) -> int:
    args = ctx.args
    document = ctx.document()
    data = analyze(document.matrix)
    if args.t is not None or args.family:
        equations = family_equations(data, parse_parameter(args.t if args.t is not None else 't'))
    else:
        _, equations = mbar_equations(data)
    result = format_equations(equations, args.format)
    if args.format == 'json':
        result = ctx.to_json({'name': document.name, **result})
    ctx.emit(result, document.name, 'equations', args.format)
    return EXIT_OK


def cmd_groups(ctx: CommandContext) -> int:
    args = ctx.args
    document = ctx.document()
    data = analyze(document.matrix)
    groups = compute_groups(data)
    members = {'gamma_q_prime': groups.gamma_q_prime, 'gamma_A': groups.gamma_A, 'h_A': groups.h_A}
    payload = {
        'name': document.name,
        'd': data.d,
        'groups': {key: group.to_dict() for key, group in members.items()},
        'quotient_degree': str(groups.quotient_degree),
    }
    if args.oracle:
        payload['oracle'] = run_oracle(data, groups, ctx.oracle_bound)

    if args.format == 'text':
        table = pd.DataFrame([
            {'group': key, 'invariant_factors': tuple(group.invariant_factors), 'order': str(group.order),
             'generators': [tuple(g.k) for g in group.generator_lifts]}
            for key, group in members.items()
        ])
        text = f"📋 {document.name} (d = {data.d})\n" + "=" * 50 + "\n" + table.to_string(index=False)
        if 'oracle' in payload:
            text += f"\noracle: {'✅ agrees' if payload['oracle']['checked'] else '⚠️  ' + payload['oracle']['reason']}"
    else:
        text = ctx.to_json(payload)
    ctx.emit(text, document.name, 'groups', args.format)
    return EXIT_OK


def cmd_invert(ctx: CommandContext) -> int:
    args = ctx.args
    document = ctx.document()
    data = analyze(document.matrix)
    inverse = construct_inverse(data, bound_factor=ctx.slack_bound_factor)
    payload = {'name': document.name, **inverse_to_dict(inverse)}
    if inverse is not None:
        payload['verification'] = [line.to_dict() for line in verify_inverse(data, inverse).lines]

    if args.format == 'text':
        if inverse is None:
            text = f"❌ {document.name}: no monomial inverse (H_A not trivial or slack bound reached)"
        else:
            lines = [f"✅ {document.name}: mu = {inverse.mu}, kappa = {inverse.kappa}"]
            for j, line in enumerate(inverse.lines):
                lines.append(f"M^{line.s} x{j + 1} = u0^{line.c0} * u^{line.c}")
            text = "\n".join(lines)
    else:
        text = ctx.to_json(payload)
    ctx.emit(text, document.name, 'invert', args.format)
    return EXIT_OK


def cmd_mirror(ctx: CommandContext) -> int:
    args = ctx.args
    document = ctx.document()
    data = analyze(document.matrix)
    equations = mirror_transpose(document.matrix)
    if args.format == 'json':
        text = ctx.to_json({
            'name': document.name,
            'equations': equation_set_to_dict(equations),
            'equals_family_at_one': equations == family_equations(data, parse_parameter(1)),
            'proportional_to_q': mirror_matches_weights(data, equations),
        })
    elif args.format == 'latex':
        text = format_latex(equations)
    else:
        text = format_text(equations)
    ctx.emit(text, document.name, 'mirror', args.format)
    return EXIT_OK


def cmd_verify_fixtures(ctx: CommandContext) -> int:
    args = ctx.args
    fixtures = ctx.fixtures.fixtures(args.registry)
    if args.fixture:
        fixtures = [f for f in fixtures if f['name'] == args.fixture]

    rows = []
    for fixture in fixtures:
        rows.extend(verify_fixture(fixture))
    table = pd.DataFrame(rows, columns=CHECK_COLUMNS)
    failed = table[~table['passed'].astype(bool)]

    if args.format == 'json':
        text = ctx.to_json({
            'fixtures': [f['name'] for f in fixtures],
            'checks': [{k: row[k] for k in CHECK_COLUMNS} for row in rows],
            'passed': failed.empty,
        })
        ctx.emit(text, 'fixtures', 'verify', 'json')
    else:
        sections = [table[['fixture', 'check', 'provenance', 'passed']].to_string(index=False) if rows else "(no fixtures matched)"]
        for fixture in fixtures:
            if fixture.get('printed_inverse'):
                sections += ["", f"Printed inverse of {fixture['name']}:", inverse_table(fixture).to_string(index=False)]
        errata = ctx.fixtures.errata(args.registry)
        errata = errata[errata['fixture'].isin([f['name'] for f in fixtures])]
        if not errata.empty:
            sections += ["", "Errata:", errata[['fixture', 'field', 'note']].to_string(index=False)]
        ctx.emit("\n".join(sections), 'fixtures', 'verify', 'text')

        print("=" * 50)
        if failed.empty:
            print(f"✅ {len(table)} checks passed across {len(fixtures)} fixtures")
        else:
            print(f"❌ {len(failed)} of {len(table)} checks failed")
            for _, row in failed.iterrows():
                print(f"   {row['fixture']} / {row['check']}: expected {row['expected']}, got {row['actual']}")
    return EXIT_OK if failed.empty else EXIT_INPUT


def cmd_classify(ctx: CommandContext) -> int:
    args = ctx.args
    if args.input:
        with open(args.input, 'r', encoding='utf-8') as f:
            try:
                payload = json.load(f)
            except json.JSONDecodeError as e:
                raise InputFormatError(f"{args.input}: invalid JSON ({e})")
        fixtures = payload.get('fixtures', []) if isinstance(payload, dict) else payload
        class_info = payload.get('classes', {}) if isinstance(payload, dict) else {}
        if args.family:
            fixtures = [f for f in fixtures if not isinstance(f, dict) or f.get('name') in args.family]
        classification = classify_families(fixtures, class_info)
        errata = [
            {'fixture': f['name'], 'field': e['field'], 'note': e['note']}
            for f in fixtures for e in f.get('errata', [])
        ]
    else:
        classification = ctx.fixtures.classify_registry(names=args.family)
        names = set(classification.table['family'])
        errata_table = ctx.fixtures.errata('birational_families')
        errata = errata_table[errata_table['fixture'].isin(names)][['fixture', 'field', 'note']].to_dict('records')

    table = classification.table
    if args.format == 'json':
        text = ctx.to_json({
            'classes': [
                {'fingerprint': [key[0], list(key[1])], 'families': names}
                for key, names in sorted(classification.classes.items())
            ],
            'families': [
                {
                    'family': row['family'], 'class': row['class'], 'd': int(row['d']),
                    'fingerprint': [row['fingerprint'][0], list(row['fingerprint'][1])],
                    'certificate': {'c': list(row['certificate_c']), 'scale': int(row['certificate_scale'])},
                    'certified': bool(row['certified']), 'matches_class': bool(row['matches_class']),
                    'node': row['node'],
                }
                for _, row in table.iterrows()
            ],
            'errata': errata,
            'consistent': classification.consistent,
        })
        ctx.emit(text, 'families', 'classify', 'json')
    else:
        sections = [table.to_string(index=False) if not table.empty else "(no families)"]
        if errata:
            sections += ["", "Substitutions used:"] + [f"  {e['fixture']} {e['field']}: {e['note']}" for e in errata]
        ctx.emit("\n".join(sections), 'families', 'classify', 'text')
        print("=" * 50)
        for key, names in sorted(classification.classes.items()):
            print(f"⭐ ({key[0]}, {key[1]}): {', '.join(names)}")
        print("✅ Classification consistent" if classification.consistent else "❌ Classification deviates from the registry")
    return EXIT_OK if classification.consistent else EXIT_INPUT


COMMANDS = {
    'analyze': cmd_analyze,
    'equations': cmd_equations,
    'groups': cmd_groups,
    'invert': cmd_invert,
    'mirror': cmd_mirror,
    'verify-fixtures': cmd_verify_fixtures,
    'classify': cmd_classify,
}


def build_parser(default_format: str = DEFAULT_FORMAT) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Shioda map analysis of invertible polynomials')
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')
    parser.add_argument('--output-dir', type=str,
                        help='Write output files here instead of stdout (overrides SHIODA_OUTPUT_DIR)')
    subparsers = parser.add_subparsers(dest='command', required=True)

    def single_input(name, help_text, formats, default=default_format):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument('input', nargs='?', help='JSON input document')
        sub.add_argument('--fixture', type=str, help='Use a registry fixture instead of an input file')
        sub.add_argument('--format', '--form', dest='format', choices=formats, default=default)
        return sub

    analyze_parser = single_input('analyze', 'Full report of one matrix', REPORT_FORMATS)
    analyze_parser.add_argument('--basic', action='store_true',
                                help='Only invariants and geometry (no Calabi-Yau condition needed)')
    analyze_parser.add_argument('--oracle', action='store_true', help='Cross-check groups by enumeration')

    equations_parser = single_input('equations', 'Shioda quotient equations', REPORT_FORMATS)
    equations_parser.add_argument('--family', action='store_true', help='Deformed family (symbolic t unless -t given)')
    equations_parser.add_argument('-t', type=str, help='Exact rational or symbol for the deformation parameter')

    groups_parser = single_input('groups', 'Gamma(q\'), Gamma_A and H_A', ['json', 'text'])
    groups_parser.add_argument('--oracle', action='store_true', help='Cross-check groups by enumeration')

    single_input('invert', 'Birational inverse of the quotient map', ['json', 'text'])
    single_input('mirror', 'Quotient equations of the transposed matrix', REPORT_FORMATS, default='text')

    verify_parser = subparsers.add_parser('verify-fixtures', help='Recompute and compare all fixtures')
    verify_parser.add_argument('--fixture', type=str, help='Only this fixture')
    verify_parser.add_argument('--registry', type=str, help='Only this registry')
    verify_parser.add_argument('--format', choices=['json', 'text'], default='text')

    classify_parser = subparsers.add_parser('classify', help='Group families by quotient fingerprint')
    classify_parser.add_argument('input', nargs='?', help='Families file (default: birational_families registry)')
    classify_parser.add_argument('--family', action='append', help='Only these families (repeatable)')
    classify_parser.add_argument('--format', choices=['json', 'text'], default='text')
    return parser


def main(argv=None):
    """Command-line interface for Shioda map analysis."""
    config_manager = JSONConfigManager()
    parser = build_parser(config_manager.get_setting('report', 'default_format', DEFAULT_FORMAT))
    args = parser.parse_args(argv)

    setup_logging(config_manager.get_settings(), verbose=args.verbose)

    try:
        ctx = CommandContext(args, config_manager)
        return COMMANDS[args.command](ctx)
    except ShiodaInputError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInconsistencyError as e:
        logger.error(f"Internal inconsistency: {e}")
        print(f"❌ Internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
