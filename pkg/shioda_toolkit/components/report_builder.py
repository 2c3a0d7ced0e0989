"""
Analysis Report Builder

Runs the full analysis of one exponent matrix and collects the results in
an AnalysisReport: derived invariants, weighted projective geometry,
groups, equations, fingerprint and inverse. Reports serialize to the
versioned JSON schema "shioda-report/1" and back, and render as text
tables for the terminal.

Usage:
    from shioda_toolkit.components.report_builder import build_report

    report = build_report("exampleA", [[5, 0, 0, 0, 0], ...])
    print(report.to_json())
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..algebra.errors import InputFormatError, InternalInconsistencyError
from ..algebra.group_oracle import compare_with_oracle, enumerate_groups
from ..algebra.monomial_maps import (
    InverseMap,
    check_composition_law,
    construct_inverse,
    family_equations,
    fingerprint,
    mbar_equations,
    root_identity_check,
)
from ..algebra.quotient_groups import compute_groups, invariant_form_exponents
from ..algebra.shioda_core import ShiodaData, analyze, ensure_matrix
from ..algebra.wps_geometry import fano_divisibility, singular_strata, well_form
from ..utils.config import (
    JSON_INDENT,
    ORACLE_ENUMERATION_BOUND,
    REPORT_FIELDS,
    REPORT_SCHEMA,
    SLACK_BOUND_FACTOR,
)
from .equation_formatter import equation_set_to_dict, format_latex, format_text, equation_set_from_dict

logger = logging.getLogger(__name__)


@dataclass
class AnalysisReport:
    """Plain-data report; every field is JSON-serializable as is."""
    name: str
    input: Dict[str, Any]
    d: int
    B: List[List[int]]
    q: List[int]
    m: int
    q_reduced: List[int]
    q_prime: List[int]
    m_prime: int
    a_prime: int
    a_prime_vec: List[int]
    is_cy: bool
    fano: bool
    well_formed_weights: List[int]
    singular_strata: List[Dict[str, Any]]
    groups: Optional[Dict[str, Dict[str, Any]]] = None
    quotient_degree: Optional[str] = None
    invariant_form: Optional[List[int]] = None
    equations: Optional[Dict[str, Dict[str, Any]]] = None
    fingerprint: Optional[Dict[str, Any]] = None
    inverse: Optional[Dict[str, Any]] = None
    oracle: Optional[Dict[str, Any]] = None
    schema: str = REPORT_SCHEMA

    def to_dict(self) -> Dict[str, Any]:
        return {key: getattr(self, key) for key in REPORT_FIELDS}

    def to_json(self, indent: int = JSON_INDENT) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "AnalysisReport":
        if payload.get('schema') != REPORT_SCHEMA:
            raise InputFormatError(f"Unsupported report schema {payload.get('schema')!r}")
        unknown = set(payload) - set(REPORT_FIELDS)
        if unknown:
            raise InputFormatError(f"Unknown report fields: {sorted(unknown)}")
        return cls(**payload)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def check_consistency(self) -> None:
        """Echoed data satisfies A q = d e and the group orders multiply."""
        A = np.array(self.input['matrix'], dtype=object)
        if list(A.dot(np.array(self.q, dtype=object))) != [self.d] * len(self.q):
            raise InternalInconsistencyError("Report violates A q = d e")
        if self.groups:
            orders = {name: int(group['order']) for name, group in self.groups.items()}
            if orders['gamma_A'] * orders['h_A'] != orders['gamma_q_prime']:
                raise InternalInconsistencyError("Report group orders do not multiply")


def inverse_to_dict(inverse: Optional[InverseMap]) -> Dict[str, Any]:
    if inverse is None:
        return {'present': False}
    return {
        'present': True,
        'kappa': inverse.kappa,
        'mu': list(inverse.mu),
        'lines': [{'s': line.s, 'c0': line.c0, 'c': list(line.c)} for line in inverse.lines],
    }


def build_report(name: str, matrix, basic: bool = False, oracle: bool = False,
                 oracle_bound: int = ORACLE_ENUMERATION_BOUND,
                 slack_bound_factor: int = SLACK_BOUND_FACTOR,
                 source: Optional[Dict[str, Any]] = None) -> AnalysisReport:
    """
    Full analysis of one exponent matrix.

    Parameters:
    -----------
    name : str
        Label echoed in the report
    matrix : ExponentMatrix or nested integer rows
    basic : bool
        Only invariants and geometry; skips everything that needs the CY condition
    oracle : bool
        Cross-check group structures by enumeration (d^n <= oracle_bound)
    source : dict, optional
        Extra input fields to echo (monomials, listed weights)

    Returns:
    --------
    AnalysisReport

    Raises:
    -------
    ShiodaInputError
        Validation failures, including NotCalabiYauError when the full report is requested
    InternalInconsistencyError
        A recomputed invariant failed
    """
    exponent_matrix = ensure_matrix(matrix)
    data = analyze(exponent_matrix)
    root_identity_check(data)

    echo = {'matrix': exponent_matrix.to_list()}
    echo.update(source or {})
    report = AnalysisReport(
        name=name,
        input=echo,
        d=data.d,
        B=data.B_list(),
        q=list(data.q),
        m=data.m,
        q_reduced=list(data.q_reduced),
        q_prime=list(data.q_prime),
        m_prime=data.m_prime,
        a_prime=data.a_prime,
        a_prime_vec=list(data.a_prime_vec),
        is_cy=data.is_cy,
        fano=fano_divisibility(data.q_reduced),
        well_formed_weights=list(well_form(data.q).weights),
        singular_strata=[s.to_dict() for s in singular_strata(data.q_reduced, exponent_matrix.rows)],
    )
    if basic:
        return report

    check_composition_law(data)
    groups = compute_groups(data)
    report.groups = {
        'gamma_q_prime': groups.gamma_q_prime.to_dict(),
        'gamma_A': groups.gamma_A.to_dict(),
        'h_A': groups.h_A.to_dict(),
    }
    report.quotient_degree = str(groups.quotient_degree)
    report.invariant_form = list(invariant_form_exponents(data))

    unreduced, reduced = mbar_equations(data)
    report.equations = {
        'unreduced': equation_set_to_dict(unreduced),
        'reduced': equation_set_to_dict(reduced),
        'family': equation_set_to_dict(family_equations(data, 't')),
    }
    a_prime, exponents = fingerprint(data)
    report.fingerprint = {'a_prime': a_prime, 'exponents': list(exponents)}
    report.inverse = inverse_to_dict(
        construct_inverse(data, bound_factor=slack_bound_factor) if groups.h_A.is_trivial else None
    )

    if oracle:
        report.oracle = run_oracle(data, groups, oracle_bound)

    report.check_consistency()
    logger.info(f"Built report for {name}: d={data.d}, |Gamma(q')|={groups.gamma_q_prime.order}")
    return report


def run_oracle(data: ShiodaData, groups, bound: int) -> Dict[str, Any]:
    """Enumeration cross-check; mismatches are fatal."""
    result = enumerate_groups(data, bound=bound)
    if result is None:
        return {'checked': False, 'reason': f"d^n = {data.d ** data.n} exceeds {bound}"}
    differences = compare_with_oracle(groups, result)
    if differences:
        raise InternalInconsistencyError("; ".join(differences))
    return {'checked': True, 'elements_enumerated': result.elements_enumerated, 'agrees': True}


def report_to_text(report: AnalysisReport) -> str:
    """Terminal rendering: invariants, a groups table and the equations."""
    lines = [
        f"📋 {report.name}",
        "=" * 50,
        f"d = {report.d}   m = {report.m}   m' = {report.m_prime}   a' = {report.a_prime}",
        f"q  = {tuple(report.q)}   q_reduced = {tuple(report.q_reduced)}",
        f"q' = {tuple(report.q_prime)}   a'_vec = {tuple(report.a_prime_vec)}",
        f"Calabi-Yau: {'✅' if report.is_cy else '❌'}   Fano divisibility: {'✅' if report.fano else '❌'}",
        f"well-formed weights: {tuple(report.well_formed_weights)}",
    ]
    if report.singular_strata:
        strata = pd.DataFrame(report.singular_strata)
        strata['indices'] = strata['indices'].apply(lambda idx: tuple(i + 1 for i in idx))
        lines += ["", "Singular strata:", strata.to_string(index=False)]

    if report.groups:
        table = pd.DataFrame([
            {'group': name, 'invariant_factors': tuple(group['invariant_factors']), 'order': group['order']}
            for name, group in report.groups.items()
        ])
        lines += ["", "Groups:", table.to_string(index=False)]

    if report.equations:
        for label in ('unreduced', 'reduced', 'family'):
            lines.append(f"{label}: {format_text(equation_set_from_dict(report.equations[label]))}")
    if report.fingerprint:
        lines.append(f"fingerprint: ({report.fingerprint['a_prime']}, {tuple(report.fingerprint['exponents'])})")
    if report.inverse is not None:
        lines.append(f"inverse: {'present (mu = ' + str(tuple(report.inverse['mu'])) + ')' if report.inverse['present'] else 'absent'}")
    return "\n".join(lines)


def report_to_latex(report: AnalysisReport) -> str:
    if not report.equations:
        return ""
    return "\n\n".join(
        format_latex(equation_set_from_dict(report.equations[label])) for label in ('reduced', 'family')
    )
