"""
Equation Formatter

Renders Shioda quotient equations and exponent polynomials as plain text,
LaTeX or JSON-ready dictionaries. Variables are printed 1-based
(x1..xn, u0..un) even though the library indexes from 0.

JSON is the stable contract; text and LaTeX are presentation only.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.errors import InputFormatError
from ..algebra.monomial_maps import EquationSet, MonomialRelation
from ..algebra.shioda_core import MonomialPolynomial, Parameter, parse_parameter
from ..utils.config import QUOTIENT_VARIABLE


def parameter_to_string(value: Optional[Parameter]) -> Optional[str]:
    if value is None:
        return None
    return value if isinstance(value, str) else str(Fraction(value))


def _power_text(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def _power_latex(name: str, index: int, exponent: int) -> str:
    base = f"{name}_{{{index}}}" if index >= 10 else f"{name}_{index}"
    return base if exponent == 1 else f"{base}^{{{exponent}}}"


def monomial_text(exponents: Sequence[int], variable: str = QUOTIENT_VARIABLE, start: int = 1) -> str:
    parts = [_power_text(f"{variable}{i + start}", e) for i, e in enumerate(exponents) if e != 0]
    return " ".join(parts) if parts else "1"


def monomial_latex(exponents: Sequence[int], variable: str = QUOTIENT_VARIABLE, start: int = 1) -> str:
    parts = [_power_latex(variable, i + start, e) for i, e in enumerate(exponents) if e != 0]
    return "".join(parts) if parts else "1"


def _parameter_power_text(parameter: Parameter, power: int) -> str:
    text = parameter_to_string(parameter)
    if not isinstance(parameter, str) and ('/' in text or text.startswith('-')):
        text = f"({text})"
    return _power_text(text, power)


def _u0_term(coefficient: Parameter) -> Optional[Tuple[str, str]]:
    """(sign, magnitude) of the u0 coefficient, or None when it is zero."""
    if isinstance(coefficient, str):
        return ("-", coefficient[1:]) if coefficient.startswith("-") else ("+", coefficient)
    if coefficient == 0:
        return None
    return ("-" if coefficient < 0 else "+"), str(abs(Fraction(coefficient)))


def _linear_text(equations: EquationSet) -> str:
    u = QUOTIENT_VARIABLE
    text = "+".join(f"{u}{i + 1}" for i in range(equations.n))
    term = _u0_term(equations.u0_coefficient)
    if term is not None:
        text += f" {term[0]} {term[1]} {u}0"
    return f"{text} = 0"


def _linear_latex(equations: EquationSet) -> str:
    u = QUOTIENT_VARIABLE
    text = " + ".join(_power_latex(u, i + 1, 1) for i in range(equations.n))
    term = _u0_term(equations.u0_coefficient)
    if term is not None:
        text += f" {term[0]} {term[1]}\\, {u}_0"
    return f"{text} = 0"


def format_text(equations: EquationSet) -> str:
    """e.g. 'u0^75 = u1^5 u2^8 u3^12 u4^15 u5^35 ; u1+u2+u3+u4+u5 = 0'."""
    relation = equations.relation
    u = QUOTIENT_VARIABLE
    text = f"{_power_text(f'{u}0', relation.power)} = {monomial_text(relation.exponents)} ; {_linear_text(equations)}"
    if equations.eliminated is not None:
        eliminated = equations.eliminated
        total = "+".join(f"{u}{i + 1}" for i in range(equations.n))
        text += (
            f" ; ({total})^{eliminated.power} = "
            f"{_parameter_power_text(equations.parameter, eliminated.power)} {monomial_text(eliminated.exponents)}"
        )
    return text


def format_latex(equations: EquationSet) -> str:
    relation = equations.relation
    u = QUOTIENT_VARIABLE
    lines = [
        f"{_power_latex(u, 0, relation.power)} = {monomial_latex(relation.exponents)}",
        _linear_latex(equations),
    ]
    if equations.eliminated is not None:
        eliminated = equations.eliminated
        total = " + ".join(_power_latex(u, i + 1, 1) for i in range(equations.n))
        parameter = parameter_to_string(equations.parameter)
        if not isinstance(equations.parameter, str) and ("/" in parameter or parameter.startswith("-")):
            parameter = f"\\left({parameter}\\right)"
        lines.append(
            f"\\left({total}\\right)^{{{eliminated.power}}} = "
            f"{parameter}^{{{eliminated.power}}}\\, {monomial_latex(eliminated.exponents)}"
        )
    return "\\begin{gathered}\n" + " \\\\\n".join(lines) + "\n\\end{gathered}"


def equation_set_to_dict(equations: EquationSet) -> Dict:
    relation = equations.relation
    return {
        'linear': {
            'u': list(equations.linear_coefficients),
            'u0': parameter_to_string(equations.u0_coefficient),
        },
        'relation': {'u0_power': relation.power, 'exponents': list(relation.exponents)},
        't': parameter_to_string(equations.parameter),
        'eliminated': None if equations.eliminated is None else {
            'power': equations.eliminated.power,
            'exponents': list(equations.eliminated.exponents),
        },
    }


def _parse_coefficient(value) -> Parameter:
    if isinstance(value, str) and value.startswith("-") and value[1:].isidentifier():
        return value
    return parse_parameter(value)


def equation_set_from_dict(payload: Dict) -> EquationSet:
    try:
        relation = payload['relation']
        eliminated = payload.get('eliminated')
        t = payload.get('t')
        return EquationSet(
            n=len(payload['linear']['u']),
            relation=MonomialRelation(int(relation['u0_power']), tuple(int(x) for x in relation['exponents'])),
            u0_coefficient=_parse_coefficient(payload["linear"]["u0"]),
            parameter=None if t is None else parse_parameter(t),
            eliminated=None if eliminated is None else MonomialRelation(
                int(eliminated['power']), tuple(int(x) for x in eliminated['exponents'])
            ),
        )
    except (KeyError, TypeError) as e:
        raise InputFormatError(f"Malformed equation set: {e}")


def format_equations(equations: EquationSet, form: str):
    """Dispatch on 'text', 'latex' or 'json' (a dictionary)."""
    if form == 'text':
        return format_text(equations)
    if form == 'latex':
        return format_latex(equations)
    if form == 'json':
        return equation_set_to_dict(equations)
    raise InputFormatError(f"Unknown format '{form}'")


def format_polynomial(polynomial: MonomialPolynomial) -> str:
    """Plain-text polynomial, e.g. 'x1^5 + x2^10 + x3^10 + x4^10 + x5^2 - t x1 x2 x3 x4 x5'."""
    pieces: List[str] = []
    for term in polynomial.terms:
        body = monomial_text(term.exponents, polynomial.variable_name)
        coefficient = term.coefficient
        if term.parameter is not None:
            scale = "" if abs(coefficient) == 1 else f"{abs(coefficient)} "
            body = f"{scale}{term.parameter} {body}"
        elif abs(coefficient) != 1:
            body = f"{abs(coefficient)} {body}"
        sign = "-" if coefficient < 0 else "+"
        pieces.append(f"{sign} {body}" if pieces else (f"-{body}" if sign == "-" else body))
    return " ".join(pieces)
