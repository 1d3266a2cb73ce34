"""
Zero-dimensional polynomial systems over GF(p).

The system is triangularized by a lex Groebner basis (sympy: grevlex basis
converted by FGLM) and solved by back-substitution from the last variable,
factoring each univariate specialization with the Cantor-Zassenhaus engine
and moving into extension fields as roots demand.
"""

import logging
from typing import List, Sequence, Tuple

from sympy import Poly, groebner, symbols
from sympy.polys.polyerrors import PolynomialError

from com.mhire.qlines.config.config import Config
from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.gf.gf import FieldElement, GaloisField, get_field
from com.mhire.qlines.services.poly.factor import factor_univariate, roots
from com.mhire.qlines.services.poly.poly import MultiPoly, gcd

logger = logging.getLogger(__name__)


class NotZeroDimensional(QlinesError):
    pass


class SolverDegeneration(QlinesError):
    pass


Solution = Tuple[FieldElement, ...]


def _to_sympy(f: MultiPoly, gens) -> Poly:
    p = f.field.p
    return Poly.from_dict({m: int(c) for m, c in f.terms.items()}, *gens, modulus=p)


def _from_sympy(g: Poly, field: GaloisField, nvars: int) -> MultiPoly:
    p = field.p
    return MultiPoly(field, nvars, {tuple(m): int(c) % p for m, c in g.terms()})


def lex_basis(equations: Sequence[MultiPoly]) -> List[MultiPoly]:
    """Reduced lex Groebner basis (x0 > x1 > ... ) of a zero-dimensional system over GF(p).

    Returns [1] for an inconsistent system; raises NotZeroDimensional otherwise.
    """
    field = equations[0].field
    if not field.is_prime_field:
        raise ValueError(f"Groebner bases are computed over prime fields, got {field}")
    nvars = equations[0].nvars
    gens = symbols(f"u0:{nvars}")
    polys = [_to_sympy(e, gens) for e in equations if not e.is_zero]
    method = Config().groebner_method
    basis = groebner(polys, *gens, modulus=field.p, order="grevlex", method=method)
    if any(g.is_ground for g in basis.polys):
        return [MultiPoly.constant(field, nvars, 1)]
    if not basis.is_zero_dimensional:
        raise NotZeroDimensional("solution set has positive dimension")
    try:
        lex = basis.fglm("lex")
    except (NotImplementedError, PolynomialError, ValueError) as e:
        logger.debug("fglm failed (%s), computing lex basis directly", e)
        lex = groebner(polys, *gens, modulus=field.p, order="lex", method=method)
    return [_from_sympy(g, field, nvars) for g in lex.polys]


def solve_zero_dimensional(equations: Sequence[MultiPoly]) -> List[Solution]:
    """All solutions over the algebraic closure of a system with GF(p) coefficients.

    Each solution is a tuple of elements of one field GF(p^m).
    """
    equations = [e for e in equations if not e.is_zero]
    if not equations:
        raise NotZeroDimensional("empty system")
    field = equations[0].field
    nvars = equations[0].nvars
    if nvars == 0:
        return [] if equations else [()]
    basis = lex_basis(equations)
    if len(basis) == 1 and basis[0].degree == 0:
        return []

    partial: List[Tuple[GaloisField, Solution]] = [(field, ())]
    for var in range(nvars - 1, -1, -1):
        relevant = [g for g in basis
                    if g.degree_in(var) > 0 and all(m[j] == 0 for m in g.terms for j in range(var))]
        extended = []
        for current, values in partial:
            extended.extend(_extend(relevant, var, nvars, current, values))
        partial = extended
        logger.debug("variable u%d: %d partial solutions", var, len(partial))
    return [values for _, values in partial]


def _extend(relevant: List[MultiPoly], var: int, nvars: int, current: GaloisField,
            values: Solution) -> List[Tuple[GaloisField, Solution]]:
    h = None
    for g in relevant:
        g = g.over(current)
        for offset, value in enumerate(values):
            g = g.substitute(var + 1 + offset, value)
        u = g.to_univariate(var) if not g.is_zero else None
        if u is None or u.is_zero:
            continue
        h = u if h is None else gcd(h, u)
    if h is None:
        raise SolverDegeneration(f"no univariate condition on u{var}")
    if h.degree < 1:
        return []
    out = []
    for factor, _ in factor_univariate(h).factors:
        if factor.degree == 1:
            out.append((current, (-factor.coeffs[0],) + values))
            continue
        bigger = get_field(current.p, current.k * factor.degree)
        lifted = tuple(bigger.embed(v) for v in values)
        for r in roots(factor.over(bigger)):
            out.append((bigger, (r,) + lifted))
    return out
