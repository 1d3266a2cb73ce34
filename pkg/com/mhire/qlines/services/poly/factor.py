"""
Univariate factorization over GF(p^k) by Cantor-Zassenhaus
(squarefree, distinct-degree and equal-degree splitting), and the binary
form helpers built on it.
"""

import logging
import random
from typing import List, Optional, Tuple

from com.mhire.qlines.config.config import Config
from com.mhire.qlines.services.gf.gf import FieldElement, GaloisField
from com.mhire.qlines.services.poly.poly import (
    BothZero,
    FactoredForm,
    MultiPoly,
    NotHomogeneous,
    UniPoly,
    gcd,
)

logger = logging.getLogger(__name__)


def _rng(seed: Optional[int]) -> random.Random:
    return random.Random(Config().seed if seed is None else seed)


def _pth_root(f: UniPoly) -> UniPoly:
    """g with g(x)^p = f(x), for f a polynomial in x^p."""
    field = f.field
    p = field.p
    inv_frob = field.k - 1
    coeffs = [field.frobenius(f.coeffs[i], inv_frob) for i in range(0, len(f.coeffs), p)]
    return UniPoly(field, coeffs)


def squarefree_decomposition(f: UniPoly) -> FactoredForm:
    """f = unit * prod g_i^i, g_i squarefree, monic, pairwise coprime."""
    if f.is_zero:
        raise ValueError("squarefree decomposition of the zero polynomial")
    field = f.field
    unit = f.lc
    f = f.monic()
    factors: List[Tuple[UniPoly, int]] = []
    n = 1
    one = UniPoly(field, [1])
    while f.degree >= 1:
        df = f.derivative()
        if df.is_zero:
            f = _pth_root(f)
            n *= field.p
            continue
        g = gcd(f, df)
        h = f.exact_div(g)
        i = 1
        while h != one:
            common = gcd(g, h)
            part = h.exact_div(common)
            if part.degree > 0:
                factors.append((part, i * n))
            g = g.exact_div(common)
            h = common
            i += 1
        if g == one:
            break
        f = _pth_root(g)
        n *= field.p
    factors.sort(key=lambda fm: (fm[1], fm[0].sort_key()))
    return FactoredForm(unit, factors)


def distinct_degree(f: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    field = f.field
    q = field.order
    x = UniPoly.x(field)
    one = UniPoly(field, [1])
    out = []
    h = x % f
    i = 1
    while 2 * i <= f.degree:
        h = h.powmod(q, f)
        g = gcd(f, h - x)
        if g != one:
            out.append((g, i))
            f = f.exact_div(g)
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def equal_degree(f: UniPoly, d: int, rng: random.Random) -> List[UniPoly]:
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    if f.degree <= d:
        return [f]
    field = f.field
    q = field.order
    one = UniPoly(field, [1])
    while True:
        a = UniPoly(field, [field.random_element(rng) for _ in range(2 * d)])
        if a.degree < 1:
            continue
        if field.p == 2:
            # trace map to GF(2)
            t = a % f
            acc = t
            for _ in range(field.k * d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((q ** d - 1) // 2, f) - one
        g = gcd(f, b) if not b.is_zero else f
        if g != one and g.degree < f.degree:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor_univariate(f: UniPoly, seed: Optional[int] = None) -> FactoredForm:
    """Complete factorization into monic irreducibles over the coefficient field."""
    if f.is_zero:
        raise ValueError("factorization of the zero polynomial")
    rng = _rng(seed)
    sqf = squarefree_decomposition(f)
    factors: List[Tuple[UniPoly, int]] = []
    for part, mult in sqf.factors:
        for block, d in distinct_degree(part):
            for irreducible in equal_degree(block, d, rng):
                factors.append((irreducible, mult))
    factors.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    return FactoredForm(sqf.unit, factors)


def is_irreducible(f: UniPoly) -> bool:
    if f.degree < 1:
        return False
    ff = factor_univariate(f)
    return len(ff.factors) == 1 and ff.factors[0][1] == 1


def roots(f: UniPoly) -> List[FieldElement]:
    """Distinct roots of f in its coefficient field, sorted."""
    if f.degree < 1:
        return []
    out = []
    for g, _ in factor_univariate(f).factors:
        if g.degree == 1:
            out.append(-g.coeffs[0])
    return sorted(out, key=FieldElement.sort_key)


def roots_in(f: UniPoly, field: GaloisField) -> List[FieldElement]:
    return roots(f.over(field))


# binary forms: MultiPoly in two variables (u, v)

def _dehomogenize(f: MultiPoly) -> Tuple[UniPoly, int]:
    """(f(1, v), multiplicity of the root [0:1])."""
    n = f.degree
    g = UniPoly(f.field, [f.coefficient((n - j, j)) for j in range(n + 1)])
    return g, n - g.degree


def _homogenize(g: UniPoly, degree: int) -> MultiPoly:
    return MultiPoly(g.field, 2, {(degree - j, j): c for j, c in enumerate(g.coeffs)})


def _check_binary(f: MultiPoly) -> None:
    if f.nvars != 2:
        raise NotHomogeneous("binary form expected")
    if f.is_zero:
        raise ValueError("zero binary form")
    if not f.is_homogeneous():
        raise NotHomogeneous(f"{f} is not homogeneous")


def factor_binary_form(f: MultiPoly, seed: Optional[int] = None) -> FactoredForm:
    """Irreducible factors of a binary form; the root [0:1] appears as the factor u."""
    _check_binary(f)
    g, at_infinity = _dehomogenize(f)
    ff = factor_univariate(g, seed)
    factors: List[Tuple[MultiPoly, int]] = []
    if at_infinity:
        factors.append((MultiPoly.variable(f.field, 2, 0), at_infinity))
    for h, m in ff.factors:
        factors.append((_homogenize(h, h.degree), m))
    return FactoredForm(ff.unit, factors)


def binary_points(form: MultiPoly) -> List[Tuple[FieldElement, FieldElement]]:
    """Roots [u:v] of a binary form that lie in its coefficient field."""
    out = []
    for factor, _ in factor_binary_form(form).factors:
        if factor.degree == 1:
            out.append(linear_root(factor))
    return out


def linear_root(factor: MultiPoly) -> Tuple[FieldElement, FieldElement]:
    """The point [u:v] where a u + b v vanishes, normalized with last nonzero coordinate 1."""
    a = factor.coefficient((1, 0))
    b = factor.coefficient((0, 1))
    if a.is_zero:
        return (factor.field.one, factor.field.zero)
    return (-b / a, factor.field.one)


def binary_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd of two binary forms (zero forms allowed, not both)."""
    if f.is_zero and g.is_zero:
        raise BothZero("gcd of two zero forms")
    if f.is_zero:
        f, g = g, f
    _check_binary(f)
    if g.is_zero:
        h, inf_mult = _dehomogenize(f)
        return _homogenize(h.monic(), h.degree) * (MultiPoly.variable(f.field, 2, 0) ** inf_mult)
    _check_binary(g)
    a, ma = _dehomogenize(f)
    b, mb = _dehomogenize(g)
    h = gcd(a, b)
    return _homogenize(h, h.degree) * (MultiPoly.variable(f.field, 2, 0) ** min(ma, mb))


def distinct_root_count(f: MultiPoly) -> int:
    """Number of distinct roots of a nonzero binary form over the algebraic closure."""
    return sum(h.degree for h, _ in factor_binary_form(f).factors)


def root_multiplicities(f: MultiPoly) -> List[int]:
    """Multiplicity of every root over the closure, sorted descending."""
    mults = []
    for h, m in factor_binary_form(f).factors:
        mults.extend([m] * h.degree)
    return sorted(mults, reverse=True)
