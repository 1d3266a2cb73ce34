"""
Dense univariate and sparse multivariate polynomials over a GaloisField.
"""

from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.gf.gf import FieldElement, GaloisField


class BothZero(QlinesError, ValueError):
    pass


class NotHomogeneous(QlinesError, ValueError):
    pass


class NotDivisible(QlinesError, ArithmeticError):
    pass


Scalar = Union[int, FieldElement]


class UniPoly:
    """Dense polynomial, coefficients low degree first, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GaloisField, coeffs: Iterable[Scalar] = ()):
        self.field = field
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def x(cls, field: GaloisField) -> "UniPoly":
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field: GaloisField, c: Scalar) -> "UniPoly":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(c.coeffs for c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(repr(c))
            elif c.is_one:
                terms.append(mono)
            else:
                terms.append(f"({c!r}){mono}")
        return " + ".join(terms)

    def sort_key(self):
        return (self.degree, tuple(c.coeffs for c in reversed(self.coeffs)))

    def _wrap(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly(self.field, [other])

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero
        a = self.coeffs + [zero] * (n - len(self.coeffs))
        b = other.coeffs + [zero] * (n - len(other.coeffs))
        return UniPoly(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.field(other)
            return UniPoly(self.field, [a * c for a in self.coeffs])
        if self.is_zero or other.is_zero:
            return UniPoly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPoly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return UniPoly(self.field), UniPoly(self.field, r)
        q = [self.field.zero] * (dq + 1)
        inv = other.lc.inverse()
        db = other.degree
        for i in range(dq, -1, -1):
            c = r[i + db] * inv
            q[i] = c
            if c.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                r[i + j] = r[i + j] - c * b
        return UniPoly(self.field, q), UniPoly(self.field, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise NotDivisible(f"{other} does not divide {self}")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self * self.lc.inverse()

    def __call__(self, x: FieldElement) -> FieldElement:
        field = x.field
        coeff = (lambda c: c) if field is self.field else field.embed
        result = field.zero
        for c in reversed(self.coeffs):
            result = result * x + coeff(c)
        return result

    def derivative(self) -> "UniPoly":
        return UniPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly(self.field, [1])
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def map_coeffs(self, fn: Callable[[FieldElement], FieldElement], field: Optional[GaloisField] = None) -> "UniPoly":
        return UniPoly(field or self.field, [fn(c) for c in self.coeffs])

    def over(self, field: GaloisField) -> "UniPoly":
        if field is self.field:
            return self
        return UniPoly(field, [field.embed(c) for c in self.coeffs])


def gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; gcd(f, 0) = monic(f)."""
    if f.is_zero and g.is_zero:
        raise BothZero("gcd of two zero polynomials")
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def xgcd(f: UniPoly, g: UniPoly) -> Tuple[UniPoly, UniPoly, UniPoly]:
    """(d, s, t) with s f + t g = d monic."""
    field = f.field
    r0, r1 = f, g
    s0, s1 = UniPoly(field, [1]), UniPoly(field)
    t0, t1 = UniPoly(field), UniPoly(field, [1])
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0.lc.inverse()
    return r0 * inv, s0 * inv, t0 * inv


Monomial = Tuple[int, ...]


class MultiPoly:
    """Sparse polynomial in a fixed number of variables; no zero coefficients stored."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: GaloisField, nvars: int, terms: Optional[Dict[Monomial, Scalar]] = None):
        self.field = field
        self.nvars = nvars
        clean: Dict[Monomial, FieldElement] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = field(c)
            if not c.is_zero:
                clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, nvars, terms) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj.terms = {m: c for m, c in terms.items() if not c.is_zero}
        return obj

    @classmethod
    def variable(cls, field: GaloisField, nvars: int, i: int) -> "MultiPoly":
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw(field, nvars, {mono: field.one})

    @classmethod
    def variables(cls, field: GaloisField, nvars: int) -> List["MultiPoly"]:
        return [cls.variable(field, nvars, i) for i in range(nvars)]

    @classmethod
    def constant(cls, field: GaloisField, nvars: int, c: Scalar) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def linear_form(cls, coeffs: Sequence[FieldElement]) -> "MultiPoly":
        field = coeffs[0].field
        n = len(coeffs)
        return cls._raw(field, n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = {sum(m) for m in self.terms}
        if not degrees:
            return True
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    def coefficient(self, mono: Monomial) -> FieldElement:
        return self.terms.get(tuple(mono), self.field.zero)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field is other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((m, c.coeffs) for m, c in self.terms.items())))

    def sort_key(self):
        return tuple(sorted(((m, c.coeffs) for m, c in self.terms.items()), reverse=True))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono) if e]
            body = "*".join(factors)
            if not body:
                parts.append(repr(c))
            elif c.is_one:
                parts.append(body)
            else:
                parts.append(f"({c!r})*{body}")
        return " + ".join(parts)

    def _wrap(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._wrap(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return MultiPoly._raw(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.field(other)
            return MultiPoly._raw(self.field, self.nvars, {m: v * c for m, v in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        terms: Dict[Monomial, FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                terms[m] = terms[m] + v if m in terms else v
        return MultiPoly._raw(self.field, self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, point: Sequence[FieldElement]) -> FieldElement:
        field = point[0].field
        coeff = (lambda c: c) if field is self.field else field.embed
        total = field.zero
        powers = [dict() for _ in point]
        for mono, c in self.terms.items():
            v = coeff(c)
            for i, e in enumerate(mono):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = point[i] ** e
                    v = v * cache[e]
            total = total + v
        return total

    __call__ = evaluate

    def diff(self, i: int) -> "MultiPoly":
        terms = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e:
                m = mono[:i] + (e - 1,) + mono[i + 1:]
                terms[m] = c * e
        return MultiPoly._raw(self.field, self.nvars, terms)

    def gradient(self) -> List["MultiPoly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute images[i] for variable i; images share a ring."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0]
        field, nvars = target.field, target.nvars
        coeff = (lambda c: c) if field is self.field else field.embed
        powers = [dict() for _ in images]
        result = MultiPoly._raw(field, nvars, {})
        for mono, c in self.terms.items():
            term = MultiPoly.constant(field, nvars, coeff(c))
            for i, e in enumerate(mono):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = images[i] ** e
                    term = term * cache[e]
            result = result + term
        return result

    def substitute(self, i: int, value: Scalar) -> "MultiPoly":
        """Set variable i to a constant; the variable stays in the ring with exponent 0."""
        value = self.field(value)
        terms: Dict[Monomial, FieldElement] = {}
        for mono, c in self.terms.items():
            m = mono[:i] + (0,) + mono[i + 1:]
            v = c * value ** mono[i] if mono[i] else c
            terms[m] = terms[m] + v if m in terms else v
        return MultiPoly._raw(self.field, self.nvars, terms)

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        return MultiPoly._raw(self.field, self.nvars, {m: c for m, c in self.terms.items() if sum(m) == degree})

    def coefficients_in(self, i: int) -> List["MultiPoly"]:
        """Coefficients of powers of variable i, as polynomials without variable i."""
        deg = self.degree_in(i)
        out = [dict() for _ in range(max(deg, 0) + 1)]
        for mono, c in self.terms.items():
            out[mono[i]][mono[:i] + (0,) + mono[i + 1:]] = c
        return [MultiPoly._raw(self.field, self.nvars, t) for t in out]

    def drop_variables(self, keep: Sequence[int]) -> "MultiPoly":
        """Project to the ring in the kept variables; the others must not occur."""
        terms = {}
        for mono, c in self.terms.items():
            if any(e for i, e in enumerate(mono) if i not in keep):
                raise ValueError("dropped variable occurs in polynomial")
            terms[tuple(mono[i] for i in keep)] = c
        return MultiPoly._raw(self.field, len(keep), terms)

    def embed_variables(self, nvars: int, positions: Sequence[int]) -> "MultiPoly":
        """Move variable j to position positions[j] in a ring with nvars variables."""
        terms = {}
        for mono, c in self.terms.items():
            m = [0] * nvars
            for j, e in enumerate(mono):
                m[positions[j]] = e
            terms[tuple(m)] = c
        return MultiPoly._raw(self.field, nvars, terms)

    def to_univariate(self, i: int = 0) -> UniPoly:
        """Polynomial in variable i alone (every other variable must be absent)."""
        coeffs = [self.field.zero] * (self.degree_in(i) + 1)
        for mono, c in self.terms.items():
            if any(e for j, e in enumerate(mono) if j != i):
                raise ValueError("polynomial is not univariate")
            coeffs[mono[i]] = c
        return UniPoly(self.field, coeffs)

    @classmethod
    def from_univariate(cls, f: UniPoly, nvars: int = 1, i: int = 0) -> "MultiPoly":
        terms = {}
        for e, c in enumerate(f.coeffs):
            terms[tuple(e if j == i else 0 for j in range(nvars))] = c
        return cls._raw(f.field, nvars, terms)

    def map_coeffs(self, fn: Callable[[FieldElement], FieldElement], field: Optional[GaloisField] = None) -> "MultiPoly":
        return MultiPoly._raw(field or self.field, self.nvars, {m: fn(c) for m, c in self.terms.items()})

    def over(self, field: GaloisField) -> "MultiPoly":
        if field is self.field:
            return self
        return MultiPoly._raw(field, self.nvars, {m: field.embed(c) for m, c in self.terms.items()})

    def leading_term(self) -> Tuple[Monomial, FieldElement]:
        mono = max(self.terms)
        return mono, self.terms[mono]

    def divmod(self, other: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        """Division by a single polynomial in lex order; remainder is 0 iff other divides self."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        lm, lc = other.leading_term()
        inv = lc.inverse()
        quotient: Dict[Monomial, FieldElement] = {}
        remainder: Dict[Monomial, FieldElement] = {}
        work = dict(self.terms)
        while work:
            mono = max(work)
            c = work.pop(mono)
            if all(a >= b for a, b in zip(mono, lm)):
                shift = tuple(a - b for a, b in zip(mono, lm))
                q = c * inv
                quotient[shift] = quotient[shift] + q if shift in quotient else q
                for m2, c2 in other.terms.items():
                    if m2 == lm:
                        continue
                    m = tuple(a + b for a, b in zip(shift, m2))
                    v = work.get(m, self.field.zero) - q * c2
                    if v.is_zero:
                        work.pop(m, None)
                    else:
                        work[m] = v
            else:
                remainder[mono] = c
        return (MultiPoly._raw(self.field, self.nvars, quotient),
                MultiPoly._raw(self.field, self.nvars, remainder))

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise NotDivisible(f"{other} does not divide {self}")
        return q

    def divides(self, other: "MultiPoly") -> bool:
        return other.divmod(self)[1].is_zero


@dataclass
class FactoredForm:
    """unit * prod(factor ** multiplicity)."""

    unit: FieldElement
    factors: List[Tuple[Union[UniPoly, MultiPoly], int]] = dataclass_field(default_factory=list)

    def expand(self):
        if not self.factors:
            return self.unit
        first = self.factors[0][0]
        result = first * 0 + self.unit
        for f, m in self.factors:
            result = result * f ** m
        return result

    @property
    def degree(self) -> int:
        total = 0
        for f, m in self.factors:
            total += (f.degree if isinstance(f, (UniPoly, MultiPoly)) else 0) * m
        return total


def binary_monomials(degree: int) -> List[Monomial]:
    return [(degree - j, j) for j in range(degree + 1)]


def monomials(nvars: int, degree: int) -> List[Monomial]:
    return sorted((m for m in product(range(degree + 1), repeat=nvars) if sum(m) == degree), reverse=True)
