"""
Finite fields GF(p^k).

Every (p, k) has exactly one GaloisField instance per process. Its modulus
is the lexicographically smallest monic irreducible polynomial of degree k
(coefficients compared low degree first). Embeddings GF(p^b) -> GF(p^c)
are built lazily, cached, and mutually compatible across the whole lattice
of degrees.
"""

import logging
import random
import threading
from functools import reduce
from itertools import product
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import ZZ, isprime
from sympy.polys.galoistools import gf_irreducible_p

from com.mhire.qlines.config.errors import QlinesError

logger = logging.getLogger(__name__)


class DivisionByZero(QlinesError, ZeroDivisionError):
    pass


class FieldMismatch(QlinesError, TypeError):
    pass


class NoEmbedding(QlinesError, ValueError):
    pass


class NotPrime(QlinesError, ValueError):
    pass


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class FieldElement:
    """An element of a GaloisField, stored as its residue-class coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "GaloisField", coeffs: Tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatch(f"{other.field} and {self.field}")
            return other
        if isinstance(other, int):
            return self.field(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field._add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field._sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(self.field, self.field._pow(self.coeffs, exponent))

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise DivisionByZero(f"inverse of zero in {self.field}")
        return FieldElement(self.field, self.field._inv(self.coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __int__(self):
        if any(self.coeffs[1:]):
            raise ValueError(f"{self} is not in the prime field")
        return self.coeffs[0]

    def frobenius(self, i: int = 1) -> "FieldElement":
        return self.field.frobenius(self, i)

    @property
    def degree(self) -> int:
        """Degree over GF(p) of the smallest subfield containing this element."""
        return self.field.degree_of(self)

    def sort_key(self):
        return self.coeffs

    def __repr__(self):
        if self.field.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i in range(self.field.k - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "g" if i == 1 else f"g^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"


class GaloisField:
    """GF(p^k) with a deterministic modulus. Obtain instances with get_field()."""

    def __init__(self, p: int, k: int):
        if not isprime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = _smallest_irreducible(p, k)
        self._mod_low = self.modulus[:k]
        self.zero = FieldElement(self, (0,) * k)
        self.one = FieldElement(self, (1,) + (0,) * (k - 1))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (get_field, (self.p, self.k))

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    @property
    def gen(self) -> FieldElement:
        if self.k == 1:
            return self.one
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def __call__(self, value: Union[int, Sequence[int], FieldElement]) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is self:
                return value
            return self.embed(value)
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError(f"{len(coeffs)} coefficients for {self}")
        return FieldElement(self, tuple(coeffs) + (0,) * (self.k - len(coeffs)))

    def elements(self) -> Iterator[FieldElement]:
        for coeffs in product(range(self.p), repeat=self.k):
            yield FieldElement(self, coeffs)

    def random_element(self, rng: random.Random) -> FieldElement:
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    # raw coefficient arithmetic

    def _add(self, a, b):
        p = self.p
        if self.k == 1:
            return ((a[0] + b[0]) % p,)
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        if self.k == 1:
            return ((a[0] - b[0]) % p,)
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        low = self._mod_low
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                base = d - k
                for i in range(k):
                    if low[i]:
                        prod[base + i] -= c * low[i]
        return tuple(c % p for c in prod[:k])

    def _pow(self, a, e: int):
        if self.k == 1:
            return (pow(a[0], e, self.p),)
        result = self.one.coeffs
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _inv(self, a):
        if self.k == 1:
            return (pow(a[0], -1, self.p),)
        return self._pow(a, self.order - 2)

    # Galois structure

    def frobenius(self, a: FieldElement, i: int = 1) -> FieldElement:
        """a^(p^i); the identity on GF(p) and, for i = k, on the whole field."""
        i %= self.k
        if i == 0:
            return a
        return a ** (self.p ** i)

    def degree_of(self, a: FieldElement) -> int:
        for d in divisors(self.k):
            if self.frobenius(a, d) == a:
                return d
        return self.k

    def embed(self, a: FieldElement) -> FieldElement:
        """Image of a (from a subfield GF(p^b), b | k) in this field."""
        source = a.field
        if source is self:
            return a
        if source.p != self.p or self.k % source.k:
            raise NoEmbedding(f"{source} does not embed into {self}")
        if source.k == 1:
            return FieldElement(self, (a.coeffs[0],) + (0,) * (self.k - 1))
        root = _embedding_root(source.k, self)
        result = self.zero
        for c in reversed(a.coeffs):
            result = result * root + c
        return result

    def restrict(self, a: FieldElement, sub: "GaloisField") -> FieldElement:
        """Preimage of a under the embedding sub -> self."""
        if a.field is not self:
            raise FieldMismatch(f"{a.field} and {self}")
        if sub is self:
            return a
        if sub.p != self.p or self.k % sub.k:
            raise NoEmbedding(f"{sub} is not a subfield of {self}")
        if sub.k == 1:
            if any(a.coeffs[1:]):
                raise NoEmbedding(f"{a} is not in {sub}")
            return FieldElement(sub, (a.coeffs[0],))
        root = _embedding_root(sub.k, self)
        columns = []
        power = self.one
        for _ in range(sub.k):
            columns.append(power.coeffs)
            power = power * root
        solution = _solve_mod_p(columns, a.coeffs, self.p)
        if solution is None:
            raise NoEmbedding(f"{a} is not in {sub}")
        return FieldElement(sub, tuple(solution))


def _solve_mod_p(columns: Sequence[Sequence[int]], target: Sequence[int], p: int) -> Optional[List[int]]:
    """Solve sum x_j columns[j] = target over GF(p); None when inconsistent."""
    n = len(columns)
    m = len(target)
    rows = [[columns[j][i] % p for j in range(n)] + [target[i] % p] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][n] for i in range(r, m)):
        return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x


def _smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
    if k == 1:
        return (0, 1)
    # a zero constant term means x divides the modulus
    for low in product(range(1, p), *[range(p)] * (k - 1)):
        dense = [1] + list(reversed(low))
        if gf_irreducible_p(dense, p, ZZ):
            return tuple(low) + (1,)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over GF({p})")


_FIELDS: Dict[Tuple[int, int], GaloisField] = {}
_FIELDS_LOCK = threading.Lock()


def get_field(p: int, k: int = 1) -> GaloisField:
    key = (p, k)
    field = _FIELDS.get(key)
    if field is None:
        with _FIELDS_LOCK:
            field = _FIELDS.get(key)
            if field is None:
                field = GaloisField(p, k)
                _FIELDS[key] = field
                logger.debug("built %s with modulus %s", field, field.modulus)
    return field


def common_field(*fields: GaloisField) -> GaloisField:
    p = fields[0].p
    if any(f.p != p for f in fields):
        raise FieldMismatch("fields of different characteristic")
    return get_field(p, lcm(*(f.k for f in fields)))


def minimal_field(values: Iterable[FieldElement]) -> GaloisField:
    values = list(values)
    field = values[0].field
    return get_field(field.p, lcm(*(v.degree for v in values)))


# Embedding roots: (p, b, c) -> image of the generator of GF(p^b) in GF(p^c).
_ROOTS: Dict[Tuple[int, int, int], FieldElement] = {}
_ROOTS_LOCK = threading.RLock()


def _embedding_root(b: int, target: GaloisField) -> FieldElement:
    key = (target.p, b, target.k)
    root = _ROOTS.get(key)
    if root is None:
        with _ROOTS_LOCK:
            if key not in _ROOTS:
                _fix_embeddings(target)
            root = _ROOTS[key]
    return root


def _fix_embeddings(target: GaloisField) -> None:
    """Choose compatible embeddings of every proper subfield of target.

    Subfields are handled by decreasing degree; each takes the smallest root
    of its modulus that agrees with the embeddings fixed so far on every
    common subfield.
    """
    from com.mhire.qlines.services.poly.factor import roots
    from com.mhire.qlines.services.poly.poly import UniPoly

    p, c = target.p, target.k
    fixed: Dict[int, FieldElement] = {}
    for b in sorted((d for d in divisors(c) if 1 < d < c), reverse=True):
        sub = get_field(p, b)
        modulus = UniPoly(target, [target(v) for v in sub.modulus])
        candidates = sorted(roots(modulus), key=FieldElement.sort_key)
        chosen = None
        for candidate in candidates:
            if all(_agrees(sub, candidate, get_field(p, b2), fixed[b2], target) for b2 in fixed):
                chosen = candidate
                break
        if chosen is None:
            raise NoEmbedding(f"no compatible embedding of {sub} into {target}")
        fixed[b] = chosen
        _ROOTS[(p, b, c)] = chosen
        logger.debug("embedding %s -> %s via %s", sub, target, chosen)


def _agrees(sub: GaloisField, root: FieldElement, other: GaloisField,
            other_root: FieldElement, target: GaloisField) -> bool:
    g = gcd(sub.k, other.k)
    if g == 1:
        return True
    common = get_field(sub.p, g)
    x = common.gen
    via_sub = _evaluate(sub.embed(x).coeffs, root, target)
    via_other = _evaluate(other.embed(x).coeffs, other_root, target)
    return via_sub == via_other


def _evaluate(coeffs: Sequence[int], point: FieldElement, field: GaloisField) -> FieldElement:
    result = field.zero
    for c in reversed(coeffs):
        result = result * point + c
    return result
