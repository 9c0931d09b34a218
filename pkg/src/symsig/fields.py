"""Exact coefficient fields: rationals, prime fields and cyclotomic fields.

Rational numbers are plain ``gmpy2.mpq`` values (always in lowest terms with a
positive denominator). Prime-field and cyclotomic elements are small immutable
wrapper classes carrying their field; mixing elements of different fields
raises :class:`FieldMismatch`, while Python ints and rationals are coerced.
"""

from functools import lru_cache

from gmpy2 import mpq

from . import _upoly
from .errors import BadCoefficient, DivisionByZero, FieldMismatch, NonInvertibleDenominator

MAX_CONDUCTOR = 120

_RATIONAL_TYPES = (int, type(mpq(0)))


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def totient(m):
    result, k, d = m, m, 2
    while d * d <= k:
        if k % d == 0:
            while k % d == 0:
                k //= d
            result -= result // d
        d += 1
    if k > 1:
        result -= result // k
    return result


def divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def to_rational(value):
    """Coerce ints, mpq, ``fractions.Fraction`` or ``"a/b"`` strings to mpq."""
    try:
        if isinstance(value, str):
            return mpq(value.strip())
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return mpq(int(value.numerator), int(value.denominator))
        return mpq(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadCoefficient(f"not a rational number: {value!r}") from exc


@lru_cache(maxsize=None)
def cyclotomic_coefficients(m):
    """Integer coefficients of the m-th cyclotomic polynomial, lowest first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [mpq(-1)] + [mpq(0)] * (m - 1) + [mpq(1)]
    for d in divisors(m)[:-1]:
        q, r = _upoly.divmod_(num, [mpq(c) for c in cyclotomic_coefficients(d)])
        assert not r
        num = q
    return tuple(int(c) for c in num)


def cyclotomic_polynomial(m, var="x"):
    """The m-th cyclotomic polynomial as a univariate :class:`Polynomial` over QQ."""
    from .poly import PolyRing

    ring = PolyRing([var], QQ)
    return ring.from_dict({(k,): mpq(c) for k, c in enumerate(cyclotomic_coefficients(m)) if c})


class Field:
    char = 0

    def is_element(self, x):
        raise NotImplementedError

    def from_rational(self, q):
        raise NotImplementedError

    def __call__(self, value):
        if self.is_element(value):
            return value
        return self.from_rational(to_rational(value))

    @property
    def zero(self):
        return self.from_rational(mpq(0))

    @property
    def one(self):
        return self.from_rational(mpq(1))

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()

    def describe(self):
        """JSON-friendly descriptor."""
        raise NotImplementedError


class RationalField(Field):
    """The field of rational numbers; elements are ``mpq``."""

    def is_element(self, x):
        return type(x) is type(mpq(0))

    def from_rational(self, q):
        return mpq(q)

    def __repr__(self):
        return "QQ"

    def describe(self):
        return {"char": 0}


QQ = RationalField()


def rational_embedding(q, target):
    """Canonical image of the rational ``q`` in ``target``."""
    return target.from_rational(to_rational(q))


class PrimeField(Field):
    def __init__(self, p):
        if not is_prime(p):
            raise BadCoefficient(f"{p} is not prime")
        self.p = p
        self.char = p

    def _key(self):
        return (self.p,)

    def is_element(self, x):
        return isinstance(x, GFElement) and x.field.p == self.p

    def from_rational(self, q):
        q = mpq(q)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise NonInvertibleDenominator(f"denominator of {q} is not invertible mod {self.p}")
        return GFElement(num * pow(den, -1, self.p) % self.p, self)

    def __repr__(self):
        return f"GF({self.p})"

    def describe(self):
        return {"char": self.p}


def GF(p):
    return PrimeField(p)


class GFElement:
    """Residue class modulo a prime, stored in ``[0, p)``."""

    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v
        self.field = field

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.field.p != self.field.p:
                raise FieldMismatch(f"GF({self.field.p}) vs GF({other.field.p})")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        if isinstance(other, _RATIONAL_TYPES):
            return self.field.from_rational(other).v
        raise FieldMismatch(f"cannot combine GF({self.field.p}) with {type(other).__name__}")

    def _new(self, v):
        return GFElement(v % self.field.p, self.field)

    def __add__(self, other):
        return self._new(self.v + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.v - self._coerce(other))

    def __rsub__(self, other):
        return self._new(self._coerce(other) - self.v)

    def __mul__(self, other):
        return self._new(self.v * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.v)

    def inverse(self):
        if self.v == 0:
            raise DivisionByZero(f"division by zero in GF({self.field.p})")
        return GFElement(pow(self.v, -1, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o == 0:
            raise DivisionByZero(f"division by zero in GF({self.field.p})")
        return self._new(self.v * pow(o, -1, self.field.p))

    def __rtruediv__(self, other):
        return self._new(self._coerce(other)) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return GFElement(pow(self.v, k, self.field.p), self.field)

    def __eq__(self, other):
        try:
            return self.v == self._coerce(other)
        except FieldMismatch:
            return False

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF({self.field.p})({self.v})"

    def __str__(self):
        return str(self.v)


class CyclotomicField(Field):
    """QQ(zeta_m), elements stored as dense coefficient vectors mod Phi_m."""

    def __init__(self, m, max_conductor=MAX_CONDUCTOR):
        if m < 1:
            raise BadCoefficient("conductor must be positive")
        if m > max_conductor:
            raise BadCoefficient(f"conductor {m} exceeds the bound {max_conductor}")
        self.m = m
        self.phi = totient(m)
        self.modulus = cyclotomic_coefficients(m)

    def _key(self):
        return (self.m,)

    def is_element(self, x):
        return isinstance(x, CyclotomicElement) and x.field.m == self.m

    def from_rational(self, q):
        return CyclotomicElement((mpq(q),) + (mpq(0),) * (self.phi - 1), self)

    def zeta_power(self, k):
        """zeta^k for any integer k."""
        k %= self.m
        vec = [mpq(0)] * (k + 1)
        vec[k] = mpq(1)
        return CyclotomicElement(self._reduce(vec), self)

    @property
    def gen(self):
        return self.zeta_power(1)

    def _reduce(self, vec):
        phi = self.phi
        vec = list(vec) + [mpq(0)] * max(phi - len(vec), 0)
        low = self.modulus[:phi]
        for k in range(len(vec) - 1, phi - 1, -1):
            c = vec[k]
            if c:
                base = k - phi
                for i, f in enumerate(low):
                    if f:
                        vec[base + i] -= c * f
        return tuple(mpq(x) for x in vec[:phi])

    def from_coefficients(self, coeffs):
        """Element sum c_k zeta^k from an arbitrary-length coefficient list."""
        full = [mpq(0)] * max(self.m, 1)
        for k, c in enumerate(coeffs):
            full[k % self.m] += to_rational(c)
        return CyclotomicElement(self._reduce(full), self)

    def __repr__(self):
        return f"QQ(zeta_{self.m})"

    def describe(self):
        return {"char": 0, "cyclotomic_order": self.m}


class CyclotomicElement:
    __slots__ = ("c", "field")

    def __init__(self, c, field):
        self.c = c
        self.field = field

    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            if other.field.m != self.field.m:
                raise FieldMismatch(f"QQ(zeta_{self.field.m}) vs QQ(zeta_{other.field.m})")
            return other.c
        if isinstance(other, _RATIONAL_TYPES):
            return self.field.from_rational(other).c
        raise FieldMismatch(f"cannot combine QQ(zeta_{self.field.m}) with {type(other).__name__}")

    def _new(self, c):
        return CyclotomicElement(tuple(c), self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return self._new(a + b for a, b in zip(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return self._new(a - b for a, b in zip(self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return self._new(b - a for a, b in zip(self.c, o))

    def __neg__(self):
        return self._new(-a for a in self.c)

    def __mul__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return self._new(a * other for a in self.c)
        o = self._coerce(other)
        phi = self.field.phi
        prod = [mpq(0)] * (2 * phi - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicElement(self.field._reduce(prod), self.field)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.c)

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero(f"division by zero in QQ(zeta_{self.field.m})")
        phi = self.field.phi
        # column j of the multiplication matrix is self * zeta^j
        cols = [(self * self.field.zeta_power(j)).c for j in range(phi)]
        aug = [[cols[j][i] for j in range(phi)] + [mpq(1 if i == 0 else 0)] for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(phi):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return self._new(row[-1] for row in aug)

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            if other == 0:
                raise DivisionByZero(f"division by zero in QQ(zeta_{self.field.m})")
            return self._new(a / other for a in self.c)
        if not isinstance(other, CyclotomicElement):
            self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        try:
            return self.c == self._coerce(other)
        except FieldMismatch:
            return False

    def __hash__(self):
        return hash((self.field.m, self.c))

    def __bool__(self):
        return not self.is_zero()

    def rational_value(self):
        """The element as an mpq if it lies in QQ, else ``None``."""
        if any(self.c[1:]):
            return None
        return self.c[0]

    def __repr__(self):
        return f"QQ(zeta_{self.field.m})[{', '.join(map(str, self.c))}]"

    def __str__(self):
        return format_zeta_polynomial(self.c)


def format_rational_coefficient(c):
    return str(c)


def format_zeta_polynomial(coeffs, symbol="z"):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if k == 0:
            body = str(a)
        else:
            mon = symbol if k == 1 else f"{symbol}^{k}"
            body = mon if a == 1 else f"{a}*{mon}"
        parts.append((sign, body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def coefficient_to_rational(c):
    """Rational value of a field element known to lie in QQ."""
    if isinstance(c, CyclotomicElement):
        return c.rational_value()
    if isinstance(c, _RATIONAL_TYPES):
        return mpq(c)
    return None
