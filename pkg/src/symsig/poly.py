"""Sparse multivariate polynomials over an exact field, standard grading.

A polynomial stores a mapping from exponent tuples to nonzero coefficients;
``terms()`` yields them in strictly decreasing order for the ring's monomial
order. Text input follows a small grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    coeff  := int ('/' nat)?
    factor := var ('^' nat)?

In a ring over a cyclotomic field the symbol ``z`` is reserved for the
primitive root of unity and may appear as a factor anywhere in a term.
"""

import re
from itertools import combinations_with_replacement
from math import comb

from gmpy2 import mpq

from .errors import (
    BadCoefficient,
    DegreeNotInvertible,
    InputError,
    NonInvertibleDenominator,
    PolynomialSyntaxError,
    UnknownVariable,
)
from .fields import QQ, CyclotomicElement, CyclotomicField, GFElement, PrimeField

ZETA = "z"
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([+\-*/^]))")
MAX_EXPONENT = 2**31 - 1


def grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def lex_key(exps):
    return tuple(exps)


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


def monomials_of_degree(q, n, order="grevlex"):
    """All exponent vectors of degree ``q`` in ``n`` variables, largest first."""
    out = []
    for combo in combinations_with_replacement(range(n), q):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=ORDERS[order], reverse=True)
    assert len(out) == comb(n + q - 1, q)
    return out


class PolyRing:
    """k[x_1, ..., x_n] with every variable of degree one."""

    def __init__(self, variables, field=QQ, order="grevlex"):
        variables = tuple(variables)
        if not variables:
            raise InputError("a polynomial ring needs at least one variable")
        for v in variables:
            if not _IDENT.match(v):
                raise InputError(f"invalid variable name {v!r}")
            if isinstance(field, CyclotomicField) and v == ZETA:
                raise InputError(f"{ZETA!r} is reserved for the root of unity")
        if len(set(variables)) != len(variables):
            raise InputError("variable names must be distinct")
        if order not in ORDERS:
            raise InputError(f"unknown monomial order {order!r}")
        self.variables = variables
        self.field = field
        self.order = order
        self.key = ORDERS[order]
        self.n = len(variables)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field!r}, {self.order!r})"

    def with_order(self, order):
        return PolyRing(self.variables, self.field, order)

    def describe(self):
        d = {"variables": list(self.variables)}
        d.update(self.field.describe())
        return d

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        return Polynomial(self, {(0,) * self.n: c} if c != 0 else {})

    def gen(self, i):
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def from_dict(self, terms):
        clean = {}
        for e, c in terms.items():
            c = self.field(c)
            if c != 0:
                clean[tuple(e)] = c
        return Polynomial(self, clean)

    def __call__(self, text):
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, str):
            return parse_polynomial(text, self)
        return self.constant(text)


class Polynomial:
    """Immutable polynomial; arithmetic returns new objects."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- inspection
    def as_dict(self):
        return dict(self._terms)

    def terms(self):
        key = self.ring.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    def leading_term(self):
        key = self.ring.key
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self.ring.constant(other)
            except Exception:
                return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def diff(self, i):
        return partial_derivative(self, i)

    def monic(self):
        if not self._terms:
            return self
        _, c = self.leading_term()
        inv = 1 / c
        return Polynomial(self.ring, {e: v * inv for e, v in self._terms.items()})

    # -- printing
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _monomial_text(exps, names):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _signed_terms(p):
    """Yield (negative?, magnitude string, monomial string) for printing."""
    names = p.ring.variables
    for e, c in p.terms():
        mono = _monomial_text(e, names)
        if isinstance(c, CyclotomicElement):
            for k in range(len(c.c) - 1, -1, -1):
                a = c.c[k]
                if not a:
                    continue
                zpart = "" if k == 0 else (ZETA if k == 1 else f"{ZETA}^{k}")
                body = "*".join(x for x in (zpart, mono) if x)
                yield a < 0, abs(a), body
        elif isinstance(c, GFElement):
            yield False, c.v, mono
        else:
            yield c < 0, abs(c), mono


def format_polynomial(p):
    chunks = []
    for neg, mag, body in _signed_terms(p):
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not chunks:
            chunks.append(("-" if neg else "") + text)
        else:
            chunks.append(("- " if neg else "+ ") + text)
    return " ".join(chunks) if chunks else "0"


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.index = {v: k for k, v in enumerate(ring.variables)}
        self.cyclotomic = isinstance(ring.field, CyclotomicField)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_nat(self):
        kind, val, pos = self.take()
        if kind != "num":
            raise PolynomialSyntaxError("expected a natural number", pos)
        return int(val), pos

    def parse(self):
        terms = {}
        sign = 1
        kind, val, pos = self.peek()
        if kind == "end":
            raise PolynomialSyntaxError("empty expression", pos)
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            self.term(sign, terms)
            kind, val, pos = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            raise PolynomialSyntaxError(f"unexpected {val!r}", pos)
        field = self.ring.field
        out = {}
        for (e, k), c in terms.items():
            if self.cyclotomic:
                c = field.zeta_power(k) * c
            else:
                try:
                    c = field.from_rational(c)
                except NonInvertibleDenominator as exc:
                    raise BadCoefficient(str(exc)) from exc
            v = out.get(e)
            out[e] = c if v is None else v + c
        return Polynomial(self.ring, {e: c for e, c in out.items() if c != 0})

    def term(self, sign, terms):
        coeff = mpq(sign)
        exps = [0] * self.ring.n
        zpow = 0
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            num = int(val)
            den = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den, dpos = self.expect_nat()
                if den == 0:
                    raise BadCoefficient(f"zero denominator at position {dpos}")
            coeff *= mpq(num, den)
            if self.peek()[:2] != ("op", "*"):
                self._add(terms, exps, zpow, coeff)
                return
            self.take()
        while True:
            kind, val, pos = self.take()
            if kind != "ident":
                raise PolynomialSyntaxError("expected a variable", pos)
            power = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                power, ppos = self.expect_nat()
                if power > MAX_EXPONENT:
                    raise PolynomialSyntaxError("exponent too large", ppos)
            if self.cyclotomic and val == ZETA:
                zpow += power
            elif val in self.index:
                exps[self.index[val]] += power
            else:
                raise UnknownVariable(val)
            if self.peek()[:2] == ("op", "*"):
                self.take()
                continue
            break
        self._add(terms, exps, zpow, coeff)

    @staticmethod
    def _add(terms, exps, zpow, coeff):
        key = (tuple(exps), zpow)
        terms[key] = terms.get(key, mpq(0)) + coeff


def parse_polynomial(text, ring):
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    return _Parser(text, ring).parse()


def partial_derivative(p, i):
    if not 0 <= i < p.ring.n:
        raise IndexError(f"variable index {i} out of range")
    out = {}
    for e, c in p._terms.items():
        k = e[i]
        if k == 0:
            continue
        v = c * k
        if v != 0:
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = v
    return Polynomial(p.ring, out)


def euler_check(f):
    """Whether sum_i x_i df/dx_i equals deg(f) * f for homogeneous ``f``."""
    if not f.is_homogeneous():
        raise InputError("Euler identity needs a homogeneous polynomial")
    d = max(f.total_degree(), 0)
    if f.ring.field(d) == 0 and not f.is_zero():
        raise DegreeNotInvertible(f"degree {d} vanishes in characteristic {f.ring.field.char}")
    lhs = f.ring.zero
    for i, x in enumerate(f.ring.gens):
        lhs = lhs + x * partial_derivative(f, i)
    return lhs == f * d


def ring_from_description(desc):
    """Inverse of :meth:`PolyRing.describe`."""
    char = int(desc.get("char", 0))
    m = desc.get("cyclotomic_order")
    if m is not None and char:
        raise InputError("cyclotomic fields are only supported in characteristic 0")
    if m is not None:
        field = CyclotomicField(int(m))
    elif char:
        field = PrimeField(char)
    else:
        field = QQ
    return PolyRing(desc["variables"], field, desc.get("order", "grevlex"))
