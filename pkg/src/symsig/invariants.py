"""Finite matrix groups, Molien series and the quotient-singularity signature.

Matrices are tuples of row tuples of exact field elements (``mpq`` over QQ,
:class:`~symsig.fields.CyclotomicElement` over QQ(zeta_m)). For a small
group ``G`` with ``|G|`` invertible in the ground field the invariant ring
``R = k[x_1..x_n]^G`` has differential symmetric signature ``1/|G|``; the
report backs the exact value with the cumulative ratio of the Hilbert
functions of ``R`` and of the polynomial ring.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from gmpy2 import mpq

from . import _kernels
from . import _upoly as up
from .errors import (
    CharacteristicDividesOrder,
    ClosureCapExceeded,
    DisagreementBetweenMethods,
    InputError,
    InternalConsistencyError,
    NonIntegerCoefficient,
    NotSmall,
    SingularGenerator,
)
from .fields import QQ, CyclotomicElement, CyclotomicField, coefficient_to_rational, is_prime

DEFAULT_CAP = 10**5
TRACE_CHECK_DEGREE = 10
MONOMIAL_CHECK_DEGREE = 8
TABLE_POINTS = (10, 20, 50, 100, 200, 300, 500, 1000)

NOTE = ("the exact value rests on the verified hypotheses (smallness, coprimality); "
        "the convergence table is finite evidence for a limit, not a proof")


# --------------------------------------------------------------------------
# exact linear algebra


def identity(n, fld):
    one, zero = fld.one, fld.zero
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(A, B):
    n, m = len(A), len(B[0])
    cols = list(zip(*B))
    out = []
    for i in range(n):
        row = A[i]
        out.append(tuple(_dot(row, cols[j]) for j in range(m)))
    return tuple(out)


def _dot(a, b):
    acc = None
    for x, y in zip(a, b):
        if x and y:
            t = x * y
            acc = t if acc is None else acc + t
    return acc if acc is not None else a[0] * 0


def mat_sub(A, B):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def trace(A):
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def _echelon(A):
    rows = [list(r) for r in A]
    rank, sign, ncols = 0, 1, len(rows[0]) if rows else 0
    det = rows[0][0] * 0 + 1 if rows else mpq(1)
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            sign = -sign
        p = rows[rank][col]
        det = det * p
        inv = 1 / p
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank, (det if sign == 1 else -det)


def rank(A):
    return _echelon(A)[0]


def det(A):
    r, d = _echelon(A)
    return d if r == len(A) else A[0][0] * 0


def det_one_minus_t(A):
    """Coefficients of ``det(I - t A)``, lowest degree first (Faddeev-LeVerrier)."""
    n = len(A)
    fld_one = A[0][0] * 0 + 1
    coeffs = [fld_one]
    M = identity(n, _field_of(A))
    for k in range(1, n + 1):
        AM = mat_mul(A, M)
        c = -trace(AM) / k
        coeffs.append(c)
        M = tuple(tuple(x + c if i == j else x for j, x in enumerate(row)) for i, row in enumerate(AM))
    return coeffs


def _field_of(A):
    x = A[0][0]
    return x.field if isinstance(x, CyclotomicElement) else QQ


def format_matrix(A):
    return [[str(x) for x in row] for row in A]


# --------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class MatrixGroup:
    n: int
    field: object
    generators: tuple
    elements: tuple

    @property
    def order(self):
        return len(self.elements)

    def describe(self):
        fd = self.field.describe()
        return {
            "n": self.n,
            "order": self.order,
            "cyclotomic_order": fd.get("cyclotomic_order"),
            "generators": [format_matrix(g) for g in self.generators],
        }


def _coerce_matrix(M, fld):
    return tuple(tuple(fld(x) for x in row) for row in M)


def group_closure(generators, fld=None, cap=DEFAULT_CAP):
    """Close a list of invertible matrices under multiplication.

    Breadth-first products with exact equality; the closure of finitely many
    finite-order matrices under products is the generated group.
    """
    if not generators:
        raise InputError("at least one generator is required")
    gens = [tuple(tuple(r) for r in g) for g in generators]
    n = len(gens[0])
    if fld is None:
        fld = _field_of(gens[0]) if n else QQ
    gens = [_coerce_matrix(g, fld) for g in gens]
    for g in gens:
        if len(g) != n or any(len(r) != n for r in g):
            raise InputError(f"generators must be {n}x{n} matrices")
        if rank(g) < n:
            raise SingularGenerator(f"singular generator {format_matrix(g)}")
    one = identity(n, fld)
    seen = {one}
    elements = [one]
    queue = deque([one])
    while queue:
        e = queue.popleft()
        for g in gens:
            h = mat_mul(g, e)
            if h not in seen:
                seen.add(h)
                elements.append(h)
                if len(elements) > cap:
                    raise ClosureCapExceeded(cap)
                queue.append(h)
    return MatrixGroup(n, fld, tuple(gens), tuple(elements))


def is_small(G):
    """``(True, None)`` if ``G`` has no pseudo-reflection, else ``(False, sigma)``."""
    one = identity(G.n, G.field)
    for s in G.elements:
        if s != one and rank(mat_sub(s, one)) == 1:
            return False, s
    return True, None


def coprimality_check(G, char):
    return char == 0 or G.order % char != 0


def diagonal_weights(G):
    """``(W, m)`` with generator ``g = diag(zeta_m^W[g])``, or ``None``."""
    if isinstance(G.field, CyclotomicField):
        m = G.field.m
        powers = {G.field.zeta_power(k): k for k in range(m)}
    else:
        m = 2
        powers = {mpq(1): 0, mpq(-1): 1}
    W = []
    for g in G.generators:
        row = []
        for i in range(G.n):
            if any(g[i][j] for j in range(G.n) if j != i) or g[i][i] not in powers:
                return None
            row.append(powers[g[i][i]])
        W.append(row)
    return W, m


# --------------------------------------------------------------------------
# Molien series


@dataclass
class MolienData:
    numerator: list  # rational coefficients, lowest degree first
    denominator: list  # rational, denominator(0) = 1
    coefficients: list  # a_0 .. a_N
    ambient: list  # b_q = C(n - 1 + q, n - 1)
    checks: dict = field(default_factory=dict)

    @property
    def N(self):
        return len(self.coefficients) - 1

    def to_dict(self):
        return {
            "numerator": [str(c) for c in self.numerator],
            "denominator": [str(c) for c in self.denominator],
            "rational_function": f"({up.to_string(self.numerator)}) / ({up.to_string(self.denominator)})",
            "coefficients": [int(a) for a in self.coefficients],
            "checks": self.checks,
        }


def _as_integer(x, what):
    q = coefficient_to_rational(x)
    if q is None or q.denominator != 1:
        raise NonIntegerCoefficient(f"{what} = {x} is not a rational integer")
    return int(q)


def _as_rational(x, what):
    q = coefficient_to_rational(x)
    if q is None:
        raise NonIntegerCoefficient(f"{what} = {x} is not rational")
    return q


def trace_average(G, N):
    """``a_q`` for ``q <= N`` by averaging ``trace(Sym^q sigma)`` (Newton identities)."""
    total = [G.field.zero] * (N + 1)
    for s in G.elements:
        p = []
        P = s
        for _ in range(N):
            p.append(trace(P))
            P = mat_mul(P, s)
        h = [G.field.one]
        for q in range(1, N + 1):
            acc = G.field.zero
            for k in range(1, q + 1):
                acc = acc + p[k - 1] * h[q - k]
            h.append(acc / q)
        total = [a + b for a, b in zip(total, h)]
    return [_as_integer(a / G.order, f"trace-average a_{q}") for q, a in enumerate(total)]


def molien_coefficient(G, q):
    """Single coefficient ``a_q`` by direct averaging of series inverses."""
    acc = G.field.zero
    for s in G.elements:
        acc = acc + up.series_inverse(det_one_minus_t(s), q + 1)[q]
    return _as_integer(acc / G.order, f"a_{q}")


def molien_series(G, N):
    """Molien series ``(1/|G|) sum 1/det(I - t sigma)`` truncated at degree ``N``."""
    if N < 0:
        raise InputError("truncation degree must be nonnegative")
    dets = Counter(tuple(det_one_minus_t(s)) for s in G.elements)
    total = [G.field.zero] * (N + 1)
    den = [G.field.one]
    for D, mult in dets.items():
        inv = up.series_inverse(list(D), N + 1)
        total = [a + mult * b for a, b in zip(total, inv)]
        den = up.lcm(den, list(D))
    coeffs = []
    for q, a in enumerate(total):
        c = _as_integer(a / G.order, f"a_{q}")
        if c < 0:
            raise NonIntegerCoefficient(f"a_{q} = {c} is negative")
        coeffs.append(c)
    num = []
    for D, mult in dets.items():
        quo, rem = up.divmod_(den, list(D))
        assert not rem
        num = up.add(num, up.scale(quo, mult))
    num = up.scale(num, mpq(1, G.order))
    g = up.gcd(num, den)
    num, r1 = up.divmod_(num, g)
    den, r2 = up.divmod_(den, g)
    assert not r1 and not r2
    c0 = den[0]
    num = [_as_rational(x / c0, "numerator coefficient") for x in num]
    den = [_as_rational(x / c0, "denominator coefficient") for x in den]
    ambient = [comb(G.n - 1 + q, G.n - 1) for q in range(N + 1)]
    if coeffs[0] != 1:
        raise InternalConsistencyError(f"a_0 = {coeffs[0]}")
    for q, (a, b) in enumerate(zip(coeffs, ambient)):
        if a > b:
            raise InternalConsistencyError(f"a_{q} = {a} exceeds b_{q} = {b}")
    checks = {}
    top = min(N, TRACE_CHECK_DEGREE)
    if trace_average(G, top) != coeffs[: top + 1]:
        raise DisagreementBetweenMethods("Molien expansion and trace averaging disagree")
    checks["trace_average_degree"] = top
    top = min(N, len(num) + len(den) + 2)
    expanded = up.mul(den, coeffs[: top + 1])[: top + 1]
    expanded += [0] * (top + 1 - len(expanded))
    if expanded != num + [0] * (top + 1 - len(num)):
        raise InternalConsistencyError("rational form does not expand to the coefficients")
    checks["rational_form_degree"] = top
    diag = diagonal_weights(G)
    if diag is not None:
        W, m = diag
        top = min(N, MONOMIAL_CHECK_DEGREE)
        A = _kernels.as_exponent_array(W, G.n) if W else None
        counts = [_kernels.diagonal_invariant_count(A, m, G.n, q) for q in range(top + 1)]
        if counts != coeffs[: top + 1]:
            raise DisagreementBetweenMethods("Molien coefficients disagree with monomial counts")
        checks["monomial_count_degree"] = top
    return MolienData(num, den, coeffs, ambient, checks)


def cumulative_ratio(M, N):
    if N > M.N:
        raise InputError(f"N = {N} exceeds the truncation degree {M.N}")
    return mpq(sum(M.coefficients[: N + 1]), sum(M.ambient[: N + 1]))


# --------------------------------------------------------------------------
# signature


@dataclass
class QuotientSignatureReport:
    group: dict
    char: int
    small: bool
    witness: Optional[list]
    coprime: bool
    status: str
    signature: Optional[str]
    reason: str
    molien: Optional[MolienData] = None
    table: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def checks(self):
        return [
            {"name": "small", "status": "verified" if self.small else "failed",
             "detail": "no pseudo-reflections" if self.small else "pseudo-reflection found"},
            {"name": "char-coprime-to-order", "status": "verified" if self.coprime else "failed",
             "detail": f"char = {self.char}, |G| = {self.group['order']}"},
        ]

    def to_dict(self):
        checks = self.checks
        return {
            "kind": "quotient",
            "group": self.group,
            "char": self.char,
            "status": self.status,
            "signature": self.signature,
            "reason": self.reason,
            "checks": checks,
            "hypotheses": {
                "verified": [c["name"] for c in checks if c["status"] == "verified"],
                "asserted": [],
                "failed": [c["name"] for c in checks if c["status"] == "failed"],
            },
            "witness": self.witness,
            "molien": self.molien.to_dict() if self.molien else None,
            "convergence": self.table,
            "note": NOTE,
            "warnings": self.warnings,
        }


def convergence_table(M, target):
    points = sorted({p for p in TABLE_POINTS if p <= M.N} | {M.N})
    rows = []
    for p in points:
        r = cumulative_ratio(M, p)
        rows.append({"N": p, "ratio": str(r), "ratio_float": float(r), "error": float(abs(r - target))})
    return rows


def quotient_signature(G, char=0, N=200):
    """Exact signature ``1/|G|`` of ``k[x]^G`` with convergence evidence.

    Raises :class:`NotSmall` or :class:`CharacteristicDividesOrder` when a
    hypothesis fails; :func:`undecided_quotient_report` turns those into a
    report.
    """
    if G.n < 2:
        raise InputError("the quotient pipeline needs n >= 2")
    if char < 0 or (char and not is_prime(char)):
        raise InputError(f"characteristic {char} is not 0 or a prime")
    small, witness = is_small(G)
    if not small:
        raise NotSmall(format_matrix(witness))
    if not coprimality_check(G, char):
        raise CharacteristicDividesOrder(char, G.order)
    M = molien_series(G, N)
    target = mpq(1, G.order)
    warnings = []
    if char:
        warnings.append(f"Molien series computed in characteristic 0; valid for char {char} since it is coprime to |G|")
    return QuotientSignatureReport(
        group=G.describe(), char=char, small=True, witness=None, coprime=True,
        status="certified", signature=str(target),
        reason="G is small and |G| is invertible in the ground field",
        molien=M, table=convergence_table(M, target), warnings=warnings)


def undecided_quotient_report(G, char, exc):
    small, witness = is_small(G)
    return QuotientSignatureReport(
        group=G.describe(), char=char, small=small,
        witness=format_matrix(witness) if witness is not None else None,
        coprime=coprimality_check(G, char), status="undecided", signature=None,
        reason=str(exc))
