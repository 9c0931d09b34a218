"""Kaehler differentials of graded quotients and their free rank.

For ``R = P/(f_1, ..., f_s)`` the module of differentials is presented by the
transposed Jacobian: generators ``dx_1, ..., dx_n`` of degree one and one
relation ``sum_j df_i/dx_j dx_j`` per generator of the ideal. ``Sym^q`` of it
has generators ``(dX)^nu`` for ``|nu| = q`` and relations ``(dX)^mu * df_i``
for ``|mu| = q - 1``.

A graded module has a free summand iff some degree-0 map to a shifted copy
of ``R`` hits a unit. Two independent tests decide this for differentials:

* the column test asks whether a column of the Jacobian lies in the
  ``R``-span of the others (module membership, lifted to ``P``);
* the syzygy test looks for a homogeneous map ``u`` killing the relations
  and having a nonzero scalar entry.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from .errors import DisagreementBetweenMethods, InputError, InternalConsistencyError
from .groebner import Ideal, ModuleElement, krull_dimension, lift, syzygy_basis, syzygy_degree
from .poly import Polynomial, monomials_of_degree, partial_derivative

POSITIVE = "positive"
ZERO = "zero"


@dataclass(frozen=True)
class JacobianMatrix:
    rows: tuple  # s rows of n polynomials, entry (i, j) = df_i/dx_j
    ideal: Ideal

    @property
    def s(self):
        return len(self.rows)

    @property
    def n(self):
        return self.ideal.ring.n

    def column(self, j):
        return [row[j] for row in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def as_strings(self):
        return [[str(p) for p in row] for row in self.rows]


@dataclass(frozen=True)
class PresentationMatrix:
    """Graded presentation; rows are relations, columns are generators."""

    relations: tuple
    labels: tuple
    generator_degrees: tuple
    relation_degrees: tuple
    ideal: Ideal

    @property
    def num_generators(self):
        return len(self.labels)

    @property
    def num_relations(self):
        return len(self.relations)

    def transposed(self):
        ring = self.ideal.ring
        return [[rel[j] for rel in self.relations] or [ring.zero] for j in range(self.num_generators)]


@dataclass(frozen=True)
class SymPowerPresentation(PresentationMatrix):
    q: int = 1
    exponents: tuple = ()


@dataclass
class FreeRankResult:
    verdict: str
    method: str
    certificate: dict
    columns: list = field(default_factory=list)
    witness: Optional[ModuleElement] = None

    @property
    def positive(self):
        return self.verdict == POSITIVE


@dataclass
class Check:
    name: str
    status: str  # verified | failed | asserted | not-asserted
    detail: str = ""

    @property
    def ok(self):
        return self.status in ("verified", "asserted")

    def to_dict(self):
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _label(exps, names):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(f"d{name}")
        elif e > 1:
            parts.append(f"d{name}^{e}")
    return "*".join(parts) or "1"


# --------------------------------------------------------------------------
# presentations


def jacobian(ideal):
    if not ideal.is_homogeneous():
        raise InputError("the Jacobian presentation needs homogeneous generators")
    n = ideal.ring.n
    rows = tuple(tuple(partial_derivative(f, j) for j in range(n)) for f in ideal.gens)
    return JacobianMatrix(rows, ideal)


def omega_presentation(ideal):
    J = jacobian(ideal)
    names = ideal.ring.variables
    return PresentationMatrix(
        relations=J.rows,
        labels=tuple(f"d{v}" for v in names),
        generator_degrees=(1,) * len(names),
        relation_degrees=tuple(f.total_degree() for f in ideal.gens),
        ideal=ideal,
    )


def sym_power_presentation(ideal, q):
    if q < 1:
        raise InputError("symmetric powers start at q = 1")
    J = jacobian(ideal)
    ring = ideal.ring
    n = ring.n
    gens = monomials_of_degree(q, n)
    index = {nu: k for k, nu in enumerate(gens)}
    relations, degrees = [], []
    for mu in monomials_of_degree(q - 1, n):
        for i, f in enumerate(ideal.gens):
            row = [ring.zero] * len(gens)
            for j in range(n):
                nu = tuple(m + (1 if t == j else 0) for t, m in enumerate(mu))
                row[index[nu]] = row[index[nu]] + J.rows[i][j]
            relations.append(tuple(row))
            degrees.append(q - 1 + f.total_degree())
    assert len(gens) == comb(n + q - 1, q)
    assert len(relations) == len(ideal.gens) * comb(n + q - 2, q - 1)
    return SymPowerPresentation(
        relations=tuple(relations),
        labels=tuple(_label(nu, ring.variables) for nu in gens),
        generator_degrees=(q,) * len(gens),
        relation_degrees=tuple(degrees),
        ideal=ideal,
        q=q,
        exponents=tuple(gens),
    )


# --------------------------------------------------------------------------
# free-rank tests


def freerank_positive_syzygy(P, truncate=True, pair_limit=None):
    """Syzygy test: is there a degree-0 map from the module onto a copy of R?

    Homomorphisms to ``R`` are vectors ``u`` with ``relations . u = 0``.
    A homogeneous such ``u`` has a unit entry exactly when one entry is a
    nonzero scalar, which forces its degree to be minus a generator degree;
    with ``truncate`` only syzygies up to that degree are computed.
    """
    ring = P.ideal.ring
    if P.num_relations == 0:
        u = ModuleElement([ring.one] + [ring.zero] * (P.num_generators - 1))
        cert = {"generator": 0, "label": P.labels[0], "syzygy": [str(p) for p in u]}
        return FreeRankResult(POSITIVE, "syzygy-test", cert, witness=u)
    rows = P.transposed()
    row_degrees = [-d for d in P.generator_degrees]
    target_shifts = [-d for d in P.relation_degrees]
    bound = max(row_degrees) if truncate else None
    syz = syzygy_basis(rows, P.ideal, degree_bound=bound, row_degrees=row_degrees,
                       target_shifts=target_shifts, pair_limit=pair_limit)
    profile = sorted(syzygy_degree(u, row_degrees) for u in syz)
    for u in syz:
        for j, p in enumerate(u):
            if not p.is_zero() and p.is_constant():
                cert = {"generator": j, "label": P.labels[j], "syzygy": [str(x) for x in u],
                        "degree_bound": bound}
                return FreeRankResult(POSITIVE, "syzygy-test", cert, witness=u)
    cert = {"degree_bound": bound, "syzygy_degrees": profile, "scalar_entries": 0}
    return FreeRankResult(ZERO, "syzygy-test", cert)


def freerank_omega_column_test(J, pair_limit=None):
    """Column test: is some Jacobian column an R-combination of the others?"""
    ring = J.ideal.ring
    n = J.n
    columns = []
    if J.s == 0:
        cert = {"columns": [{"column": 0, "member": True, "cofactors": [], "ideal_cofactors": [],
                             "remainder": []}]}
        return FreeRankResult(POSITIVE, "column-test", cert, columns=cert["columns"])
    verdict = ZERO
    for j in range(n):
        target = J.column(j)
        others = [J.column(k) for k in range(n) if k != j]
        if all(p.is_zero() for p in target):
            member, cof, icof, rem = True, [ring.zero] * (n - 1), [], ModuleElement(target)
        else:
            member, cof, icof, rem = lift(target, others, J.ideal, pair_limit=pair_limit)
        entry = {"column": j, "member": member}
        if member:
            entry["cofactors"] = [str(c) for c in cof]
            entry["ideal_cofactors"] = [[i, str(g), str(m)] for i, g, m in icof]
            verdict = POSITIVE
        else:
            entry["remainder"] = [str(p) for p in rem]
        columns.append(entry)
    return FreeRankResult(verdict, "column-test", {"columns": columns}, columns=columns)


def replay_column_certificate(J, entry):
    """Exact replay of a positive column certificate in ``P^s``."""
    ring = J.ideal.ring
    j = entry["column"]
    others = [k for k in range(J.n) if k != j]
    acc = [p for p in J.column(j)]
    for k, c in zip(others, entry["cofactors"]):
        c = ring(c)
        acc = [a - c * b for a, b in zip(acc, J.column(k))]
    for i, g, m in entry["ideal_cofactors"]:
        acc[i] = acc[i] - ring(m) * ring(g)
    return all(a.is_zero() for a in acc)


def replay_syzygy_certificate(P, cert):
    """Check ``relations . u`` vanishes in R and ``u`` has a scalar entry."""
    ring = P.ideal.ring
    u = [ring(s) for s in cert["syzygy"]]
    if len(u) != P.num_generators:
        return False
    j = cert["generator"]
    if u[j].is_zero() or not u[j].is_constant():
        return False
    gb = P.ideal.groebner_basis() if P.ideal.gens else None
    for rel in P.relations:
        acc = ring.zero
        for a, b in zip(rel, u):
            acc = acc + a * b
        if gb is not None:
            acc = gb.normal_form(acc)[0]
        if not acc.is_zero():
            return False
    return True


# --------------------------------------------------------------------------
# hypothesis checks


def _det(mat):
    if len(mat) == 1:
        return mat[0][0]
    total = None
    for j, a in enumerate(mat[0]):
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = a * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else mat[0][0].ring.zero


def singular_locus_dimension(ideal):
    """Krull dimension of the singular locus of ``V(I)`` (Jacobian criterion).

    Uses the ideal of ``c x c`` minors of the Jacobian with ``c`` the height of
    ``I``; for a principal ideal this is ``(f, df/dx_1, ..., df/dx_n)``.
    """
    ring = ideal.ring
    d = krull_dimension(ideal)
    if d < 0:
        return -1
    c = ring.n - d
    if c == 0:
        return -1
    rows = jacobian(ideal).rows
    minors = []
    for rsel in combinations(range(len(rows)), c):
        for csel in combinations(range(ring.n), c):
            m = _det([[rows[i][j] for j in csel] for i in rsel])
            if not m.is_zero():
                minors.append(m)
    return krull_dimension(ideal + minors)


def isolated_singularity_check(ideal):
    if not ideal.is_homogeneous():
        raise InputError("isolated-singularity check needs a homogeneous ideal")
    return singular_locus_dimension(ideal) <= 0


def complete_intersection_check(ideal):
    return krull_dimension(ideal) == ideal.ring.n - len(ideal.gens)


# --------------------------------------------------------------------------
# pipelines


@dataclass
class HypersurfaceReport:
    kind: str
    ring: dict
    generators: list
    status: str  # certified | undecided | conditional-on-reflexivity | regular
    signature: Optional[str]
    reason: str
    checks: list
    jacobian: list = field(default_factory=list)
    freerank_omega: dict = field(default_factory=dict)
    freerank_sym: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def hypotheses(self):
        return {
            "verified": [c.name for c in self.checks if c.status == "verified"],
            "asserted": [c.name for c in self.checks if c.status == "asserted"],
            "failed": [c.name for c in self.checks if not c.ok],
        }

    def to_dict(self):
        return {
            "kind": self.kind,
            "ring": self.ring,
            "generators": self.generators,
            "status": self.status,
            "signature": self.signature,
            "reason": self.reason,
            "checks": [c.to_dict() for c in self.checks],
            "hypotheses": self.hypotheses,
            "jacobian": self.jacobian,
            "freerank_omega": self.freerank_omega,
            "freerank_sym": self.freerank_sym,
            "warnings": self.warnings,
        }


def _freerank_block(ideal, max_q, pair_limit):
    """Both Omega tests (must agree) and the direct Sym^q cross-checks."""
    J = jacobian(ideal)
    col = freerank_omega_column_test(J, pair_limit=pair_limit)
    syz = freerank_positive_syzygy(omega_presentation(ideal), pair_limit=pair_limit)
    if col.verdict != syz.verdict:
        raise DisagreementBetweenMethods(
            f"column test says {col.verdict}, syzygy test says {syz.verdict} for {ideal!r}")
    sym = []
    for q in range(1, max_q + 1):
        r = freerank_positive_syzygy(sym_power_presentation(ideal, q), pair_limit=pair_limit)
        sym.append({"q": q, "verdict": r.verdict, "certificate": r.certificate})
        if col.verdict == ZERO and r.positive:
            raise InternalConsistencyError(
                f"freerank of Omega is zero but Sym^{q} has a free summand for {ideal!r}")
    omega = {"verdict": col.verdict, "column_test": col.certificate, "syzygy_test": syz.certificate}
    return J, omega, sym


def _failure_reason(check, n):
    if check.name == "n>=4":
        return f"n < 4 (n = {n})"
    if check.name == "domain":
        return "domain not asserted (pass --assume-domain)"
    return f"{check.name} check failed: {check.detail}"


def _homogeneous_ideal(ideal):
    if not ideal.gens:
        raise InputError("the ideal has no nonzero generators")
    if not ideal.is_homogeneous():
        raise InputError("generators must be homogeneous")


def hypersurface_signature(f, assume_domain=False, max_q=3, pair_limit=None):
    """Certify the differential symmetric signature of ``P/(f)``.

    Emits signature 0 only when ``n >= 4``, ``deg f >= 2``, the characteristic
    does not divide ``deg f``, the singularity is isolated and the domain
    property is asserted; otherwise the status is ``undecided`` and ``reason``
    names the first failed hypothesis.
    """
    ring = f.ring
    ideal = Ideal(ring, [f])
    _homogeneous_ideal(ideal)
    n, d, p = ring.n, f.total_degree(), ring.field.char
    base = dict(kind="hypersurface", ring=ring.describe(), generators=[str(f)])
    if d == 0:
        raise InputError("a nonzero constant defines the zero ring")
    if d == 1:
        checks = [Check("deg>=2", "failed", "deg f = 1: R is a polynomial ring")]
        return HypersurfaceReport(status="regular", signature="1",
                                  reason="regular: a linear form defines a polynomial ring",
                                  checks=checks, **base)
    checks = [
        Check("n>=4", "verified" if n >= 4 else "failed", f"n = {n}"),
        Check("deg>=2", "verified", f"deg f = {d}"),
        Check("char-coprime-to-deg", "verified" if p == 0 or d % p else "failed",
              f"char = {p}, deg f = {d}"),
    ]
    sing_dim = singular_locus_dimension(ideal)
    checks.append(Check("isolated-singularity", "verified" if sing_dim <= 0 else "failed",
                        f"singular locus dimension {sing_dim}"))
    checks.append(Check("domain", "asserted" if assume_domain else "not-asserted",
                        "user-asserted" if assume_domain else "pass --assume-domain to assert"))
    checks.append(Check("reflexivity-gate", "verified" if n >= 4 and sing_dim <= 0 else "failed",
                        f"n = {n} vs 2s+2 = 4; singular locus dimension {sing_dim}"))
    J, omega, sym = _freerank_block(ideal, max_q, pair_limit)
    failed = [c for c in checks if not c.ok]
    warnings = ["domain assumed"] if assume_domain else []
    if failed:
        first = failed[0]
        reason = _failure_reason(first, n)
        status, signature = "undecided", None
    else:
        status, signature, reason = "certified", "0", "all hypotheses verified or asserted"
    return HypersurfaceReport(status=status, signature=signature, reason=reason, checks=checks,
                              jacobian=J.as_strings(), freerank_omega=omega, freerank_sym=sym,
                              warnings=warnings, **base)


def ci_freerank(ideal, assume_domain=False, assume_reflexive=False, max_q=3, pair_limit=None):
    """Free-rank workflow for complete intersections and similar quotients.

    When the reflexivity gate (complete intersection, isolated singularity,
    degrees >= 2, n >= 2s + 2) cannot be verified and is not asserted, a zero
    free rank of Omega yields the status ``conditional-on-reflexivity``.
    """
    _homogeneous_ideal(ideal)
    ring = ideal.ring
    n, s = ring.n, len(ideal.gens)
    degs = [g.total_degree() for g in ideal.gens]
    base = dict(kind="ci-freerank", ring=ring.describe(), generators=[str(g) for g in ideal.gens])
    dim = krull_dimension(ideal)
    sing_dim = singular_locus_dimension(ideal)
    ci = dim == n - s
    checks = [
        Check("deg>=2", "verified" if min(degs) >= 2 else "failed", f"degrees {degs}"),
        Check("isolated-singularity", "verified" if sing_dim <= 0 else "failed",
              f"singular locus dimension {sing_dim}"),
        Check("domain", "asserted" if assume_domain else "not-asserted",
              "user-asserted" if assume_domain else "pass --assume-domain to assert"),
        Check("complete-intersection", "verified" if ci else "failed", f"dim R = {dim}, n - s = {n - s}"),
        Check("n>=2s+2", "verified" if n >= 2 * s + 2 else "failed", f"n = {n}, s = {s}"),
    ]
    gate = all(c.ok for c in checks[:2]) and ci and n >= 2 * s + 2
    if gate:
        checks.append(Check("reflexivity", "verified", "symmetric algebra is a reflexive complete intersection"))
    elif assume_reflexive:
        checks.append(Check("reflexivity", "asserted", "user-asserted"))
    else:
        checks.append(Check("reflexivity", "not-asserted", "reflexivity gate not met"))
    J, omega, sym = _freerank_block(ideal, max_q, pair_limit)
    warnings = []
    if assume_domain:
        warnings.append("domain assumed")
    if assume_reflexive and not gate:
        warnings.append("reflexivity assumed")
    basic = [c for c in checks if c.name in ("deg>=2", "isolated-singularity", "domain") and not c.ok]
    if omega["verdict"] == POSITIVE:
        status, signature, reason = "undecided", None, "Omega has a free summand"
    elif basic:
        status, signature = "undecided", None
        reason = _failure_reason(basic[0], n)
    elif gate or assume_reflexive:
        status, signature, reason = "certified", "0", "freerank of Omega is zero; symmetric powers reflexive"
    else:
        status, signature = "conditional-on-reflexivity", "0"
        reason = "freerank of Omega is zero; reflexivity of the symmetric powers is not verified"
        warnings.append("reflexivity conditional: signature 0 holds if the symmetric algebra is reflexive")
    return HypersurfaceReport(status=status, signature=signature, reason=reason, checks=checks,
                              jacobian=J.as_strings(), freerank_omega=omega, freerank_sym=sym,
                              warnings=warnings, **base)
