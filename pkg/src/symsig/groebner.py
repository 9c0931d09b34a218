"""Buchberger's algorithm for ideals and submodules of free modules.

Internally a vector of the free module ``P^r`` is a dict mapping
``(component, exponents)`` to a nonzero coefficient; an ideal is the rank-one
case with every component equal to 0. Computations over a quotient
``R = P/I`` are lifted to ``P`` by adjoining ``I * e_i`` for each free
generator ``e_i``.

Module orders
-------------
``top``
    weighted degree, then grevlex on the term, then smaller component first.
``pot``
    component first (smaller index larger), then grevlex.
``degpot``
    weighted degree, then component, then grevlex. On homogeneous vectors this
    eliminates the leading components, which is what syzygy and lift
    computations need while still allowing degree truncation.

The weighted degree of a term ``x^a e_i`` is ``|a| + shifts[i]``.
"""

import hashlib
import os
from functools import lru_cache
from math import comb

import numpy as np

from . import _kernels
from . import _upoly as _up
from .errors import InputError, ResourceLimitExceeded
from .poly import Polynomial

DEFAULT_PAIR_LIMIT = 10**6


def pair_limit_default():
    env = os.environ.get("SYMSIG_LIMIT_PAIRS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"SYMSIG_LIMIT_PAIRS must be an integer, got {env!r}") from None
    return DEFAULT_PAIR_LIMIT


# --------------------------------------------------------------------------
# public value types


class ModuleElement:
    """Element of a free module ``P^r`` given by its coordinate polynomials."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise InputError("module elements need at least one coordinate")
        ring = entries[0].ring
        if any(e.ring != ring for e in entries):
            raise InputError("module coordinates live in different rings")
        self.entries = entries

    @property
    def ring(self):
        return self.entries[0].ring

    @property
    def rank(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def __add__(self, other):
        return ModuleElement(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other):
        return ModuleElement(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self):
        return ModuleElement(-a for a in self.entries)

    def scale(self, c):
        return ModuleElement(a * c for a in self.entries)

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    def __repr__(self):
        return f"ModuleElement{self}"


class Ideal:
    """Ideal of a polynomial ring given by generators (zeros are dropped)."""

    def __init__(self, ring, gens):
        gens = [ring(g) for g in gens]
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._gb = {}

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def groebner_basis(self, order=None):
        order = order or self.ring.order
        if order not in self._gb:
            self._gb[order] = buchberger(self, order=order)
        return self._gb[order]

    def __add__(self, other):
        extra = other.gens if isinstance(other, Ideal) else other
        return Ideal(self.ring, list(self.gens) + list(extra))

    def contains(self, f):
        return ideal_membership(f, self)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"


class GroebnerBasis:
    """Reduced Groebner basis together with the order it was computed for."""

    def __init__(self, ring, rank, elements, order, shifts, degree_bound, input_hash, is_module,
                 pairs_reduced=0):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.shifts = tuple(shifts)
        self.degree_bound = degree_bound
        self.input_hash = input_hash
        self.is_module = is_module
        self.pairs_reduced = pairs_reduced
        self._vecs = list(elements)
        self._engine = _Engine(ring, order, self.shifts)
        self._leads = [self._engine.lead(v) for v in self._vecs]

    @property
    def elements(self):
        if self.is_module:
            return [_to_module(v, self.ring, self.rank) for v in self._vecs]
        return [_to_poly(v, self.ring) for v in self._vecs]

    def __len__(self):
        return len(self._vecs)

    def leading_monomials(self):
        """Leading ``(component, exponents)`` pairs of the basis elements."""
        return list(self._leads)

    def is_unit_ideal(self):
        return any(not any(e) for _, e in self._leads) and not self.is_module

    def normal_form(self, f):
        """Return ``(remainder, cofactors)`` with ``f = sum c_i g_i + remainder``."""
        vec = _to_vec(f, self.ring, self.rank if self.is_module else None)
        rem, cof = self._engine.reduce(vec, self._vecs, self._leads, track=True)
        cofactors = [_to_poly({(0, e): c for e, c in cf.items()}, self.ring) for cf in cof]
        if self.is_module:
            return _to_module(rem, self.ring, self.rank), cofactors
        return _to_poly(rem, self.ring), cofactors

    def reduces_to_zero(self, f):
        vec = _to_vec(f, self.ring, self.rank if self.is_module else None)
        rem, _ = self._engine.reduce(vec, self._vecs, self._leads)
        return not rem

    def verify(self):
        """Re-check the Buchberger criterion on every S-pair (within the degree bound)."""
        eng = self._engine
        n = len(self._vecs)
        for i in range(n):
            for j in range(i + 1, n):
                (ci, ei), (cj, ej) = self._leads[i], self._leads[j]
                if ci != cj:
                    continue
                lcm = tuple(max(a, b) for a, b in zip(ei, ej))
                if self.degree_bound is not None and eng.wdeg((ci, lcm)) > self.degree_bound:
                    continue
                s = eng.spoly(self._vecs[i], self._leads[i], self._vecs[j], self._leads[j])
                rem, _ = eng.reduce(s, self._vecs, self._leads)
                if rem:
                    return False
        return True

    def is_reduced(self):
        for i, v in enumerate(self._vecs):
            if v[self._leads[i]] != 1:
                return False
            for j, (cj, ej) in enumerate(self._leads):
                if i == j:
                    continue
                for c, e in v:
                    if c == cj and all(a >= b for a, b in zip(e, ej)):
                        return False
        return True


class HilbertSeries:
    """``numerator(t) / (1 - t)^nvars`` with integer numerator coefficients."""

    def __init__(self, numerator, nvars):
        num = list(int(c) for c in numerator)
        while num and num[-1] == 0:
            num.pop()
        self.numerator = tuple(num)
        self.nvars = nvars

    def coefficient(self, q):
        n = self.nvars
        return sum(c * comb(n - 1 + q - k, n - 1) for k, c in enumerate(self.numerator) if k <= q)

    def coefficients(self, N):
        return [self.coefficient(q) for q in range(N + 1)]

    def simplified(self):
        """Cancel factors ``(1 - t)``; returns ``(numerator, pole order)``."""
        num = list(self.numerator)
        d = self.nvars
        while num and d > 0 and sum(num) == 0:
            # synthetic division by (1 - t)
            out, acc = [], 0
            for c in num[:-1]:
                acc += c
                out.append(acc)
            num, d = out, d - 1
        return tuple(num), d

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and self.simplified() == other.simplified()

    def __str__(self):
        return f"({_up.to_string(self.numerator)}) / (1 - t)^{self.nvars}"


# --------------------------------------------------------------------------
# conversions


def _to_vec(f, ring, rank=None):
    if isinstance(f, Polynomial):
        if rank not in (None, 1):
            raise InputError("expected a module element")
        return {(0, e): c for e, c in f.as_dict().items()}
    if isinstance(f, ModuleElement):
        if rank is not None and f.rank != rank:
            raise InputError(f"module element of rank {f.rank}, expected {rank}")
        out = {}
        for i, p in enumerate(f.entries):
            for e, c in p.as_dict().items():
                out[(i, e)] = c
        return out
    if isinstance(f, (list, tuple)):
        return _to_vec(ModuleElement(f), ring, rank)
    raise InputError(f"cannot interpret {f!r} as a polynomial or module element")


def _to_poly(vec, ring):
    return Polynomial(ring, {e: c for (_, e), c in vec.items()})


def _to_module(vec, ring, rank, offset=0):
    parts = [dict() for _ in range(rank)]
    for (i, e), c in vec.items():
        if offset <= i < offset + rank:
            parts[i - offset][e] = c
    return ModuleElement(Polynomial(ring, p) for p in parts)


def _hash_input(vecs, order, shifts):
    h = hashlib.sha256()
    h.update(repr((order, tuple(shifts))).encode())
    for v in vecs:
        h.update(repr(sorted((k, str(c)) for k, c in v.items())).encode())
        h.update(b"|")
    return h.hexdigest()


# --------------------------------------------------------------------------
# engine


def _make_key(order, term_order, shifts):
    if order == "lex":
        return lambda m: m[1]
    if order == "grevlex":
        return lambda m: (sum(m[1]), tuple(-e for e in reversed(m[1])))
    if term_order != "grevlex":
        raise InputError("module orders are built on grevlex")
    if order == "top":
        return lambda m: (sum(m[1]) + shifts[m[0]], tuple(-e for e in reversed(m[1])), -m[0])
    if order == "pot":
        return lambda m: (-m[0], sum(m[1]), tuple(-e for e in reversed(m[1])))
    if order == "degpot":
        return lambda m: (sum(m[1]) + shifts[m[0]], -m[0], tuple(-e for e in reversed(m[1])))
    raise InputError(f"unknown order {order!r}")


class _Engine:
    def __init__(self, ring, order, shifts=(0,)):
        self.ring = ring
        self.order = order
        self.shifts = tuple(shifts) if shifts else (0,)
        self.product_criterion = order in ("grevlex", "lex")
        self.key = lru_cache(maxsize=1 << 18)(_make_key(order, "grevlex", self.shifts))

    def wdeg(self, m):
        c, e = m
        return sum(e) + (self.shifts[c] if c < len(self.shifts) else 0)

    def lead(self, vec):
        return max(vec, key=self.key)

    def vec_wdeg(self, vec):
        return max(self.wdeg(m) for m in vec)

    def is_homogeneous(self, vec):
        return len({self.wdeg(m) for m in vec}) <= 1

    def monic(self, vec, lead=None):
        lead = lead or self.lead(vec)
        c = vec[lead]
        if c == 1:
            return vec
        inv = 1 / c
        return {m: v * inv for m, v in vec.items()}

    @staticmethod
    def mul_term(vec, shift, coeff):
        return {(c, tuple(a + b for a, b in zip(e, shift))): v * coeff for (c, e), v in vec.items()}

    def spoly(self, f, lf, g, lg):
        lcm = tuple(max(a, b) for a, b in zip(lf[1], lg[1]))
        sf = tuple(a - b for a, b in zip(lcm, lf[1]))
        sg = tuple(a - b for a, b in zip(lcm, lg[1]))
        out = self.mul_term(f, sf, 1)
        for (c, e), v in g.items():
            m = (c, tuple(a + b for a, b in zip(e, sg)))
            w = out.get(m)
            nv = -v if w is None else w - v
            if nv == 0:
                out.pop(m, None)
            else:
                out[m] = nv
        return out

    def reduce(self, f, basis, leads, track=False, skip=None):
        """Full reduction; returns ``(remainder, cofactors)``."""
        key = self.key
        by_comp = {}
        for idx, (c, e) in enumerate(leads):
            if idx != skip:
                by_comp.setdefault(c, []).append((idx, e))
        cof = [dict() for _ in basis] if track else None
        p = dict(f)
        rem = {}
        while p:
            m = max(p, key=key)
            c = p[m]
            comp, e = m
            hit = None
            for idx, le in by_comp.get(comp, ()):
                if all(a >= b for a, b in zip(e, le)):
                    hit = idx
                    break
            if hit is None:
                rem[m] = p.pop(m)
                continue
            g = basis[hit]
            shift = tuple(a - b for a, b in zip(e, leads[hit][1]))
            for (gc, ge), gv in g.items():
                mm = (gc, tuple(a + b for a, b in zip(ge, shift)))
                w = p.get(mm)
                nv = -c * gv if w is None else w - c * gv
                if nv == 0:
                    p.pop(mm, None)
                else:
                    p[mm] = nv
            if track:
                cf = cof[hit]
                v = cf.get(shift)
                nv = c if v is None else v + c
                if nv == 0:
                    cf.pop(shift, None)
                else:
                    cf[shift] = nv
        return rem, cof

    # -- Buchberger with Gebauer-Moeller and sugar
    def groebner(self, gens, degree_bound=None, pair_limit=None):
        limit = pair_limit_default() if pair_limit is None else pair_limit
        G, leads, sugar, active = [], [], [], []
        pairs = {}
        self._reduced = 0

        def lcm_of(i, j):
            return tuple(max(a, b) for a, b in zip(leads[i][1], leads[j][1]))

        def divides(a, b):
            return all(x <= y for x, y in zip(a, b))

        def add(vec, s):
            lt = self.lead(vec)
            vec = self.monic(vec, lt)
            t = len(G)
            G.append(vec)
            leads.append(lt)
            sugar.append(s)
            comp, le = lt
            cands = []
            for i in active:
                if leads[i][0] == comp:
                    cands.append((i, lcm_of(i, t)))
            kept = []
            for idx, (i, L) in enumerate(cands):
                coprime = self.product_criterion and all(a == 0 or b == 0 for a, b in zip(leads[i][1], le))
                if coprime:
                    kept.append((i, L, True))
                    continue
                later = any(divides(L2, L) for _, L2 in cands[idx + 1:])
                earlier = any(divides(L2, L) for _, L2, _ in kept)
                if not later and not earlier:
                    kept.append((i, L, False))
            for (i, j) in list(pairs):
                if leads[i][0] != comp:
                    continue
                L = lcm_of(i, j)
                if divides(le, L) and lcm_of(i, t) != L and lcm_of(j, t) != L:
                    del pairs[(i, j)]
            for i, L, coprime in kept:
                if coprime:
                    continue
                ps = max(sugar[i] + sum(L) - sum(leads[i][1]), s + sum(L) - sum(le))
                pairs[(i, t)] = (ps, self.key((comp, L)))
            active[:] = [i for i in active
                         if not (leads[i][0] == comp and divides(le, leads[i][1]))]
            active.append(t)

        start = []
        for v in gens:
            if v:
                start.append(v)
        start.sort(key=lambda v: (self.vec_wdeg(v), self.key(self.lead(v))))
        for v in start:
            d = self.vec_wdeg(v)
            if degree_bound is not None and d > degree_bound:
                continue
            r, _ = self.reduce(v, G, leads)
            if r:
                add(r, d)

        while pairs:
            (i, j) = min(pairs, key=lambda p: (pairs[p][0], pairs[p][1], p))
            s = pairs.pop((i, j))[0]
            if degree_bound is not None and s > degree_bound:
                break
            self._reduced += 1
            if self._reduced > limit:
                raise ResourceLimitExceeded(f"Groebner basis computation exceeded {limit} pair reductions")
            sp = self.spoly(G[i], leads[i], G[j], leads[j])
            r, _ = self.reduce(sp, G, leads)
            if r:
                add(r, s)

        # minimalize, then interreduce
        order_idx = sorted(range(len(G)), key=lambda i: self.key(leads[i]))
        keep = []
        for i in order_idx:
            c, e = leads[i]
            if not any(leads[k][0] == c and divides(leads[k][1], e) for k in keep):
                keep.append(i)
        basis = [G[i] for i in keep]
        bleads = [leads[i] for i in keep]
        out = []
        for idx, v in enumerate(basis):
            lt = bleads[idx]
            tail = dict(v)
            del tail[lt]
            r, _ = self.reduce(tail, basis, bleads, skip=idx)
            r[lt] = v[lt]
            out.append(self.monic(r, lt))
        return out


# --------------------------------------------------------------------------
# shifts


def infer_shifts(vectors, rank):
    """Component shifts making every vector homogeneous, or ``None``.

    Returns ``(shifts, degrees)`` where ``degrees[j]`` is the weighted degree
    of vector ``j`` (``None`` for the zero vector).
    """
    shifts = [None] * rank
    degrees = [None] * len(vectors)
    entries = []
    for j, v in enumerate(vectors):
        for i, p in enumerate(v):
            if not p.is_zero():
                if not p.is_homogeneous():
                    return None
                entries.append((j, i, p.total_degree()))
    # connected components of the bipartite vector/component graph
    adj_v, adj_c = {}, {}
    for j, i, d in entries:
        adj_v.setdefault(j, []).append((i, d))
        adj_c.setdefault(i, []).append((j, d))
    for i0 in range(rank):
        if shifts[i0] is not None or i0 not in adj_c:
            continue
        shifts[i0] = 0
        stack = [("c", i0)]
        while stack:
            kind, x = stack.pop()
            if kind == "c":
                for j, d in adj_c.get(x, ()):
                    want = d + shifts[x]
                    if degrees[j] is None:
                        degrees[j] = want
                        stack.append(("v", j))
                    elif degrees[j] != want:
                        return None
            else:
                for i, d in adj_v.get(x, ()):
                    want = degrees[x] - d
                    if shifts[i] is None:
                        shifts[i] = want
                        stack.append(("c", i))
                    elif shifts[i] != want:
                        return None
    shifts = [0 if s is None else s for s in shifts]
    return shifts, degrees


# --------------------------------------------------------------------------
# operations


def buchberger(gens, order=None, degree_bound=None, pair_limit=None, shifts=None, ring=None):
    """Reduced Groebner basis of an ideal or of a submodule of ``P^r``.

    ``gens`` is an :class:`Ideal`, a list of polynomials, or a list of
    :class:`ModuleElement` (or coordinate lists) of common rank. For modules
    the default order is ``top`` with shifts inferred from homogeneous input.
    ``degree_bound`` truncates the computation of a homogeneous input at that
    weighted degree.
    """
    if isinstance(gens, Ideal):
        ring = gens.ring
        gens = list(gens.gens)
    gens = list(gens)
    if ring is None:
        if not gens:
            raise InputError("cannot infer the ring of an empty generator list")
        first = gens[0]
        ring = first.ring if isinstance(first, (Polynomial, ModuleElement)) else first[0].ring
    is_module = bool(gens) and not isinstance(gens[0], Polynomial)
    if is_module:
        gens = [g if isinstance(g, ModuleElement) else ModuleElement(g) for g in gens]
        rank = gens[0].rank
        if any(g.rank != rank for g in gens):
            raise InputError("module generators have different ranks")
        order = order or "top"
        if shifts is None:
            inferred = infer_shifts(gens, rank)
            shifts = inferred[0] if inferred else [0] * rank
    else:
        rank = 1
        order = order or ring.order
        shifts = [0]
    vecs = [_to_vec(g, ring, rank if is_module else None) for g in gens]
    eng = _Engine(ring, order, shifts)
    if degree_bound is not None and not all(eng.is_homogeneous(v) for v in vecs if v):
        raise InputError("degree truncation requires homogeneous generators")
    basis = eng.groebner(vecs, degree_bound=degree_bound, pair_limit=pair_limit)
    return GroebnerBasis(ring, rank, basis, order, shifts, degree_bound,
                         _hash_input(vecs, order, shifts), is_module, eng._reduced)


def normal_form(f, gb):
    return gb.normal_form(f)


def ideal_membership(f, ideal):
    f = ideal.ring(f)
    if f.is_zero():
        return True
    if ideal.is_homogeneous() and f.is_homogeneous():
        gb = buchberger(ideal, degree_bound=f.total_degree())
    else:
        gb = ideal.groebner_basis()
    return gb.reduces_to_zero(f)


def krull_dimension(ideal):
    """Dimension of ``P/I``; -1 for the unit ideal."""
    n = ideal.ring.n
    if not ideal.gens:
        return n
    gb = ideal.groebner_basis("grevlex")
    masks = np.array([sum(1 << k for k, a in enumerate(e) if a) for _, e in gb.leading_monomials()],
                     dtype=np.int64)
    return _kernels.max_independent(masks, n)


def _one_minus_t_power(d):
    return [1] + [0] * (d - 1) + [-1] if d > 0 else [0]


def _umul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _uadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _minimalize(A):
    if A.shape[0] == 0:
        return A
    return A[_kernels.minimal_mask(A)]


def hilbert_numerator(A):
    """Numerator of the Hilbert series of ``P / (monomials in rows of A)``.

    Pivot recursion: ``N(J) = N(J + (p)) + t^deg(p) N(J : p)`` for a pure
    power ``p`` of the most frequent variable, with coprime-generator base case.
    """
    A = _minimalize(np.asarray(A, dtype=np.int64))
    if A.shape[0] == 0:
        return [1]
    if np.any(A.sum(axis=1) == 0):
        return [0]
    support = A > 0
    counts = support.sum(axis=0)
    if counts.max() <= 1:
        out = [1]
        for row in A:
            out = _umul(out, _one_minus_t_power(int(row.sum())))
        return out
    col = int(np.argmax(counts))
    exps = np.sort(A[support[:, col], col])
    # lower median: at least two generators have exponent >= e, so the
    # left ideal loses one and the recursion terminates
    e = int(exps[(len(exps) - 1) // 2])
    p = np.zeros(A.shape[1], dtype=np.int64)
    p[col] = e
    left = np.vstack([A[A[:, col] < e], p[None, :]])
    right = np.maximum(A - p[None, :], 0)
    shifted = [0] * e + hilbert_numerator(right)
    return _uadd(hilbert_numerator(left), shifted)


def hilbert_series(ideal):
    if not ideal.is_homogeneous():
        raise InputError("Hilbert series needs a homogeneous ideal")
    n = ideal.ring.n
    if not ideal.gens:
        return HilbertSeries([1], n)
    gb = ideal.groebner_basis("grevlex")
    A = _kernels.as_exponent_array([e for _, e in gb.leading_monomials()], n)
    return HilbertSeries(hilbert_numerator(A), n)


def _extended_vectors(rows, target_rank, ideal, extra_ideal_tags):
    """Rows ``(v_j ; e_j)`` plus ``(f e_i ; [e_tag])`` for the ideal generators."""
    ring = rows[0][0].ring if rows else ideal.ring
    k = len(rows)
    vecs = []
    for j, row in enumerate(rows):
        v = {}
        for i, p in enumerate(row):
            for e, c in p.as_dict().items():
                v[(i, e)] = c
        v[(target_rank + j, (0,) * ring.n)] = ring.field.one
        vecs.append(v)
    tags = []
    if ideal is not None:
        for i in range(target_rank):
            for f in ideal.gens:
                v = {(i, e): c for e, c in f.as_dict().items()}
                if extra_ideal_tags:
                    v[(target_rank + k + len(tags), (0,) * ring.n)] = ring.field.one
                tags.append((i, f))
                vecs.append(v)
    return vecs, tags


def _elimination_setup(rows, target_rank, ideal, row_degrees=None, target_shifts=None):
    """Shifts and order for the extended module; homogeneous when possible."""
    homogeneous = ideal is None or ideal.is_homogeneous()
    if homogeneous and target_shifts is None:
        inferred = infer_shifts([ModuleElement(r) for r in rows], target_rank) if rows else None
        if inferred is None:
            homogeneous = False
        else:
            target_shifts, degs = inferred
            if row_degrees is None:
                row_degrees = [0 if d is None else d for d in degs]
    if homogeneous and row_degrees is None:
        row_degrees = []
        for row in rows:
            d = None
            for i, p in enumerate(row):
                if not p.is_zero():
                    d = p.total_degree() + target_shifts[i]
                    break
            row_degrees.append(0 if d is None else d)
    return homogeneous, target_shifts, row_degrees


def syzygy_basis(M, ideal=None, degree_bound=None, row_degrees=None, target_shifts=None,
                 pair_limit=None):
    """Generators of ``{u : u . M = 0}`` over ``R = P/ideal``.

    ``M`` is a list of ``k`` rows, each a list of ``m`` polynomials. The
    returned :class:`ModuleElement` objects have length ``k``; entries are
    reduced modulo the ideal and syzygies vanishing in ``R^k`` are dropped.
    For homogeneous input the computation is graded and ``degree_bound``
    limits it to syzygies of weighted degree at most the bound, where row
    ``j`` carries degree ``row_degrees[j]``.
    """
    rows = [list(r) for r in M]
    if not rows:
        return []
    ring = rows[0][0].ring
    m = len(rows[0])
    k = len(rows)
    if any(len(r) != m for r in rows):
        raise InputError("ragged matrix")
    homogeneous, tshifts, rdegs = _elimination_setup(rows, m, ideal, row_degrees, target_shifts)
    vecs, _ = _extended_vectors(rows, m, ideal, extra_ideal_tags=False)
    if homogeneous:
        shifts = list(tshifts) + list(rdegs)
        order = "degpot"
    else:
        shifts = [0] * (m + k)
        order = "pot"
        if degree_bound is not None:
            raise InputError("degree truncation requires homogeneous input")
    eng = _Engine(ring, order, shifts)
    basis = eng.groebner(vecs, degree_bound=degree_bound, pair_limit=pair_limit)
    igb = ideal.groebner_basis() if ideal is not None and ideal.gens else None
    out = []
    seen = set()
    for v in basis:
        lead = eng.lead(v)
        if lead[0] < m:
            continue
        entries = []
        for j in range(k):
            p = Polynomial(ring, {e: c for (c2, e), c in v.items() if c2 == m + j})
            if igb is not None and p:
                p = igb.normal_form(p)[0]
            entries.append(p)
        u = ModuleElement(entries)
        if u.is_zero() or u in seen:
            continue
        seen.add(u)
        out.append(u)
    return out


def syzygy_degree(u, row_degrees):
    """Weighted degree of a homogeneous syzygy (``None`` for zero)."""
    for p, d in zip(u, row_degrees):
        if not p.is_zero():
            return p.total_degree() + d
    return None


def lift(f, gens, ideal=None, pair_limit=None):
    """Express ``f`` through ``gens`` modulo ``ideal * P^r``.

    Returns ``(member, cofactors, ideal_cofactors, remainder)``: when
    ``member`` holds, ``f = sum_j cofactors[j] * gens[j] + sum ideal_cofactors``
    where ``ideal_cofactors`` lists ``(component, generator, multiplier)``.
    Works for polynomials (rank one) and module elements alike.
    """
    as_rows = []
    single = isinstance(f, Polynomial)
    target = [f] if single else list(f)
    for g in gens:
        as_rows.append([g] if isinstance(g, Polynomial) else list(g))
    ring = target[0].ring
    r = len(target)
    k = len(as_rows)
    homogeneous, tshifts, rdegs = _elimination_setup(as_rows, r, ideal)
    vecs, tags = _extended_vectors(as_rows, r, ideal, extra_ideal_tags=True)
    fvec = {}
    for i, p in enumerate(target):
        for e, c in p.as_dict().items():
            fvec[(i, e)] = c
    bound = None
    if homogeneous and fvec:
        ideal_degs = [f_.total_degree() + tshifts[i] for i, f_ in tags]
        shifts = list(tshifts) + list(rdegs) + ideal_degs
        order = "degpot"
        probe = _Engine(ring, order, shifts)
        if probe.is_homogeneous(fvec):
            bound = probe.vec_wdeg(fvec)
        else:
            homogeneous = False
    if not homogeneous:
        shifts = [0] * (r + k + len(tags))
        order = "pot"
    eng = _Engine(ring, order, shifts)
    basis = eng.groebner(vecs, degree_bound=bound, pair_limit=pair_limit)
    leads = [eng.lead(v) for v in basis]
    rem, _ = eng.reduce(fvec, basis, leads)
    target_rem = {m: c for m, c in rem.items() if m[0] < r}
    remainder = _to_poly(target_rem, ring) if single else _to_module(target_rem, ring, r)
    if target_rem:
        return False, None, None, remainder
    cof = [Polynomial(ring, {e: -c for (c2, e), c in rem.items() if c2 == r + j}) for j in range(k)]
    icof = []
    for t, (i, g) in enumerate(tags):
        mult = Polynomial(ring, {e: -c for (c2, e), c in rem.items() if c2 == r + k + t})
        if not mult.is_zero():
            icof.append((i, g, mult))
    return True, cof, icof, remainder
