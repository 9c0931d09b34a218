"""Integer kernels over exponent matrices.

Monomial ideals are passed around as ``int64`` arrays with one generator per
row. Every kernel has a vectorised numpy implementation and a numba ``@njit``
loop implementation with identical results; the numba path is used when numba
imports and ``SYMSIG_DISABLE_NUMBA`` is not set to a true value.
"""

import itertools
import os

import numpy as np

_FLAG = os.environ.get("SYMSIG_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _FLAG in ("1", "true", "yes", "on")

try:
    if DISABLED_BY_ENV:
        raise ImportError("disabled by SYMSIG_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

MAX_EXPONENT = 2**31 - 1


def as_exponent_array(rows, n):
    """Stack exponent tuples into a ``(k, n)`` int64 array, checking overflow."""
    arr = np.zeros((len(rows), n), dtype=np.int64)
    for i, row in enumerate(rows):
        if any(e > MAX_EXPONENT or e < 0 for e in row):
            raise OverflowError(f"exponent out of range in {row}")
        arr[i, :] = row
    return arr


# ---------------------------------------------------------------- numpy path


def compositions(n, q):
    """All exponent vectors of total degree ``q`` in ``n`` variables."""
    if n == 0:
        return np.zeros((1 if q == 0 else 0, 0), dtype=np.int64)
    combos = list(itertools.combinations(range(q + n - 1), n - 1))
    k = len(combos)
    bars = np.array(combos, dtype=np.int64).reshape(k, n - 1)
    padded = np.hstack([np.full((k, 1), -1, dtype=np.int64), bars,
                        np.full((k, 1), q + n - 1, dtype=np.int64)])
    return np.diff(padded, axis=1) - 1


def minimal_mask_np(A):
    k = A.shape[0]
    if k == 0:
        return np.zeros(0, dtype=bool)
    divides = np.all(A[:, None, :] >= A[None, :, :], axis=2)  # [i, j]: row j divides row i
    equal = np.all(A[:, None, :] == A[None, :, :], axis=2)
    np.fill_diagonal(divides, False)
    earlier = np.tri(k, k, -1, dtype=bool)
    redundant = divides & (~equal | earlier)
    return ~redundant.any(axis=1)


def standard_count_np(A, n, q):
    M = compositions(n, q)
    if A.shape[0] == 0:
        return M.shape[0]
    alive = np.ones(M.shape[0], dtype=bool)
    for g in A:
        alive &= ~np.all(M >= g, axis=1)
    return int(alive.sum())


def max_independent_np(masks, n):
    subsets = np.arange(1 << n, dtype=np.int64)
    if masks.shape[0] == 0:
        return n
    ok = np.all((masks[None, :] & ~subsets[:, None]) != 0, axis=1)
    if not ok.any():
        return -1
    sizes = np.array([bin(int(s)).count("1") for s in subsets[ok]])
    return int(sizes.max())


def diagonal_invariant_count_np(W, m, n, q):
    M = compositions(n, q)
    if W.shape[0] == 0:
        return M.shape[0]
    return int(np.all((M @ W.T) % m == 0, axis=1).sum())


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def minimal_mask_nb(A):
        k, n = A.shape
        keep = np.ones(k, dtype=np.bool_)
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                div = True
                eq = True
                for t in range(n):
                    if A[j, t] > A[i, t]:
                        div = False
                        break
                    if A[j, t] != A[i, t]:
                        eq = False
                if div and (not eq or j < i):
                    keep[i] = False
                    break
        return keep

    @njit(cache=True)
    def standard_count_nb(A, n, q):
        if n == 0:
            return 1 if q == 0 else 0
        e = np.zeros(n, dtype=np.int64)
        e[0] = q
        count = 0
        k = A.shape[0]
        while True:
            hit = False
            for g in range(k):
                div = True
                for t in range(n):
                    if A[g, t] > e[t]:
                        div = False
                        break
                if div:
                    hit = True
                    break
            if not hit:
                count += 1
            if e[n - 1] == q:
                break
            i = n - 2
            while e[i] == 0:
                i -= 1
            last = e[n - 1]
            e[n - 1] = 0
            e[i] -= 1
            e[i + 1] = last + 1
        return count

    @njit(cache=True)
    def max_independent_nb(masks, n):
        best = -1
        for s in range(1 << n):
            ok = True
            for g in range(masks.shape[0]):
                if (masks[g] & ~s) == 0:
                    ok = False
                    break
            if ok:
                c = 0
                x = s
                while x:
                    c += x & 1
                    x >>= 1
                if c > best:
                    best = c
        return best

    @njit(cache=True)
    def diagonal_invariant_count_nb(W, m, n, q):
        if n == 0:
            return 1 if q == 0 else 0
        e = np.zeros(n, dtype=np.int64)
        e[0] = q
        count = 0
        while True:
            inv = True
            for g in range(W.shape[0]):
                acc = 0
                for t in range(n):
                    acc += W[g, t] * e[t]
                if acc % m != 0:
                    inv = False
                    break
            if inv:
                count += 1
            if e[n - 1] == q:
                break
            i = n - 2
            while e[i] == 0:
                i -= 1
            last = e[n - 1]
            e[n - 1] = 0
            e[i] -= 1
            e[i + 1] = last + 1
        return count


IMPLEMENTATIONS = {
    "numpy": {
        "minimal_mask": minimal_mask_np,
        "standard_count": standard_count_np,
        "max_independent": max_independent_np,
        "diagonal_invariant_count": diagonal_invariant_count_np,
    }
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "minimal_mask": minimal_mask_nb,
        "standard_count": standard_count_nb,
        "max_independent": max_independent_nb,
        "diagonal_invariant_count": diagonal_invariant_count_nb,
    }

BACKEND = "numba" if HAVE_NUMBA else "numpy"
_active = IMPLEMENTATIONS[BACKEND]


def minimal_mask(A):
    """Mask of rows not divisible by another row (first copy of duplicates kept)."""
    return _active["minimal_mask"](np.ascontiguousarray(A, dtype=np.int64))


def standard_count(A, n, q):
    """Number of degree-``q`` monomials divisible by no row of ``A``."""
    return int(_active["standard_count"](np.ascontiguousarray(A, dtype=np.int64).reshape(-1, n), n, q))


def max_independent(masks, n):
    """Largest variable subset containing no generator support; -1 if none."""
    return int(_active["max_independent"](np.ascontiguousarray(masks, dtype=np.int64), n))


def diagonal_invariant_count(W, m, n, q):
    """Degree-``q`` monomials fixed by each diag(zeta^W[g]) with zeta of order m."""
    return int(_active["diagonal_invariant_count"](
        np.ascontiguousarray(W, dtype=np.int64).reshape(-1, n), m, n, q))
