"""Independent reference computations used by the tests.

Nothing here calls the Groebner engine or the Molien code: each oracle
answers the same question by brute force (linear algebra in one graded
piece, subset enumeration, monomial counting) with ``fractions.Fraction``.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb


def monomials(n, q):
    out = []
    for combo in combinations_with_replacement(range(n), q):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def graded_membership(f, gens, n):
    """``f`` in the ideal of homogeneous ``gens`` by linear algebra in degree deg f.

    Polynomials are dicts ``{exponents: Fraction}``.
    """
    if not f:
        return True
    d = sum(next(iter(f)))
    basis = monomials(n, d)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        if not g:
            continue
        dg = sum(next(iter(g)))
        if dg > d:
            continue
        for m in monomials(n, d - dg):
            row = [Fraction(0)] * len(basis)
            for e, c in g.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] += Fraction(c)
            rows.append(row)
    target = [Fraction(0)] * len(basis)
    for e, c in f.items():
        target[index[e]] += Fraction(c)
    if not rows:
        return not any(target)
    return _rank(rows) == _rank(rows + [target])


def monomial_dimension(gens, n):
    """Krull dimension of ``P/(monomials)`` by enumerating variable subsets."""
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            if all(any(e[i] > 0 and i not in S for i in range(n)) for e in gens):
                return size
    return -1


def monomial_hilbert(gens, n, q):
    """Number of degree-``q`` monomials outside the monomial ideal."""
    return sum(1 for m in monomials(n, q)
               if not any(all(a >= b for a, b in zip(m, g)) for g in gens))


def diagonal_invariants(weights, m, n, q):
    """Degree-``q`` monomials fixed by every ``diag(zeta_m^w)``."""
    return sum(1 for e in monomials(n, q)
               if all(sum(w * a for w, a in zip(W, e)) % m == 0 for W in weights))


def ambient(n, q):
    return comb(n - 1 + q, n - 1)


# Frozen values produced by the oracles above (and by hand) -----------------

# {+-I_2}: (1/2)(1/(1-t)^2 + 1/(1+t)^2) = (1 + t^2)/(1 - t^2)^2
NEG2_COEFFS = [q + 1 if q % 2 == 0 else 0 for q in range(21)]
NEG2_NUM = [1, 0, 1]
NEG2_DEN = [1, 0, -2, 0, 1]
NEG2_RATIO_2 = Fraction(2, 3)

# diag(zeta_3, zeta_3^2): #{(i, j): i + j = q, i = j mod 3}
CYCLIC3_COEFFS = [1, 0, 1, 2, 1, 2, 3, 2, 3]

# Q8 in SL(2, QQ(i)): (1 + t^6)/((1 - t^4)^2)
Q8_COEFFS = [1, 0, 0, 0, 2, 0, 1, 0, 3, 0, 2, 0, 4]

# Jacobian of the generic 2x2 minors, rows (x1..x6)
MINORS_JACOBIAN = [
    ["x5", "-x4", "0", "-x2", "x1", "0"],
    ["x6", "0", "-x4", "-x3", "0", "x1"],
    ["0", "x6", "-x5", "0", "-x3", "x2"],
]


def check_frozen():
    """Recompute the frozen tables from the brute-force oracles."""
    assert CYCLIC3_COEFFS == [diagonal_invariants([[1, 2]], 3, 2, q) for q in range(9)]
    assert NEG2_COEFFS == [diagonal_invariants([[1, 1]], 2, 2, q) for q in range(21)]
    assert NEG2_RATIO_2 == Fraction(sum(NEG2_COEFFS[:3]), sum(ambient(2, q) for q in range(3)))
    # series identity den * coeffs = num, checked to degree 20
    for k in range(21):
        lhs = sum(NEG2_DEN[i] * NEG2_COEFFS[k - i] for i in range(len(NEG2_DEN)) if i <= k)
        assert lhs == (NEG2_NUM[k] if k < len(NEG2_NUM) else 0)
    # Q8 by averaging its explicit eigenvalue data: 1, -1 and six elements with eigenvalues +-i
    for q, a in enumerate(Q8_COEFFS):
        triv = q + 1
        neg = (-1) ** q * (q + 1)
        # h_q(i, -i) = i^q * sum_k (-1)^(q-k): (-1)^(q/2) for even q, else 0
        hq = (-1) ** (q // 2) if q % 2 == 0 else 0
        assert Fraction(triv + neg + 6 * hq, 8) == a
    return True

