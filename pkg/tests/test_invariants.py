from fractions import Fraction

import oracles
import pytest
from gmpy2 import mpq

from symsig.errors import (
    CharacteristicDividesOrder,
    ClosureCapExceeded,
    InputError,
    NotSmall,
    SingularGenerator,
)
from symsig.fields import QQ, CyclotomicField
from symsig.invariants import (
    coprimality_check,
    cumulative_ratio,
    det,
    det_one_minus_t,
    group_closure,
    identity,
    is_small,
    mat_mul,
    molien_coefficient,
    molien_series,
    quotient_signature,
    rank,
    trace_average,
    undecided_quotient_report,
)

K3, K4, K5, K6 = (CyclotomicField(m) for m in (3, 4, 5, 6))
z3, i4, z5, z6 = K3.gen, K4.gen, K5.gen, K6.gen

NEG2 = group_closure([[[-1, 0], [0, -1]]])
CYCLIC3 = group_closure([[[z3, 0], [0, z3**2]]])
Q8 = group_closure([[[i4, 0], [0, -i4]], [[0, 1], [-1, 0]]])
SWAP = group_closure([[[0, 1], [1, 0]]])


def _small_groups():
    return {
        "neg2": NEG2,
        "cyclic3": CYCLIC3,
        "quaternion": Q8,
        "cyclic4": group_closure([[[i4, 0], [0, -i4]]]),
        "cyclic5": group_closure([[[z5, 0, 0], [0, z5**2, 0], [0, 0, z5**2]]]),
        "cyclic6": group_closure([[[z6, 0, 0], [0, z6, 0], [0, 0, z6**4]]]),
        "neg3": group_closure([[[-1, 0, 0], [0, -1, 0], [0, 0, -1]]]),
    }


# --- linear algebra --------------------------------------------------------


def test_det_one_minus_t():
    assert det_one_minus_t(((mpq(-1), mpq(0)), (mpq(0), mpq(-1)))) == [1, 2, 1]
    A = ((mpq(0), mpq(1)), (mpq(1), mpq(0)))
    assert det_one_minus_t(A) == [1, 0, -1]
    g = ((z3, K3.zero), (K3.zero, z3**2))
    assert det_one_minus_t(g) == [K3.one, K3.one, K3.one]  # 1 - (z + z^2) t + t^2
    M = ((mpq(2), mpq(1), mpq(0)), (mpq(1), mpq(3), mpq(1)), (mpq(0), mpq(1), mpq(4)))
    c = det_one_minus_t(M)
    # c_1 = -trace, c_n = (-1)^n det
    assert c[1] == -9 and c[3] == -det(M)


def test_rank_and_det():
    A = ((mpq(1), mpq(2)), (mpq(2), mpq(4)))
    assert rank(A) == 1 and det(A) == 0
    assert det(((mpq(0), mpq(1)), (mpq(1), mpq(0)))) == -1


# --- closure and hypotheses ----------------------------------------------------


def test_closure_examples():
    assert NEG2.order == 2 and CYCLIC3.order == 3 and Q8.order == 8
    assert group_closure([[[1, 0, 0], [0, 1, 0], [0, 0, 1]]]).order == 1
    assert group_closure([[[0, -1], [1, -1]]]).order == 3


def test_closure_errors():
    with pytest.raises(SingularGenerator):
        group_closure([[[1, 0], [0, 0]]])
    with pytest.raises(ClosureCapExceeded):
        group_closure([[[1, 1], [0, 1]]], cap=50)
    with pytest.raises(InputError):
        group_closure([])
    with pytest.raises(InputError):
        group_closure([[[1, 0], [0, 1]], [[1]]])


def test_is_small_examples():
    assert is_small(NEG2) == (True, None)
    small, witness = is_small(SWAP)
    assert not small and witness == ((0, 1), (1, 0))
    assert is_small(group_closure([[[1, 0], [0, 1]]]))[0]
    assert is_small(Q8)[0]


def test_coprimality_examples():
    assert coprimality_check(NEG2, 0)
    assert not coprimality_check(NEG2, 2)
    G12 = group_closure([[[z6, 0], [0, z6**5]], [[0, 1], [-1, 0]]])
    assert G12.order == 12
    assert coprimality_check(G12, 5) and not coprimality_check(G12, 3)


# --- Molien series -----------------------------------------------------------


def test_molien_examples():
    triv = group_closure([[[1, 0], [0, 1]]])
    assert molien_series(triv, 10).coefficients == list(range(1, 12))
    M = molien_series(NEG2, 20)
    assert M.coefficients == oracles.NEG2_COEFFS
    assert M.coefficients[:6] == [1, 0, 3, 0, 5, 0]
    assert molien_series(CYCLIC3, 8).coefficients == oracles.CYCLIC3_COEFFS
    assert molien_series(Q8, 12).coefficients == oracles.Q8_COEFFS


def test_molien_rational_form():
    M = molien_series(NEG2, 20)
    num = [Fraction(int(c.numerator), int(c.denominator)) for c in M.numerator]
    den = [Fraction(int(c.numerator), int(c.denominator)) for c in M.denominator]
    # cross-multiplied against (1 + t^2) / (1 - t^2)^2
    lhs = _pmul(num, oracles.NEG2_DEN)
    rhs = _pmul(den, oracles.NEG2_NUM)
    assert lhs == rhs
    assert M.denominator[0] == 1


def test_molien_cross_checks_recorded():
    for name, G in _small_groups().items():
        M = molien_series(G, 12)
        assert M.checks["trace_average_degree"] == 10, name
        assert M.coefficients[:11] == trace_average(G, 10), name
        assert "monomial_count_degree" in M.checks or name == "quaternion"


def test_molien_properties():
    for name, G in _small_groups().items():
        M = molien_series(G, 40)
        assert M.coefficients[0] == 1
        assert all(0 <= a <= b for a, b in zip(M.coefficients, M.ambient)), name
        assert molien_coefficient(G, 17) == M.coefficients[17]


def test_diagonal_groups_match_monomial_count():
    M = molien_series(CYCLIC3, 8)
    assert M.coefficients == [oracles.diagonal_invariants([[1, 2]], 3, 2, q) for q in range(9)]
    G = _small_groups()["cyclic5"]
    M = molien_series(G, 8)
    assert M.coefficients == [oracles.diagonal_invariants([[1, 2, 2]], 5, 3, q) for q in range(9)]


def test_conjugation_invariance():
    T = [[1, 2], [0, 1]]
    Tinv = [[1, -2], [0, 1]]
    for G in (NEG2, CYCLIC3, Q8):
        fld = G.field
        Tm = tuple(tuple(fld(x) for x in r) for r in T)
        Ti = tuple(tuple(fld(x) for x in r) for r in Tinv)
        assert mat_mul(Tm, Ti) == identity(2, fld)
        conj = [mat_mul(mat_mul(Tm, g), Ti) for g in G.generators]
        H = group_closure(conj, fld)
        assert H.order == G.order
        assert molien_series(H, 25).coefficients == molien_series(G, 25).coefficients


def test_molien_rejects_negative_degree():
    with pytest.raises(InputError):
        molien_series(NEG2, -1)


# --- cumulative ratio and signature --------------------------------------------


def test_cumulative_ratio_examples():
    triv = group_closure([[[1, 0], [0, 1]]])
    M = molien_series(triv, 50)
    assert all(cumulative_ratio(M, N) == 1 for N in range(51))
    M = molien_series(NEG2, 200)
    assert cumulative_ratio(M, 2) == oracles.NEG2_RATIO_2
    assert abs(cumulative_ratio(M, 200) - mpq(1, 2)) < mpq(2, 100)
    with pytest.raises(InputError):
        cumulative_ratio(M, 201)


# The error is monotone at the sample points for most groups, but not for
# diag(z6, z6, z6^4): its Hilbert function is a period-6 quasi-polynomial and
# the cumulative ratio crosses 1/6 repeatedly. What holds in general is the
# C/N envelope, checked for every group.
NON_MONOTONE = {"cyclic6"}


@pytest.mark.parametrize("name", sorted(_small_groups()))
def test_convergence_envelope(name):
    G = _small_groups()[name]
    assert G.order <= 12 and G.n <= 3
    M = molien_series(G, 400)
    target = mpq(1, G.order)
    err = {N: abs(cumulative_ratio(M, N) - target) for N in range(50, 401)}
    assert all(err[N] < mpq(5, 100) for N in (50, 100, 200))
    C = max(N * err[N] for N in range(50, 101))
    assert all(N * err[N] <= mpq(11, 10) * C + mpq(1, 100) for N in range(100, 401))
    samples = [err[N] for N in (50, 100, 200)]
    monotone = samples[0] >= samples[1] >= samples[2]
    assert monotone == (name not in NON_MONOTONE)


def test_cyclic6_oscillation_matches_bruteforce():
    G = _small_groups()["cyclic6"]
    M = molien_series(G, 60)
    a = [oracles.diagonal_invariants([[1, 1, 4]], 6, 3, q) for q in range(61)]
    assert M.coefficients == a
    signs = {N: cumulative_ratio(M, N) > mpq(1, 6) for N in (20, 30, 40)}
    assert signs == {20: False, 30: True, 40: False}


def test_quotient_signature_examples():
    rep = quotient_signature(NEG2, N=200)
    assert rep.signature == "1/2" and rep.status == "certified"
    assert rep.table[-1]["N"] == 200 and rep.table[-1]["error"] < 0.02
    rep = quotient_signature(CYCLIC3, N=300)
    assert rep.signature == "1/3" and rep.table[-1]["error"] < 0.02
    rep = quotient_signature(NEG2, char=3, N=20)
    assert rep.signature == "1/2" and rep.warnings
    d = rep.to_dict()
    assert d["hypotheses"]["failed"] == [] and d["note"]


def test_quotient_signature_refusals():
    with pytest.raises(NotSmall):
        quotient_signature(SWAP)
    with pytest.raises(CharacteristicDividesOrder):
        quotient_signature(NEG2, char=2)
    with pytest.raises(InputError):
        quotient_signature(group_closure([[[-1]]]))
    with pytest.raises(InputError):
        quotient_signature(NEG2, char=9)
    try:
        quotient_signature(SWAP)
    except NotSmall as exc:
        rep = undecided_quotient_report(SWAP, 0, exc).to_dict()
    assert rep["status"] == "undecided" and rep["witness"] == [["0", "1"], ["1", "0"]]


def test_field_of_rational_group():
    assert NEG2.field is QQ or NEG2.field == QQ


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out
