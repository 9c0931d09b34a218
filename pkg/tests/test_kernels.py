import os
import subprocess
import sys
from math import comb

import numpy as np
import oracles
import pytest

from symsig import _kernels

BACKENDS = sorted(_kernels.IMPLEMENTATIONS)


def _rand_matrix(rng, k, n, top=3):
    return rng.integers(0, top + 1, size=(k, n), dtype=np.int64)


@pytest.mark.parametrize("n, q", [(1, 0), (1, 4), (3, 0), (3, 5), (5, 4)])
def test_compositions(n, q):
    M = _kernels.compositions(n, q)
    assert M.shape == (comb(n + q - 1, q), n)
    assert (M.sum(axis=1) == q).all()
    assert len({tuple(r) for r in M}) == M.shape[0]


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernels_against_oracles(backend):
    impl = _kernels.IMPLEMENTATIONS[backend]
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(1, 6))
        A = _rand_matrix(rng, int(rng.integers(1, 6)), n)
        mons = [tuple(int(x) for x in r) for r in A]
        for q in range(6):
            assert impl["standard_count"](A, n, q) == oracles.monomial_hilbert(mons, n, q)
        keep = impl["minimal_mask"](A)
        kept = [m for m, k in zip(mons, keep) if k]
        for m in mons:
            assert any(all(a >= b for a, b in zip(m, g)) for g in kept)
        for i, g in enumerate(kept):
            for j, h in enumerate(kept):
                assert i == j or not all(a >= b for a, b in zip(g, h))
        masks = np.array([sum(1 << t for t in range(n) if r[t]) for r in mons], dtype=np.int64)
        expected = oracles.monomial_dimension(mons, n)
        assert impl["max_independent"](masks, n) == expected
        m = int(rng.integers(2, 7))
        W = rng.integers(0, m, size=(int(rng.integers(1, 3)), n), dtype=np.int64)
        for q in range(6):
            expected = oracles.diagonal_invariants(W.tolist(), m, n, q)
            assert impl["diagonal_invariant_count"](W, m, n, q) == expected


@pytest.mark.skipif(len(BACKENDS) < 2, reason="numba not available")
def test_backends_agree_on_larger_inputs():
    np_impl, nb_impl = _kernels.IMPLEMENTATIONS["numpy"], _kernels.IMPLEMENTATIONS["numba"]
    rng = np.random.default_rng(1)
    for _ in range(10):
        n = int(rng.integers(3, 9))
        A = _rand_matrix(rng, int(rng.integers(2, 12)), n, 5)
        q = int(rng.integers(0, 9))
        assert np_impl["standard_count"](A, n, q) == nb_impl["standard_count"](A, n, q)
        assert (np_impl["minimal_mask"](A) == nb_impl["minimal_mask"](A)).all()
        masks = np.array([sum(1 << t for t in range(n) if r[t]) for r in A], dtype=np.int64)
        assert np_impl["max_independent"](masks, n) == nb_impl["max_independent"](masks, n)


def test_empty_inputs():
    for impl in _kernels.IMPLEMENTATIONS.values():
        E = np.zeros((0, 3), dtype=np.int64)
        assert impl["standard_count"](E, 3, 2) == 6
        assert impl["max_independent"](np.zeros(0, dtype=np.int64), 3) == 3
        assert impl["diagonal_invariant_count"](E, 3, 3, 2) == 6
    assert _kernels.max_independent(np.array([0], dtype=np.int64), 3) == -1


def test_overflow_check():
    with pytest.raises(OverflowError):
        _kernels.as_exponent_array([(2**40,)], 1)


def test_env_flag_selects_numpy():
    env = dict(os.environ, SYMSIG_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from symsig import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
