import numpy as np
import pytest

from radialfree.errors import DomainError, NumericError
from radialfree.linalg import jacobi_eigenvalues, sturm_count, tridiagonal_eigenvalues


@pytest.mark.parametrize("n", [1, 2, 3, 8, 17, 40])
def test_jacobi_matches_numpy(n):
    rng = np.random.default_rng(n)
    A = rng.standard_normal((n, n))
    A = A + A.T
    np.testing.assert_allclose(jacobi_eigenvalues(A), np.linalg.eigvalsh(A), atol=1e-11)


def test_jacobi_rank_one_and_zero():
    v = np.arange(1.0, 6.0)
    ev = jacobi_eigenvalues(np.outer(v, v))
    np.testing.assert_allclose(ev, [0, 0, 0, 0, v @ v], atol=1e-12)
    assert np.all(jacobi_eigenvalues(np.zeros((4, 4))) == 0)


def test_jacobi_rejects_bad_input():
    with pytest.raises(DomainError):
        jacobi_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        jacobi_eigenvalues(np.ones((2, 3)))
    with pytest.raises(NumericError):
        jacobi_eigenvalues(np.array([[np.nan, 0.0], [0.0, 1.0]]))


@pytest.mark.parametrize("n", [2, 5, 50, 300])
def test_tridiagonal_matches_numpy(n):
    rng = np.random.default_rng(100 + n)
    d, e = rng.standard_normal(n), rng.standard_normal(n - 1)
    T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(tridiagonal_eigenvalues(d, e), np.linalg.eigvalsh(T), atol=1e-11)


def test_tridiagonal_with_zero_couplings():
    d = np.array([3.0, -1.0, 2.0, 2.0])
    e = np.array([0.0, 0.0, 0.0])
    np.testing.assert_allclose(tridiagonal_eigenvalues(d, e), np.sort(d), atol=1e-12)


def test_sturm_count_interlaces():
    d, e = np.zeros(5), np.ones(4)
    ev = np.linalg.eigvalsh(np.diag(e, 1) + np.diag(e, -1))
    mids = (ev[:-1] + ev[1:]) / 2
    assert list(sturm_count(d, e, mids)) == [1, 2, 3, 4]
    assert sturm_count(d, e, -10.0)[0] == 0 and sturm_count(d, e, 10.0)[0] == 5


def test_tridiagonal_length_mismatch():
    with pytest.raises(DomainError):
        tridiagonal_eigenvalues(np.zeros(3), np.zeros(3))
