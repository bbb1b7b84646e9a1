"""
Symmetric eigenvalue solvers.

``jacobi_eigenvalues`` diagonalizes a dense symmetric matrix by Jacobi
rotations, applied in round-robin order so that each round rotates n/2
disjoint index pairs at once. ``tridiagonal_eigenvalues`` bisects every
eigenvalue of a symmetric tridiagonal matrix with Sturm counts, all
eigenvalues advancing together.
"""

import numpy as np

from .errors import DomainError, NumericError


def _round_robin(n: int):
    """Rounds of disjoint pairs covering every pair of ``range(n)`` once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(A, rtol: float = 1e-15, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of the symmetric matrix ``A``, ascending.

    Sweeps stop when the off-diagonal Frobenius norm falls below ``rtol``
    times the Frobenius norm of ``A``.
    """
    A = np.array(A, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NumericError("matrix has non-finite entries")
    if not np.allclose(A, A.T, rtol=0, atol=1e-12 * max(1.0, np.abs(A).max())):
        raise DomainError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    if n <= 1:
        return np.diag(A).copy()

    total = np.linalg.norm(A)
    if total == 0:
        return np.zeros(n)
    rounds = [(np.array([p for p, _ in pr]), np.array([q for _, q in pr])) for pr in _round_robin(n)]

    for sweep in range(max_sweeps):
        offdiag = A - np.diag(np.diag(A))
        if np.linalg.norm(offdiag) <= rtol * total:
            return np.sort(np.diag(A))
        for P, Q in rounds:
            apq = A[P, Q]
            app, aqq = A[P, P], A[Q, Q]
            # entries below the resolution of both diagonal entries are dropped
            small = (np.abs(app) + 100 * np.abs(apq) == np.abs(app)) & (
                np.abs(aqq) + 100 * np.abs(apq) == np.abs(aqq)
            )
            if small.any():
                A[P[small], Q[small]] = 0.0
                A[Q[small], P[small]] = 0.0
                apq = np.where(small, 0.0, apq)
            active = apq != 0
            if not active.any():
                continue
            c = np.ones_like(apq)
            s = np.zeros_like(apq)
            a = apq[active]
            # an infinite theta gives t = 0, the identity rotation
            with np.errstate(over="ignore"):
                theta = (aqq[active] - app[active]) / (2.0 * a)
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0] = 1.0
            c[active] = 1.0 / np.sqrt(t * t + 1.0)
            s[active] = t * c[active]
            # A <- J^T A J, columns then rows
            colP, colQ = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = colP * c - colQ * s
            A[:, Q] = colP * s + colQ * c
            rowP, rowQ = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = c[:, None] * rowP - s[:, None] * rowQ
            A[Q, :] = s[:, None] * rowP + c[:, None] * rowQ
            A[P, Q] = 0.0
            A[Q, P] = 0.0
    raise NumericError(f"Jacobi rotations did not converge in {max_sweeps} sweeps", index=n)


def sturm_count(diagonal, offdiagonal, x) -> np.ndarray:
    """Number of eigenvalues strictly below each entry of ``x``."""
    d = np.asarray(diagonal, dtype=float)
    b2 = np.asarray(offdiagonal, dtype=float) ** 2
    x = np.atleast_1d(np.asarray(x, dtype=float))
    # pivots of the LDL^T factorization of T - x I; exact zero pivots nudged
    tiny = np.finfo(float).tiny
    scale = max(1.0, np.abs(d).max(initial=0.0), np.sqrt(b2.max(initial=0.0)))
    eps = np.finfo(float).eps * scale
    count = np.zeros(x.shape, dtype=np.int64)
    q = d[0] - x
    q = np.where(q == 0.0, -eps, q)
    count += q < 0
    for i in range(1, d.size):
        q = d[i] - x - b2[i - 1] / q
        q = np.where(np.abs(q) < tiny, -eps, q)
        count += q < 0
    return count


def tridiagonal_eigenvalues(diagonal, offdiagonal, tol: float = 1e-12, max_iter: int = 200) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection, ascending."""
    d = np.asarray(diagonal, dtype=float)
    e = np.asarray(offdiagonal, dtype=float)
    n = d.size
    if n == 0:
        return np.zeros(0)
    if e.size != n - 1:
        raise DomainError(f"offdiagonal has length {e.size}, expected {n - 1}")
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
        raise NumericError("tridiagonal entries must be finite")
    if n == 1:
        return d.copy()

    radius = np.zeros(n)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo0 = float(np.min(d - radius))
    hi0 = float(np.max(d + radius))
    pad = 2 * np.finfo(float).eps * max(1.0, abs(lo0), abs(hi0))
    lo = np.full(n, lo0 - pad)
    hi = np.full(n, hi0 + pad)
    k = np.arange(n)
    # invariant: count(lo) <= k < count(hi), so the k-th eigenvalue lies in [lo, hi)
    for it in range(max_iter):
        width = hi - lo
        live = width > tol * max(1.0, abs(lo0), abs(hi0)) * 0.5
        if not live.any():
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        below = sturm_count(d, e, mid[live])
        go_up = below <= k[live]
        lo_live, hi_live = lo[live], hi[live]
        lo_live[go_up] = mid[live][go_up]
        hi_live[~go_up] = mid[live][~go_up]
        lo[live], hi[live] = lo_live, hi_live
    stuck = int(np.argmax(hi - lo))
    raise NumericError(f"bisection did not converge for eigenvalue {stuck}", index=stuck)
