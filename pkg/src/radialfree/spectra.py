"""
Spectral measures of radial positive definite functions.

The Haagerup function ``u^{|g|}`` decomposes over spherical functions with
a measure on ``[-1, 1]``: a density on the regular spectrum
``[-s, s]`` (``s = 2 sqrt(r(1-r))``) plus, for ``|u|`` above the critical
value ``sqrt(r/(1-r))``, one atom at ``c_r(u) = r/u + (1-r)u``. At ``u = 0``
the measure is the Kesten measure of the trace.

Integrals against these measures use the substitution ``t = s sin(theta)``,
which turns the square-root edge of the density into a smooth factor and
also tames the ``1/sqrt`` edge singularity at the critical parameter; the
theta-interval is then split into panels of Gauss-Legendre nodes.
"""

import math
from functools import lru_cache
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import DomainError, NumericError
from .linalg import tridiagonal_eigenvalues
from .radial import h1_times_h, p_values, regular_radius
from .words import Rank, as_rank, sphere_size

DEFAULT_NODES = 512
DEFAULT_PANELS = 8
#: Tolerance on ``|u|`` when deciding whether the atom is present.
ATOM_BOUNDARY_TOL = 1e-12


def critical_u(rank) -> float:
    r = float(as_rank(rank).r)
    return math.sqrt(r / (1 - r))


def c_map(rank, u: float) -> float:
    """``r/u + (1 - r) u``, the spectral parameter carried by the atom."""
    if u == 0:
        raise DomainError("c_r(u) is undefined at u = 0; use the Kesten measure")
    r = float(as_rank(rank).r)
    return r / u + (1 - r) * u


def _gap_above_edge(rank, a: float) -> float:
    # c_r(a) - s for a > 0, written as a square so it never goes negative
    r = float(as_rank(rank).r)
    return (math.sqrt(r / a) - math.sqrt((1 - r) * a)) ** 2


@dataclass(frozen=True)
class SpectralMeasure:
    """A density on the regular spectrum plus finitely many atoms.

    ``u = 0`` is the Kesten measure. ``atoms`` holds ``(location, mass)``
    pairs.
    """

    rank: Rank
    u: float
    atoms: Tuple[Tuple[float, float], ...] = field(default=())

    @property
    def edge(self) -> float:
        return regular_radius(self.rank)

    def theta_weight(self, theta) -> np.ndarray:
        """Density times ``dt/dtheta`` at ``t = s sin(theta)``, for theta in [-pi/2, pi/2]."""
        theta = np.asarray(theta, dtype=float)
        r = float(self.rank.r)
        s = self.edge
        u = self.u
        if abs(u) == 1.0:
            return np.zeros_like(theta)
        sin = np.sin(theta)
        # 1 - sin, 1 + sin without cancellation near the ends
        one_minus = 2.0 * np.sin(np.pi / 4 - theta / 2) ** 2
        one_plus = 2.0 * np.cos(np.pi / 4 - theta / 2) ** 2
        cos2 = one_minus * one_plus
        # 1 - t^2 = (1 - t)(1 + t), with 1 -+ t = (1 - s) + s (1 -+ sin)
        one_minus_t = (1.0 - s) + s * one_minus
        one_plus_t = (1.0 - s) + s * one_plus
        if u == 0:
            return s * s * cos2 / (2 * np.pi * r * one_minus_t * one_plus_t)
        a = abs(u)
        gap = _gap_above_edge(self.rank, a)
        # for u < 0 the density is the mirror image of the one for |u|
        toward = one_minus if u > 0 else one_plus
        c_minus_t = gap + s * toward
        pref = (1.0 / a - a) / (2 * np.pi)
        return pref * s * s * cos2 / (one_minus_t * one_plus_t * c_minus_t)

    def density(self, t) -> np.ndarray:
        """Density of the continuous part at ``t`` (zero off the regular spectrum)."""
        t = np.asarray(t, dtype=float)
        s = self.edge
        inside = np.abs(t) < s
        out = np.zeros_like(t)
        theta = np.arcsin(np.clip(t[inside] / s, -1.0, 1.0))
        jac = s * np.cos(theta)
        out[inside] = self.theta_weight(theta) / jac
        return out

    @property
    def atom_mass(self) -> float:
        return sum(m for _, m in self.atoms)


def haagerup_measure(rank, u: float) -> SpectralMeasure:
    """Measure of the Haagerup function ``u^{|g|}``; ``u = 0`` gives Kesten."""
    rank = as_rank(rank)
    u = float(u)
    if not math.isfinite(u) or abs(u) > 1:
        raise DomainError(f"Haagerup parameter must lie in [-1, 1], got {u}")
    atoms = ()
    if abs(u) == 1.0:
        atoms = ((u, 1.0),)
    elif abs(u) > critical_u(rank) + ATOM_BOUNDARY_TOL:
        c = c_map(rank, u)
        mass = (1 - c_map(rank, u * u)) / (1 - c * c)
        atoms = ((c, mass),)
    return SpectralMeasure(rank, u, atoms)


def kesten_measure(rank) -> SpectralMeasure:
    return haagerup_measure(rank, 0.0)


@lru_cache(maxsize=16)
def _gauss_legendre(nodes: int):
    if nodes < 1:
        raise DomainError(f"need at least one quadrature node, got {nodes}")
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _theta_rule(lo: float, hi: float, nodes: int, panels: int, breaks=()):
    x, w = _gauss_legendre(nodes)
    uniform = np.linspace(-np.pi / 2, np.pi / 2, panels + 1)
    cuts = [b for b in list(uniform) + list(breaks) if lo < b < hi]
    edges = np.array(sorted(set([lo, hi] + cuts)))
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    theta = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return theta, weights


def _edge_breaks(measure: "SpectralMeasure", panels: int) -> Tuple[float, ...]:
    # Just below the critical |u| the density has a boundary layer of width
    # ~sqrt(gap) at one end of the spectrum; grade panels geometrically there.
    if measure.u == 0 or abs(measure.u) == 1.0:
        return ()
    gap = _gap_above_edge(measure.rank, abs(measure.u))
    width = np.pi / panels
    eps = math.sqrt(2.0 * gap / measure.edge)
    if eps == 0.0 or eps >= width:
        return ()
    dist = []
    d = eps / 4
    while d < width:
        dist.append(d)
        d *= 4
    end = np.pi / 2 if measure.u > 0 else -np.pi / 2
    sign = 1.0 if measure.u > 0 else -1.0
    return tuple(end - sign * d for d in dist)


def _eval(f, t: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(t), dtype=float)
    if vals.shape != t.shape:
        vals = np.broadcast_to(vals, t.shape)
    if not np.all(np.isfinite(vals)):
        raise NumericError("integrand is not finite at a quadrature node")
    return vals


def integrate(
    measure: SpectralMeasure,
    f: Callable[[np.ndarray], np.ndarray],
    nodes: int = DEFAULT_NODES,
    panels: int = DEFAULT_PANELS,
) -> float:
    """``int f dmu``: composite Gauss-Legendre in theta plus the atom terms.

    ``f`` receives a numpy array of points and must return values of the
    same shape (a scalar is broadcast).
    """
    s = measure.edge
    theta, w = _theta_rule(-np.pi / 2, np.pi / 2, nodes, panels, _edge_breaks(measure, panels))
    t = s * np.sin(theta)
    # numpy's sum is pairwise and its order is fixed for a given length
    total = float(np.sum(w * measure.theta_weight(theta) * _eval(f, t)))
    for loc, mass in measure.atoms:
        total += mass * float(_eval(f, np.array([loc]))[0])
    return total


def total_mass(measure: SpectralMeasure, nodes: int = DEFAULT_NODES) -> float:
    return integrate(measure, lambda t: 1.0, nodes)


def cdf(measure: SpectralMeasure, x, nodes: int = 128, panels: int = DEFAULT_PANELS) -> np.ndarray:
    """``mu([-1, x])`` for each entry of ``x``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    s = measure.edge
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        top = np.arcsin(np.clip(xi / s, -1.0, 1.0))
        if top <= -np.pi / 2:
            cont = 0.0
        else:
            theta, w = _theta_rule(-np.pi / 2, top, nodes, panels, _edge_breaks(measure, panels))
            cont = float(np.sum(w * measure.theta_weight(theta)))
        out[i] = cont + sum(m for loc, m in measure.atoms if loc <= xi)
    return out


def moment(rank, u: float, n: int, nodes: int = DEFAULT_NODES) -> float:
    """``int p_n dphi_u``, which equals ``u^n``."""
    if n < 0:
        raise DomainError(f"moment index must be nonnegative, got {n}")
    measure = haagerup_measure(rank, u)
    return integrate(measure, lambda t: p_values(rank, n, t)[n], nodes)


def moments_table(rank, u: float, ns, nodes: int = DEFAULT_NODES) -> List[Tuple[float, int, float, float, float]]:
    """Rows ``(u, n, moment, u^n, |moment - u^n|)``."""
    rows = []
    for n in ns:
        m = moment(rank, u, n, nodes)
        expected = 1.0 if n == 0 else float(u) ** n
        rows.append((float(u), n, m, expected, abs(m - expected)))
    return rows


def measure_table(measure: SpectralMeasure, points: int = 201):
    """Rows ``(t, density, atom_flag, mass)``: a grid over the regular spectrum, then atoms."""
    s = measure.edge
    t = np.linspace(-s, s, points)
    dens = measure.density(t)
    rows = [(float(ti), float(di), 0, 0.0) for ti, di in zip(t, dens)]
    rows.extend((float(loc), 0.0, 1, float(m)) for loc, m in measure.atoms)
    return rows


# -- truncations of lambda(h_1) on the radial subspace ------------------------


@dataclass(frozen=True)
class JacobiMatrix:
    diagonal: np.ndarray
    offdiagonal: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=float)
        e = np.asarray(self.offdiagonal, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or e.size != max(d.size - 1, 0):
            raise DomainError("offdiagonal must be one shorter than the diagonal")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise NumericError("Jacobi matrix entries must be finite")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "offdiagonal", e)

    @property
    def dimension(self) -> int:
        return self.diagonal.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.offdiagonal, 1) + np.diag(self.offdiagonal, -1)


def radial_jacobi_matrix(rank, N: int) -> JacobiMatrix:
    """Compression of ``lambda(h_1)`` to ``span{1_{G_n}/sqrt|G_n| : n < N}``.

    Entry ``(k, n)`` is the coefficient of ``h_k`` in ``h_1 h_n`` (taken from
    the exact radial product) times ``sqrt(|G_n|/|G_k|)``. Both triangles are
    computed and must agree.
    """
    rank = as_rank(rank)
    if N < 2:
        raise DomainError(f"Jacobi truncation needs N >= 2, got {N}")
    size = [sphere_size(rank, n) for n in range(N + 1)]
    diag = np.empty(N)
    upper = np.empty(N - 1)
    lower = np.empty(N - 1)
    for n in range(N):
        col = dict(h1_times_h(rank, n))
        diag[n] = float(col.get(n, 0))
        if n + 1 < N:
            lower[n] = float(col.get(n + 1, 0)) * math.sqrt(Fraction(size[n], size[n + 1]))
        if n >= 1:
            upper[n - 1] = float(col.get(n - 1, 0)) * math.sqrt(Fraction(size[n], size[n - 1]))
    if np.max(np.abs(upper - lower)) > 1e-14:
        bad = int(np.argmax(np.abs(upper - lower)))
        raise NumericError(f"radial compression is not symmetric at row {bad}", index=bad)
    return JacobiMatrix(diag, upper)


def tridiag_eigenvalues(J: JacobiMatrix, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues of ``J`` in ascending order, by Sturm-sequence bisection."""
    return tridiagonal_eigenvalues(J.diagonal, J.offdiagonal, tol=tol)


def cyclic_weights(J: JacobiMatrix, eigenvalues: np.ndarray) -> np.ndarray:
    """Spectral weights of the first basis vector at each eigenvalue.

    Computed as ``1 / sum_n q_n(x)^2`` with ``q_n`` the orthonormal
    polynomials of ``J``, so no eigenvectors are needed.
    """
    d, b = J.diagonal, J.offdiagonal
    x = np.asarray(eigenvalues, dtype=float)
    q_prev = np.zeros_like(x)
    q = np.ones_like(x)
    acc = np.ones_like(x)
    for n in range(J.dimension - 1):
        q_next = ((x - d[n]) * q - (b[n - 1] if n else 0.0) * q_prev) / b[n]
        q_prev, q = q, q_next
        acc += q * q
    return 1.0 / acc


def spectral_histogram_distance(
    rank, N: int, bins: int = 40, nodes: int = 128, weighting: str = "uniform", eigenvalues=None
) -> float:
    """Sup over bin edges of ``|F_N - F_Kesten|``.

    ``F_N`` is the empirical distribution of the eigenvalues of the radial
    truncation of size ``N``. With ``weighting="uniform"`` every eigenvalue
    has mass ``1/N``; with ``weighting="cyclic"`` each eigenvalue carries the
    weight of the first basis vector (the Gauss quadrature weights of the
    truncation). Bin edges split the regular spectrum evenly.
    """
    rank = as_rank(rank)
    if N < 100:
        raise DomainError(f"histogram distance needs N >= 100, got {N}")
    J = radial_jacobi_matrix(rank, N)
    ev = tridiag_eigenvalues(J) if eigenvalues is None else np.asarray(eigenvalues)
    if weighting == "uniform":
        w = np.full(ev.size, 1.0 / ev.size)
    elif weighting == "cyclic":
        w = cyclic_weights(J, ev)
    else:
        raise DomainError(f"unknown weighting {weighting!r}")
    s = regular_radius(rank)
    edges = np.linspace(-s, s, bins + 1)
    kesten = cdf(kesten_measure(rank), edges, nodes=nodes)
    order = np.argsort(ev, kind="stable")
    cum = np.cumsum(w[order])
    idx = np.searchsorted(ev[order], edges, side="right")
    empirical = np.where(idx > 0, cum[np.maximum(idx - 1, 0)], 0.0)
    return float(np.max(np.abs(empirical - kesten)))
