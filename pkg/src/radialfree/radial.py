"""
Radial calculus on the free group.

The radial elements ``h_n`` (normalized sphere indicators) span a
commutative algebra generated by ``h_1``; ``h_n = p_n(h_1)`` where the
polynomials ``p_n`` obey ``t p_n = r p_{n-1} + (1 - r) p_{n+1}``. Spherical
functions are the characters of this algebra, labelled by the eigenvalue
``c`` of ``h_1``. This module holds the exact polynomial calculus and the
numerical classification of spectral parameters.
"""

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .errors import DomainError, NumericError
from .linalg import jacobi_eigenvalues
from .words import DEFAULT_CAP, Rank, Word, as_rank, ball, inverse, multiply


# -- radial elements -----------------------------------------------------------


class RadialElement:
    """``sum_n coeffs[n] * h_n`` with exact rational coefficients."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank, coeffs: Sequence = ()):
        self.rank = as_rank(rank)
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def h(cls, rank, n: int) -> "RadialElement":
        if n < 0:
            raise DomainError(f"index must be nonnegative, got {n}")
        return cls(rank, [0] * n + [1])

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _same_rank(self, other):
        if self.rank != other.rank:
            raise DomainError(f"rank mismatch: {self.rank.l} vs {other.rank.l}")

    def __eq__(self, other):
        if not isinstance(other, RadialElement):
            return NotImplemented
        return self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rank, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, RadialElement):
            return NotImplemented
        self._same_rank(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RadialElement(self.rank, [self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return RadialElement(self.rank, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "RadialElement":
        a = Fraction(a)
        return RadialElement(self.rank, [a * c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, RadialElement):
            return radial_product(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = scale

    def adjoint(self) -> "RadialElement":
        # h_n is hermitian and coefficients are real
        return self

    def __repr__(self):
        body = " + ".join(f"{c}*h{n}" for n, c in enumerate(self.coeffs) if c) or "0"
        return f"RadialElement(l={self.rank.l}, {body})"


def h1_times_h(rank, n: int) -> Tuple[Tuple[int, Fraction], ...]:
    """Nonzero ``(k, coeff)`` pairs of ``h_1 h_n`` in the basis ``(h_k)``.

    ``h_1 h_0 = h_1`` and ``h_1 h_n = r h_{n-1} + (1-r) h_{n+1}`` for ``n >= 1``.
    """
    r = as_rank(rank).r
    if n < 0:
        raise DomainError(f"index must be nonnegative, got {n}")
    if n == 0:
        return ((1, Fraction(1)),)
    return ((n - 1, r), (n + 1, 1 - r))


def times_h1(a: RadialElement) -> RadialElement:
    """``h_1 * a``, extending :func:`h1_times_h` linearly."""
    out = [Fraction(0)] * (len(a.coeffs) + 1)
    for n, c in enumerate(a.coeffs):
        if c:
            for k, b in h1_times_h(a.rank, n):
                out[k] += b * c
    return RadialElement(a.rank, out)


def radial_product(a: RadialElement, b: RadialElement) -> RadialElement:
    """Exact product in the radial algebra.

    Uses ``h_{m+1} = (h_1 h_m - r h_{m-1}) / (1 - r)`` to build ``h_m b`` for
    every ``m`` up to the degree of ``a``.
    """
    a._same_rank(b)
    r = a.rank.r
    result = RadialElement(a.rank, ())
    prev, cur = None, b
    for m, c in enumerate(a.coeffs):
        if m == 1:
            prev, cur = cur, times_h1(cur)
        elif m >= 2:
            prev, cur = cur, (times_h1(cur) - prev.scale(r)).scale(1 / (1 - r))
        if c:
            result = result + cur.scale(c)
    return result


def linearize(rank, m: int, n: int) -> RadialElement:
    """``h_m h_n`` in the basis ``(h_k)``."""
    rank = as_rank(rank)
    return radial_product(RadialElement.h(rank, m), RadialElement.h(rank, n))


def radial_to_json(a: RadialElement) -> str:
    return json.dumps(
        {"l": a.rank.l, "coeffs": [{"num": c.numerator, "den": c.denominator} for c in a.coeffs]}
    )


def radial_from_json(text: str) -> RadialElement:
    data = json.loads(text)
    try:
        return RadialElement(
            Rank(int(data["l"])),
            [Fraction(int(c["num"]), int(c["den"])) for c in data["coeffs"]],
        )
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed radial element: {exc}") from exc


# -- polynomials ---------------------------------------------------------------


class RationalPoly:
    """Univariate polynomial in ``t`` with ascending exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def t(cls) -> "RationalPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        # zero polynomial reports -1
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPoly([other])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        get = lambda p, i: p.coeffs[i] if i < len(p.coeffs) else 0
        return RationalPoly([get(self, i) + get(other, i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalPoly) else -Fraction(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly([other * c for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "RationalPoly(0)"
        parts = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "RationalPoly(" + " + ".join(parts) + ")"


def p_poly(rank, n: int) -> RationalPoly:
    """``p_n`` from ``p_0 = 1``, ``p_1 = t`` and the three-term recurrence."""
    if n < 0:
        raise DomainError(f"index must be nonnegative, got {n}")
    return p_polys(rank, n)[n]


def p_polys(rank, n: int) -> List[RationalPoly]:
    r = as_rank(rank).r
    t = RationalPoly.t()
    out = [RationalPoly([1]), t]
    for k in range(1, n):
        out.append((t * out[k] - out[k - 1] * r) * (1 / (1 - r)))
    return out[: n + 1]


def series_quotient(num: Sequence[RationalPoly], den: Sequence[RationalPoly], order: int):
    """Coefficients of ``num(z) / den(z)`` up to ``z**order``.

    Coefficients of both series live in Q[t]; ``den[0]`` must be a nonzero
    constant so that the division never leaves Q[t].
    """
    d0 = den[0]
    if d0.degree != 0:
        raise DomainError("leading coefficient of the denominator must be a nonzero constant")
    inv = 1 / d0.coeffs[0]
    out: List[RationalPoly] = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else RationalPoly()
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv)
    return out


def genfun_coeffs(rank, N: int) -> List[RationalPoly]:
    """Expand ``(1 - r - r t z) / (1 - r - t z + r z^2)`` as a power series in ``z``."""
    r = as_rank(rank).r
    t = RationalPoly.t()
    num = [RationalPoly([1 - r]), t * (-r)]
    den = [RationalPoly([1 - r]), -t, RationalPoly([r])]
    return series_quotient(num, den, N)


# -- evaluation ----------------------------------------------------------------


def p_values(rank, N: int, t):
    """``[p_0(t), ..., p_N(t)]`` by the recurrence; ``t`` may be complex or an array."""
    r = float(as_rank(rank).r)
    q = 1.0 - r
    vals = [np.ones_like(t) if isinstance(t, np.ndarray) else 1.0 + 0 * t, t]
    for k in range(1, N):
        vals.append((t * vals[k] - r * vals[k - 1]) / q)
    return vals[: N + 1]


def p_eval(rank, n: int, t: float) -> float:
    if n < 0:
        raise DomainError(f"index must be nonnegative, got {n}")
    return p_values(rank, n, t)[n]


def spherical_value(rank, c, g: Word) -> float:
    return p_eval(rank, len(g), c)


def spherical_function(rank, c) -> Callable[[Word], float]:
    """Radial function ``g -> p_{|g|}(c)``; values are cached per length."""
    rank = as_rank(rank)
    cache = [1.0, c]

    def phi(g: Word):
        n = len(g)
        while len(cache) <= n:
            k = len(cache) - 1
            cache.append((c * cache[k] - float(rank.r) * cache[k - 1]) / (1.0 - float(rank.r)))
        return cache[n]

    return phi


def haagerup_function(u: float) -> Callable[[Word], float]:
    return lambda g: u ** len(g)


def spherical_eigen_residual(rank, c, n: int) -> float:
    """Defect of ``r p_{n-1}(c) + (1-r) p_{n+1}(c) = c p_n(c)``."""
    if n < 1:
        raise DomainError(f"sphere index must be at least 1, got {n}")
    r = float(as_rank(rank).r)
    p = p_values(rank, n + 1, c)
    return abs(r * p[n - 1] + (1 - r) * p[n + 1] - c * p[n])


def pn_table(rank, c: float, n: int) -> List[Tuple[int, float, float]]:
    """Rows ``(k, c, p_k(c))`` for ``k = 0..n``."""
    return [(k, c, float(v)) for k, v in enumerate(p_values(rank, n, float(c)))]


# -- classification of spectral parameters -------------------------------------


class Series(enum.Enum):
    PRINCIPAL = "principal"
    COMPLEMENTARY = "complementary"
    RESIDUAL_PLUS = "residual+1"
    RESIDUAL_MINUS = "residual-1"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class ParameterClass:
    c: complex
    l1_bounded: bool
    cstar_bounded: bool
    positive_definite: bool
    series: Series


def regular_radius(rank) -> float:
    """``2 sqrt(r(1-r))``, the right end of the regular spectrum."""
    r = as_rank(rank).r
    return 2.0 * math.sqrt(r * (1 - r))


def ellipse_level(rank, c) -> float:
    """``x^2 + y^2/(1-2r)^2``: at most 1 exactly on the closed elliptic disk."""
    c = complex(c)
    r = as_rank(rank).r
    if r == Fraction(1, 2):
        return c.real**2 if c.imag == 0 else math.inf
    return c.real**2 + c.imag**2 / float(1 - 2 * r) ** 2


def classify_parameter(rank, c) -> ParameterClass:
    rank = as_rank(rank)
    c = complex(c)
    l1 = ellipse_level(rank, c) <= 1.0
    real = c.imag == 0 and -1.0 <= c.real <= 1.0
    if not real:
        series = Series.UNBOUNDED
    elif c.real == 1.0:
        series = Series.RESIDUAL_PLUS
    elif c.real == -1.0:
        series = Series.RESIDUAL_MINUS
    elif abs(c.real) <= regular_radius(rank):
        series = Series.PRINCIPAL
    else:
        series = Series.COMPLEMENTARY
    return ParameterClass(c=c, l1_bounded=l1, cstar_bounded=real, positive_definite=real, series=series)


def sup_pn_witness(rank, c, N: int) -> float:
    """``max_{0 <= n <= N} |p_n(c)|`` by the complex recurrence."""
    if N < 1:
        raise DomainError(f"N must be at least 1, got {N}")
    return max(abs(v) for v in p_values(rank, N, complex(c)))


def l1_growth_verdict(rank, c, N: int = 64, boundary_tol: float = 1e-9) -> str:
    """``'bounded'``, ``'unbounded'`` or ``'boundary'`` from the growth of ``|p_n(c)|``.

    Points within ``boundary_tol`` of the boundary of the elliptic disk are
    reported as ``'boundary'`` and left undecided. Elsewhere the verdict is
    ``'unbounded'`` when the supremum over ``[N+1, 2N]`` exceeds the supremum
    over ``[0, N]`` by a factor of at least 1.1.
    """
    rank = as_rank(rank)
    c = complex(c)
    if rank.r == Fraction(1, 2):
        near = abs(abs(c.real) - 1.0) <= boundary_tol and abs(c.imag) <= boundary_tol
        near = near or 0 < abs(c.imag) <= boundary_tol
    else:
        near = abs(math.sqrt(ellipse_level(rank, c)) - 1.0) <= boundary_tol
    if near:
        return "boundary"
    vals = np.abs(np.array(p_values(rank, 2 * N, c), dtype=complex))
    if not np.all(np.isfinite(vals)):
        return "unbounded"
    head, tail = vals[: N + 1].max(), vals[N + 1 :].max()
    return "unbounded" if tail >= 1.1 * head else "bounded"


# -- positive definiteness on balls -------------------------------------------


def gram_matrix(rank, phi: Callable[[Word], float], R: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """``M[g, h] = phi(g^-1 h)`` over the ball of radius ``R``."""
    words = ball(rank, R, cap=cap)
    M = np.array([[phi(multiply(inverse(g), h)) for h in words] for g in words])
    if np.iscomplexobj(M):
        if np.any(M.imag != 0):
            raise DomainError("Gram test needs a real-valued function")
        M = M.real
    M = M.astype(float)
    if not np.all(np.isfinite(M)):
        bad = tuple(int(i) for i in np.argwhere(~np.isfinite(M))[0])
        raise NumericError(f"phi is not finite at Gram entry {bad}", index=bad)
    return M


def is_positive_definite_on_ball(
    rank, phi: Callable[[Word], float], R: int, tol: float = None, cap: int = DEFAULT_CAP
) -> Tuple[bool, float]:
    """Gram test of positive definiteness on a ball.

    Returns ``(passed, min_eigenvalue)`` where ``passed`` means the smallest
    eigenvalue is at least ``-tol``. The default tolerance is ``1e-10``
    times the matrix dimension.
    """
    M = gram_matrix(rank, phi, R, cap=cap)
    if tol is None:
        tol = 1e-10 * M.shape[0]
    lam_min = float(jacobi_eigenvalues(M)[0])
    return lam_min >= -tol, lam_min
