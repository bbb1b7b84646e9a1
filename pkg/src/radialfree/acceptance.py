"""
Executable acceptance criteria.

Each ``criterion_*`` function runs one check at its fixed tolerance and
returns a :class:`CriterionResult`. :func:`run_all` produces the report
printed by ``radialfree selftest``; the report depends only on the seed.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional

import numpy as np

from . import group_algebra as ga
from . import primtop as pt
from .radial import (
    genfun_coeffs,
    haagerup_function,
    is_positive_definite_on_ball,
    p_polys,
    p_values,
    regular_radius,
    spherical_function,
)
from .spectra import (
    critical_u,
    cyclic_weights,
    haagerup_measure,
    integrate,
    kesten_measure,
    radial_jacobi_matrix,
    spectral_histogram_distance,
    total_mass,
    tridiag_eigenvalues,
)
from .words import Rank, ball, inverse, sphere, sphere_size


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.title}: {self.detail}"


def _e(x: float) -> str:
    return f"{x:.3e}"


def criterion_1_recurrence() -> CriterionResult:
    bad = []
    for l in (1, 2, 3):
        rank = Rank(l)
        r = rank.r
        h = [ga.elementary_radial(rank, n) for n in range(8)]
        for n in range(1, 7):
            lhs = ga.convolve(h[1], h[n])
            rhs = h[n - 1].scale(r) + h[n + 1].scale(1 - r)
            if lhs != rhs:
                bad.append((l, n))
    detail = "exact for l in {1,2,3}, 1<=n<=6" if not bad else f"mismatch at {bad}"
    return CriterionResult(1, "exact recurrence h1*hn", not bad, detail)


def criterion_2_generating_function() -> CriterionResult:
    bad = [l for l in (1, 2, 3) if genfun_coeffs(l, 12) != p_polys(l, 12)]
    detail = "series coefficients equal p_0..p_12 exactly" if not bad else f"mismatch for l={bad}"
    return CriterionResult(2, "generating function", not bad, detail)


def criterion_3_sphere_counts() -> CriterionResult:
    bad = []
    for l in (1, 2, 3):
        for n in range(9):
            words = sphere(l, n)
            expected = 1 if n == 0 else 2 * l * (2 * l - 1) ** (n - 1)
            ok = (
                len(words) == expected == sphere_size(l, n)
                and len(set(words)) == len(words)
                and all(len(w) == n for w in words)
            )
            if not ok:
                bad.append((l, n))
    detail = "|G_n| = 2l(2l-1)^(n-1) for n<=8" if not bad else f"mismatch at {bad}"
    return CriterionResult(3, "sphere counts", not bad, detail)


def criterion_4_haagerup_moments(tol: float = 1e-8) -> CriterionResult:
    worst_moment = worst_mass = 0.0
    atoms_seen = atoms_expected = 0
    for l in (2, 3):
        cu = critical_u(l)
        for u in (0.0, 0.2, -0.2, 0.3, -0.3, cu, -cu, 0.8, -0.8, 0.95, -0.95):
            mu = haagerup_measure(l, u)
            if abs(u) > cu:
                atoms_expected += 1
                atoms_seen += len(mu.atoms) == 1
            worst_mass = max(worst_mass, abs(total_mass(mu) - 1.0))
            for n in range(11):
                m = integrate(mu, lambda t, n=n: p_values(l, n, t)[n])
                expected = 1.0 if n == 0 else u**n
                worst_moment = max(worst_moment, abs(m - expected))
    ok = worst_moment <= tol and worst_mass <= tol and atoms_seen == atoms_expected
    detail = (
        f"max|moment-u^n|={_e(worst_moment)}, max|mass-1|={_e(worst_mass)}, "
        f"atoms {atoms_seen}/{atoms_expected} (tol {tol:.0e})"
    )
    return CriterionResult(4, "Haagerup moments", ok, detail)


def criterion_5_orthogonality(tol: float = 1e-8) -> CriterionResult:
    l = 2
    h = [ga.elementary_radial(l, n) for n in range(9)]
    mu = kesten_measure(l)
    exact_ok = True
    worst = 0.0
    for m in range(9):
        for n in range(9):
            tr = ga.trace_product(h[m], h[n])
            exact_ok &= tr == (Fraction(1, sphere_size(l, n)) if m == n else 0)
            q = integrate(mu, lambda t: p_values(l, 8, t)[m] * p_values(l, 8, t)[n])
            worst = max(worst, abs(q - float(tr)))
    ok = exact_ok and worst <= tol
    detail = f"trace exact={exact_ok}, max|quad-trace|={_e(worst)} (tol {tol:.0e})"
    return CriterionResult(5, "orthogonality bridge", ok, detail)


def criterion_6_positive_definite() -> CriterionResult:
    l = 2
    pd_min = math.inf
    for c in (-1.0, -0.5, 0.0, 0.866, 0.9, 1.0):
        _, lam = is_positive_definite_on_ball(l, spherical_function(l, c), 3)
        pd_min = min(pd_min, lam)
    for u in (-1.0, -0.5, 0.7, 1.0):
        _, lam = is_positive_definite_on_ball(l, haagerup_function(u), 3)
        pd_min = min(pd_min, lam)
    failures = []
    for c in (1.05, 1.2, -1.1):
        found = None
        for R in range(1, 5):
            _, lam = is_positive_definite_on_ball(l, spherical_function(l, c), R)
            if lam < -1e-6:
                found = (R, lam)
                break
        failures.append((c, found))
    ok = pd_min >= -1e-8 and all(f is not None for _, f in failures)
    fails = ", ".join(
        f"c={c}: R={f[0]} min={_e(f[1])}" if f else f"c={c}: no witness" for c, f in failures
    )
    detail = f"PD min eig={_e(pd_min)}; {fails}"
    return CriterionResult(6, "positive definiteness", ok, detail)


def criterion_7_spectrum(N: int = 2000, bins: int = 40) -> CriterionResult:
    l = 2
    s = regular_radius(l)
    J = radial_jacobi_matrix(l, N)
    ev = tridiag_eigenvalues(J)
    contained = bool(np.all(ev >= -s - 1e-8) and np.all(ev <= s + 1e-8))
    top = float(ev.max())
    dist = spectral_histogram_distance(l, N, bins, eigenvalues=ev)
    cyc = spectral_histogram_distance(l, N, bins, weighting="cyclic", eigenvalues=ev)
    ok = contained and top >= 0.86 and dist <= 0.05
    detail = (
        f"contained={contained}, max eig={top:.10f}, uniform CDF distance={dist:.4f} (tol 0.05), "
        f"cyclic-vector CDF distance={cyc:.2e}"
    )
    return CriterionResult(7, "spectrum containment and convergence", ok, detail)


# -- topology ------------------------------------------------------------------


def _random_prim_set(rng: random.Random, l: int) -> pt.PrimSet:
    s = regular_radius(l)
    grid = [s + (1 - s) * k / 8 for k in range(9)]
    grid[0], grid[-1] = s, 1.0
    ivs = []
    for _ in range(rng.randrange(0, 4)):
        sign = rng.choice((1.0, -1.0))
        i, j = sorted((rng.randrange(9), rng.randrange(9)))
        if i == j:
            if 0 < i < 8:
                ivs.append(pt.Interval(sign * grid[i], sign * grid[i], True, True))
            continue
        lo, hi = grid[i], grid[j]
        lo_c = rng.random() < 0.5 and 0 < i
        hi_c = rng.random() < 0.5 and j < 8
        if sign < 0:
            lo, hi, lo_c, hi_c = -hi, -lo, hi_c, lo_c
        ivs.append(pt.Interval(lo, hi, lo_c, hi_c))
    return pt.prim_set(
        l, rng.random() < 0.3, rng.random() < 0.3, rng.random() < 0.3, ivs
    )


def _euclidean_closure_contains(S: pt.PrimSet, t: float) -> bool:
    return any(iv.lo <= t <= iv.hi for iv in S.params)


def _random_descriptor(rng: random.Random, l: int):
    """A random descriptor and whether it was built constant."""
    s = regular_radius(l)
    base = rng.choice((0.0, 1.0, -2.5, 3.7))
    mid = s + (1 - s) * rng.uniform(0.2, 0.8)
    ivs = [
        pt.Interval(-1.0, -mid, False, True),
        pt.Interval(-mid, -s, False, False),
        pt.Interval(s, mid, False, False),
        pt.Interval(mid, 1.0, True, False),
    ]

    def inner_points(iv):
        return np.array([iv.lo + (iv.hi - iv.lo) * x for x in (0.25, 0.5, 0.75)])

    def constant_piece(iv):
        form = rng.randrange(3)
        if form == 0:
            return base
        if form == 1:
            return lambda t: base
        ts = inner_points(iv)
        return (ts, np.full(ts.shape, base))

    values = [constant_piece(iv) for iv in ivs]
    bot = cp = cm = base
    kind = rng.randrange(5)
    if kind == 1:
        bot = base + rng.choice((-1.0, 0.5, 1e-6))
    elif kind == 2:
        if rng.random() < 0.5:
            cp = base + 1.0
        else:
            cm = base - 1.0
    elif kind == 3:
        k = rng.randrange(4)
        slope = rng.choice((1.0, -0.3, 1e-3))
        values[k] = lambda t, slope=slope: base + slope * (t - mid) ** 2
    elif kind == 4:
        k = rng.randrange(4)
        ts = inner_points(ivs[k])
        vs = np.full(ts.shape, base)
        vs[rng.randrange(ts.size)] += 0.25
        values[k] = (ts, vs)
    pieces = tuple(pt.Piece(iv, v) for iv, v in zip(ivs, values))
    return pt.FunctionDescriptor(bot, cp, cm, pieces), kind == 0


def criterion_8_topology(seed: int = 0, n_sets: int = 10_000, n_functions: int = 1_000) -> CriterionResult:
    l = 2
    rng = random.Random(seed)
    s = regular_radius(l)
    empty = pt.PrimSet()
    problems = []
    if pt.closure(l, empty) != empty:
        problems.append("closure(empty)")
    sets = [_random_prim_set(rng, l) for _ in range(n_sets)]
    probe = [sign * (s + (1 - s) * k / 16) for k in range(1, 16) for sign in (1.0, -1.0)]
    for i, S in enumerate(sets):
        C = pt.closure(l, S)
        if not pt.is_subset(l, S, C):
            problems.append(f"extensive#{i}")
        if pt.closure(l, C) != C:
            problems.append(f"idempotent#{i}")
        T = sets[(i + 1) % n_sets]
        if pt.closure(l, pt.union(S, T)) != pt.union(C, pt.closure(l, T)):
            problems.append(f"additive#{i}")
        if S.params and not S.has_bot and not S.has_char_plus and not S.has_char_minus:
            # closure of a parameter set is the image of its euclidean closure plus Bot
            for t in probe:
                if C.contains(pt.Sph(t)) != _euclidean_closure_contains(S, t):
                    problems.append(f"closure-formula#{i}@{t}")
            if not C.has_bot:
                problems.append(f"closure-bot#{i}")
            ends = {e for iv in S.params for e in (iv.lo, iv.hi)}
            if C.has_char_plus != (1.0 in ends) or C.has_char_minus != (-1.0 in ends):
                problems.append(f"closure-char#{i}")
        if len(problems) > 20:
            break

    c09 = pt.point_closure(l, pt.Sph(0.9))
    if c09 != pt.from_points(l, [pt.Sph(0.9), pt.BOT]):
        problems.append("closure{Sph(0.9)}")
    for p in (pt.BOT, pt.CHAR_PLUS, pt.CHAR_MINUS):
        if not pt.is_closed(l, pt.from_points(l, [p])):
            problems.append(f"{p} not closed")
    if pt.is_closed(l, pt.from_points(l, [pt.Sph(0.9)])):
        problems.append("T1 failure not witnessed")
    points = [pt.BOT, pt.CHAR_PLUS, pt.CHAR_MINUS, pt.Sph(0.9), pt.Sph(-0.9), pt.Sph(0.95)]
    closures = [pt.point_closure(l, p) for p in points]
    if len(set(closures)) != len(points):
        problems.append("T0")

    wrong = 0
    for _ in range(n_functions):
        f, constant = _random_descriptor(rng, l)
        ok, _ = pt.is_continuous_function(l, f)
        wrong += ok != constant
    if wrong:
        problems.append(f"continuity misjudged {wrong}x")

    detail = (
        f"{n_sets} random sets, {n_functions} descriptors; "
        + ("all checks exact" if not problems else "problems: " + ", ".join(problems[:10]))
    )
    return CriterionResult(8, "topology", not problems, detail)


def criterion_9_lambda_structure(R: int = 4) -> CriterionResult:
    l = 2
    words = ball(l, R)
    problems = []
    for sign in (1, -1):
        for g in words:
            gi = inverse(g)
            diag = ga.lambda_pm1_word(sign, g, ())
            if diag.word != () or diag.sign != sign ** len(g):
                problems.append(f"diag {sign} {g}")
            for w in words:
                img = ga.lambda_pm1_word(sign, g, w)
                back = ga.lambda_pm1_word(sign, gi, img.word)
                if back.word != w or img.sign * back.sign != 1:
                    problems.append(f"inverse {sign} {g} {w}")
                if w and ga.right_end_class(img.word) != ga.right_end_class(w):
                    problems.append(f"class {sign} {g} {w}")
                if g and w and img.word == w:
                    problems.append(f"fixed {sign} {g} {w}")
            if len(problems) > 20:
                break
    detail = f"ball R={R} ({len(words)} words), both signs; " + (
        "identity, diagonal, G(i) invariance, freeness hold" if not problems else ", ".join(map(str, problems[:5]))
    )
    return CriterionResult(9, "lambda_{+-1} structure", not problems, detail)


CRITERIA: List[Callable[..., CriterionResult]] = [
    criterion_1_recurrence,
    criterion_2_generating_function,
    criterion_3_sphere_counts,
    criterion_4_haagerup_moments,
    criterion_5_orthogonality,
    criterion_6_positive_definite,
    criterion_7_spectrum,
    criterion_8_topology,
    criterion_9_lambda_structure,
]


def _run(fn, seed: int) -> CriterionResult:
    return fn(seed=seed) if fn is criterion_8_topology else fn()


def _report_lines(results: List[CriterionResult]) -> str:
    return "".join(r.line() + "\n" for r in results)


def criterion_10_determinism(first: List[CriterionResult], seed: int = 0) -> CriterionResult:
    """Rerun the criteria behind ``first`` and compare report text byte for byte."""
    fns = {fn_number(fn): fn for fn in CRITERIA}
    second = [_run(fns[r.number], seed) for r in first]
    a = _report_lines(first).encode()
    b = _report_lines(second).encode()
    if a == b:
        detail = f"second run with seed {seed} reproduced {len(a)} report bytes"
    else:
        at = next((i for i, (x, y) in enumerate(zip(a, b)) if x != y), min(len(a), len(b)))
        detail = f"second run with seed {seed} differs at byte {at}"
    return CriterionResult(10, "determinism", a == b, detail)


def fn_number(fn) -> int:
    return int(fn.__name__.split("_")[1])


def run_all(seed: int = 0, only: Optional[Iterable[int]] = None, determinism: bool = True) -> List[CriterionResult]:
    """Run criteria 1-9, or those numbered in ``only``, then the determinism rerun."""
    wanted = None if only is None else set(only)
    results = [_run(fn, seed) for fn in CRITERIA if wanted is None or fn_number(fn) in wanted]
    if determinism:
        results.append(criterion_10_determinism(results, seed))
    return results


def report(results: List[CriterionResult]) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
