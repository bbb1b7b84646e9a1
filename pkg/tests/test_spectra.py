import math
from fractions import Fraction

import numpy as np
import pytest

from radialfree import group_algebra as ga
from radialfree.errors import DomainError, NumericError
from radialfree.radial import RadialElement, p_values, regular_radius
from radialfree.spectra import (
    c_map,
    cdf,
    critical_u,
    cyclic_weights,
    haagerup_measure,
    integrate,
    kesten_measure,
    measure_table,
    moment,
    moments_table,
    radial_jacobi_matrix,
    spectral_histogram_distance,
    total_mass,
    tridiag_eigenvalues,
)
from radialfree.words import sphere_size


def h1_power(l, k):
    """h_1^k in the basis (h_n), exact."""
    h1 = RadialElement.h(l, 1)
    acc = RadialElement.h(l, 0)
    for _ in range(k):
        acc = acc * h1
    return acc


def exact_haagerup_power_moment(l, u, k):
    # phi_u(h_1^k) = sum_n coeff_n u^n, since phi_u(h_n) = u^n
    return sum(float(c) * u**n for n, c in enumerate(h1_power(l, k).coeffs))


def test_c_map_examples():
    assert c_map(2, 0.8) == pytest.approx(0.9125)
    assert c_map(2, critical_u(2)) == pytest.approx(regular_radius(2))
    assert c_map(2, 1.0) == 1.0
    with pytest.raises(DomainError):
        c_map(2, 0.0)


def test_atom_presence_and_mass():
    m = haagerup_measure(2, 0.8)
    (loc, mass), = m.atoms
    assert loc == pytest.approx(0.9125)
    assert mass == pytest.approx(0.7731092436974789, abs=1e-12)
    assert haagerup_measure(2, 0.5).atoms == ()
    assert haagerup_measure(2, -1.0).atoms == ((-1.0, 1.0),)


@pytest.mark.parametrize("l", [2, 3])
def test_kesten_moments_are_return_probabilities(l):
    mu = kesten_measure(l)
    for k in range(0, 13):
        exact = float(h1_power(l, k).coeffs[0])
        assert integrate(mu, lambda t: t**k) == pytest.approx(exact, abs=1e-12)


def test_return_probability_l2_values():
    # two and four steps on the 4-regular tree
    assert h1_power(2, 2).coeffs[0] == Fraction(1, 4)
    assert h1_power(2, 4).coeffs[0] == Fraction(7, 64)


@pytest.mark.parametrize("u", [-0.9, -0.4, 0.2, 0.57, 0.58, 0.7, 0.99])
def test_haagerup_power_moments(u):
    mu = haagerup_measure(2, u)
    for k in range(0, 9):
        assert integrate(mu, lambda t: t**k) == pytest.approx(exact_haagerup_power_moment(2, u, k), abs=1e-10)


@pytest.mark.parametrize("l", [2, 3])
def test_moments_at_critical_u(l):
    u = critical_u(l)
    for sign in (1, -1):
        assert total_mass(haagerup_measure(l, sign * u)) == pytest.approx(1.0, abs=1e-8)
        for n in range(11):
            assert moment(l, sign * u, n) == pytest.approx((sign * u) ** n, abs=1e-8)


def test_orthogonality_against_kesten():
    mu = kesten_measure(2)
    for m in range(6):
        for n in range(6):
            val = integrate(mu, lambda t: p_values(2, max(m, n), t)[m] * p_values(2, max(m, n), t)[n])
            expected = 1.0 / sphere_size(2, n) if m == n else 0.0
            assert val == pytest.approx(expected, abs=1e-12)


def test_mirror_symmetry():
    t = np.linspace(-0.8, 0.8, 17)
    np.testing.assert_allclose(haagerup_measure(2, -0.5).density(t), haagerup_measure(2, 0.5).density(-t), rtol=1e-13)


def test_kesten_is_the_small_u_limit():
    t = np.linspace(-0.85, 0.85, 41)
    k = kesten_measure(2).density(t)
    err = [np.max(np.abs(haagerup_measure(2, u).density(t) - k)) for u in (1e-2, 1e-3)]
    assert 8 < err[0] / err[1] < 12


def test_density_vanishes_off_spectrum():
    mu = haagerup_measure(2, 0.3)
    assert np.all(mu.density(np.array([-1.0, -0.87, 0.87, 1.0])) == 0)


def test_cdf_monotone_and_total():
    mu = haagerup_measure(2, 0.8)
    x = np.linspace(-1, 1, 41)
    F = cdf(mu, x)
    assert np.all(np.diff(F) >= -1e-15)
    assert F[-1] == pytest.approx(1.0, abs=1e-8)


def test_moments_table_row():
    (u, n, m, expected, err), = moments_table(2, 0.3, [4])
    assert expected == pytest.approx(0.0081)
    assert err <= 1e-8


def test_measure_table_puts_atoms_last():
    rows = measure_table(haagerup_measure(2, 0.8), points=5)
    assert [r[2] for r in rows] == [0, 0, 0, 0, 0, 1]


def test_nonfinite_integrand():
    with pytest.raises(NumericError):
        integrate(kesten_measure(2), lambda t: np.full_like(t, np.nan))


def test_out_of_range_u():
    with pytest.raises(DomainError):
        haagerup_measure(2, 1.5)


# -- truncations -----------------------------------------------------------------


@pytest.mark.parametrize("l", [1, 2, 3])
def test_jacobi_entries_from_convolution(l):
    N = 5
    J = radial_jacobi_matrix(l, N).dense()
    h1 = ga.elementary_radial(l, 1)
    for n in range(N):
        col = ga.radialize(h1 * ga.elementary_radial(l, n)).coeffs
        for k in range(N):
            c = float(col[k]) if k < len(col) else 0.0
            assert J[k, n] == pytest.approx(c * math.sqrt(sphere_size(l, n) / sphere_size(l, k)), abs=1e-15)


def test_truncation_moments_are_exact_gauss_rule():
    J = radial_jacobi_matrix(2, 10)
    ev = tridiag_eigenvalues(J)
    w = cyclic_weights(J, ev)
    assert w.sum() == pytest.approx(1.0, abs=1e-12)
    for k in range(19):
        assert np.sum(w * ev**k) == pytest.approx(float(h1_power(2, k).coeffs[0]), abs=1e-12)


def test_truncation_eigenvalues_match_numpy():
    J = radial_jacobi_matrix(3, 60)
    np.testing.assert_allclose(tridiag_eigenvalues(J), np.linalg.eigvalsh(J.dense()), atol=1e-11)


def test_top_eigenvalue_increases_toward_edge():
    s = regular_radius(2)
    tops = [tridiag_eigenvalues(radial_jacobi_matrix(2, N))[-1] for N in (50, 200, 800)]
    assert tops[0] < tops[1] < tops[2] <= s + 1e-12


def test_histogram_distance_weightings():
    uniform = spectral_histogram_distance(2, 400)
    cyclic = spectral_histogram_distance(2, 400, weighting="cyclic")
    assert cyclic < 0.01 < uniform
    with pytest.raises(DomainError):
        spectral_histogram_distance(2, 400, weighting="other")


def test_eigenvalue_counting_measure_tends_to_arcsine():
    # the uniform eigenvalue distribution of a Jacobi matrix with convergent
    # coefficients approaches the arcsine law on [-s, s], not the Kesten law
    s = regular_radius(2)
    x = np.linspace(-s, s, 41)
    arcsine = 0.5 + np.arcsin(np.clip(x / s, -1, 1)) / np.pi
    dist = []
    for N in (200, 2000):
        ev = tridiag_eigenvalues(radial_jacobi_matrix(2, N))
        dist.append(np.max(np.abs(np.searchsorted(ev, x, side="right") / N - arcsine)))
    assert dist[1] < 1e-3 and dist[1] < dist[0] / 5
