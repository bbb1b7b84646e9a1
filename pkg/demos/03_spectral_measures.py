# coding: utf-8

# # Spectral measures of Haagerup functions
#
# u^{|g|} has a measure on [-1, 1] whose moments against p_n are u^n. Below
# the critical |u| = sqrt(r/(1-r)) it is absolutely continuous on the regular
# spectrum. Above, one atom appears at r/u + (1-r)u.

# In[1]:

import numpy as np

from radialfree.radial import regular_radius
from radialfree.spectra import (
    critical_u,
    haagerup_measure,
    kesten_measure,
    moments_table,
    radial_jacobi_matrix,
    spectral_histogram_distance,
    total_mass,
    tridiag_eigenvalues,
)

l = 2
print("critical u:", critical_u(l))


# Atoms and total mass.

# In[2]:

for u in (0.3, critical_u(l), 0.8, -0.95):
    mu = haagerup_measure(l, u)
    print(f"u={u:+.4f} atoms={mu.atoms} mass={total_mass(mu):.15f}")


# Moments against p_n, with the absolute error.

# In[3]:

for row in moments_table(l, 0.8, range(0, 11, 2)):
    print("u=%.1f n=%2d moment=%.15f expected=%.15f err=%.1e" % row)


# The Kesten density at a few points. Its moments are return probabilities
# of the simple random walk on the 4-regular tree.

# In[4]:

t = np.linspace(-0.8, 0.8, 5)
print(kesten_measure(l).density(t))


# Truncating h_1 to the first N spheres gives a tridiagonal matrix. Its
# eigenvalues sit inside the regular spectrum and reach toward its edge.

# In[5]:

s = regular_radius(l)
for N in (50, 500, 2000):
    ev = tridiag_eigenvalues(radial_jacobi_matrix(l, N))
    print(N, ev[0], ev[-1], s - ev[-1])


# Weighting each eigenvalue by the first basis vector recovers the Kesten
# law. Equal weights do not: they follow the arcsine law instead.

# In[6]:

for weighting in ("cyclic", "uniform"):
    print(weighting, spectral_histogram_distance(l, 2000, weighting=weighting))
