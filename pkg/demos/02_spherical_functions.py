# coding: utf-8

# # Spherical functions and positive definiteness
#
# phi_c(g) = p_{|g|}(c). Which c give bounded functions, and which give
# positive definite ones?

# In[1]:

import numpy as np

from radialfree.radial import (
    classify_parameter,
    haagerup_function,
    is_positive_definite_on_ball,
    l1_growth_verdict,
    p_values,
    regular_radius,
    spherical_function,
)

l = 2
s = regular_radius(l)
print("edge of the regular spectrum:", s)


# A few parameters across the line and one off it.

# In[2]:

for c in (0.0, 0.8, 0.9, 1.0, 1.05, 0.5 + 0.2j):
    pc = classify_parameter(l, c)
    print(f"{c!s:>12}  {pc.series.value:<14} l1={pc.l1_bounded!s:<5} growth={l1_growth_verdict(l, c)}")


# Growth of |p_n(c)| just inside and just outside [-1, 1].

# In[3]:

for c in (0.99, 1.01):
    vals = np.abs(p_values(l, 200, c))
    print(c, vals[[10, 50, 100, 200]])


# Gram test on the ball of radius 3 (161 words). The smallest eigenvalue
# stays at rounding level for |c| <= 1 and goes clearly negative outside.

# In[4]:

for c in (-1.0, 0.0, 0.9, 1.0, 1.05, -1.1):
    ok, lam = is_positive_definite_on_ball(l, spherical_function(l, c), 3)
    print(f"c={c:+.2f}  min eig={lam:+.3e}  pd={ok}")


# Haagerup functions u^{|g|} are positive definite for |u| <= 1.

# In[5]:

for u in (-1.0, -0.5, 0.7, 1.0):
    ok, lam = is_positive_definite_on_ball(l, haagerup_function(u), 3)
    print(f"u={u:+.2f}  min eig={lam:+.3e}  pd={ok}")
