# coding: utf-8

# # Words, spheres and the radial algebra
#
# The free group on l generators is stored as tuples of signed integers:
# 1 is s_1, -1 is its inverse. Everything below is exact arithmetic.

# In[1]:

from fractions import Fraction

from radialfree import group_algebra as ga
from radialfree.radial import RadialElement, linearize, p_poly
from radialfree.words import format_word, multiply, sphere, sphere_size


# Reduced words of length 2 when l = 2. There are 2l(2l-1) = 12 of them.

# In[2]:

words = sphere(2, 2)
print(len(words), sphere_size(2, 2))
print([format_word(w) for w in words])


# Multiplication cancels at the junction only, since both factors are reduced.

# In[3]:

print(multiply((1, 2), (-2, 1)))
print(multiply((1, 2), (-2, -1)))


# h_n is the normalized indicator of the sphere of radius n. Convolving h_1
# with h_3 lands on a combination of h_2 and h_4, with weights r = 1/4 and 3/4.

# In[4]:

h1 = ga.elementary_radial(2, 1)
h3 = ga.elementary_radial(2, 3)
prod = h1 * h3
print(len(prod), "words in the support")
print(ga.radialize(prod))


# The same product straight in the radial algebra, without enumerating words.

# In[5]:

print(linearize(2, 1, 3))
print(linearize(2, 3, 3))


# p_n is the polynomial with h_n = p_n(h_1).

# In[6]:

for n in range(5):
    print(n, p_poly(2, n))


# The trace picks out the coefficient at the identity. For sphere averages
# the trace of h_n * h_n is 1/|G_n|.

# In[7]:

for n in range(5):
    hn = ga.elementary_radial(2, n)
    print(n, ga.trace_product(hn, hn), Fraction(1, sphere_size(2, n)))
