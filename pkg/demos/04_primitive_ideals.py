# coding: utf-8

# # The primitive ideal space
#
# Parameters in [-1, 1] with the whole regular spectrum collapsed to a single
# point Bot. The ends +1 and -1 are the characters. The topology is far from
# Hausdorff.

# In[1]:

from radialfree import primtop as pt
from radialfree.radial import regular_radius

l = 2
S = lambda text: pt.parse_prim_set(l, text)
show = lambda A: print(pt.format_prim_set(A) or "(empty)")


# Closures.

# In[2]:

show(pt.closure(l, S("point:0.9")))
show(pt.closure(l, S("interval:(0.9,1)")))
show(pt.closure(l, S("interval:(-0.95,-0.9]")))
show(pt.closure(l, S("bot")))


# Bot lies in the closure of every complementary point, never the other way.

# In[3]:

print(pt.specializes(l, pt.Sph(0.9), pt.BOT), pt.specializes(l, pt.BOT, pt.Sph(0.9)))


# Where does a parameter go under the quotient?

# In[4]:

for t in (-1.0, -0.9, 0.0, 0.866, 0.9, 1.0):
    print(t, pt.quotient(l, t))


# Continuous functions are constant. A function that is 1 everywhere except
# near +1 is caught at Bot.

# In[5]:

neg, pos = pt.Interval(-1.0, -regular_radius(l)), pt.Interval(regular_radius(l), 1.0)
bump = pt.FunctionDescriptor(1.0, 2.0, 1.0, (pt.Piece(neg, 1.0), pt.Piece(pos, lambda t: 1.0 + max(0.0, t - 0.95) * 20)))
print(pt.is_continuous_function(l, bump))
print(pt.is_continuous_function(l, pt.constant_descriptor(l, 1.0)))
