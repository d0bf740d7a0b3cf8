"""
Hermite and Fock bases, and the isometry G h_b = e_b
=====================================================

Both bases are indexed by multi-indices, so one coefficient vector describes a
polynomial in L^2(gamma) and an entire function in the Fock space at once.
"""

# In[1]:

import numpy as np

from gaussfock import multiindex as mi
from gaussfock.basis import Basis, CoefficientVector, hermite_table
from gaussfock.exact import exact_sqrt
from gaussfock.ladder import annihilate, create, ou_apply
from gaussfock.norms import fock_seminorms_sq, gauss_seminorms_sq
from gaussfock.quadrature import gamma_rule

# Multi-indices come in graded lexicographic order.

print(mi.enumerate_up_to(2, 2))

# In[2]:

# The normalised Hermite polynomials h_b are orthonormal in L^2(gamma).
# A 12-point Gauss rule per axis integrates the Gram matrix to round-off.

rule = gamma_rule(12, 2)
H = hermite_table(mi.enumerate_up_to(2, 4), rule.nodes)
gram = (H * rule.weights) @ H.T
print("max |<h_a, h_b> - delta_ab| =", np.max(np.abs(gram - np.eye(len(gram)))))

# In[3]:

# Ladder operators act by index shifts with square-root factors.
# In exact mode the square roots are symbolic, so identities hold with ==.

h2 = CoefficientVector.unit((2,), exact=True)
print("d/dx h_2  =", annihilate(0, h2))
print("create h_2 =", create(0, h2))
print("L h_2 = -2 h_2 :", ou_apply(h2) == h2 * -2)
print("sqrt(2) sqrt(3) == sqrt(6) :", exact_sqrt(2) * exact_sqrt(3) == exact_sqrt(6))

# In[4]:

# The Sobolev seminorms ||d^alpha f|| on the Gaussian side and on the Fock
# side are computed from the same coefficients and agree exactly.

f = CoefficientVector(2, Basis.HERMITE, {(0, 0): 1, (2, 1): exact_sqrt(3), (1, 3): -2},
                      exact=True)
left = gauss_seminorms_sq(f, 2)
right = fock_seminorms_sq(f.retag(Basis.FOCK), 2)
for alpha in left:
    print(alpha, left[alpha], "==", right[alpha], left[alpha] == right[alpha])
