"""
Integral transforms and Weyl translations
=========================================

The coefficient form of G is a relabelling; here the integral forms are
checked against it, the Bargmann transform is factored through G, and the
Weyl translation W_b is expanded in the Fock basis.
"""

# In[1]:

import numpy as np

from gaussfock.basis import Basis, CoefficientVector, fock_table, hermite_table, \
    hermite_tilde_table
from gaussfock.norms import fock_sobolev_norm
from gaussfock.quadrature import gamma_rule, lebesgue_rule
from gaussfock.transforms import (gauss_bargmann_integral, inverse_gauss_bargmann_integral,
                                  verify_prop22, verify_translation_identity, weyl_coeff)

rng = np.random.default_rng(0)
Z = rng.uniform(-1.4, 1.4, (20, 1)) + 1j * rng.uniform(-1.4, 1.4, (20, 1))
gam = gamma_rule(24)

# In[2]:

# G h_b(z) by quadrature against the Gaussian measure, compared with e_b(z).

for b in range(6):
    Gh = gauss_bargmann_integral(lambda x: hermite_table([(b,)], x)[0], Z, gam)
    print(f"b={b}: max |G h_b - e_b| = {np.max(np.abs(Gh - fock_table([(b,)], Z)[0])):.2e}")

# In[3]:

# Round trip. Both directions use the contour-shifted forms
# G f(z) = E[f(z + t)] and G^{-1} g(x) = E[g(x + i t)], t ~ gamma.

X = np.linspace(-2, 2, 5)[:, None]
h3 = lambda x: hermite_table([(3,)], x)[0]
back = inverse_gauss_bargmann_integral(
    lambda z: gauss_bargmann_integral(h3, z, gam, shifted=True), X, gam)
print("round trip error:", np.max(np.abs(back - h3(X))))

# In[4]:

# The Bargmann transform equals G composed with a Gaussian weight and a dilation.

dx = lebesgue_rule(24, 1, 0.5)
for b in range(5):
    dev = verify_prop22(lambda x: hermite_tilde_table([(b,)], x)[0], Z, gam, dx)
    print(f"b={b}: |B h~_b - G M C_1/2 h~_b| <= {dev:.1e}")

# In[5]:

# W_b e_0 in coefficients: unit F^2 norm, F^{2,1} norm 1 + |b| (n = 1),
# with the truncated tail reported alongside.

e0 = CoefficientVector.unit((0,), Basis.FOCK)
for b in (1.0, 2.0, 4.0, 8.0):
    w = weyl_coeff([b], e0, int(b * b + 12 * b + 20))
    print(f"|b|={b}: F^2,1 norm {fock_sobolev_norm(w.vector, 1):.6f}  tail {w.residual:.1e}")

# In[6]:

# Conjugating W_{t/2} by G gives a weighted translation on the Gaussian side.

f = lambda x: hermite_table([(1, 0)], x)[0] + 0.5 * hermite_table([(0, 2)], x)[0]
xs = rng.uniform(-2, 2, (10, 2))
print("identity deviation:", verify_translation_identity([1.0, -1.0], f, xs,
                                                         gamma_rule(16, 2), gamma_rule(16, 2)))
