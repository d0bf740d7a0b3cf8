"""
The operator S_phi by two routes
================================

S_phi f(z) = int f(w) e^{z.conj(w)} phi(z - conj(w)) d lambda(w), with phi built
from a symbol u. The direct route integrates this kernel; the factored route
conjugates the Galerkin matrix of u by the rotations C_{+-i}.
"""

# In[1]:

import numpy as np

from gaussfock.multipliers import galerkin_multiplier
from gaussfock.sphi import (calibrate_normalization, commutation_check, factored_matrix,
                            invertibility_check, sphi_direct_matrix)
from gaussfock.symbols import SmoothSymbol

# In[2]:

# With u = 1 the operator must be the identity; this fixes the constant kappa.

cal = calibrate_normalization(1)
print(f"kappa = {cal['kappa']:.10f} (expected {cal['expected']:.10f}), spread {cal['spread']:.1e}")

# In[3]:

# The two routes, entrywise on degrees <= 6.

for text in ["1", "exp(-I*x)", "sin(x)", "exp(-x^2)"]:
    u = SmoothSymbol.from_expr(text, 1, 0)
    D = sphi_direct_matrix(u, 6, cal["kappa"])
    F = factored_matrix(galerkin_multiplier(u, 6))
    print(f"{text:>10}: max |direct - factored| = {np.max(np.abs(D - F)):.1e}")

# In[4]:

# Multiplication operators commute, their finite sections only approximately.
# The residual on a fixed inner block shrinks as the truncation degree grows.

u, v = SmoothSymbol.from_expr("sin(x)", 1, 0), SmoothSymbol.from_expr("exp(-I*x)", 1, 0)
print("commutator:", [f"{commutation_check(u, v, N):.1e}" for N in (4, 6, 8, 10)])

w = SmoothSymbol.from_expr("2 + sin(x)", 1, 0)
print("T_u T_1/u - I:", [f"{invertibility_check(w, N):.1e}" for N in (4, 6, 8, 10)])
