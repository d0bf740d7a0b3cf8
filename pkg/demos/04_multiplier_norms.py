"""
Multiplier norms from finite sections
=====================================

Operator norms of M_u between Gauss-Sobolev spaces are approximated by
Galerkin sections; the two sides of the norm equivalence are computed and
compared, together with the sup-norm bound and a mollified symbol.
"""

# In[1]:

import math

from gaussfock.multipliers import (galerkin_multiplier, lemma33_bound, mollify, probe_grid,
                                   sobolev_operator_norm, theorem36_quantities)
from gaussfock.symbols import SmoothSymbol

grid = probe_grid(1, 2 * math.pi, 801)

# In[2]:

# Finite-section norms are nondecreasing in the truncation degree.

u = SmoothSymbol.from_expr("2 + sin(x)", 1, 1)
T = galerkin_multiplier(u, 16)
print([round(sobolev_operator_norm(T.section(N), 1, 1), 6) for N in range(2, 17, 2)])

# In[3]:

# Both sides of the equivalence, their ratio, and the change from N - 2 to N.

for text in ["exp(I*x/2)", "exp(2*I*x)", "sin(x)", "sin(2*x)"]:
    rec = theorem36_quantities(SmoothSymbol.from_expr(text, 1, 1), 1, 16)
    print(f"{text:>11}: lhs {rec.lhs:.4f}  rhs {rec.rhs:.4f}  ratio {rec.ratio:.3f}  "
          f"increment {rec.increment:.1e}")

# In[4]:

# Mollifying with a bump kernel never increases sup |u| + sup |u'|.

s = SmoothSymbol.from_expr("sin(3*x)", 1, 1)
print("u     :", lemma33_bound(s, 1, grid))
for r in (1.0, 0.5, 0.25):
    print(f"u_r={r}:", lemma33_bound(mollify(s, r), 1, grid))
