"""Hermite/Fock coefficient calculus, Gauss-Bargmann transforms and Fock-space operators.

The modules build on each other bottom-up:

* :mod:`multiindex` -- graded-lex multi-indices and factorial helpers;
* :mod:`exact` -- exact surd arithmetic for identity checks;
* :mod:`basis` -- Hermite and Fock orthonormal families, coefficient vectors;
* :mod:`ladder` -- creation/annihilation, Ornstein-Uhlenbeck, Bessel potentials;
* :mod:`norms` -- Gauss-Sobolev, Fock-Sobolev, weighted and Bessel norms;
* :mod:`quadrature` -- Gaussian rules on R^n and C^n;
* :mod:`transforms` -- G, G^{-1}, B, bridging operators, Weyl translations;
* :mod:`symbols`, :mod:`multipliers` -- smooth symbols and Galerkin multipliers;
* :mod:`sphi` -- the integral operator S_phi and its factorisation;
* :mod:`experiments`, :mod:`cli` -- the reproducible experiment runner.
"""
__version__ = "0.1.0"
