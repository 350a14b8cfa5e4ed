"""Exact formal-group, cubical-structure and q-expansion computations for Weierstrass curves.

Modules:

- ``coeffring``: scalars (Q, Z_(2), Q(zeta_3)) and sparse polynomials
- ``series``: truncated multivariate power series with polynomial coefficients
- ``weierstrass``: z(x), the formal group law and its inverse
- ``cubical``: the cubical structure r_U = t/u and its mod-2 check
- ``involution``: the Gamma_1(3) involution, Q(x) and Pontryagin series
- ``qchar``: theta function, Eisenstein series and the level-3 genus
- ``ssq``: the C_2 homotopy-fixed-point spectral sequence in a window
- ``verify``: the pinned formula and property suite
"""
from __future__ import annotations

from .coeffring import Eisenstein, Poly, TwoLocal, ZETA, parse_poly, reduce_mod_ideal
from .cubical import appendix_b_pipeline, cubical_structure
from .errors import CubicalFormsError
from .series import TSeries, graded_divide, parse_series
from .weierstrass import WeierstrassCurve, fgl, formal_inverse, n_series, z_series

__version__ = "0.1.0"

__all__ = [
    "Eisenstein", "Poly", "TwoLocal", "ZETA", "parse_poly", "reduce_mod_ideal",
    "TSeries", "graded_divide", "parse_series", "WeierstrassCurve", "fgl", "formal_inverse",
    "n_series", "z_series", "cubical_structure", "appendix_b_pipeline", "CubicalFormsError",
    "__version__",
]
