"""Exact computer algebra for the threefolds A_{n,m} = R[u,v]/(x^m u - y^n v - 1)
over the surface rings R = Q[x,y,z]/(x^a + y^b + z^c + lam)."""

from .poly import Poly, distinct_root_count, exact_divide, gcd_univariate
from .rings import (
    AElement,
    RingMap,
    SurfaceParams,
    SurfaceRing,
    ThreefoldParams,
    ThreefoldRing,
    make_surface,
    make_threefold,
)

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "gcd_univariate",
    "distinct_root_count",
    "exact_divide",
    "AElement",
    "RingMap",
    "SurfaceParams",
    "SurfaceRing",
    "ThreefoldParams",
    "ThreefoldRing",
    "make_surface",
    "make_threefold",
]
