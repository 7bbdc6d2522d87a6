"""
Torus and shear automorphisms
=============================

"""

from fractions import Fraction

from lnd_algebra import make_surface, make_threefold, ThreefoldRing
from lnd_algebra.automorphisms import (
    apply_aut,
    compose,
    conjugate_E,
    generator_map,
    invert,
    restrict,
    shear,
    torus,
)

A = ThreefoldRing(make_threefold(make_surface(2, 3, 7, 0), 2, 2))

# a shear moves u and v along the fibres by f*y^2 and f*x^2
s = shear(A, "x*z + 1")
print("shear:", {g: str(img) for g, img in generator_map(s).images.items() if g in "uv"})

# a torus rescales every generator by a power of mu
t = torus(A, 2)
print("torus(2):", {g: str(img) for g, img in generator_map(t).images.items()})

# every element is written torus(mu) after shear(f); composing twists f
phi = compose(t, s)
psi = compose(s, t)
print("torus*shear =", phi)
print("shear*torus =", psi)
print("non-commuting:", phi != psi)
print("phi * phi^-1 is the identity:", compose(phi, invert(phi)).is_identity())

# conjugating E by an automorphism returns a scalar multiple of E
for mu in (1, 2, Fraction(1, 3)):
    print(f"mu = {mu}: phi^-1 E phi = {conjugate_E(torus(A, mu))} E")
print("shear:", conjugate_E(s))

# on the surface only the torus part survives
print({g: str(img) for g, img in restrict(phi).images.items()})
print(apply_aut(phi, A.element("x^2*u - y^2*v")))
