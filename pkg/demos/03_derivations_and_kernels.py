"""
The derivation E, its kernel and its exponential
================================================

"""

from lnd_algebra import make_surface, make_threefold, ThreefoldRing
from lnd_algebra.derivations import (
    derivation_E,
    exp_map,
    is_locally_nilpotent,
    kernel_basis_bounded,
    make_derivation,
    DerivationError,
)

A = ThreefoldRing(make_threefold(make_surface(2, 3, 7, 0), 2, 2))

# E sends u to y^2, v to x^2 and kills x, y, z
E = derivation_E(A)
print(E)
print("E(u*v) =", E(A.element("u*v")))

# not every assignment of images is a derivation of the quotient
try:
    make_derivation(A, {"x": 0, "y": 0, "z": 0, "u": 1, "v": 0})
except DerivationError as exc:
    print("rejected:", exc)

# E is locally nilpotent: each generator dies after at most two steps
print(is_locally_nilpotent(E))

# u*E is a derivation too, but iterating it never reaches zero
print(is_locally_nilpotent(E.scaled(A.element("u")), 25))

# the kernel, degree by degree, is spanned by monomials in x, y, z
for bound in range(1, 5):
    basis = kernel_basis_bounded(E, bound)
    print(f"bound {bound}: dimension {len(basis)}; top elements {[str(b) for b in basis[-3:]]}")

# exp(tE) is a ring automorphism and a one-parameter group
phi = exp_map(E, 3)
print({g: str(img) for g, img in phi.images.items()})
print("exp(3E) exp(-3E) = id:", phi.compose(exp_map(E, -3)) == A.identity_map())
print("exp(2E) exp(5E) = exp(7E):", exp_map(E, 2).compose(exp_map(E, 5)) == exp_map(E, 7))
