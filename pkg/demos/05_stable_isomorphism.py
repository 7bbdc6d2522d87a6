"""
An explicit isomorphism after adding one free variable
======================================================

"""

from lnd_algebra import make_surface
from lnd_algebra.cancellation import (
    build_stable_iso,
    check_equivariance,
    dumps,
    perturbed,
    verify_stable_iso,
)
from lnd_algebra.derivations import bezout_split

surface = make_surface(2, 3, 7, 0)

# the two threefolds over the same surface, with exponents (2,2) and (2,3)
iso = build_stable_iso(surface, (2, 2), (2, 3))

# Bezout certificates: A*x^3 + B*y^2 = 1 on the left, A'*x^2 + B'*y^2 = 1 on the right
for name, value in iso.certificates.items():
    print(f"{name:>2} = {value}")

# generator images in both directions
print("forward:")
for g, img in iso.forward.images.items():
    print(f"  {g} -> {img}")
print("backward:")
for g, img in iso.backward.images.items():
    print(f"  {g} -> {img}")

# everything is rechecked from scratch by exact normal forms
print(verify_stable_iso(iso))

# a single corrupted image is caught
print("corrupted:", verify_stable_iso(perturbed(iso, "u")).round_trip_ok)

# the lifted derivation on the left corresponds to d/dw' on the right
print(check_equivariance(iso))

# the serialized artifact, as written by the CLI
print(dumps(iso)[:300], "...")

# a Bezout pair for larger exponents
L = iso.left_ring
A_, B_ = bezout_split(L, 5, 4)
print("A*x^5 + B*y^4 =", A_ * L.gen("x") ** 5 + B_ * L.gen("y") ** 4)
