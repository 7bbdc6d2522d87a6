"""
Normal forms in the threefold rings
===================================

"""

# a surface x^a + y^b + z^c + lam = 0 and the threefold x^m u - y^n v = 1 over it
from lnd_algebra import make_surface, make_threefold, ThreefoldRing

surface = make_surface(2, 3, 7, 0)
print(surface, "1/a + 1/b + 1/c =", surface.reciprocal_sum)
A = ThreefoldRing(make_threefold(surface, 2, 2))
print(A)

# elements are stored in normal form: z^7 and x^2 u never survive
for text in ["z^7", "x^2*u", "x^4*u", "(x^2*u - y^2*v)^3", "z^9*u*x^3"]:
    print(f"{text:>20}  ->  {A.element(text)}")

# arithmetic stays reduced
u, v, x, y = A.gen("u"), A.gen("v"), A.gen("x"), A.gen("y")
print("x^2 * u =", x ** 2 * u)
print("u * v * x^2 =", u * v * x ** 2)

# every element is a polynomial in u with coefficients in the other variables
from lnd_algebra.rings import u_decomposition

h = A.element("u^2*x + u*v*x^3 + z")
for i, coeff in enumerate(u_decomposition(h)):
    print(f"  u^{i}: {coeff}")

# the rewriting is confluent: random single-step orders reach the same answer
import random
from lnd_algebra.rings import reduce_stepwise

p = (x ** 3 * u * u + A.gen("z") ** 3).value * A.gen("z").value ** 5
print(reduce_stepwise(A, p, random.Random(1)) == reduce_stepwise(A, p, random.Random(2)) == A.nf(p))
