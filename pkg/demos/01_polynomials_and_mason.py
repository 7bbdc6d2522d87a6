"""
Polynomials, root counts and Mason's inequality
================================================

"""

# exact sparse polynomials; coefficients are ints or Fractions, never floats
from lnd_algebra import Poly, distinct_root_count, gcd_univariate

T = Poly.var("T")
f = (T - 1) ** 3 * (T + 2)
print("f =", f)
print("gcd(f, f') =", gcd_univariate(f, f.partial_derivative("T")))
print("distinct roots of f:", distinct_root_count(f))

# Mason: for coprime f, g, h with f + g + h = 0, not all constant,
# max degree < number of distinct roots of f*g*h
from lnd_algebra.mason import mason_check

rep = mason_check(T ** 2, 2 * T + 1)
print(rep)

# a seeded batch of random coprime pairs
import random
from lnd_algebra.mason import random_coprime_pair

rng = random.Random(1)
reports = [mason_check(*random_coprime_pair(rng)) for _ in range(200)]
applicable = [r for r in reports if r.applicable]
print(f"{len(applicable)} applicable pairs, all satisfy the bound: {all(r.holds for r in applicable)}")

# the worst slack seen in the batch
print("smallest slack:", min(r.root_count - r.max_degree for r in applicable))

# Fermat-type equations f^a + g^b + h^c + lam = 0 over a small box of coefficients
from lnd_algebra.mason import SearchConfig, fermat_search

cfg = SearchConfig(2, 3, 7, 0, degree_bound=2, coefficient_set=range(-2, 3))
print("regime:", cfg.regime())
print("solutions for (2,3,7):", fermat_search(cfg))

# with a linear exponent solutions are easy to find
cfg = SearchConfig(1, 2, 3, 0, degree_bound=3, coefficient_set=range(-2, 3))
sols = fermat_search(cfg)
print(f"(1,2,3): {len(sols)} solutions, e.g. f = {sols[0].f}, g = {sols[0].g}, h = {sols[0].h}")
