import random

from lnd_algebra.poly import Poly


def random_poly(rng: random.Random, max_degree, variables, max_terms=6, coeffs=range(-3, 4)):
    """Sparse polynomial with up to ``max_terms`` random monomials of degree <= ``max_degree``."""
    nonzero = [c for c in coeffs if c]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * len(variables)
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(len(variables))] += 1
        terms[tuple(exps)] = rng.choice(nonzero)
    return Poly(variables, terms)
