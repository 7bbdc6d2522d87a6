import random
from fractions import Fraction

import pytest

from lnd_algebra.automorphisms import (
    AutElement,
    AutomorphismError,
    apply_aut,
    compose,
    conjugate_E,
    conjugated_E,
    generator_map,
    identity,
    invert,
    restrict,
    shear,
    torus,
    twist,
)
from lnd_algebra.derivations import derivation_E, is_locally_nilpotent
from lnd_algebra.poly import Poly
from lnd_algebra.rings import RingMap, RingMismatchError, ThreefoldRing, make_surface, make_threefold

from helpers import random_poly

S237 = make_surface(2, 3, 7, 0)
A = ThreefoldRing(make_threefold(S237, 2, 2))
XYZ = ("x", "y", "z")


def el(text):
    return A.element(text)


def random_aut(rng, ring=A):
    mu = Fraction(rng.choice([1, -1]) * rng.randint(1, 4), rng.randint(1, 3))
    f = random_poly(rng, 3, XYZ, max_terms=3)
    return compose(torus(ring, mu), shear(ring, f.with_variables(ring.variables)))


def substitution_oracle(phi: AutElement) -> RingMap:
    """Generator images built from the two formulas directly, without normalization."""
    s, p = A.surface, A.params
    mu = Fraction(phi.mu)
    t = RingMap(A, A, {
        "x": el("x") * mu ** (s.b * s.c),
        "y": el("y") * mu ** (s.a * s.c),
        "z": el("z") * mu ** (s.a * s.b),
        "u": el("u") * mu ** (-p.m * s.b * s.c),
        "v": el("v") * mu ** (-p.n * s.a * s.c),
    })
    sh = RingMap(A, A, {**A.gens(), "u": el("u") + phi.f * el("y^2"), "v": el("v") + phi.f * el("x^2")})
    return t.compose(sh)


# -- construction ------------------------------------------------------------------------


def test_trivial_elements_are_identity():
    assert torus(A, 1).is_identity()
    assert shear(A, 0).is_identity()
    assert generator_map(identity(A)) == A.identity_map()


def test_torus_images():
    images = generator_map(torus(A, 2)).images
    assert images["x"] == el("x") * 2 ** 21
    assert images["y"] == el("y") * 2 ** 14
    assert images["z"] == el("z") * 2 ** 6
    assert images["u"] == el("u") * Fraction(1, 2 ** 42)
    assert images["v"] == el("v") * Fraction(1, 2 ** 28)


def test_construction_errors():
    with pytest.raises(AutomorphismError):
        torus(A, 0)
    with pytest.raises(AutomorphismError):
        shear(A, "u*x")


def test_torus_with_nonzero_lambda_needs_root_of_unity():
    ring = ThreefoldRing(make_threefold(make_surface(2, 3, 7, 1), 2, 2))
    with pytest.raises(AutomorphismError):
        torus(ring, 2)
    assert generator_map(torus(ring, -1)).preserves_relations()


# -- action ---------------------------------------------------------------------------------


def test_apply_examples():
    assert apply_aut(shear(A, "x*z + 1"), el("u")) == el("u + (x*z + 1)*y^2")
    phi = compose(torus(A, 3), shear(A, "y"))
    assert apply_aut(phi, A.one) == A.one
    assert apply_aut(torus(A, "2/5"), el("x^2*u - y^2*v")) == A.one


def test_constructed_maps_preserve_relations():
    rng = random.Random(8)
    for _ in range(10):
        assert generator_map(random_aut(rng)).preserves_relations()


def test_apply_is_homomorphism():
    rng = random.Random(9)
    for _ in range(20):
        phi = random_aut(rng)
        h = A.element(random_poly(rng, 4, A.variables))
        k = A.element(random_poly(rng, 4, A.variables))
        assert apply_aut(phi, h * k) == apply_aut(phi, h) * apply_aut(phi, k)
        assert apply_aut(phi, h + k) == apply_aut(phi, h) + apply_aut(phi, k)


def test_apply_ring_mismatch():
    other = ThreefoldRing(make_threefold(S237, 3, 2))
    with pytest.raises(RingMismatchError):
        apply_aut(torus(A, 2), other.gen("u"))


# -- group laws ---------------------------------------------------------------------------------


def test_shear_addition():
    assert compose(shear(A, "x"), shear(A, "y*z - 2")) == shear(A, "x + y*z - 2")


def test_torus_multiplication():
    assert compose(torus(A, 2), torus(A, "1/3")) == torus(A, "2/3")


def test_inverse():
    rng = random.Random(10)
    for _ in range(20):
        phi = random_aut(rng)
        assert compose(phi, invert(phi)).is_identity()
        assert compose(invert(phi), phi).is_identity()


def test_compose_and_invert_match_substitution():
    rng = random.Random(11)
    for _ in range(20):
        phi, psi = random_aut(rng), random_aut(rng)
        assert generator_map(phi) == substitution_oracle(phi)
        assert generator_map(compose(phi, psi)) == substitution_oracle(phi).compose(substitution_oracle(psi))
        assert generator_map(invert(phi)).compose(substitution_oracle(phi)) == A.identity_map()


def test_twist_matches_conjugation_by_substitution():
    rng = random.Random(12)
    for _ in range(20):
        mu = Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice([1, -1])
        f = A.element(random_poly(rng, 3, XYZ, max_terms=3).with_variables(A.variables))
        t = substitution_oracle(torus(A, mu))
        t_inv = substitution_oracle(torus(A, 1 / mu))
        conj = t.compose(substitution_oracle(shear(A, f))).compose(t_inv)
        g = twist(A, mu, f)
        assert conj == substitution_oracle(shear(A, g))
        expected = f.value.substitute({
            "x": Poly.var("x", A.variables) * mu ** 21,
            "y": Poly.var("y", A.variables) * mu ** 14,
            "z": Poly.var("z", A.variables) * mu ** 6,
        })
        assert g == A.element(expected) * mu ** 70


def test_non_commutativity_witness():
    t, s = torus(A, 2), shear(A, 1)
    assert compose(t, s) != compose(s, t)
    assert generator_map(compose(t, s)) != generator_map(compose(s, t))


# -- conjugating E ------------------------------------------------------------------------------


def test_conjugate_E_examples():
    assert conjugate_E(identity(A)) == 1
    assert conjugate_E(shear(A, "x^3 - z")) == 1
    assert conjugate_E(torus(A, 2)) == Fraction(1, 2 ** 70)


def test_conjugate_E_torus_against_u_image():
    for mu in (Fraction(3), Fraction(-1, 2), Fraction(5, 7)):
        D = conjugated_E(torus(A, mu))
        lam = conjugate_E(torus(A, mu))
        assert D(el("u")) == el("y^2") * lam
        assert lam == mu ** -70


def test_conjugated_E_is_lnd_with_same_indices():
    rng = random.Random(13)
    base = is_locally_nilpotent(derivation_E(A)).indices
    for _ in range(10):
        D = conjugated_E(random_aut(rng))
        assert is_locally_nilpotent(D).indices == base


# -- restriction ---------------------------------------------------------------------------------


def test_restrict_shear_is_identity():
    R_id = restrict(identity(A))
    assert restrict(shear(A, "x*y + z^2")) == R_id
    assert R_id.images["x"] == R_id.source.element("x")


def test_restrict_torus():
    r = restrict(torus(A, 3))
    R = r.source
    assert r.images == {"x": R.element("x") * 3 ** 21, "y": R.element("y") * 3 ** 14, "z": R.element("z") * 3 ** 6}
    assert r.preserves_relations()


def test_restrict_is_homomorphism():
    rng = random.Random(14)
    for _ in range(15):
        phi, psi = random_aut(rng), random_aut(rng)
        assert restrict(compose(phi, psi)) == restrict(phi).compose(restrict(psi))
