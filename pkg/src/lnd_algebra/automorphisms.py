"""Automorphisms of A_{n,m} in normalized (torus, shear) coordinates.

    torus(mu): (x, y, z, u, v) -> (mu^bc x, mu^ac y, mu^ab z, mu^-mbc u, mu^-nac v)
    shear(f):  (x, y, z, u, v) -> (x, y, z, u + f*y^n, v + f*x^m),  f in Q[x,y,z]

An :class:`AutElement` ``(mu, f)`` denotes ``torus(mu) ∘ shear(f)`` with
``(phi ∘ psi)(r) = phi(psi(r))``.  Conjugating a shear by a torus gives
another shear:

    torus(mu) ∘ shear(f) ∘ torus(mu)^-1 = shear(mu^(mbc+nac) * f(mu^bc x, mu^ac y, mu^ab z))

which is what makes composition and inversion closed-form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

from .derivations import Derivation, conjugate_derivation, derivation_E
from .poly import Poly, Rational, as_rational
from .rings import AElement, RingMap, RingMismatchError, SurfaceRing, ThreefoldRing

__all__ = [
    "AutomorphismError",
    "ProportionalityError",
    "AutElement",
    "torus",
    "shear",
    "identity",
    "apply_aut",
    "compose",
    "invert",
    "twist",
    "conjugate_E",
    "conjugated_E",
    "restrict",
    "generator_map",
]


class AutomorphismError(ValueError):
    pass


class ProportionalityError(ArithmeticError):
    """phi^-1 E phi failed to be a scalar multiple of E."""


@dataclass(frozen=True)
class AutElement:
    ring: ThreefoldRing
    mu: Rational
    f: AElement

    @property
    def params(self):
        return self.ring.params

    def weight(self) -> int:
        """mbc + nac, the exponent by which tori rescale shears."""
        s, p = self.ring.surface, self.ring.params
        return p.m * s.b * s.c + p.n * s.a * s.c

    def is_identity(self) -> bool:
        return self.mu == 1 and self.f.is_zero()

    def __str__(self) -> str:
        return f"{self.mu}:{self.f}"


def _xyz_element(ring: ThreefoldRing, f) -> AElement:
    f = ring.element(f)
    bad = [v for v in f.value.used_variables() if v not in ("x", "y", "z")]
    if bad:
        raise AutomorphismError(f"shear part must lie in Q[x,y,z]; {f} involves {bad}")
    return f


def _torus_weights(ring: ThreefoldRing) -> Dict[str, int]:
    s, p = ring.surface, ring.params
    w = {"x": s.b * s.c, "y": s.a * s.c, "z": s.a * s.b,
         ring.u_name: -p.m * s.b * s.c, ring.v_name: -p.n * s.a * s.c}
    for extra in ring.adjoined:
        w[extra] = 0
    return w


def _torus_substitute(f: AElement, mu: Rational) -> AElement:
    """f(mu^bc x, mu^ac y, mu^ab z, mu^-mbc u, mu^-nac v) monomial by monomial."""
    mu = Fraction(mu)
    weights = [_torus_weights(f.ring)[v] for v in f.ring.variables]
    out = {}
    for exps, c in f.value.terms.items():
        k = sum(w * e for w, e in zip(weights, exps))
        out[exps] = as_rational(c * mu ** k)
    return AElement(f.ring, Poly(f.ring.variables, out))


def twist(ring: ThreefoldRing, mu, f: AElement) -> AElement:
    """g with torus(mu) ∘ shear(f) ∘ torus(mu)^-1 = shear(g)."""
    p = ring.params
    s = ring.surface
    w = p.m * s.b * s.c + p.n * s.a * s.c
    return _torus_substitute(f, mu) * as_rational(Fraction(mu) ** w)


def _torus_map(ring: ThreefoldRing, mu) -> RingMap:
    mu = Fraction(mu)
    w = _torus_weights(ring)
    return RingMap(ring, ring, {v: ring.gen(v) * as_rational(mu ** w[v]) for v in ring.variables})


def _shear_map(ring: ThreefoldRing, f: AElement) -> RingMap:
    n, m = ring.params.n, ring.params.m
    images = ring.gens()
    images[ring.u_name] = ring.gen(ring.u_name) + f * ring.gen("y") ** n
    images[ring.v_name] = ring.gen(ring.v_name) + f * ring.gen("x") ** m
    return RingMap(ring, ring, images)


def generator_map(phi: AutElement) -> RingMap:
    """Generator images of torus(mu) ∘ shear(f), by substitution."""
    return _torus_map(phi.ring, phi.mu).compose(_shear_map(phi.ring, phi.f))


def _make(ring: ThreefoldRing, mu, f: AElement) -> AutElement:
    mu = as_rational(mu)
    if mu == 0:
        raise AutomorphismError("torus parameter mu must be nonzero")
    phi = AutElement(ring, mu, f)
    if mu != 1:
        tmap = _torus_map(ring, mu)
        if not tmap.preserves_relations():
            raise AutomorphismError(
                f"torus({mu}) does not preserve the relations (lam = {ring.surface.lam} needs mu^abc = 1)"
            )
    return phi


def torus(ring: ThreefoldRing, mu) -> AutElement:
    return _make(ring, mu, ring.zero)


def shear(ring: ThreefoldRing, f) -> AutElement:
    # shear maps preserve both relations for every f: x^m f y^n - y^n f x^m = 0
    return _make(ring, 1, _xyz_element(ring, f))


def identity(ring: ThreefoldRing) -> AutElement:
    return AutElement(ring, 1, ring.zero)


def _check(phi: AutElement, psi: AutElement) -> None:
    if phi.ring != psi.ring:
        raise RingMismatchError(f"automorphisms of {phi.ring} and {psi.ring}")


def compose(phi: AutElement, psi: AutElement) -> AutElement:
    """phi ∘ psi in normalized form."""
    _check(phi, psi)
    mu = as_rational(Fraction(phi.mu) * Fraction(psi.mu))
    f = twist(phi.ring, Fraction(1) / Fraction(psi.mu), phi.f) + psi.f
    return AutElement(phi.ring, mu, f)


def invert(phi: AutElement) -> AutElement:
    mu = as_rational(Fraction(1) / Fraction(phi.mu))
    return AutElement(phi.ring, mu, twist(phi.ring, phi.mu, -phi.f))


def apply_aut(phi: AutElement, h) -> AElement:
    return generator_map(phi)(h)


def conjugated_E(phi: AutElement) -> Derivation:
    """The derivation g -> phi^-1(E(phi(g)))."""
    E = derivation_E(phi.ring)
    return conjugate_derivation(E, generator_map(phi), generator_map(invert(phi)))


def conjugate_E(phi: AutElement) -> Rational:
    """The scalar lam with phi^-1 E phi = lam*E."""
    ring = phi.ring
    D = conjugated_E(phi)
    E = derivation_E(ring)
    target = E.images[ring.u_name]
    got = D.images[ring.u_name]
    key = next(iter(target.value.terms))
    lam = as_rational(Fraction(got.value.terms.get(key, 0)) / Fraction(target.value.terms[key]))
    if lam == 0 or D != E.scaled(lam):
        raise ProportionalityError(f"phi^-1 E phi = {D} is not a nonzero multiple of E")
    return lam


def restrict(phi: AutElement) -> RingMap:
    """Action of phi on R = Q[x,y,z]/(P); shears restrict to the identity."""
    R = SurfaceRing(phi.ring.surface)
    images = generator_map(phi).images
    return RingMap(R, R, {v: R.element(images[v].value) for v in R.variables})
