"""Explicit isomorphisms A_{n,m}[w] ≅ A_{n',m'}[w'].

Both rings are trivialized over their fibered product

    F = R[u, v, u', v'] / (x^m u - y^n v - 1, x^m' u' - y^n' v' - 1).

Over A_{n,m}, a Bezout pair A*x^m' + B*y^n' = 1 gives the slice
s = B*u' + A*v' and the identities u' = A + s*y^n', v' = -B + s*x^m', so
F = A_{n,m}[s].  Symmetrically F = A_{n',m'}[s'] with s' = B'*u + A'*v.
Identifying w with s and w' with s' yields

    forward:  u -> A' + w'*y^n,   v -> -B' + w'*x^m,   w -> B(u,v)*u' + A(u,v)*v'
    backward: u' -> A + w*y^n',   v' -> -B + w*x^m',   w' -> B'(u',v')*u + A'(u',v')*v

where in ``forward(w)`` the u, v inside A and B are themselves replaced by
their forward images (and dually for ``backward(w')``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .derivations import Derivation, bezout_split, derivation_E, exp_map
from .expr import parse_expression
from .poly import as_rational
from .rings import AElement, ParameterError, RingMap, SurfaceParams, ThreefoldParams, ThreefoldRing

__all__ = [
    "StableIso",
    "StableIsoReport",
    "CertificateError",
    "build_stable_iso",
    "verify_stable_iso",
    "left_ring",
    "right_ring",
    "bundle_derivations",
    "check_equivariance",
    "perturbed",
    "dumps",
    "loads",
]

FILE_FORMAT = "lnd-algebra/stable-iso"


class CertificateError(RuntimeError):
    """A freshly built isomorphism failed its own verification."""


def left_ring(surface: SurfaceParams, n: int, m: int, permissive: bool = False) -> ThreefoldRing:
    return ThreefoldRing(ThreefoldParams(surface, n, m, permissive), ("w",))


def right_ring(surface: SurfaceParams, n: int, m: int, permissive: bool = False) -> ThreefoldRing:
    return ThreefoldRing(ThreefoldParams(surface, n, m, permissive), ("w'",), "u'", "v'")


@dataclass
class StableIso:
    surface: SurfaceParams
    left: Tuple[int, int]
    right: Tuple[int, int]
    forward: RingMap
    backward: RingMap
    certificates: Dict[str, AElement] = field(default_factory=dict)

    @property
    def left_ring(self) -> ThreefoldRing:
        return self.forward.source

    @property
    def right_ring(self) -> ThreefoldRing:
        return self.forward.target


@dataclass(frozen=True)
class StableIsoReport:
    relations_ok: bool
    round_trip_ok: bool
    certificates_ok: bool
    forward_degrees: Dict[str, int]
    backward_degrees: Dict[str, int]

    @property
    def ok(self) -> bool:
        return self.relations_ok and self.round_trip_ok and self.certificates_ok


def _images_with_slice(
    src: ThreefoldRing, dst: ThreefoldRing, A_dst: AElement, B_dst: AElement, A_src: AElement, B_src: AElement
) -> Dict[str, AElement]:
    """Images of src generators in dst, given Bezout pairs on both sides.

    (A_dst, B_dst) solve A*x^m_src + B*y^n_src = 1 in dst; (A_src, B_src)
    solve the dual identity in src and define the slice for src's w.
    """
    n, m = src.params.n, src.params.m
    (w_dst,) = dst.adjoined
    u_img = A_dst + dst.gen(w_dst) * dst.gen("y") ** n
    v_img = -B_dst + dst.gen(w_dst) * dst.gen("x") ** m
    partial = {"x": dst.gen("x"), "y": dst.gen("y"), "z": dst.gen("z"),
               src.u_name: u_img, src.v_name: v_img}
    for extra in src.adjoined:
        partial[extra] = dst.zero
    pre = RingMap(src, dst, partial)
    (w_src,) = src.adjoined
    partial[w_src] = pre(B_src) * dst.gen(dst.u_name) + pre(A_src) * dst.gen(dst.v_name)
    return partial


def build_stable_iso(
    surface: SurfaceParams, left: Tuple[int, int], right: Tuple[int, int], permissive: bool = False, check: bool = True
) -> StableIso:
    """Construct forward/backward maps between A_{n,m}[w] and A_{n',m'}[w']."""
    n, m = left
    n2, m2 = right
    L = left_ring(surface, n, m, permissive)
    Rr = right_ring(surface, n2, m2, permissive)
    A, B = bezout_split(L, m2, n2)
    A2, B2 = bezout_split(Rr, m, n)
    forward = RingMap(L, Rr, _images_with_slice(L, Rr, A2, B2, A, B))
    backward = RingMap(Rr, L, _images_with_slice(Rr, L, A, B, A2, B2))
    iso = StableIso(surface, (n, m), (n2, m2), forward, backward, {"A": A, "B": B, "A'": A2, "B'": B2})
    if check:
        report = verify_stable_iso(iso)
        if not report.ok:
            raise CertificateError(f"constructed isomorphism failed verification: {report}")
    return iso


def verify_stable_iso(iso: StableIso) -> StableIsoReport:
    """Re-check every invariant by exact normal-form computation."""
    L, Rr = iso.left_ring, iso.right_ring
    n, m = iso.left
    n2, m2 = iso.right
    cert = iso.certificates
    certificates_ok = False
    if all(k in cert for k in ("A", "B", "A'", "B'")):
        lhs = cert["A"] * L.gen("x") ** m2 + cert["B"] * L.gen("y") ** n2
        rhs = cert["A'"] * Rr.gen("x") ** m + cert["B'"] * Rr.gen("y") ** n
        certificates_ok = lhs == L.one and rhs == Rr.one
    relations_ok = iso.forward.preserves_relations() and iso.backward.preserves_relations()
    round_trip_ok = (
        iso.backward.compose(iso.forward) == L.identity_map()
        and iso.forward.compose(iso.backward) == Rr.identity_map()
    )
    return StableIsoReport(
        relations_ok,
        round_trip_ok,
        certificates_ok,
        {g: img.value.total_degree() for g, img in iso.forward.images.items()},
        {g: img.value.total_degree() for g, img in iso.backward.images.items()},
    )


def perturbed(iso: StableIso, generator: str = "u", delta=1, direction: str = "forward") -> StableIso:
    """Copy of ``iso`` with one generator image shifted by ``delta``."""
    fmap = iso.forward if direction == "forward" else iso.backward
    images = dict(fmap.images)
    images[generator] = images[generator] + delta
    new = RingMap(fmap.source, fmap.target, images)
    if direction == "forward":
        return StableIso(iso.surface, iso.left, iso.right, new, iso.backward, dict(iso.certificates))
    return StableIso(iso.surface, iso.left, iso.right, iso.forward, new, dict(iso.certificates))


# -- equivariance ---------------------------------------------------------------


def bundle_derivations(iso: StableIso) -> Tuple[Derivation, Derivation]:
    """Lifts of E to each side that correspond to translation on the other.

    On A_{n,m}[w] the derivation E~ extends E by w -> A*E(B) - B*E(A); it
    is the unique extension with forward ∘ E~ = d/dw' ∘ forward.  The
    right-hand lift is built from (A', B') the same way and satisfies
    backward ∘ E~' = d/dw ∘ backward.
    """
    out = []
    for ring, A, B in ((iso.left_ring, iso.certificates["A"], iso.certificates["B"]),
                       (iso.right_ring, iso.certificates["A'"], iso.certificates["B'"])):
        E = derivation_E(ring)
        (w,) = ring.adjoined
        out.append(derivation_E(ring, {w: A * E(B) - B * E(A)}))
    return out[0], out[1]


def _translation(ring: ThreefoldRing, t) -> RingMap:
    (w,) = ring.adjoined
    images = ring.gens()
    images[w] = images[w] + as_rational(t)
    return RingMap(ring, ring, images)


def _d_dw(ring: ThreefoldRing, h: AElement) -> AElement:
    (w,) = ring.adjoined
    return h.partial(w)


def check_equivariance(iso: StableIso, t=1) -> Dict[str, bool]:
    """Check forward ∘ E~ = d/dw' ∘ forward and the exponentiated form."""
    El, Er = bundle_derivations(iso)
    L, Rr = iso.left_ring, iso.right_ring
    fwd, bwd = iso.forward, iso.backward
    infinitesimal = all(fwd(El(L.gen(g))) == _d_dw(Rr, fwd(L.gen(g))) for g in L.variables)
    infinitesimal_back = all(bwd(Er(Rr.gen(g))) == _d_dw(L, bwd(Rr.gen(g))) for g in Rr.variables)
    integrated = fwd.compose(exp_map(El, t)) == _translation(Rr, t).compose(fwd)
    integrated_back = bwd.compose(exp_map(Er, t)) == _translation(L, t).compose(bwd)
    return {
        "forward_infinitesimal": infinitesimal,
        "backward_infinitesimal": infinitesimal_back,
        "forward_exp": integrated,
        "backward_exp": integrated_back,
    }


# -- serialization ------------------------------------------------------------------


def dumps(iso: StableIso) -> str:
    s = iso.surface
    doc = {
        "format": FILE_FORMAT,
        "version": 1,
        "surface": [s.a, s.b, s.c, str(s.lam)],
        "left": list(iso.left),
        "right": list(iso.right),
        "left_variables": list(iso.left_ring.variables),
        "right_variables": list(iso.right_ring.variables),
        "forward": {g: str(img) for g, img in iso.forward.images.items()},
        "backward": {g: str(img) for g, img in iso.backward.images.items()},
        "certificates": {k: str(v) for k, v in iso.certificates.items()},
    }
    return json.dumps(doc, indent=2)


def loads(text: str, permissive: bool = False) -> StableIso:
    """Rebuild a StableIso from :func:`dumps` output without re-deriving it."""
    doc = json.loads(text)
    if doc.get("format") != FILE_FORMAT:
        raise ValueError(f"not a stable-iso document (format = {doc.get('format')!r})")
    a, b, c, lam = doc["surface"]
    surface = SurfaceParams(int(a), int(b), int(c), as_rational(lam))
    n, m = (int(k) for k in doc["left"])
    n2, m2 = (int(k) for k in doc["right"])
    L = left_ring(surface, n, m, permissive)
    Rr = right_ring(surface, n2, m2, permissive)
    if tuple(doc["left_variables"]) != L.variables or tuple(doc["right_variables"]) != Rr.variables:
        raise ParameterError("variable names in the document do not match the rings")
    forward = RingMap(L, Rr, {g: parse_expression(t, Rr.variables) for g, t in doc["forward"].items()})
    backward = RingMap(Rr, L, {g: parse_expression(t, L.variables) for g, t in doc["backward"].items()})
    certs = {}
    for k, t in doc["certificates"].items():
        ring = L if k in ("A", "B") else Rr
        certs[k] = ring.element(parse_expression(t, ring.variables))
    return StableIso(surface, (n, m), (n2, m2), forward, backward, certs)
