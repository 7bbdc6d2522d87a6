"""Derivations of A_{n,m} given by generator images.

The distinguished derivation is ``E = y^n d/du + x^m d/dv``: it kills
x, y, z, sends u to y^n and v to x^m, and is locally nilpotent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .poly import Poly, ResourceLimitError, as_rational
from .rings import AElement, RingMap, RingMismatchError, ThreefoldRing, _QuotientRing

__all__ = [
    "DerivationError",
    "NotLocallyNilpotentError",
    "Derivation",
    "LNDVerdict",
    "make_derivation",
    "derivation_E",
    "zero_derivation",
    "apply",
    "is_locally_nilpotent",
    "kernel_membership",
    "kernel_basis_bounded",
    "normal_monomials",
    "exp_map",
    "bezout_split",
    "conjugate_derivation",
    "DEFAULT_ITERATION_BOUND",
]

DEFAULT_ITERATION_BOUND = 50


class DerivationError(ValueError):
    """Generator images do not define a derivation of the ring."""

    def __init__(self, message: str, relation: Optional[Poly] = None, image: Optional[AElement] = None):
        super().__init__(message)
        self.relation = relation
        self.image = image


class NotLocallyNilpotentError(ValueError):
    """Local nilpotency could not be certified within the iteration bound."""


class Derivation:
    """A derivation determined by its values on the ring generators."""

    def __init__(self, ring: _QuotientRing, images: Mapping[str, object], validate: bool = True):
        missing = [v for v in ring.variables if v not in images]
        if missing:
            raise ValueError(f"no image given for generators {missing}")
        extra = [v for v in images if v not in ring.variables]
        if extra:
            raise ValueError(f"images given for unknown generators {extra}")
        self.ring = ring
        self.images: Dict[str, AElement] = {v: ring.element(images[v]) for v in ring.variables}
        if validate:
            for rel in ring.relations():
                img = self.apply_poly(rel)
                if not img.is_zero():
                    raise DerivationError(
                        f"not well defined: relation {rel} maps to {img} != 0", rel, img
                    )

    @property
    def params(self):
        return getattr(self.ring, "params", None)

    def apply_poly(self, p: Poly) -> AElement:
        """Leibniz extension applied to a polynomial representative."""
        p = p.with_variables(self.ring.variables)
        total = Poly.zero(self.ring.variables)
        for v in self.ring.variables:
            img = self.images[v]
            if img.is_zero():
                continue
            dp = p.partial_derivative(v)
            if dp:
                total = total + dp * img.value
        return AElement(self.ring, self.ring.nf(total))

    def __call__(self, h) -> AElement:
        if isinstance(h, AElement):
            if h.ring != self.ring:
                raise RingMismatchError(f"derivation of {self.ring} applied to element of {h.ring}")
            return self.apply_poly(h.value)
        return self.apply_poly(self.ring.element(h).value)

    def iterate(self, h: AElement, k: int) -> AElement:
        for _ in range(k):
            h = self(h)
        return h

    def scaled(self, f) -> "Derivation":
        """The derivation f*D (well defined whenever D is)."""
        f = self.ring.element(f)
        return Derivation(self.ring, {v: f * img for v, img in self.images.items()}, validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.ring == other.ring and self.images == other.images

    def __repr__(self) -> str:
        body = ", ".join(f"{v} -> {img}" for v, img in self.images.items() if not img.is_zero())
        return f"Derivation({body or '0'})"


def make_derivation(ring: _QuotientRing, images: Mapping[str, object]) -> Derivation:
    return Derivation(ring, images)


def derivation_E(ring: ThreefoldRing, extra: Mapping[str, object] | None = None) -> Derivation:
    """``y^n d/du + x^m d/dv``; adjoined generators go to 0 unless given in ``extra``."""
    n, m = ring.params.n, ring.params.m
    images: Dict[str, object] = {v: 0 for v in ring.variables}
    images[ring.u_name] = ring.gen("y") ** n
    images[ring.v_name] = ring.gen("x") ** m
    images.update(extra or {})
    return Derivation(ring, images)


def zero_derivation(ring: _QuotientRing) -> Derivation:
    return Derivation(ring, {v: 0 for v in ring.variables})


def apply(D: Derivation, h: AElement) -> AElement:
    return D(h)


@dataclass(frozen=True)
class LNDVerdict:
    """Outcome of the nilpotency semi-decision.

    ``indices[g]`` is the least k >= 1 with D^k(g) = 0.
    """

    nilpotent: bool
    indices: Optional[Dict[str, int]]
    bound: int
    stuck_generator: Optional[str] = None

    def __str__(self) -> str:
        if self.nilpotent:
            body = ", ".join(f"{g}:{k}" for g, k in self.indices.items())
            return f"nilpotent ({body})"
        return f"not_within_bound (bound {self.bound}, generator {self.stuck_generator})"


def is_locally_nilpotent(D: Derivation, iteration_bound: int = DEFAULT_ITERATION_BOUND) -> LNDVerdict:
    """Certify local nilpotency by iterating D on every generator."""
    if iteration_bound < 1:
        raise ValueError("iteration bound must be >= 1")
    indices: Dict[str, int] = {}
    for g in D.ring.variables:
        h = D.ring.gen(g)
        for k in range(1, iteration_bound + 1):
            h = D(h)
            if h.is_zero():
                indices[g] = k
                break
        else:
            return LNDVerdict(False, None, iteration_bound, g)
    return LNDVerdict(True, indices, iteration_bound)


def kernel_membership(D: Derivation, h: AElement) -> bool:
    return D(h).is_zero()


def normal_monomials(ring: _QuotientRing, total_degree_bound: int) -> List[Poly]:
    """Normal-form monomials of total degree <= bound, in graded-lex order (ascending)."""
    k = len(ring.variables)
    out = []
    for d in range(total_degree_bound + 1):
        for combo in itertools.combinations_with_replacement(range(k), d):
            exps = [0] * k
            for i in combo:
                exps[i] += 1
            exps = tuple(exps)
            if not ring._reducible(exps):
                out.append(exps)
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return [Poly._raw(ring.variables, {e: 1}) for e in out]


def _nullspace(columns: Sequence[Dict[object, Fraction]]) -> List[Dict[int, Fraction]]:
    """Basis of {c : sum_j c_j * columns[j] = 0} from the reduced row echelon form."""
    rows: Dict[object, Dict[int, Fraction]] = {}
    for j, col in enumerate(columns):
        for key, val in col.items():
            rows.setdefault(key, {})[j] = Fraction(val)
    pending = [r for r in rows.values() if r]
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for j in range(len(columns)):
        idx = next((i for i, r in enumerate(pending) if r.get(j)), None)
        if idx is None:
            continue
        row = pending.pop(idx)
        inv = 1 / row[j]
        row = {c: v * inv for c, v in row.items()}
        for others in (pending, list(pivots.values())):
            for r in others:
                f = r.get(j)
                if f:
                    for c, v in row.items():
                        nv = r.get(c, 0) - f * v
                        if nv:
                            r[c] = nv
                        else:
                            r.pop(c, None)
        pivots[j] = row
    basis = []
    for f in range(len(columns)):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, row in pivots.items():
            if row.get(f):
                vec[p] = -row[f]
        basis.append(vec)
    return basis


def kernel_basis_bounded(D: Derivation, total_degree_bound: int, max_monomials: int = 20000) -> List[AElement]:
    """Basis of ker(D) restricted to the span of normal monomials of degree <= bound.

    Solves the exact linear system D(sum c_i m_i) = 0 over Q; the basis is
    read off the reduced row echelon form, so a kernel spanned by monomials
    comes back as exactly those monomials.
    """
    if total_degree_bound < 1:
        raise ValueError("degree bound must be >= 1")
    k = len(D.ring.variables)
    if math.comb(total_degree_bound + k, k) > 50 * max_monomials:
        raise ResourceLimitError("monomial space too large for the configured cap")
    monos = normal_monomials(D.ring, total_degree_bound)
    if len(monos) > max_monomials:
        raise ResourceLimitError(f"{len(monos)} monomials exceed cap {max_monomials}")
    columns = [D.apply_poly(mono).value.terms for mono in monos]
    basis = []
    for vec in _nullspace(columns):
        val = Poly.zero(D.ring.variables)
        for j, c in sorted(vec.items()):
            val = val + monos[j].scale(c)
        basis.append(AElement(D.ring, val))
    return basis


def exp_map(D: Derivation, t0, iteration_bound: int = DEFAULT_ITERATION_BOUND) -> RingMap:
    """The automorphism exp(t0*D): g -> sum_k t0^k D^k(g) / k!."""
    t0 = as_rational(t0)
    verdict = is_locally_nilpotent(D, iteration_bound)
    if not verdict.nilpotent:
        raise NotLocallyNilpotentError(f"cannot exponentiate: {verdict}")
    images = {}
    for g in D.ring.variables:
        h = D.ring.gen(g)
        acc = h
        coef = Fraction(1)
        for k in range(1, verdict.indices[g]):
            h = D(h)
            coef = coef * t0 / k
            acc = acc + h * as_rational(coef)
        images[g] = acc
    return RingMap(D.ring, D.ring, images)


def bezout_split(ring: ThreefoldRing, m_prime: int, n_prime: int) -> Tuple[AElement, AElement]:
    """(A, B) with A*x^m' + B*y^n' = 1, from (x^m*u - y^n*v)^N = 1.

    N = ceil(m'/m) - 1 + ceil(n'/n) makes every term of the binomial
    expansion divisible by x^m' or by y^n'; terms divisible by both go to A.
    """
    if m_prime < 1 or n_prime < 1:
        raise ValueError("m' and n' must be >= 1")
    n, m = ring.params.n, ring.params.m
    N = -(-m_prime // m) - 1 + -(-n_prime // n)
    V = ring.variables
    x, y, u, v = (Poly.var(s, V) for s in ("x", "y", ring.u_name, ring.v_name))
    A = Poly.zero(V)
    B = Poly.zero(V)
    for k in range(N + 1):
        coef = math.comb(N, k) * (-1) ** k
        if m * (N - k) >= m_prime:
            A = A + (x ** (m * (N - k) - m_prime) * u ** (N - k) * y ** (n * k) * v ** k).scale(coef)
        else:
            B = B + (x ** (m * (N - k)) * u ** (N - k) * y ** (n * k - n_prime) * v ** k).scale(coef)
    return ring.element(A), ring.element(B)


def conjugate_derivation(D: Derivation, inner: RingMap, outer: RingMap) -> Derivation:
    """The derivation g -> outer(D(inner(g))) on ``inner.source``.

    With ``inner = phi`` and ``outer = phi^-1`` this is phi^-1 D phi.
    """
    if inner.target != D.ring or outer.source != D.ring or outer.target != inner.source:
        raise RingMismatchError("maps do not fit around the derivation")
    images = {g: outer(D(img)) for g, img in inner.images.items()}
    return Derivation(inner.source, images)
