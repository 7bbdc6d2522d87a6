"""The surface ring R and the threefold rings A_{n,m} with canonical forms.

    R       = Q[x,y,z] / (x^a + y^b + z^c + lam)
    A_{n,m} = R[u,v]   / (x^m*u - y^n*v - 1)

Normal forms come from the rewrite rules

    z^c   -> -x^a - y^b - lam
    x^m*u -> y^n*v + 1

whose left sides share no variable, so the rule set is a Groebner basis
(lex with u > z > x > y > v) and every element has exactly one reduced
representative.  Extra variables may be adjoined freely (no relations).
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Sequence, Tuple

from .poly import Exponent, Poly, Rational, as_rational

__all__ = [
    "ParameterError",
    "RingMismatchError",
    "SurfaceParams",
    "ThreefoldParams",
    "make_surface",
    "make_threefold",
    "SurfaceRing",
    "ThreefoldRing",
    "AElement",
    "RingMap",
    "normal_form",
    "reduce_stepwise",
    "ring_op",
    "a_pow",
    "u_decomposition",
]


class ParameterError(ValueError):
    """Invalid exponent data for R or A_{n,m}."""


class RingMismatchError(ValueError):
    """Operands live in different rings."""


@dataclass(frozen=True)
class SurfaceParams:
    a: int
    b: int
    c: int
    lam: Rational = 0

    def __post_init__(self):
        object.__setattr__(self, "lam", as_rational(self.lam))
        for name in ("a", "b", "c"):
            if getattr(self, name) < 2:
                raise ParameterError(f"exponent {name} = {getattr(self, name)} must be >= 2")
        a, b, c = self.a, self.b, self.c
        for (p, q), label in (((a, b), "a,b"), ((a, c), "a,c"), ((b, c), "b,c")):
            if math.gcd(p, q) != 1:
                raise ParameterError(f"gcd({label}) = gcd({p},{q}) = {math.gcd(p, q)}; exponents must be pairwise coprime")

    @property
    def reciprocal_sum(self) -> Fraction:
        return Fraction(1, self.a) + Fraction(1, self.b) + Fraction(1, self.c)

    @property
    def ml_regime(self) -> bool:
        """1/a + 1/b + 1/c < 1."""
        return self.reciprocal_sum < 1

    @property
    def cor1_regime(self) -> bool:
        """lam = 0 and 1/a + 1/b + 1/c <= 1."""
        return self.lam == 0 and self.reciprocal_sum <= 1

    @property
    def cor2_regime(self) -> bool:
        """a,b,c >= 4 and 1/(a-3) + 1/(b-3) + 1/(c-3) <= 1/2."""
        return cor2_inequality(self.a, self.b, self.c)

    def relation(self, variables: Sequence[str] = ("x", "y", "z")) -> Poly:
        x, y, z = (Poly.var(v, variables) for v in ("x", "y", "z"))
        return x ** self.a + y ** self.b + z ** self.c + self.lam

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c},{self.lam}"


def cor2_inequality(a: int, b: int, c: int) -> bool:
    if min(a, b, c) < 4:
        return False
    return Fraction(1, a - 3) + Fraction(1, b - 3) + Fraction(1, c - 3) <= Fraction(1, 2)


def make_surface(a: int, b: int, c: int, lam=0) -> SurfaceParams:
    return SurfaceParams(a, b, c, lam)


@dataclass(frozen=True)
class ThreefoldParams:
    surface: SurfaceParams
    n: int
    m: int
    permissive: bool = field(default=False, compare=False)

    def __post_init__(self):
        low = 1 if self.permissive else 2
        if self.n < low or self.m < low:
            raise ParameterError(f"n = {self.n}, m = {self.m}: both must be >= {low}")
        if self.n < 2 or self.m < 2:
            warnings.warn(f"A_{{n,m}} with n = {self.n}, m = {self.m} lies outside n,m >= 2", stacklevel=3)


def make_threefold(surface: SurfaceParams, n: int, m: int, permissive: bool = False) -> ThreefoldParams:
    return ThreefoldParams(surface, n, m, permissive)


# -- rings ----------------------------------------------------------------


def _shift_into(out: Dict[Exponent, Rational], terms: Mapping[Exponent, Rational], shift: Exponent, coef: Rational) -> None:
    get = out.get
    for e, c in terms.items():
        key = tuple(i + j for i, j in zip(e, shift))
        v = get(key, 0) + coef * c
        if v:
            out[key] = v
        else:
            del out[key]


class _QuotientRing:
    """Shared machinery; subclasses provide ``variables`` and the rules."""

    variables: Tuple[str, ...]

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.variables)}

    @cached_property
    def _mono_cache(self) -> Dict[Exponent, Dict[Exponent, Rational]]:
        return {}

    @cached_property
    def _zrule_powers(self) -> List[Dict[Exponent, Rational]]:
        s = self.surface
        v = self.variables
        base = -(Poly.var("x", v) ** s.a) - Poly.var("y", v) ** s.b - s.lam
        return [Poly.const(1, v).terms, base.terms]

    def _zpow(self, q: int) -> Dict[Exponent, Rational]:
        pw = self._zrule_powers
        while len(pw) <= q:
            prev = Poly._raw(self.variables, pw[-1])
            pw.append((prev * Poly._raw(self.variables, pw[1])).terms)
        return pw[q]

    def _reduce_z(self, exps: Exponent) -> Dict[Exponent, Rational]:
        iz = self._index["z"]
        q, r = divmod(exps[iz], self.surface.c)
        if not q:
            return {exps: 1}
        shift = exps[:iz] + (r,) + exps[iz + 1:]
        out: Dict[Exponent, Rational] = {}
        _shift_into(out, self._zpow(q), shift, 1)
        return out

    def _reduce_monomial(self, exps: Exponent) -> Dict[Exponent, Rational]:
        return self._reduce_z(exps)

    def nf(self, p: Poly) -> Poly:
        """Canonical representative of ``p`` in this ring."""
        try:
            p = p.with_variables(self.variables)
        except ValueError as exc:
            raise ValueError(f"unknown variable for ring {self}: {exc}") from None
        cache = self._mono_cache
        out: Dict[Exponent, Rational] = {}
        for exps, c in p.terms.items():
            red = cache.get(exps)
            if red is None:
                red = self._reduce_monomial(exps)
                cache[exps] = red
            if len(red) == 1 and exps in red:
                v = out.get(exps, 0) + c
                if v:
                    out[exps] = v
                else:
                    del out[exps]
            else:
                _shift_into(out, red, (0,) * len(exps), c)
        return Poly._raw(self.variables, out)

    def is_normal(self, p: Poly) -> bool:
        p = p.with_variables(self.variables)
        return all(not self._reducible(e) for e in p.terms)

    def _reducible(self, exps: Exponent) -> bool:
        return any(all(a >= b for a, b in zip(exps, lead)) for lead, _ in self.rules())

    def rules(self) -> List[Tuple[Exponent, Dict[Exponent, Rational]]]:
        """Rewrite rules as (left-side monomial, right-side terms)."""
        raise NotImplementedError

    def relations(self) -> List[Poly]:
        raise NotImplementedError

    # -- element construction ------------------------------------------------

    def element(self, value) -> "AElement":
        if isinstance(value, AElement):
            if value.ring != self:
                raise RingMismatchError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, str):
            from .expr import parse_expression

            value = parse_expression(value, self.variables)
        if not isinstance(value, Poly):
            value = Poly.const(value, self.variables)
        return AElement(self, self.nf(value))

    def gen(self, name: str) -> "AElement":
        return AElement(self, Poly.var(name, self.variables))

    def gens(self) -> Dict[str, "AElement"]:
        return {v: self.gen(v) for v in self.variables}

    @property
    def zero(self) -> "AElement":
        return AElement(self, Poly.zero(self.variables))

    @property
    def one(self) -> "AElement":
        return AElement(self, Poly.const(1, self.variables))

    def identity_map(self) -> "RingMap":
        return RingMap(self, self, self.gens())


@dataclass(frozen=True, eq=True)
class SurfaceRing(_QuotientRing):
    """R = Q[x,y,z]/(x^a + y^b + z^c + lam)."""

    surface: SurfaceParams

    @property
    def variables(self) -> Tuple[str, ...]:
        return ("x", "y", "z")

    def rules(self):
        iz = 2
        lead = tuple(self.surface.c if i == iz else 0 for i in range(3))
        return [(lead, self._zrule_powers[1])]

    def relations(self) -> List[Poly]:
        return [self.surface.relation(self.variables)]

    def __str__(self) -> str:
        s = self.surface
        return f"R({s.a},{s.b},{s.c},{s.lam})"


@dataclass(frozen=True, eq=True)
class ThreefoldRing(_QuotientRing):
    """A_{n,m}, optionally with free variables adjoined.

    ``u_name``/``v_name`` rename the two bundle generators, which is how the
    primed ring A_{n',m'} with generators u', v' is represented.
    """

    params: ThreefoldParams
    adjoined: Tuple[str, ...] = ()
    u_name: str = "u"
    v_name: str = "v"

    def __post_init__(self):
        object.__setattr__(self, "adjoined", tuple(self.adjoined))
        names = self.variables
        if len(set(names)) != len(names):
            raise ParameterError(f"duplicate generator names {names}")

    @property
    def surface(self) -> SurfaceParams:
        return self.params.surface

    @property
    def variables(self) -> Tuple[str, ...]:
        return ("x", "y", "z", self.u_name, self.v_name) + self.adjoined

    @cached_property
    def _xu_powers(self) -> List[Dict[Exponent, Rational]]:
        v = self.variables
        base = Poly.var("y", v) ** self.params.n * Poly.var(self.v_name, v) + 1
        return [Poly.const(1, v).terms, base.terms]

    def _xupow(self, t: int) -> Dict[Exponent, Rational]:
        pw = self._xu_powers
        while len(pw) <= t:
            prev = Poly._raw(self.variables, pw[-1])
            pw.append((prev * Poly._raw(self.variables, pw[1])).terms)
        return pw[t]

    def _reduce_monomial(self, exps: Exponent) -> Dict[Exponent, Rational]:
        # z-rule first: it only introduces x and y, after which the x^m*u
        # rule (introducing only y and v) finishes the reduction.
        ix, iu = 0, 3
        m = self.params.m
        out: Dict[Exponent, Rational] = {}
        for e, c in self._reduce_z(exps).items():
            t = min(e[ix] // m, e[iu])
            if not t:
                v = out.get(e, 0) + c
                if v:
                    out[e] = v
                else:
                    del out[e]
                continue
            shift = list(e)
            shift[ix] -= t * m
            shift[iu] -= t
            _shift_into(out, self._xupow(t), tuple(shift), c)
        return out

    def rules(self):
        k = len(self.variables)
        zlead = tuple(self.surface.c if i == 2 else 0 for i in range(k))
        xulead = tuple(self.params.m if i == 0 else (1 if i == 3 else 0) for i in range(k))
        return [(zlead, self._zrule_powers[1]), (xulead, self._xu_powers[1])]

    def relations(self) -> List[Poly]:
        v = self.variables
        x, y, u, vv = (Poly.var(s, v) for s in ("x", "y", self.u_name, self.v_name))
        n, m = self.params.n, self.params.m
        return [self.surface.relation(v), x ** m * u - y ** n * vv - 1]

    def base_ring(self) -> "ThreefoldRing":
        """The same A_{n,m} without adjoined variables."""
        return ThreefoldRing(self.params, (), self.u_name, self.v_name)

    def extend(self, *names: str) -> "ThreefoldRing":
        return ThreefoldRing(self.params, self.adjoined + tuple(names), self.u_name, self.v_name)

    def __str__(self) -> str:
        s = self.surface
        extra = f"[{','.join(self.adjoined)}]" if self.adjoined else ""
        return f"A_{{{self.params.n},{self.params.m}}}({s.a},{s.b},{s.c},{s.lam}){extra}"


def reduce_stepwise(ring: _QuotientRing, p: Poly, rng: random.Random, max_steps: int = 10**6) -> Poly:
    """Reduce ``p`` by single rule applications chosen at random.

    Each step picks a random reducible monomial and a random applicable
    rule, and replaces one occurrence of the rule's left side.  Used as an
    independent check on :meth:`nf`.
    """
    rules = ring.rules()
    terms = dict(p.with_variables(ring.variables).terms)
    for _ in range(max_steps):
        candidates = [e for e in terms if any(all(a >= b for a, b in zip(e, lead)) for lead, _ in rules)]
        if not candidates:
            return Poly._raw(ring.variables, terms)
        e = rng.choice(sorted(candidates))
        applicable = [(lead, rhs) for lead, rhs in rules if all(a >= b for a, b in zip(e, lead))]
        lead, rhs = rng.choice(applicable)
        c = terms.pop(e)
        _shift_into(terms, rhs, tuple(a - b for a, b in zip(e, lead)), c)
    raise RuntimeError("stepwise reduction did not terminate within the step cap")


# -- elements ---------------------------------------------------------------


class AElement:
    """An element of a quotient ring, stored in canonical normal form."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: _QuotientRing, value: Poly):
        self.ring = ring
        self.value = value

    @property
    def params(self):
        return getattr(self.ring, "params", getattr(self.ring, "surface", None))

    @property
    def adjoined(self) -> Tuple[str, ...]:
        return getattr(self.ring, "adjoined", ())

    def _other(self, other) -> "AElement":
        if isinstance(other, AElement):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other
        return self.ring.element(other)

    def __add__(self, other) -> "AElement":
        # Sums of normal forms are normal: no reduction needed.
        return AElement(self.ring, self.value + self._other(other).value)

    __radd__ = __add__

    def __sub__(self, other) -> "AElement":
        return AElement(self.ring, self.value - self._other(other).value)

    def __rsub__(self, other) -> "AElement":
        return AElement(self.ring, self._other(other).value - self.value)

    def __neg__(self) -> "AElement":
        return AElement(self.ring, -self.value)

    def __mul__(self, other) -> "AElement":
        if isinstance(other, (int, Fraction)):
            return AElement(self.ring, self.value.scale(other))
        return AElement(self.ring, self.ring.nf(self.value * self._other(other).value))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "AElement":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, AElement):
            return self.ring == other.ring and self.value == other.value
        try:
            return self == self.ring.element(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.value))

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __bool__(self) -> bool:
        return not self.value.is_zero()

    def partial(self, var: str) -> "AElement":
        """Formal partial derivative of the canonical representative."""
        return AElement(self.ring, self.value.partial_derivative(var))

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"AElement({str(self.value)!r} in {self.ring})"


def normal_form(p: Poly, params: ThreefoldParams | SurfaceParams, adjoined: Sequence[str] = ()) -> AElement:
    if isinstance(params, SurfaceParams):
        ring: _QuotientRing = SurfaceRing(params)
    else:
        ring = ThreefoldRing(params, tuple(adjoined))
    return ring.element(p)


def ring_op(lhs: AElement, rhs: AElement, op: str) -> AElement:
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown ring operation {op!r}")


def a_pow(e: AElement, k: int) -> AElement:
    return e ** k


def u_decomposition(h: AElement) -> List[Poly]:
    """Coefficients p_0..p_d of ``h`` as a polynomial in u.

    Each p_i is a polynomial in x, y, z, v; because ``h`` is canonical the
    coefficients are the unique ones with deg_z < c and, for i >= 1,
    deg_x < m.
    """
    ring = h.ring
    if not isinstance(ring, ThreefoldRing) or ring.adjoined:
        raise ValueError("u_decomposition needs an element of A_{n,m} without adjoined variables")
    rest = tuple(v for v in ring.variables if v != ring.u_name)
    iu = ring.variables.index(ring.u_name)
    d = max(h.value.degree(ring.u_name), 0)
    coeffs: List[Dict[Exponent, Rational]] = [dict() for _ in range(d + 1)]
    for e, c in h.value.terms.items():
        coeffs[e[iu]][e[:iu] + e[iu + 1:]] = c
    return [Poly._raw(rest, t) for t in coeffs]


# -- ring homomorphisms -------------------------------------------------------


class RingMap:
    """Ring homomorphism given by images of the source generators.

    Composition follows ``(f.compose(g))(r) = f(g(r))``.
    """

    def __init__(self, source: _QuotientRing, target: _QuotientRing, images: Mapping[str, object]):
        missing = [v for v in source.variables if v not in images]
        if missing:
            raise ValueError(f"no image given for generators {missing}")
        extra = [v for v in images if v not in source.variables]
        if extra:
            raise ValueError(f"images given for unknown generators {extra}")
        self.source = source
        self.target = target
        self.images = {v: target.element(images[v]) for v in source.variables}

    def apply_poly(self, p: Poly) -> AElement:
        """Image of a polynomial in the source's free polynomial ring."""
        p = p.with_variables(self.source.variables)
        imgs = [self.images[v] for v in self.source.variables]
        cache: List[Dict[int, AElement]] = [{1: img} for img in imgs]

        def power(i: int, e: int) -> AElement:
            c = cache[i]
            if e not in c:
                half = power(i, e // 2)
                sq = half * half
                c[e] = sq * imgs[i] if e % 2 else sq
            return c[e]

        total = Poly.zero(self.target.variables)
        for exps, coef in p.terms.items():
            term = self.target.one.value.scale(coef)
            for i, e in enumerate(exps):
                if e:
                    term = self.target.nf(term * power(i, e).value)
            total = total + term
        return AElement(self.target, total)

    def __call__(self, h) -> AElement:
        if isinstance(h, AElement):
            if h.ring != self.source:
                raise RingMismatchError(f"map from {self.source} applied to element of {h.ring}")
            return self.apply_poly(h.value)
        if isinstance(h, Poly):
            return self.apply_poly(h)
        return self.apply_poly(self.source.element(h).value)

    def compose(self, other: "RingMap") -> "RingMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise RingMismatchError("maps are not composable")
        return RingMap(other.source, self.target, {v: self(img) for v, img in other.images.items()})

    def relation_images(self) -> List[AElement]:
        return [self.apply_poly(r) for r in self.source.relations()]

    def preserves_relations(self) -> bool:
        return all(img.is_zero() for img in self.relation_images())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.images == other.images

    def __repr__(self) -> str:
        body = ", ".join(f"{v} -> {img}" for v, img in self.images.items())
        return f"RingMap({body})"
