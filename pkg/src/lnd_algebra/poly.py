"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is an immutable mapping from exponent tuples to nonzero
coefficients over an ordered tuple of variable names.  Coefficients are
Python ``int`` or :class:`fractions.Fraction`; both compare and hash
consistently, and keeping integers as ``int`` makes the common case fast.

Example (variables ``("x", "y")``)::

    x^2*y + 3   ->   {(2, 1): 1, (0, 0): 3}

Polynomials over different variable tuples are aligned by name (union of
the variable lists, left operand first) before any binary operation, so
equality is a statement about named monomials, not about tuple layout.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Exponent = Tuple[int, ...]

# Cap on the number of terms of any product; overridable per process.
MAX_TERMS = int(os.environ.get("LND_ALGEBRA_MAX_TERMS", "1000000"))


class ResourceLimitError(RuntimeError):
    """An intermediate result exceeded a configured size or work cap."""


class InexactDivisionError(ArithmeticError):
    """The divisor does not divide the dividend exactly."""


def set_max_terms(limit: int) -> None:
    global MAX_TERMS
    MAX_TERMS = int(limit)


def as_rational(value) -> Rational:
    """Coerce ``value`` to an exact int or reduced Fraction.

    Strings like ``"3/2"`` are accepted; floats are rejected because they
    are not exact.
    """
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        q = Fraction(value.strip())
        return q.numerator if q.denominator == 1 else q
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not exact; use Fraction or str")
    q = Fraction(value)
    return q.numerator if q.denominator == 1 else q


def format_rational(c: Rational) -> str:
    c = as_rational(c)
    return str(c)


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Rational] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        clean: Dict[Exponent, Rational] = {}
        nvars = len(variables)
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not match variables {variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = as_rational(coeff)
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
                if not clean[exps]:
                    del clean[exps]
        self.variables = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Exponent, Rational]) -> "Poly":
        # Trusted constructor: terms already canonical (no zero coefficients).
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "Poly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def const(cls, value, variables: Sequence[str] = ()) -> "Poly":
        variables = tuple(variables)
        value = as_rational(value)
        return cls._raw(variables, {(0,) * len(variables): value} if value else {})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "Poly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {exps: 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1, variables: Sequence[str] | None = None) -> "Poly":
        variables = tuple(variables) if variables is not None else tuple(exps)
        for name in exps:
            if name not in variables:
                raise ValueError(f"unknown variable {name!r}")
        key = tuple(exps.get(v, 0) for v in variables)
        return cls(variables, {key: coeff})

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, var: str = "T") -> "Poly":
        """Univariate polynomial from coefficients listed lowest degree first."""
        return cls((var,), {(i,): c for i, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] | None = None) -> "Poly":
        from .expr import parse_expression

        return parse_expression(text, variables)

    # -- alignment --------------------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "Poly":
        """Re-embed into ``variables``; every variable actually used must be kept."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        if len(index) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        used = self.used_variables()
        missing = [v for v in used if v not in index]
        if missing:
            raise ValueError(f"variables {missing} are in use and cannot be dropped")
        pos = [(index[v], i) for i, v in enumerate(self.variables) if v in index]
        n = len(variables)
        out = {}
        for exps, c in self.terms.items():
            new = [0] * n
            for j, i in pos:
                new[j] = exps[i]
            out[tuple(new)] = c
        return Poly._raw(variables, out)

    def _align(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if self.variables == other.variables:
            return self, other
        merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(merged), other.with_variables(merged)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.variables)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def used_variables(self) -> Tuple[str, ...]:
        used = [False] * len(self.variables)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self.terms)

    def constant_value(self) -> Rational:
        """Constant term (0 if absent)."""
        return self.terms.get((0,) * len(self.variables), 0)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if omitted); -1 for zero."""
        if var is None:
            return self.total_degree()
        if var not in self.variables:
            return 0 if self.terms else -1
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coefficient(self, exps: Mapping[str, int]) -> Rational:
        for name in exps:
            if name not in self.variables and exps[name]:
                return 0
        key = tuple(exps.get(v, 0) for v in self.variables)
        return self.terms.get(key, 0)

    def sorted_terms(self):
        """Terms in graded-lex order (highest first) by declared variable order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Poly":
        a, b = self._align(self._coerce(other))
        if not b.terms:
            return a
        if not a.terms:
            return b
        out = dict(a.terms)
        for exps, c in b.terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Poly._raw(a.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) + (-self)

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            return Poly._raw(self.variables, {})
        return Poly._raw(self.variables, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out: Dict[Exponent, Rational] = {}
        get = out.get
        for eb, cb in b.terms.items():
            for ea, ca in a.terms.items():
                key = tuple(i + j for i, j in zip(ea, eb))
                out[key] = get(key, 0) + ca * cb
        out = {k: v for k, v in out.items() if v}
        if len(out) > MAX_TERMS:
            raise ResourceLimitError(f"product has {len(out)} terms (cap {MAX_TERMS})")
        return Poly._raw(a.variables, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1, self.variables)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other, self.variables)
            except (TypeError, ValueError):
                return NotImplemented
        if self.variables == other.variables:
            return self.terms == other.terms
        if len(self.terms) != len(other.terms):
            return False
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            named = frozenset(
                (tuple((v, e) for v, e in zip(self.variables, exps) if e), c)
                for exps, c in self.terms.items()
            )
            self._hash = hash(named)
        return self._hash

    # -- calculus and substitution -----------------------------------------

    def partial_derivative(self, var: str) -> "Poly":
        if var not in self.variables:
            raise ValueError(f"unknown variable {var!r}")
        i = self.variables.index(var)
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                new = exps[:i] + (e - 1,) + exps[i + 1:]
                out[new] = c * e
        return Poly._raw(self.variables, out)

    def substitute(self, images: Mapping[str, "Poly"]) -> "Poly":
        """Replace each named variable by a polynomial; others are kept."""
        keep = tuple(v for v in self.variables if v not in images)
        target = keep
        for img in images.values():
            target = target + tuple(v for v in img.variables if v not in target)
        imgs = [images[v].with_variables(target) if v in images else Poly.var(v, target)
                for v in self.variables]
        powers = [dict() for _ in self.variables]
        result = Poly.zero(target)
        for exps, c in self.terms.items():
            term = Poly.const(c, target)
            for i, e in enumerate(exps):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = imgs[i] ** e
                    term = term * cache[e]
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Rational]) -> Rational:
        total = 0
        for exps, c in self.terms.items():
            t = c
            for v, e in zip(self.variables, exps):
                if e:
                    t *= as_rational(values[v]) ** e
            total += t
        return as_rational(total)

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, variables={self.variables})"


# -- functional surface ---------------------------------------------------


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def pow(p: Poly, e: int) -> Poly:  # noqa: A001 - mirrors the operation name
    return p ** e


def partial_derivative(p: Poly, var: str) -> Poly:
    return p.partial_derivative(var)


def _leading(p: Poly) -> Tuple[Exponent, Rational]:
    exps = max(p.terms)
    return exps, p.terms[exps]


def exact_divide(p: Poly, q: Poly) -> Poly:
    """Return ``r`` with ``r*q == p``.

    Raises ZeroDivisionError for ``q == 0`` and InexactDivisionError when
    ``q`` does not divide ``p``.  Uses lex-order multivariate division,
    which never stalls on exact quotients because leading terms multiply.
    """
    p, q = p._align(q)
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    lq, cq = _leading(q)
    rem = dict(p.terms)
    quot: Dict[Exponent, Rational] = {}
    while rem:
        lr = max(rem)
        cr = rem[lr]
        shift = tuple(a - b for a, b in zip(lr, lq))
        if any(s < 0 for s in shift):
            raise InexactDivisionError(f"{q} does not divide {p}")
        c = Fraction(cr) / cq
        c = c.numerator if c.denominator == 1 else c
        quot[shift] = c
        for eq, vq in q.terms.items():
            key = tuple(a + b for a, b in zip(eq, shift))
            v = rem.get(key, 0) - c * vq
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return Poly._raw(p.variables, quot)


# -- univariate algorithms --------------------------------------------------


def _univariate_variable(*polys: Poly) -> str | None:
    used = set()
    for p in polys:
        used.update(p.used_variables())
    if len(used) > 1:
        raise ValueError(f"expected univariate polynomials, got variables {sorted(used)}")
    return next(iter(used), None)


def _dense(p: Poly, var: str | None) -> list:
    if not p.terms:
        return []
    if var is None:
        return [p.constant_value()]
    i = p.variables.index(var)
    coeffs = [0] * (p.degree(var) + 1)
    for exps, c in p.terms.items():
        coeffs[exps[i]] = c
    return coeffs


def _from_dense(coeffs: Sequence, variables: Tuple[str, ...], var: str | None) -> Poly:
    if var is None:
        return Poly.const(coeffs[0] if coeffs else 0, variables)
    i = variables.index(var)
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            exps = [0] * len(variables)
            exps[i] = k
            out[tuple(exps)] = as_rational(c)
    return Poly._raw(variables, out)


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _monic(a: list) -> list:
    lc = Fraction(a[-1])
    return [Fraction(c) / lc for c in a]


def _dense_rem(a: list, b: list) -> list:
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = Fraction(a[-1]) / lb
        shift = len(a) - 1 - db
        for k in range(db + 1):
            a[shift + k] -= c * b[k]
        a.pop()
        _trim(a)
    return a


def dense_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd of two dense coefficient lists (lowest degree first)."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    while b:
        r = _dense_rem(a, b)
        a, b = b, (_monic(r) if r else [])
    return [as_rational(c) for c in _monic(a)]


def gcd_univariate(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor of two univariate polynomials."""
    f, g = f._align(g)
    var = _univariate_variable(f, g)
    if not f.terms and not g.terms:
        raise ValueError("gcd of two zero polynomials is undefined")
    return _from_dense(dense_gcd(_dense(f, var), _dense(g, var)), f.variables, var)


def univariate_degree(p: Poly) -> int:
    var = _univariate_variable(p)
    return len(_dense(p, var)) - 1


def dense_derivative(a: Sequence) -> list:
    return [k * a[k] for k in range(1, len(a))]


def squarefree_part(f: Poly) -> Poly:
    """Monic ``f / gcd(f, f')``."""
    if not f.terms:
        raise ValueError("squarefree part of the zero polynomial is undefined")
    var = _univariate_variable(f)
    a = _dense(f, var)
    d = dense_derivative(a)
    if not _trim(d):
        return Poly.const(1, f.variables)
    g = dense_gcd(a, d)
    return exact_divide(_from_dense(_monic(a), f.variables, var), _from_dense(g, f.variables, var))


def distinct_root_count(f: Poly) -> int:
    """Number of distinct roots of ``f`` over an algebraic closure."""
    if not f.terms:
        raise ValueError("the zero polynomial has infinitely many roots")
    var = _univariate_variable(f)
    a = _dense(f, var)
    if len(a) <= 1:
        return 0
    g = dense_gcd(a, dense_derivative(a))
    return (len(a) - 1) - (len(g) - 1)


def collect(polys: Iterable[Poly]) -> Poly:
    """Sum of an iterable of polynomials."""
    total = None
    for p in polys:
        total = p if total is None else total + p
    return total if total is not None else Poly.zero()
