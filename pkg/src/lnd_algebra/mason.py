"""Mason's inequality and searches for polynomial solutions of x^a + y^b + z^c + lam = 0.

For coprime nonconstant f, g with h = -(f+g) nonconstant,

    max(deg f, deg g, deg h) < N(f*g*h),

where N counts distinct roots over an algebraic closure.  Its corollaries
rule out nonconstant coprime (f, g, h) with f^a + g^b + h^c + lam = 0 when
either lam = 0 and 1/a + 1/b + 1/c <= 1, or a,b,c >= 4 and
1/(a-3) + 1/(b-3) + 1/(c-3) <= 1/2.  :func:`fermat_search` looks for
counterexamples in a finite box, which must come back empty in those
regimes.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .poly import (
    Poly,
    Rational,
    ResourceLimitError,
    _univariate_variable,
    as_rational,
    distinct_root_count,
    gcd_univariate,
    univariate_degree,
)
from .rings import cor2_inequality

__all__ = [
    "MasonReport",
    "mason_check",
    "random_coprime_pair",
    "SearchConfig",
    "SearchLimitExceeded",
    "FermatSolution",
    "fermat_search",
    "brute_force_search",
    "Cor2Report",
    "HypothesisError",
    "cor2_degree_bound",
    "to_jsonl",
]


class HypothesisError(ValueError):
    """Inputs violate the hypotheses of the statement being checked."""


class SearchLimitExceeded(ResourceLimitError):
    """The search stopped at its candidate or time cap before finishing."""


@dataclass(frozen=True)
class MasonReport:
    max_degree: int
    root_count: int
    applicable: bool
    holds: bool

    def __str__(self) -> str:
        verdict = "holds" if self.holds else "fails"
        gate = "applicable" if self.applicable else "not applicable"
        return f"{gate}: max deg {self.max_degree} < N(fgh) = {self.root_count}: {verdict}"


def gcd3(f: Poly, g: Poly, h: Poly) -> Poly:
    return gcd_univariate(gcd_univariate(f, g), h)


def mason_check(f: Poly, g: Poly) -> MasonReport:
    """Evaluate Mason's inequality for f, g and h = -(f + g)."""
    f, g = f._align(g)
    _univariate_variable(f, g)  # raises on a variable mismatch
    h = -(f + g)
    polys = (f, g, h)
    nonzero = all(p for p in polys)
    degs = [univariate_degree(p) if p else -1 for p in polys]
    applicable = nonzero and all(d > 0 for d in degs) and gcd_univariate(f, g).is_constant()
    max_degree = max(degs)
    root_count = distinct_root_count(f * g * h) if nonzero else 0
    return MasonReport(max_degree, root_count, applicable, max_degree < root_count)


def random_poly(rng: random.Random, degree: int, coefficients: Sequence[int], var: str = "T") -> Poly:
    nonzero = [c for c in coefficients if c]
    coeffs = [rng.choice(coefficients) for _ in range(degree)] + [rng.choice(nonzero)]
    return Poly.from_coefficients(coeffs, var)


def random_coprime_pair(rng: random.Random, max_degree: int = 12, coefficients: Sequence[int] = range(-9, 10)):
    """Random nonconstant f, g with gcd(f, g) = 1."""
    coefficients = list(coefficients)
    while True:
        f = random_poly(rng, rng.randint(1, max_degree), coefficients)
        g = random_poly(rng, rng.randint(1, max_degree), coefficients)
        if gcd_univariate(f, g).is_constant():
            return f, g


# -- Fermat-type searches --------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    a: int
    b: int
    c: int
    lam: Rational = 0
    degree_bound: int = 2
    coefficient_set: Tuple[Rational, ...] = (-1, 0, 1)
    mode: str = "exhaustive"
    samples: int = 10000
    seed: int = 0
    max_candidates: int = 10**7
    time_limit: Optional[float] = None
    workers: int = 1
    var: str = "T"

    def __post_init__(self):
        object.__setattr__(self, "lam", as_rational(self.lam))
        coeffs = tuple(sorted({as_rational(c) for c in self.coefficient_set}))
        object.__setattr__(self, "coefficient_set", coeffs)
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("exponents must be positive")
        if self.degree_bound < 1:
            raise ValueError("degree_bound must be >= 1")
        if not any(coeffs):
            raise ValueError("coefficient_set must contain a nonzero element")
        if self.mode not in ("exhaustive", "randomized"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def reciprocal_sum(self) -> Fraction:
        return Fraction(1, self.a) + Fraction(1, self.b) + Fraction(1, self.c)

    def regime(self) -> Dict[str, bool]:
        """Which no-solution statements apply to this configuration.

        ``cor1`` uses the non-strict 1/a+1/b+1/c <= 1; ``cor1_strict``
        flags the strict form separately.
        """
        cor1 = self.lam == 0 and self.reciprocal_sum <= 1
        cor2 = cor2_inequality(self.a, self.b, self.c)
        return {
            "cor1": cor1,
            "cor1_strict": self.lam == 0 and self.reciprocal_sum < 1,
            "cor2": cor2,
            "no_solutions_expected": cor1 or cor2,
        }


@dataclass(frozen=True)
class FermatSolution:
    f: Poly
    g: Poly
    h: Poly
    index: int = field(default=0, compare=False)
    verified: bool = False

    @property
    def degrees(self) -> Tuple[int, int, int]:
        return tuple(univariate_degree(p) for p in (self.f, self.g, self.h))

    def record(self) -> dict:
        return {
            "f": str(self.f),
            "g": str(self.g),
            "h": str(self.h),
            "degrees": list(self.degrees),
            "verified": self.verified,
        }


def _candidates(cfg: SearchConfig) -> List[Tuple]:
    """Nonconstant coefficient tuples (lowest degree first), degree ascending."""
    out = []
    for d in range(1, cfg.degree_bound + 1):
        for lower in itertools.product(cfg.coefficient_set, repeat=d):
            for lead in cfg.coefficient_set:
                if lead:
                    out.append(tuple(lower) + (lead,))
    return out


def _dense_mul(p: Sequence, q: Sequence) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _dense_pow(p: Sequence, e: int) -> list:
    result = [1]
    for _ in range(e):
        result = _dense_mul(result, p)
    return result


def _key(coeffs: Sequence) -> Tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(as_rational(c) for c in coeffs)


def _tables(cfg: SearchConfig):
    cands = _candidates(cfg)
    fpow = [_dense_pow(p, cfg.a) for p in cands]
    gpow = [_dense_pow(p, cfg.b) for p in cands]
    hroots: Dict[Tuple, List[int]] = {}
    for k, p in enumerate(cands):
        hroots.setdefault(_key(_dense_pow(p, cfg.c)), []).append(k)
    return cands, fpow, gpow, hroots


def _solve_pair(cfg, tables, i: int, j: int) -> List[Tuple[int, int, int]]:
    _, fpow, gpow, hroots = tables
    fa, gb = fpow[i], gpow[j]
    if len(fa) < len(gb):
        fa, gb = gb, fa
    resid = [-x for x in fa]
    for k, v in enumerate(gb):
        resid[k] -= v
    resid[0] -= cfg.lam
    return [(i, j, k) for k in hroots.get(_key(resid), ())]


def _make_solution(cfg: SearchConfig, cands, triple, n_cands: int) -> Optional[FermatSolution]:
    i, j, k = triple
    f, g, h = (Poly.from_coefficients(cands[t], cfg.var) for t in triple)
    if not gcd3(f, g, h).is_constant():
        return None
    verified = (f ** cfg.a + g ** cfg.b + h ** cfg.c + cfg.lam).is_zero()
    return FermatSolution(f, g, h, index=i * n_cands + j, verified=verified)


def _search_rows(cfg: SearchConfig, rows: Sequence[int]) -> List[Tuple[int, int, int]]:
    tables = _tables(cfg)
    n = len(tables[0])
    hits = []
    for i in rows:
        for j in range(n):
            hits.extend(_solve_pair(cfg, tables, i, j))
    return hits


def fermat_search(cfg: SearchConfig) -> List[FermatSolution]:
    """All nonconstant, setwise-coprime (f, g, h) in the box with f^a + g^b + h^c + lam = 0.

    f and g range over every nonconstant polynomial with degree at most
    ``degree_bound`` and coefficients from ``coefficient_set``; h is then
    looked up among the c-th powers of the same box, so each (f, g) pair
    settles all candidate triples containing it.  Raises
    :class:`SearchLimitExceeded` when the pair count or time cap is hit.
    """
    start = time.monotonic()
    tables = _tables(cfg)
    cands = tables[0]
    n = len(cands)
    if cfg.mode == "exhaustive":
        total = n * n
        if total > cfg.max_candidates:
            raise SearchLimitExceeded(f"{total} candidate pairs exceed cap {cfg.max_candidates}")
        if cfg.workers > 1:
            chunks = [list(range(w, n, cfg.workers)) for w in range(cfg.workers)]
            with ProcessPoolExecutor(cfg.workers) as pool:
                parts = pool.map(_search_rows, [cfg] * len(chunks), chunks)
                hits = [h for part in parts for h in part]
            if cfg.time_limit is not None and time.monotonic() - start > cfg.time_limit:
                raise SearchLimitExceeded(f"time limit {cfg.time_limit}s exceeded")
        else:
            hits = []
            for i in range(n):
                if cfg.time_limit is not None and time.monotonic() - start > cfg.time_limit:
                    raise SearchLimitExceeded(f"time limit {cfg.time_limit}s exceeded after {i * n} pairs")
                for j in range(n):
                    hits.extend(_solve_pair(cfg, tables, i, j))
    else:
        if cfg.samples > cfg.max_candidates:
            raise SearchLimitExceeded(f"{cfg.samples} samples exceed cap {cfg.max_candidates}")
        rng = random.Random(cfg.seed)
        pairs = sorted({(rng.randrange(n), rng.randrange(n)) for _ in range(cfg.samples)})
        hits = []
        for t, (i, j) in enumerate(pairs):
            if cfg.time_limit is not None and t % 1024 == 0 and time.monotonic() - start > cfg.time_limit:
                raise SearchLimitExceeded(f"time limit {cfg.time_limit}s exceeded")
            hits.extend(_solve_pair(cfg, tables, i, j))
    hits.sort()
    out = []
    for triple in hits:
        sol = _make_solution(cfg, cands, triple, n)
        if sol is not None:
            out.append(sol)
    return out


def brute_force_search(cfg: SearchConfig) -> List[Tuple[Poly, Poly, Poly]]:
    """Direct triple enumeration with Poly arithmetic; an oracle for tiny boxes."""
    polys = [Poly.from_coefficients(c, cfg.var) for c in _candidates(cfg)]
    if len(polys) ** 3 > cfg.max_candidates:
        raise SearchLimitExceeded("box too large for brute force")
    out = []
    for f, g, h in itertools.product(polys, repeat=3):
        if (f ** cfg.a + g ** cfg.b + h ** cfg.c + cfg.lam).is_zero() and gcd3(f, g, h).is_constant():
            out.append((f, g, h))
    return out


def to_jsonl(solutions: Iterable[FermatSolution]) -> str:
    return "".join(json.dumps(s.record()) + "\n" for s in solutions)


# -- the degree bound on w = gcd(f^(a-1) f', g^(b-1) g', h^(c-1) h') ----------------


@dataclass(frozen=True)
class Cor2Report:
    deg_w: int
    bound: int
    holds: bool


def cor2_degree_bound(f: Poly, g: Poly, h: Poly, a: int, b: int, c: int) -> Cor2Report:
    """Check deg gcd(f^(a-1) f', g^(b-1) g', h^(c-1) h') <= deg f + deg g + deg h - 3."""
    f, g = f._align(g)
    f, h = f._align(h)
    g, h = g._align(h)
    var = _univariate_variable(f, g, h)
    if var is None or any(univariate_degree(p) < 1 for p in (f, g, h)):
        raise HypothesisError("f, g, h must all be nonconstant")
    if not gcd3(f, g, h).is_constant():
        raise HypothesisError("f, g, h must have no common factor")
    parts = [p ** (e - 1) * p.partial_derivative(var) for p, e in ((f, a), (g, b), (h, c))]
    w = gcd3(*parts)
    deg_w = univariate_degree(w)
    bound = sum(univariate_degree(p) for p in (f, g, h)) - 3
    return Cor2Report(deg_w, bound, deg_w <= bound)
