from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lnd_algebra.poly import (
    InexactDivisionError,
    Poly,
    ResourceLimitError,
    distinct_root_count,
    exact_divide,
    gcd_univariate,
    set_max_terms,
    squarefree_part,
)
import lnd_algebra.poly as polymod

T = Poly.var("T")
x, y = Poly.var("x", ("x", "y")), Poly.var("y", ("x", "y"))


def P(text, variables=None):
    return Poly.parse(text, variables)


def to_sympy(p: Poly):
    syms = sympy.symbols(p.variables) if p.variables else ()
    if len(p.variables) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    expr = 0
    for exps, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for s, e in zip(syms, exps):
            term *= s ** e
        expr += term
    return expr, syms


# -- examples ------------------------------------------------------------------


def test_additive_inverse():
    assert (x + (-x)).is_zero()
    assert x - x == 0


def test_multiplicative_identity():
    p = P("3*x^2*y - 1/2")
    assert p * Poly.const(1) == p


def test_pow_matches_repeated_mul():
    p = T + 1
    assert p ** 2 == p * p
    assert p ** 2 == P("T^2 + 2*T + 1")
    assert p ** 0 == 1


def test_partial_derivatives():
    assert (T ** 3).partial_derivative("T") == 3 * T ** 2
    assert Poly.const(5, ("T",)).partial_derivative("T").is_zero()
    assert (x ** 2 * y + y).partial_derivative("x") == 2 * x * y


def test_partial_derivative_unknown_variable():
    with pytest.raises(ValueError):
        T.partial_derivative("q")


def test_gcd_examples():
    assert gcd_univariate(T ** 2 - 1, T - 1) == T - 1
    assert gcd_univariate(T, Poly.const(1)) == 1
    f = (T - 1) ** 2 * (T + 3)
    g = (T - 1) * (T + 5)
    # common factors of {T-1 (x2), T+3} and {T-1, T+5}: just T-1
    assert gcd_univariate(f, g) == T - 1


def test_gcd_both_zero():
    with pytest.raises(ValueError):
        gcd_univariate(Poly.zero(("T",)), Poly.zero(("T",)))


def test_gcd_rejects_multivariate():
    with pytest.raises(ValueError):
        gcd_univariate(x, y)


def test_distinct_root_count_examples():
    assert distinct_root_count(T ** 3) == 1
    assert distinct_root_count((T - 1) * (T - 2)) == 2
    assert distinct_root_count((T ** 2 + 1) ** 2 * (T - 1)) == 3
    with pytest.raises(ValueError):
        distinct_root_count(Poly.zero(("T",)))


def test_squarefree_part():
    assert squarefree_part((T - 1) ** 3 * (T + 2) ** 2) == (T - 1) * (T + 2)


def test_exact_divide_examples():
    assert exact_divide(T ** 2 - 1, T - 1) == T + 1
    p = P("x^2*y - 3")
    assert exact_divide(p, Poly.const(1)) == p
    q = exact_divide((T - 1) ** 2 * (T + 3), T - 1)
    assert q * (T - 1) == (T - 1) ** 2 * (T + 3)
    assert q == P("T^2 + 2*T - 3")


def test_exact_divide_errors_are_distinct():
    with pytest.raises(ZeroDivisionError):
        exact_divide(T, Poly.zero(("T",)))
    with pytest.raises(InexactDivisionError):
        exact_divide(T ** 2 + 1, T - 1)


def test_printing_is_graded_lex():
    assert str(P("y + x^2 - 3/2*x*y + 1", ("x", "y"))) == "x^2 - 3/2*x*y + y + 1"
    assert str(-(x ** 2) - y ** 3) == "-y^3 - x^2"
    assert str(Poly.zero()) == "0"


def test_alignment_by_name():
    a = Poly.var("x", ("x", "y"))
    b = Poly.var("x", ("y", "x"))
    assert a == b and hash(a) == hash(b)
    assert (a + Poly.var("z")).variables == ("x", "y", "z")


def test_term_cap():
    old = polymod.MAX_TERMS
    try:
        set_max_terms(10)
        with pytest.raises(ResourceLimitError):
            (x + y + 1) ** 6
    finally:
        set_max_terms(old)


def test_floats_rejected():
    with pytest.raises(TypeError):
        Poly.const(0.5)


# -- properties ---------------------------------------------------------------------

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
univ = st.lists(coeff, min_size=1, max_size=7).map(lambda cs: Poly.from_coefficients(cs))
nonzero_univ = univ.filter(lambda p: not p.is_zero())
bivar = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff, max_size=6
).map(lambda d: Poly(("x", "y"), d))


@given(nonzero_univ, nonzero_univ)
@settings(max_examples=150, deadline=None)
def test_gcd_properties(f, g):
    d = gcd_univariate(f, g)
    exact_divide(f, d)
    exact_divide(g, d)
    assert d == gcd_univariate(g, f)
    lead = d.terms[max(d.terms)]
    assert lead == 1


@given(nonzero_univ, nonzero_univ)
@settings(max_examples=60, deadline=None)
def test_gcd_against_sympy(f, g):
    ef, (s,) = to_sympy(f.with_variables(("T",)))
    eg, _ = to_sympy(g.with_variables(("T",)))
    expected = sympy.Poly(sympy.gcd(ef, eg), s).monic()
    got, _ = to_sympy(gcd_univariate(f, g).with_variables(("T",)))
    assert sympy.expand(sympy.Poly(got, s).as_expr() - expected.as_expr()) == 0


@given(nonzero_univ)
@settings(max_examples=150, deadline=None)
def test_root_count_bounds(f):
    n = distinct_root_count(f)
    deg = f.degree("T") if "T" in f.variables else 0
    assert n <= deg
    fp = f.partial_derivative("T")
    coprime = fp.is_zero() and deg == 0 or (not fp.is_zero() and gcd_univariate(f, fp).is_constant())
    assert (n == deg) == coprime


@given(nonzero_univ)
@settings(max_examples=60, deadline=None)
def test_root_count_against_sympy(f):
    ef, (s,) = to_sympy(f.with_variables(("T",)))
    expected = sympy.degree(sympy.sqf_part(ef), s) if f.degree("T") > 0 else 0
    assert distinct_root_count(f) == expected


@given(bivar, bivar.filter(lambda q: not q.is_zero()))
@settings(max_examples=150, deadline=None)
def test_exact_divide_roundtrip(p, q):
    assert exact_divide(p * q, q) == p


@given(bivar, bivar, bivar)
@settings(max_examples=150, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) - q == p
    assert ((p + q) - q).terms == p.terms
