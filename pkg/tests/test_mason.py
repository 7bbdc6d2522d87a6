import random

import pytest
import sympy

from lnd_algebra.mason import (
    HypothesisError,
    SearchConfig,
    SearchLimitExceeded,
    brute_force_search,
    cor2_degree_bound,
    fermat_search,
    gcd3,
    mason_check,
    random_coprime_pair,
    random_poly,
    to_jsonl,
)
from lnd_algebra.poly import Poly

T = Poly.var("T")
ONE = Poly.const(1, ("T",))
s = sympy.Symbol("T")


def sym(p: Poly):
    return sympy.sympify(str(p).replace("^", "**"), locals={"T": s})


def distinct_irreducible_degree(p: Poly) -> int:
    """Sum of degrees of the distinct irreducible factors over Q (sympy)."""
    _, factors = sympy.factor_list(sym(p), s)
    return sum(sympy.degree(f, s) for f, _ in factors)


def test_mason_example_applicable():
    rep = mason_check(T ** 2, 2 * T + 1)
    assert rep.applicable and rep.holds
    assert rep.max_degree == 2
    h = -(T ** 2 + 2 * T + 1)
    assert rep.root_count == distinct_irreducible_degree(T ** 2 * (2 * T + 1) * h) == 3


def test_mason_positive_degree_gate():
    rep = mason_check(T, ONE)
    assert not rep.applicable


def test_mason_coprimality_gate():
    rep = mason_check(T ** 3, T)
    assert not rep.applicable
    assert gcd3(T ** 3, T, -(T ** 3 + T)) == T


def test_mason_variable_mismatch():
    with pytest.raises(ValueError):
        mason_check(T, Poly.var("S"))


def test_mason_root_count_matches_sympy():
    rng = random.Random(3)
    for _ in range(40):
        f, g = random_coprime_pair(rng, 6, range(-4, 5))
        rep = mason_check(f, g)
        assert rep.root_count == distinct_irreducible_degree(f * g * -(f + g))
        if rep.applicable:
            assert rep.holds


def test_mason_random_suite_small():
    rng = random.Random(11)
    applicable = 0
    for _ in range(200):
        rep = mason_check(*random_coprime_pair(rng, 8))
        if rep.applicable:
            applicable += 1
            assert rep.holds, rep
    assert applicable > 150


# -- searches ---------------------------------------------------------------------------


def test_search_cor1_example_is_empty():
    cfg = SearchConfig(2, 3, 7, 0, degree_bound=3, coefficient_set=range(-2, 3))
    assert cfg.regime()["cor1"] and cfg.regime()["cor1_strict"]
    assert fermat_search(cfg) == []


def test_search_cor2_example_is_empty():
    cfg = SearchConfig(7, 11, 13, 1, degree_bound=2, coefficient_set=(-1, 0, 1))
    assert cfg.regime()["cor2"]
    assert fermat_search(cfg) == []


def test_search_linear_exponent_has_solutions():
    cfg = SearchConfig(1, 2, 3, 0, degree_bound=3, coefficient_set=range(-2, 3))
    assert not cfg.regime()["no_solutions_expected"]
    sols = fermat_search(cfg)
    assert sols
    g, h = T + 1, T
    assert any(sol.f == -(g ** 2 + h ** 3) and sol.g == g and sol.h == h for sol in sols)
    for sol in sols:
        assert sol.verified
        assert (sol.f + sol.g ** 2 + sol.h ** 3).is_zero()
        assert gcd3(sol.f, sol.g, sol.h).is_constant()
        assert min(sol.degrees) >= 1
    indices = [sol.index for sol in sols]
    assert indices == sorted(indices)


@pytest.mark.parametrize(
    "cfg",
    [
        SearchConfig(1, 1, 2, 0, degree_bound=2, coefficient_set=(-1, 0, 1)),
        SearchConfig(1, 2, 2, -1, degree_bound=2, coefficient_set=(-1, 0, 1)),
        SearchConfig(2, 2, 2, 0, degree_bound=1, coefficient_set=(-1, 0, 1, 2)),
        SearchConfig(1, 1, 1, "1/2", degree_bound=1, coefficient_set=("-1/2", 0, 1)),
    ],
)
def test_search_matches_brute_force(cfg):
    fast = {(sol.f, sol.g, sol.h) for sol in fermat_search(cfg)}
    slow = set(brute_force_search(cfg))
    assert fast == slow


def test_workers_do_not_change_results():
    cfg = SearchConfig(1, 1, 2, 0, degree_bound=2, coefficient_set=(-1, 0, 1))
    par = SearchConfig(1, 1, 2, 0, degree_bound=2, coefficient_set=(-1, 0, 1), workers=2)
    assert fermat_search(cfg) == fermat_search(par)


def test_randomized_mode_is_seeded_subset():
    kw = dict(degree_bound=2, coefficient_set=(-1, 0, 1), mode="randomized", samples=200)
    a = fermat_search(SearchConfig(1, 1, 2, 0, seed=5, **kw))
    b = fermat_search(SearchConfig(1, 1, 2, 0, seed=5, **kw))
    full = fermat_search(SearchConfig(1, 1, 2, 0, degree_bound=2, coefficient_set=(-1, 0, 1)))
    assert a == b
    assert set(map(lambda t: (t.f, t.g, t.h), a)) <= set(map(lambda t: (t.f, t.g, t.h), full))


def test_limits_are_distinct_from_empty_results():
    with pytest.raises(SearchLimitExceeded):
        fermat_search(SearchConfig(2, 3, 7, 0, degree_bound=3, coefficient_set=range(-2, 3), max_candidates=1000))
    with pytest.raises(SearchLimitExceeded):
        fermat_search(SearchConfig(2, 3, 7, 0, degree_bound=3, coefficient_set=range(-2, 3), time_limit=0.0))


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(2, 3, 7, 0, degree_bound=0)
    with pytest.raises(ValueError):
        SearchConfig(2, 3, 7, 0, coefficient_set=(0,))


def test_regime_boundary_flags():
    # 1/2 + 1/3 + 1/6 = 1: non-strict regime only
    cfg = SearchConfig(2, 3, 6, 0)
    assert cfg.regime()["cor1"] and not cfg.regime()["cor1_strict"]


def test_jsonl_records():
    cfg = SearchConfig(1, 1, 2, 0, degree_bound=2, coefficient_set=(-1, 0, 1))
    lines = to_jsonl(fermat_search(cfg)).splitlines()
    import json

    rec = json.loads(lines[0])
    assert set(rec) == {"f", "g", "h", "degrees", "verified"}


# -- degree bound on w ------------------------------------------------------------------


def test_cor2_bound_example():
    rep = cor2_degree_bound(T, T + 1, T + 2, 4, 4, 4)
    expected_w = sympy.gcd(sympy.gcd(sym(T ** 3), sym((T + 1) ** 3)), sym((T + 2) ** 3))
    assert rep.deg_w == sympy.degree(expected_w, s) == 0
    assert rep.bound == 0 and rep.holds


def test_cor2_distinct_linear_factors_give_constant_w():
    rep = cor2_degree_bound(T * (T - 1), (T + 2) * (T + 3), (T - 5) * (T + 7), 5, 6, 7)
    assert rep.deg_w == 0 and rep.holds


def test_cor2_hypothesis_errors():
    with pytest.raises(HypothesisError):
        cor2_degree_bound(ONE, T, T + 1, 4, 4, 4)
    with pytest.raises(HypothesisError):
        cor2_degree_bound(T, T * (T + 1), T * (T + 2), 4, 4, 4)


def test_cor2_random_triples():
    rng = random.Random(2024)
    checked = 0
    while checked < 1000:
        f, g, h = (random_poly(rng, rng.randint(1, 5), range(-3, 4)) for _ in range(3))
        if not gcd3(f, g, h).is_constant():
            continue
        a, b, c = (rng.randint(4, 9) for _ in range(3))
        assert cor2_degree_bound(f, g, h, a, b, c).holds
        checked += 1
