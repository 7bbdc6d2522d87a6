import random
from fractions import Fraction

import pytest

from lnd_algebra.expr import ParseError, parse_expression
from lnd_algebra.poly import Poly


def test_simple_expression():
    p = parse_expression("x^2 + 3/2*y")
    expected = Poly.var("x", ("x", "y")) ** 2 + Poly.var("y", ("x", "y")).scale(Fraction(3, 2))
    assert p == expected


def test_whitespace_and_parentheses():
    assert parse_expression(" ( x + 1 ) ^ 2 ") == parse_expression("x^2+2*x+1")


def test_primed_identifiers():
    p = parse_expression("u'*v' - w'")
    assert p.variables == ("u'", "v'", "w'")


@pytest.mark.parametrize(
    "text, offset",
    [("x^", 2), ("x +", 3), ("(x", 2), ("x y", 2), ("3/0", 2), ("x ^ y", 4), ("x $ 1", 2)],
)
def test_syntax_errors_report_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.position == offset


def test_whitelist():
    with pytest.raises(ParseError, match="unknown identifier 'q'"):
        parse_expression("x + q", ("x", "y"))
    assert parse_expression("x", ("x", "y")).variables == ("x", "y")


def _random_expression(rng: random.Random, depth: int = 0) -> str:
    kind = rng.random()
    if depth > 3 or kind < 0.3:
        if rng.random() < 0.5:
            num = rng.randint(0, 9)
            return f"{num}/{rng.randint(1, 5)}" if rng.random() < 0.3 else str(num)
        return rng.choice(["x", "y", "z", "u'"])
    if kind < 0.55:
        return f"{_random_expression(rng, depth + 1)} {rng.choice('+-')} {_random_expression(rng, depth + 1)}"
    if kind < 0.8:
        return f"{_random_expression(rng, depth + 1)}*{_random_expression(rng, depth + 1)}"
    if kind < 0.9:
        return f"({_random_expression(rng, depth + 1)})^{rng.randint(0, 3)}"
    return f"(-({_random_expression(rng, depth + 1)}))"


def test_print_parse_round_trip():
    rng = random.Random(7)
    for _ in range(1000):
        p = parse_expression(_random_expression(rng), ("x", "y", "z", "u'"))
        text = str(p)
        q = parse_expression(text, ("x", "y", "z", "u'"))
        assert q == p
        assert str(q) == text
