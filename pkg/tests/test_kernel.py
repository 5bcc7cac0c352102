import random

import pytest

from corecalc import QQ, AlgebraError, Field, MonomialOrder, ParseError, Ring, parse_poly
from corecalc.kernel import format_poly

from helpers import monomials, random_poly

UVW = Ring(["U", "V", "W"])
F7 = Field(7)


def test_field_rejects_composite_modulus():
    with pytest.raises(AlgebraError, match="not prime"):
        Field(8)
    assert Field(2**31 - 1).p == 2**31 - 1


def test_field_conversion_and_inverse():
    assert QQ.fmt(QQ.convert("3/6")) == "1/2"
    assert F7.convert("1/2") == 4
    assert F7.inv(3) * 3 % 7 == 1
    with pytest.raises(AlgebraError):
        F7.convert("1/7")
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.convert(0))


def test_ring_validation():
    with pytest.raises(AlgebraError, match="count mismatch"):
        Ring(["U", "V"], [1])
    with pytest.raises(AlgebraError, match="positive"):
        Ring(["U"], [0])
    with pytest.raises(AlgebraError, match="duplicate"):
        Ring(["U", "U"])
    with pytest.raises(AlgebraError, match="origin"):
        Ring(["U"], quotient=["U - 1"])


def test_parse_and_print_round_trip():
    f = UVW("3*U^2*V - 1/2*W + U**3")
    assert UVW(str(f)) == f
    assert str(UVW("0")) == "0"
    assert UVW("(U+V)^2") == UVW("U^2 + 2*U*V + V^2")


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse_poly("U + Z", UVW, line=3, col_offset=10)
    assert (e.value.line, e.value.col) == (3, 15)
    with pytest.raises(ParseError, match="exponent"):
        UVW("U^V")
    with pytest.raises(ParseError, match="division"):
        UVW("U/V")
    with pytest.raises(ParseError):
        UVW("U $ V")


def test_orders_agree_with_textbook_comparisons():
    grevlex = MonomialOrder("grevlex", 3)
    lex = MonomialOrder("lex", 3)
    # same degree, so grevlex looks at the last variable: more z means smaller
    assert grevlex.compare((1, 0, 2), (0, 3, 0)) < 0
    assert lex.compare((1, 0, 2), (0, 3, 0)) > 0
    w = MonomialOrder("wgrevlex", 2, [1, 2])
    assert w.compare((0, 1), (1, 0)) > 0


def test_rkey_negates_key_for_every_kind():
    rng = random.Random(1)
    orders = [MonomialOrder("grevlex", 3), MonomialOrder("lex", 3),
              MonomialOrder("wgrevlex", 3, [1, 2, 3]), MonomialOrder("wrevlex", 3, [2, 1, 1]),
              MonomialOrder.elimination(3, [0], [1, 1, 1])]
    for o in orders:
        for _ in range(50):
            m = tuple(rng.randint(0, 4) for _ in range(3))
            assert tuple(-x for x in o.key(m)) == tuple(o.rkey(m))


def test_orders_are_total_and_multiplicative():
    rng = random.Random(2)
    for o in (MonomialOrder("grevlex", 3), MonomialOrder("wgrevlex", 3, [3, 1, 2]),
              MonomialOrder.elimination(3, [1, 2])):
        for _ in range(200):
            a, b, c = (tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(3))
            ab = o.compare(a, b)
            shifted = o.compare(tuple(x + z for x, z in zip(a, c)), tuple(y + z for y, z in zip(b, c)))
            assert ab == shifted
            assert (ab == 0) == (a == b)
            assert o.compare(a, (0, 0, 0)) >= 0


@pytest.mark.parametrize("field", [QQ, Field(32003)], ids=["Q", "F32003"])
def test_ring_axioms_randomized(field):
    ring = Ring(["U", "V", "W"], None, field)
    rng = random.Random(11)
    for _ in range(1000):
        a, b, c = (random_poly(ring, rng, rng.randint(0, 3), rng.randint(1, 4)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == ring.zero()
        assert a * ring.one() == a
        assert (a * b).degree() == a.degree() + b.degree() or not (a and b)


def test_degree_and_homogeneity():
    R = Ring(["U", "V"], [1, 2])
    f = R("U^2 + V")
    assert f.is_homogeneous() and f.degree() == 2
    assert not R("U + V").is_homogeneous()
    assert R("U*V").degree() == 3


def test_format_uses_ring_order():
    f = UVW("W + U^2 + V")
    assert format_poly(f) == "U^2 + V + W"


def test_monomials_helper_counts():
    assert len(monomials(3, 4)) == 15
