"""Fixed-precision ring arithmetic: digit oracles, valuations, Teichmuller
lifts and the element grammar."""

import random
from fractions import Fraction

import pytest

from padicfam.errors import (
    DenominatorMismatch,
    MismatchedRings,
    NonUnit,
    ParseError,
    PrecisionExhausted,
    ZeroAtPrecision,
    ZeroResidue,
)
from padicfam.padic import RingParams, int_valuation

R38 = RingParams(3, 1, 8)
R34 = RingParams(3, 1, 4)
E36 = RingParams(3, 2, 6)
R58 = RingParams(5, 1, 8)


def test_params_validation():
    with pytest.raises(ValueError):
        RingParams(4, 1, 8)
    with pytest.raises(ValueError):
        RingParams(2, 1, 8)
    with pytest.raises(ValueError):
        RingParams(3, 0, 8)
    with pytest.raises(ValueError):
        RingParams(3, 1, 0)


def test_add_examples():
    assert R38.from_int(1) + R38.from_int(2) == R38.from_int(3)
    assert (R38.from_int(1) + R38.from_int(2)).valuation() == 1
    x = R38.from_int(17)
    assert x + R38.zero() == x
    pi = E36.uniformizer()
    s = pi + pi
    assert s.valuation() == Fraction(1, 2)
    assert s == E36.from_int(2) * pi


def test_mul_inv_examples():
    assert R38.one().inv() == R38.one()
    # oracle: extended Euclid mod 3^4
    assert pow(2, -1, 81) == 41
    assert R34.from_int(2).inv() == R34.from_int(41)
    p = R38.from_int(3)
    assert (p * p).valuation() == 2
    with pytest.raises(NonUnit):
        p.inv()
    with pytest.raises(ZeroAtPrecision):
        R38.zero().inv()


def test_integer_oracle_unramified():
    """e = 1 arithmetic must mirror plain integers mod p^N."""
    rng = random.Random(7)
    mod = 3**8
    for _ in range(200):
        a, b = rng.randrange(-mod, mod), rng.randrange(-mod, mod)
        ea, eb = R38.from_int(a), R38.from_int(b)
        assert ea + eb == R38.from_int((a + b) % mod)
        assert ea * eb == R38.from_int((a * b) % mod)
        assert -ea == R38.from_int(-a % mod)
        va = int_valuation(a % mod, 3)
        assert ea.valuation() == (va if a % mod else None)


def test_ramified_digit_oracle():
    """(a + b pi)(c + d pi) = (ac + 3bd) + (ad + bc) pi for pi^2 = 3."""
    rng = random.Random(11)
    pi = E36.uniformizer()
    for _ in range(100):
        a, b, c, d = (rng.randrange(0, 27) for _ in range(4))
        x = E36.from_int(a) + E36.from_int(b) * pi
        y = E36.from_int(c) + E36.from_int(d) * pi
        want = E36.from_int(a * c + 3 * b * d) + E36.from_int(a * d + b * c) * pi
        assert x * y == want


def test_ring_axioms_random():
    rng = random.Random(3)
    for params in (R38, E36, R58):
        mod = params.p ** params._comp_digits(0, params.prec)
        elems = []
        for _ in range(12):
            comps = [rng.randrange(mod) for _ in range(params.e)]
            x = params.zero()
            for l, c in enumerate(comps):
                x = x + params.from_int(c).scale_pi(l)
            elems.append(x)
        for _ in range(60):
            x, y, z = rng.choice(elems), rng.choice(elems), rng.choice(elems)
            assert (x + y) + z == x + (y + z)
            assert x + y == y + x
            assert x * y == y * x
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z


def test_valuation_properties():
    rng = random.Random(5)
    for _ in range(200):
        a = rng.randrange(1, 3**8)
        b = rng.randrange(1, 3**8)
        x, y = R38.from_int(a), R38.from_int(b)
        vx, vy = x.valuation(), y.valuation()
        xy = x * y
        if xy.valuation() is not None:
            assert xy.valuation() == vx + vy
        s = x + y
        if s.valuation() is not None:
            assert s.valuation() >= min(vx, vy)
            if vx != vy:
                assert s.valuation() == min(vx, vy)


def test_unit_inverse_roundtrip():
    rng = random.Random(13)
    for params in (R38, E36, R58):
        for _ in range(40):
            x = params.from_int(rng.randrange(1, params.p ** 4) * params.p + rng.randrange(1, params.p))
            assert x * x.inv() == params.one()


def test_teichmuller():
    assert R38.teichmuller(1) == R38.one()
    assert R38.teichmuller(2) == R38.from_int(3**8 - 1)
    # oracle: brute force over residues mod 125
    T = RingParams(5, 1, 3)
    sols = [x for x in range(125) if x % 5 == 2 and pow(x, 4, 125) == 1]
    assert sols == [57]
    assert T.teichmuller(2) == T.from_int(57)
    w = T.teichmuller(2)
    assert w**4 == T.one()
    assert w.residue() == 2
    for a in range(1, 5):
        for b in range(1, 5):
            assert T.teichmuller(a) * T.teichmuller(b) == T.teichmuller((a * b) % 5)
    with pytest.raises(ZeroResidue):
        R38.teichmuller(3)
    # ramified ring: same lift embedded through the unramified part
    wr = E36.teichmuller(2)
    assert wr * wr == E36.one()


def test_p_power():
    assert R38.p_power(0) == R38.one()
    assert R38.p_power(1) == R38.from_int(3)
    assert E36.p_power(Fraction(1, 2)) == E36.uniformizer()
    assert E36.p_power(Fraction(3, 2)).valuation() == Fraction(3, 2)
    with pytest.raises(DenominatorMismatch):
        R38.p_power(Fraction(1, 2))


def test_precision_tracking():
    x = R38.from_int(9) / R38.from_int(3)
    assert x == R38.from_int(3)
    assert x.precision == 7
    y = R38.from_int(1) + x
    assert y.precision == 7
    q = R34.from_int(27) / R34.from_int(27)
    assert q == R34.one() and q.precision == 1
    with pytest.raises(PrecisionExhausted):
        R34.one() / R34.from_int(27)  # the bare reciprocal underflows
    with pytest.raises(ZeroAtPrecision):
        R38.one() / R38.zero()


def test_fraction_field():
    q = R38.from_rational(Fraction(1, 3))
    assert not q.is_integral()
    assert q.valuation() == -1
    assert q.denominator_exponent() == 1
    assert q * R38.from_int(3) == R38.one()
    assert R38.from_rational(Fraction(2, 3)) == R38.from_int(2) / R38.from_int(3)
    half = R38.from_rational(Fraction(1, 2))
    assert half.is_integral()
    assert half * R38.from_int(2) == R38.one()


def test_mismatched_rings():
    with pytest.raises(MismatchedRings):
        R38.one() + R58.one()


def test_token_roundtrip():
    rng = random.Random(17)
    for params in (R38, E36):
        elems = [params.zero(), params.one(), params.uniformizer()]
        mod = params.p ** params._comp_digits(0, params.prec)
        for _ in range(40):
            x = params.from_int(rng.randrange(mod))
            if params.e > 1:
                x = x + params.from_int(rng.randrange(mod)).scale_pi(1)
            if rng.random() < 0.3:
                x = x.scale_pi(-rng.randint(1, 2))
            elems.append(x)
        for x in elems:
            tok = x.token()
            assert " " not in tok
            back = params.parse(tok, prec=x.precision)
            assert back == x
            assert back.token() == tok


def test_parse_forms():
    assert R38.parse("41") == R38.from_int(41)
    assert R38.parse("-1") == R38.from_int(3**8 - 1)
    assert R38.parse("2/3") == R38.from_rational(Fraction(2, 3))
    assert E36.parse("2+pi+pi^3") == (
        E36.from_int(2) + E36.uniformizer() + E36.uniformizer() ** 3
    )
    assert E36.parse("pi^-1*(1)") == E36.uniformizer().reciprocal()
    for bad in ("", "foo", "1+*pi", "pi^", "1/0", "2**3"):
        with pytest.raises(ParseError):
            R38.parse(bad)


def test_digits_canonical():
    x = E36.from_int(5) + E36.uniformizer()
    assert x.digits() == (2, 1, 1, 0, 0, 0)
    assert x.token() == "2+pi+pi^2"
    assert R38.from_int(14).digits() == (2, 1, 1, 0, 0, 0, 0, 0)


def test_equality_at_shared_precision():
    a = R38.from_int(3**6)
    b = (R38.from_int(3**6) + R38.from_int(3**7)).with_precision(7)
    assert a == b  # they agree mod pi^7
    assert not (a == R38.from_int(3**6 + 3**7))
