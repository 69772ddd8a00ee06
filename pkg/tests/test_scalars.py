from fractions import Fraction

import pytest

from quartic_monoid.scalars import (EPS, QuadExt, RatFun, ScalarSyntaxError,
                                    UPoly, as_fraction, parse_scalar,
                                    poly_gcd, poly_lcm, scalar_str,
                                    squarefree_part)


def up(*coeffs):
    return UPoly("a", coeffs)


class TestUPoly:
    def test_normalization_strips_trailing_zeros(self):
        assert up(1, 2, 0, 0).coeffs == (1, 2)
        assert up(0, 0).is_zero()
        assert up().degree == -1

    def test_ring_ops(self):
        p = up(1, 2)            # 1 + 2a
        q = up(-1, 0, 3)        # -1 + 3a^2
        assert p + q == up(0, 2, 3)
        assert p - q == up(2, 2, -3)
        assert p * q == up(-1, -2, 3, 6)
        assert p ** 3 == up(1, 6, 12, 8)
        assert 2 * p == up(2, 4)

    def test_quo_rem(self):
        num = up(-1, 0, 0, 1)   # a^3 - 1
        den = up(-1, 1)         # a - 1
        q, r = num.quo_rem(den)
        assert q == up(1, 1, 1) and r.is_zero()
        q, r = up(1, 1).quo_rem(up(0, 0, 1))
        assert q.is_zero() and r == up(1, 1)
        with pytest.raises(ZeroDivisionError):
            num.quo_rem(up())

    def test_eval_and_shift(self):
        p = up(1, -1, 1)
        assert p.eval(Fraction(2)) == 3
        assert p.shift_mul(2) == up(0, 0, 1, -1, 1)
        assert up().eval(Fraction(5)) == 0

    def test_variable_mismatch(self):
        with pytest.raises(TypeError):
            up(1) + UPoly("b", (1,))

    def test_immutable(self):
        with pytest.raises(AttributeError):
            up(1).coeffs = ()


class TestGcd:
    def test_gcd_basics(self):
        p = up(-1, 0, 1)            # (a-1)(a+1)
        q = up(1, 2, 1)             # (a+1)^2
        assert poly_gcd(p, q) == up(1, 1)
        assert poly_gcd(p, up()) == p.monic()
        assert poly_gcd(up(), up()).is_zero()

    def test_gcd_is_monic(self):
        g = poly_gcd(up(0, 2), up(0, 0, 6))
        assert g == up(0, 1)

    def test_lcm(self):
        assert poly_lcm(up(-1, 1), up(1, 1)) == up(-1, 0, 1)

    def test_squarefree_part(self):
        p = up(0, 0, 1) * up(1, 1) ** 3      # a^2 (a+1)^3
        assert squarefree_part(p) == up(0, 1) * up(1, 1)

    def test_gcd_over_ratfun_tower(self):
        a = RatFun.gen("a")
        one = a / a
        x = UPoly.gen("b", one)
        ca = UPoly.const("b", a)
        cone = UPoly.const("b", one)
        p = (x - ca) * (x + cone)
        q = (x - ca) * (x - cone)
        assert poly_gcd(p, q) == (x - ca)


class TestRatFun:
    def test_reduction_and_canonical_den(self):
        r = RatFun(up(0, 2, 2), up(0, 0, 4))     # (2a+2a^2)/(4a^2)
        assert r.num == up(1, 1) * Fraction(1, 2) and r.den == up(0, 1)
        assert r.den.lead == 1

    def test_zero_has_unit_denominator(self):
        z1 = RatFun(up(), up(256))
        z2 = RatFun(up(), up(0, 16))
        assert z1 == z2 == 0
        assert z1.den == up(1) and z2.den == up(1)
        assert hash(z1) == hash(z2) == hash(Fraction(0))

    def test_field_ops(self):
        a = RatFun.gen("a")
        assert (a + 1) * (a - 1) == a * a - 1
        assert (1 / a) * a == 1
        assert (a ** 2 - 1) / (a - 1) == a + 1
        assert a - a == 0 and not (a - a)

    def test_eval(self):
        a = RatFun.gen("a")
        r = (a + 1) / (a - 1)
        assert r.eval(Fraction(3)) == 2
        with pytest.raises(ZeroDivisionError):
            r.eval(Fraction(1))

    def test_tower(self):
        a = RatFun.gen("a")
        b = RatFun.gen("b", one=a / a)
        v = (b + a) * (b - a)
        assert v == b * b - a * a
        assert v.var == "b"
        assert (a / b).num.coeff(0) == a

    def test_is_polynomial(self):
        a = RatFun.gen("a")
        assert (a ** 2 + 1).is_polynomial()
        assert not (1 / a).is_polynomial()


class TestQuadExt:
    def test_defining_relation(self):
        assert EPS * EPS == EPS - 1
        assert EPS ** 6 == 1 and EPS ** 3 == -1

    def test_conjugate_and_norm(self):
        x = QuadExt(2, -3)
        assert x.conjugate() == QuadExt(-1, 3)
        assert x * x.conjugate() == x.norm()
        assert QuadExt(1, 1).norm() == 3

    def test_inverse(self):
        x = QuadExt(5, 7)
        assert x * x ** -1 == 1
        with pytest.raises(ZeroDivisionError):
            QuadExt(0) ** -1

    def test_mixed_arithmetic(self):
        assert 2 * EPS - 1 == QuadExt(-1, 2)
        assert (1 - EPS) + EPS == 1
        assert Fraction(1, 2) / EPS == QuadExt(Fraction(1, 2), Fraction(-1, 2))

    def test_rational_detection(self):
        assert QuadExt(3, 0) == Fraction(3)
        assert QuadExt(3, 1) != Fraction(3)
        assert as_fraction(QuadExt(3, 0)) == 3
        assert as_fraction(EPS) is None


class TestParse:
    def test_round_trip(self):
        a = RatFun.gen("a")
        for val in (Fraction(-7, 3), 2 * EPS - 1, (a ** 2 - a + 1) / (a - 2),
                    QuadExt(Fraction(1, 2), Fraction(-3)), a * 0):
            assert parse_scalar(scalar_str(val)) == val

    def test_grammar(self):
        assert parse_scalar("3/4") == Fraction(3, 4)
        assert parse_scalar("-(1-2)^3") == 1
        assert parse_scalar("eps^2-eps+1") == 0
        assert parse_scalar("(a^2-1)/(a-1)") == RatFun.gen("a") + 1

    def test_errors(self):
        with pytest.raises(ScalarSyntaxError):
            parse_scalar("3 +")
        with pytest.raises(ScalarSyntaxError):
            parse_scalar("q")
        with pytest.raises(ScalarSyntaxError):
            parse_scalar("1 @ 2")
