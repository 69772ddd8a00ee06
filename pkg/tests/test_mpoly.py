from fractions import Fraction

import pytest

from quartic_monoid.mpoly import (MultiPoly, NonDivisibleError, monomials,
                                  parse_poly)
from quartic_monoid.scalars import EPS, RatFun

V = ("x", "y", "z", "t")


def pp(text, params=None):
    return parse_poly(text, V, params)


class TestBasics:
    def test_zero_coefficients_dropped(self):
        p = MultiPoly(V, {(1, 0, 0, 0): Fraction(0), (0, 1, 0, 0): 2})
        assert p.sorted_terms() == [((0, 1, 0, 0), Fraction(2))]

    def test_immutable(self):
        with pytest.raises(AttributeError):
            pp("x").terms = {}

    def test_degree_and_homogeneity(self):
        assert pp("x*y^2 + t^3").degree() == 3
        assert pp("x*y^2 + t^3").is_homogeneous()
        assert not pp("x + t^3").is_homogeneous()
        assert pp("0").is_zero() and pp("0").degree() == -1

    def test_ring_ops(self):
        x, y = pp("x"), pp("y")
        assert (x + y) * (x - y) == x * x - y * y
        assert (x + y) ** 2 == pp("x^2 + 2*x*y + y^2")
        assert 3 * x - x == pp("2*x")
        assert pp("x^2") / 2 == pp("x^2/2")

    def test_constant_value(self):
        assert pp("7/2").constant_value() == Fraction(7, 2)
        with pytest.raises(ValueError):
            pp("x").constant_value()


class TestCalculusAndDivision:
    def test_partial_and_gradient(self):
        p = pp("x^2*y + z*t")
        assert p.partial("x") == pp("2*x*y")
        assert p.gradient() == (pp("2*x*y"), pp("x^2"), pp("t"), pp("z"))

    def test_exact_divide(self):
        num = pp("x^2 - y^2")
        assert num.exact_divide(pp("x - y")) == pp("x + y")
        with pytest.raises(NonDivisibleError):
            num.exact_divide(pp("x + t"))
        with pytest.raises(ZeroDivisionError):
            num.exact_divide(pp("0"))

    def test_substitute(self):
        p = pp("x^2 + y*z")
        q = p.substitute({"z": pp("-x - y")})
        assert q == pp("x^2 - x*y - y^2")
        r = pp("x + t").substitute({"x": Fraction(2), "t": Fraction(1)},
                                   into_vars=V)
        assert r == pp("3")

    def test_evaluate(self):
        p = pp("x*t - y*z")
        vals = {"x": Fraction(2), "y": 3, "z": Fraction(1, 2), "t": 1}
        assert p.evaluate(vals) == Fraction(1, 2)
        a = RatFun.gen("a")
        assert pp("x^2").evaluate({"x": a, "y": 0, "z": 0, "t": 0}) == a * a


class TestVectorInterface:
    def test_monomials_graded_lex(self):
        quartics = monomials(4, 4)
        assert len(quartics) == 35
        assert quartics[0] == (4, 0, 0, 0) and quartics[-1] == (0, 0, 0, 4)
        assert quartics == sorted(quartics, reverse=True)

    def test_coeff_vector(self):
        vec = pp("x^4 - 2*t^4").coeff_vector(4)
        assert len(vec) == 35
        assert vec[0] == 1 and vec[-1] == -2
        assert not any(vec[1:-1])
        with pytest.raises(ValueError):
            pp("x + y^2").coeff_vector(2)

    def test_proportional(self):
        p = pp("x^2 - y*t")
        assert p.proportional(pp("-3*x^2 + 3*y*t"))
        assert not p.proportional(pp("x^2 + y*t"))
        assert not p.proportional(pp("x^2"))
        assert pp("0").proportional(pp("0"))

    def test_canonical(self):
        assert pp("2*x^2 - 4*y*t").canonical() == pp("x^2 - 2*y*t")


class TestParsingAndSerialization:
    def test_parse_with_params(self):
        a = RatFun.gen("a")
        p = parse_poly("a*x + (a+1)*y", V, {"a": a})
        assert p.coefficient((1, 0, 0, 0)) == a
        assert p.coefficient((0, 1, 0, 0)) == a + 1

    def test_parse_with_eps(self):
        p = parse_poly("eps*x^2", V, {"eps": EPS})
        assert p.coefficient((2, 0, 0, 0)) == EPS

    def test_str_round_trip(self):
        a = RatFun.gen("a")
        samples = [pp("x^4 - 2*x*y*z*t + t^4"),
                   parse_poly("(a^2-1)*x*y - z^2/3", V, {"a": a}),
                   pp("-x - y"), pp("0")]
        for p in samples:
            assert parse_poly(str(p), V, {"a": a}) == p

    def test_serialize_deterministic(self):
        p = pp("x*t^2 + y^3")
        assert p.serialize() == [[[1, 0, 0, 2], "1"], [[0, 3, 0, 0], "1"]]
