"""Exact scalar arithmetic for the toolkit.

Three interchangeable scalar kinds, all immutable and hashable:

* ``fractions.Fraction``   -- plain rationals,
* ``RatFun``               -- rational functions in one named parameter over a
                              base field (nesting RatFun over RatFun yields the
                              field Q(a)(b) used for two-parameter work),
* ``QuadExt``              -- the quadratic extension Q(eps) with the reduction
                              rule eps^2 = eps - 1 (eps is a primitive sixth
                              root of unity).

``RatFun`` keeps the invariant den monic, gcd(num, den) = 1, den != 0.
Mixing ``RatFun`` with ``QuadExt`` (or two different parameter names) is a
``TypeError``; ints and Fractions coerce into either kind.

The module also provides the textual scalar grammar used by the CLI:
``p/q`` for rationals, ``(poly)/(poly)`` in the parameter ``a`` for rational
functions, ``c0+c1*eps`` for the quadratic extension.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[Fraction, "RatFun", "QuadExt"]

_RAT = (int, Fraction)


def _inv(c):
    """Multiplicative inverse of a nonzero field element."""
    if isinstance(c, _RAT):
        return Fraction(1) / c
    return c ** -1


class UPoly:
    """Dense univariate polynomial over a field, ascending coefficients.

    The coefficient field is whatever the entries support: Fraction for the
    ground field, RatFun for towers.  No trailing zero coefficients are kept.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Iterable = ()):
        cs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, var: str, c) -> "UPoly":
        return cls(var, (c,))

    @classmethod
    def gen(cls, var: str, one=Fraction(1)) -> "UPoly":
        return cls(var, (one * 0, one))

    # -- queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 convention for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self):
        """Value as a field element; only valid for constant polynomials."""
        if len(self.coeffs) > 1:
            raise ValueError("not a constant polynomial")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- ring operations ----------------------------------------------

    def _check(self, other: "UPoly"):
        if self.var != other.var:
            raise TypeError(
                f"polynomials in different variables: {self.var!r} vs {other.var!r}")

    def __add__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly(self.var, out)

    def __neg__(self):
        return UPoly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UPoly):
            self._check(other)
            if not self.coeffs or not other.coeffs:
                return UPoly(self.var, ())
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, ci in enumerate(self.coeffs):
                if not ci:
                    continue
                for j, cj in enumerate(other.coeffs):
                    if cj:
                        out[i + j] = out[i + j] + ci * cj
            return UPoly(self.var, out)
        # scalar multiple
        return UPoly(self.var, tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UPoly(self.var, (self.lead * 0 + 1,)) if self.coeffs else UPoly(self.var, (Fraction(1),))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def quo_rem(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        """Exact field division with remainder."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        rem = list(self.coeffs)
        dlead = _inv(other.lead)
        dn = other.degree
        while len(rem) - 1 >= dn and rem:
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < dn or not rem:
                break
            k = len(rem) - 1 - dn
            c = rem[-1] * dlead
            q[k] = c
            for i, dc in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * dc
            rem.pop()
        return UPoly(self.var, q), UPoly(self.var, rem)

    def __mod__(self, other):
        return self.quo_rem(other)[1]

    def __floordiv__(self, other):
        return self.quo_rem(other)[0]

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        il = _inv(self.lead)
        return UPoly(self.var, tuple(c * il for c in self.coeffs))

    def derivative(self) -> "UPoly":
        return UPoly(self.var, tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def eval(self, x):
        """Horner evaluation at a field element."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return Fraction(0) if acc is None else acc

    def shift_mul(self, k: int) -> "UPoly":
        """Multiply by var**k."""
        if self.is_zero():
            return self
        return UPoly(self.var, (Fraction(0),) * k + self.coeffs)

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, _RAT):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.var, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"UPoly({self.var!r}, {self.coeffs!r})"

    def __str__(self):
        return poly_str(self)


def _frac_coeffs(p: UPoly) -> bool:
    return all(isinstance(c, _RAT) for c in p.coeffs)


def _int_content(cs: list[int]) -> int:
    from math import gcd
    g = 0
    for c in cs:
        g = gcd(g, c)
    return g or 1


def _to_int_coeffs(p: UPoly) -> list[int]:
    denom = 1
    for c in p.coeffs:
        denom = denom * c.denominator // _int_content([denom, c.denominator])
    ints = [int(c * denom) for c in p.coeffs]
    g = _int_content(ints)
    return [c // g for c in ints]


def _int_prem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of primitive integer coefficient lists."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg:
        if f[-1] == 0:
            f.pop()
            continue
        lf = f[-1]
        k = len(f) - 1 - dg
        f = [c * lg for c in f]
        for i in range(dg + 1):
            f[k + i] -= lf * g[i]
        f.pop()
        while f and f[-1] == 0:
            f.pop()
    return f


def poly_gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd; gcd(p, 0) is the monic normalization of p, gcd(0,0) = 0."""
    if p.var != q.var:
        raise TypeError("gcd of polynomials in different variables")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if _frac_coeffs(p) and _frac_coeffs(q):
        # primitive PRS over the integers, much lighter than Fraction Euclid
        f, g = _to_int_coeffs(p), _to_int_coeffs(q)
        if len(f) < len(g):
            f, g = g, f
        while g:
            r = _int_prem(f, g)
            cont = _int_content(r)
            f, g = g, [c // cont for c in r]
        return UPoly(p.var, f).monic()
    f, g = p.monic(), q.monic()
    if f.degree < g.degree:
        f, g = g, f
    while not g.is_zero():
        f, g = g, (f % g)
        if not g.is_zero():
            g = g.monic()
    return f.monic()


def poly_lcm(p: UPoly, q: UPoly) -> UPoly:
    if p.is_zero() or q.is_zero():
        return UPoly(p.var, ())
    return ((p * q).quo_rem(poly_gcd(p, q))[0]).monic()


def squarefree_part(p: UPoly) -> UPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero():
        return p
    if p.is_constant():
        return UPoly(p.var, (Fraction(1),))
    g = poly_gcd(p, p.derivative())
    return p.quo_rem(g)[0].monic()


class RatFun:
    """Rational function num/den in one parameter, den monic and coprime."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly | None = None):
        if den is None:
            # inherit the coefficient-field identity from the numerator
            one = num.lead / num.lead if num.coeffs else Fraction(1)
            den = UPoly(num.var, (one,))
        if num.var != den.var:
            raise TypeError("numerator and denominator in different variables")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = UPoly(num.var, (den.lead * _inv(den.lead),))
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.quo_rem(g)[0]
                den = den.quo_rem(g)[0]
            il = _inv(den.lead)
            num = num * il
            den = den * il
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFun is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def gen(cls, var: str, one=Fraction(1)) -> "RatFun":
        """The parameter itself as a rational function."""
        return cls(UPoly.gen(var, one))

    @classmethod
    def const(cls, var: str, value, one=Fraction(1)) -> "RatFun":
        return cls(UPoly(var, (one * value,)), UPoly(var, (one,)))

    # -- structure ------------------------------------------------------

    @property
    def var(self) -> str:
        return self.num.var

    def _one(self):
        """Multiplicative identity of the coefficient field (den is monic)."""
        return self.den.lead

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num.constant_value()

    def eval(self, x):
        """Evaluate at a field element; raises on a denominator zero."""
        d = self.den.eval(x)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self.num.eval(x) * _inv(d)

    # -- coercion ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, RatFun) and other.var == self.var:
            return other
        one = self._one()
        if isinstance(other, _RAT):
            c = one * other
        elif isinstance(one, (RatFun, QuadExt)):
            # tower: recurse into the coefficient field
            lifted = one._lift(other)
            if lifted is None:
                return None
            c = one * lifted
        else:
            return None
        return RatFun(UPoly(self.var, (c,)), UPoly(self.var, (one,)))

    def _pair(self, other):
        """Lift self and other into the deeper of the two towers."""
        o = self._lift(other)
        if o is not None:
            return self, o
        if isinstance(other, RatFun):
            s = other._lift(self)
            if s is not None:
                return s, other
        return None

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return RatFun(x.num * y.den + y.num * x.den, x.den * y.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return RatFun(x.num * y.den - y.num * x.den, x.den * y.den)

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return y - x

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return RatFun(x.num * y.num, x.den * y.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        if y.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(x.num * y.den, x.den * y.num)

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return y / x

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero rational function")
            return RatFun(self.den, self.num) ** (-n)
        out = RatFun(UPoly(self.var, (self._one(),)))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RatFun) and other.var == self.var:
            return self.num == other.num and self.den == other.den
        if isinstance(other, (RatFun,) + _RAT):
            pair = self._pair(other)
            if pair is None:
                return NotImplemented
            x, y = pair
            return x.num == y.num and x.den == y.den
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RatFun({self.num!r}, {self.den!r})"

    def __str__(self):
        return scalar_str(self)


class QuadExt:
    """Element c0 + c1*eps of Q(eps) with eps^2 = eps - 1."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0=0, c1=0):
        object.__setattr__(self, "c0", Fraction(c0))
        object.__setattr__(self, "c1", Fraction(c1))

    def __setattr__(self, *a):
        raise AttributeError("QuadExt is immutable")

    def is_rational(self) -> bool:
        return self.c1 == 0

    def conjugate(self) -> "QuadExt":
        # the other root of x^2 - x + 1 is 1 - eps
        return QuadExt(self.c0 + self.c1, -self.c1)

    def norm(self) -> Fraction:
        return self.c0 * self.c0 + self.c0 * self.c1 + self.c1 * self.c1

    @staticmethod
    def _lift(other):
        if isinstance(other, QuadExt):
            return other
        if isinstance(other, _RAT):
            return QuadExt(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.c0, -self.c1)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        # (a + b e)(c + d e) = ac + (ad + bc) e + bd e^2,  e^2 = e - 1
        bd = self.c1 * o.c1
        return QuadExt(self.c0 * o.c0 - bd, self.c0 * o.c1 + self.c1 * o.c0 + bd)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o ** -1

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self ** -1

    def __pow__(self, n: int):
        if n < 0:
            nm = self.norm()
            if not nm:
                raise ZeroDivisionError("inverse of zero in Q(eps)")
            inv = self.conjugate() * (Fraction(1) / nm)
            return inv ** (-n)
        out = QuadExt(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.c0 == other.c0 and self.c1 == other.c1
        if isinstance(other, _RAT):
            return self.c1 == 0 and self.c0 == other
        return NotImplemented

    def __hash__(self):
        if self.c1 == 0:
            return hash(self.c0)
        return hash((self.c0, self.c1))

    def __bool__(self):
        return bool(self.c0) or bool(self.c1)

    def __repr__(self):
        return f"QuadExt({self.c0!r}, {self.c1!r})"

    def __str__(self):
        return scalar_str(self)


EPS = QuadExt(0, 1)


def scalar_arith(op: str, x, y=None):
    """Named-operation dispatch over any scalar kind.

    ops: add, sub, mul, div (binary), neg, inv (unary), eq (binary, bool).
    """
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if isinstance(x, _RAT) and isinstance(y, _RAT):
            return Fraction(x) / y
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        return _inv(x)
    if op == "eq":
        return x == y
    raise ValueError(f"unknown scalar operation {op!r}")


# ---------------------------------------------------------------------------
# textual grammar
# ---------------------------------------------------------------------------

def _term_str(c, var: str, k: int) -> str:
    """One monomial c*var^k with c already known nonzero."""
    if k == 0:
        if isinstance(c, _RAT):
            return str(c)
        return "(" + scalar_str(c) + ")"
    v = var if k == 1 else f"{var}^{k}"
    if isinstance(c, _RAT):
        if c == 1:
            return v
        if c == -1:
            return "-" + v
        return f"{c}*{v}"
    return "(" + scalar_str(c) + ")*" + v


def poly_str(p: UPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        t = _term_str(c, p.var, k)
        if parts and not t.startswith("-"):
            parts.append("+" + t)
        else:
            parts.append(t)
    return "".join(parts)


def scalar_str(x) -> str:
    """Canonical textual form; parse_scalar round-trips it."""
    if isinstance(x, _RAT):
        return str(Fraction(x))
    if isinstance(x, RatFun):
        if x.den.degree == 0:
            return poly_str(x.num)
        return f"({poly_str(x.num)})/({poly_str(x.den)})"
    if isinstance(x, QuadExt):
        if x.c1 == 0:
            return str(x.c0)
        if x.c1 == 1:
            e = "eps"
        elif x.c1 == -1:
            e = "-eps"
        else:
            e = f"{x.c1}*eps"
        if x.c0 == 0:
            return e
        return f"{x.c0}+{e}" if not e.startswith("-") else f"{x.c0}{e}"
    raise TypeError(f"not a scalar: {x!r}")


class ScalarSyntaxError(ValueError):
    pass


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        elif text.startswith("**", i):
            toks.append(("op", "^"))
            i += 2
        elif ch in "+-*/^()":
            toks.append(("op", ch))
            i += 1
        else:
            raise ScalarSyntaxError(f"unexpected character {ch!r} in {text!r}")
    toks.append(("end", None))
    return toks


class _Parser:
    """Recursive descent over +, -, *, /, ^ with names bound by an env."""

    def __init__(self, toks, env):
        self.toks = toks
        self.pos = 0
        self.env = env

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expr(self):
        val = self.term()
        while True:
            kind, v = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                rhs = self.term()
                val = val + rhs if v == "+" else val - rhs
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            kind, v = self.peek()
            if kind == "op" and v in "*/":
                self.take()
                rhs = self.unary()
                if v == "*":
                    val = val * rhs
                else:
                    if isinstance(val, int) and isinstance(rhs, int):
                        val = Fraction(val, rhs)
                    else:
                        val = val / rhs
            else:
                return val

    def unary(self):
        kind, v = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return -self.unary()
        if kind == "op" and v == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, v = self.peek()
        if kind == "op" and v == "^":
            self.take()
            k, e = self.take()
            neg = False
            if k == "op" and e == "-":
                neg = True
                k, e = self.take()
            if k != "num":
                raise ScalarSyntaxError("exponent must be an integer literal")
            return base ** (-e if neg else e)
        return base

    def atom(self):
        kind, v = self.take()
        if kind == "num":
            return v
        if kind == "name":
            if v not in self.env:
                raise ScalarSyntaxError(f"unknown name {v!r}")
            return self.env[v]
        if kind == "op" and v == "(":
            val = self.expr()
            k, c = self.take()
            if (k, c) != ("op", ")"):
                raise ScalarSyntaxError("missing closing parenthesis")
            return val
        raise ScalarSyntaxError(f"unexpected token {v!r}")


def parse_expression(text: str, env: dict):
    """Evaluate an arithmetic expression whose names come from env."""
    p = _Parser(_tokenize(text), env)
    val = p.expr()
    if p.peek()[0] != "end":
        raise ScalarSyntaxError(f"trailing input in {text!r}")
    return val


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar grammar: p/q, (poly)/(poly) in a, c0+c1*eps."""
    env = {"a": RatFun.gen("a"), "eps": EPS}
    val = parse_expression(text, env)
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, (Fraction, RatFun, QuadExt)):
        return val
    raise ScalarSyntaxError(f"not a scalar expression: {text!r}")


def as_fraction(x) -> Fraction | None:
    """The rational value of x, or None if x is genuinely non-rational."""
    if isinstance(x, _RAT):
        return Fraction(x)
    if isinstance(x, QuadExt):
        return Fraction(x.c0) if x.c1 == 0 else None
    if isinstance(x, RatFun):
        if x.is_constant():
            return as_fraction(x.constant_value())
        return None
    return None
