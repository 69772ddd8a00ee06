"""Sparse multivariate polynomials over any of the scalar kinds.

A ``MultiPoly`` is an ordered tuple of variable names plus a map from
exponent vectors to nonzero coefficients.  The monomial order used for
leading terms, coefficient vectors and serialization is graded
lexicographic with the variable order as listed (for surfaces: x > y > z > t).
Zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .scalars import Scalar, parse_expression, scalar_str

_SCALARS = (int, Fraction)


class NonDivisibleError(ArithmeticError):
    """Exact polynomial division requested but the divisor does not divide."""


def _as_scalar(x):
    return Fraction(x) if isinstance(x, int) else x


def _grlex_key(e: tuple[int, ...]):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict | None = None):
        object.__setattr__(self, "vars", tuple(vars))
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _as_scalar(c)
                if c:
                    clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vars) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars, c) -> "MultiPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars, name) -> "MultiPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values())) if self.terms else Fraction(0)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_grlex_key)

    def coefficient(self, exponents) -> Scalar:
        return self.terms.get(tuple(exponents), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        """Terms in graded lex descending order; deterministic."""
        return [(e, self.terms[e]) for e in sorted(self.terms, key=_grlex_key, reverse=True)]

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise TypeError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            out = dict(self.terms)
            for e, c in other.terms.items():
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
            return MultiPoly(self.vars, out)
        return self + MultiPoly.const(self.vars, other)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, MultiPoly):
            return self + (-other)
        return self + MultiPoly.const(self.vars, -_as_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    p = c1 * c2
                    s = out.get(e)
                    s = p if s is None else s + p
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            return MultiPoly(self.vars, out)
        c = _as_scalar(other)
        if not c:
            return MultiPoly(self.vars, {})
        return MultiPoly(self.vars, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise TypeError("use exact_divide for non-constant divisors")
            other = other.constant_value()
        c = _as_scalar(other)
        if not c:
            raise ZeroDivisionError("division of polynomial by zero")
        if isinstance(c, _SCALARS):
            inv = Fraction(1) / c
        else:
            inv = c ** -1
        return self * inv

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.vars, Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, _SCALARS):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    # no __hash__: coefficients of equal polynomials may live in different
    # scalar representations, so polynomials are deliberately unhashable
    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    # -- semantic operations ----------------------------------------------

    def substitute(self, bindings: dict, into_vars=None) -> "MultiPoly":
        """Replace variables by polynomials (or scalars) and expand.

        Variables not mentioned in bindings map to themselves; the target
        variable tuple is taken from the bound values unless given explicitly.
        """
        if into_vars is None:
            target = None
            for v in bindings.values():
                if isinstance(v, MultiPoly):
                    if target is not None and v.vars != target:
                        raise TypeError("bindings disagree on target variables")
                    target = v.vars
            if target is None:
                target = self.vars
        else:
            target = tuple(into_vars)

        bases = []
        for name in self.vars:
            if name in bindings:
                v = bindings[name]
                if isinstance(v, MultiPoly):
                    if v.vars != target:
                        raise TypeError(f"binding for {name!r} uses wrong variables")
                    bases.append(v)
                else:
                    bases.append(MultiPoly.const(target, v))
            else:
                if name not in target:
                    raise TypeError(f"unbound variable {name!r} missing from target")
                bases.append(MultiPoly.var(target, name))

        powers: list[dict[int, MultiPoly]] = [dict() for _ in bases]

        def pw(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = bases[i] ** k
            return cache[k]

        out = MultiPoly.zero(target)
        for e, c in self.terms.items():
            term = MultiPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def evaluate(self, values: dict) -> Scalar:
        """Evaluate at scalar values for every variable."""
        vals = [_as_scalar(values[name]) for name in self.vars]
        total = None
        for e, c in self.terms.items():
            prod = c
            for i, k in enumerate(e):
                for _ in range(k):
                    prod = prod * vals[i]
            total = prod if total is None else total + prod
        return Fraction(0) if total is None else total

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient self/divisor; NonDivisibleError if it does not divide."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("exact division by the zero polynomial")
        if self.is_zero():
            return self
        dl = divisor.leading_monomial()
        dc = divisor.terms[dl]
        if isinstance(dc, _SCALARS):
            dinv = Fraction(1) / dc
        else:
            dinv = dc ** -1
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            lm = max(rem, key=_grlex_key)
            qe = tuple(a - b for a, b in zip(lm, dl))
            if any(k < 0 for k in qe):
                raise NonDivisibleError(
                    f"leading monomial {lm} not divisible by {dl}")
            qc = rem[lm] * dinv
            quo[qe] = qc
            for e, c in divisor.terms.items():
                te = tuple(a + b for a, b in zip(qe, e))
                s = rem.get(te, None)
                p = qc * c
                s = -p if s is None else s - p
                if s:
                    rem[te] = s
                else:
                    rem.pop(te, None)
        return MultiPoly(self.vars, quo)

    def partial(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.vars, out)

    def gradient(self) -> tuple["MultiPoly", ...]:
        return tuple(self.partial(v) for v in self.vars)

    def coeff_vector(self, degree: int) -> list[Scalar]:
        """Coefficients against all degree-d monomials, graded lex descending.

        The polynomial must be homogeneous of the given degree (or zero).
        """
        if any(sum(e) != degree for e in self.terms):
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")
        return [self.terms.get(e, Fraction(0)) for e in monomials(len(self.vars), degree)]

    def proportional(self, other: "MultiPoly") -> bool:
        """True when self = c * other for some nonzero scalar c."""
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.terms) != set(other.terms):
            return False
        lm = self.leading_monomial()
        a0, b0 = self.terms[lm], other.terms[lm]
        for e, c in self.terms.items():
            if c * b0 != other.terms[e] * a0:
                return False
        return True

    def canonical(self) -> "MultiPoly":
        """Scale so the leading (graded lex) coefficient is 1."""
        if self.is_zero():
            return self
        return self / self.terms[self.leading_monomial()]

    # -- presentation ------------------------------------------------------

    def serialize(self) -> list[list]:
        """[[exponent-vector, coefficient-string], ...] deterministic order."""
        return [[list(e), scalar_str(c)] for e, c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k)
            cs = scalar_str(c)
            if any(ch in cs for ch in "+-") and not (cs.startswith("-") and
                                                     cs.count("-") == 1 and "+" not in cs[1:]):
                cs = f"({cs})"
            body = cs if not mono else (mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
            if parts and not body.startswith("-"):
                parts.append("+" + body)
            else:
                parts.append(body)
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.vars!r}, {self.terms!r})"


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree d, graded lex descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def parse_poly(text: str, vars, params: dict | None = None) -> MultiPoly:
    """Build a MultiPoly from an expression string.

    vars become polynomial generators; params map remaining names to scalars.
    """
    vars = tuple(vars)
    env: dict = {name: MultiPoly.var(vars, name) for name in vars}
    if params:
        for k, v in params.items():
            if k in env:
                raise ValueError(f"name {k!r} is both a variable and a parameter")
            env[k] = v
    val = parse_expression(text, env)
    if not isinstance(val, MultiPoly):
        val = MultiPoly.const(vars, val)
    return val
