"""Quartic monoid surfaces with 31 lines.

A quartic monoid is a degree-4 surface of P^3 whose point O = (0:0:0:1) has
multiplicity 3, so its equation is t*C(x,y,z) + D(x,y,z) with C cubic and D
quartic.  For the surfaces built here the plane curves C = D = 0 meet in the
12-point configuration, which yields 12 lines through O plus one residual
line for each of the 19 collinear triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .configuration import (Configuration, TRIPLES, build_points,
                            check_parameter, triple_through_pair)
from .mpoly import MultiPoly, NonDivisibleError, parse_poly
from .projective import (GeometryError, ProjLine, ProjPoint, kernel,
                         line_restrict)
from .scalars import scalar_str

XYZT = ("x", "y", "z", "t")
ORIGIN = ProjPoint((0, 0, 0, 1))

_F3_SRC = ("(a-1)*x^3 + (2*a^2+6*a-1)*x^2*y - 3*(a-1)*x^2*z"
           " + (a^2+4*a+1)*x*y^2 + 2*(a-1)*x*z^2 - 2*a*(a+4)*x*y*z"
           " + (a+1)*y^3 - 3*(a+1)*y^2*z + 2*(a+1)*y*z^2")

_F4_SRC = ("y * (3*a*x - 2*a*z + x - y)"
           " * (2*a*x + a*y - 2*a*z + 3*x + y - 2*z)"
           " * (a*x + 2*x + 2*y - 2*z)")

_QA_SRC = ("2*a*x^3*y + 4*a*x^2*y^2 + 2*a*x*y^3"
           " - (2*a-1)*(a-2)*x^3*z - (5*a^2-17*a+5)*x^2*y*z"
           " - 3*(a^2-4*a+1)*x*y^2*z + a*y^3*z"
           " - 3*(2*a-1)*(a-2)*x^2*z^2 - (7*a^2-19*a+7)*x*y*z^2"
           " + 2*a*y^2*z^2 - 2*(2*a-1)*(a-2)*x*z^3 + a*y*z^3"
           " - 2*a*t*x^2*y - 2*a*t*x*y^2 + 2*(2*a-1)*(a-2)*t*x^2*z"
           " + 4*(a^2-3*a+1)*t*x*y*z - 2*a*t*y^2*z"
           " + 2*(2*a-1)*(a-2)*t*x*z^2 - 2*a*t*y*z^2")

_ROHN_SRC = "t*((x+y+z)^3 + x*y*z) + (x+y+z)*(x-y)*(y-z)*(z-x)"

# the degree-4 form the special-parameter surface reduces to
_QPRIME_SRC = ("x^3*y + 2*x^2*y^2 + x*y^3 + 3/2*x^3*z + 6*x^2*y*z"
               " + 9/2*x*y^2*z + 1/2*y^3*z + 9/2*x^2*z^2 + 6*x*y*z^2"
               " + y^2*z^2 + 3*x*z^3 + 1/2*y*z^3"
               " - x^2*y*t - x*y^2*t - 3*x^2*z*t - 4*x*y*z*t"
               " - y^2*z*t - 3*x*z^2*t - y*z^2*t")


def f3_poly(a) -> MultiPoly:
    """The cubic through the 12 points, as a form in x, y, z, t."""
    return parse_poly(_F3_SRC, XYZT, {"a": a})


def f4_poly(a) -> MultiPoly:
    """The quartic splitting into the four full lines, in x, y, z, t."""
    return parse_poly(_F4_SRC, XYZT, {"a": a})


def qprime_poly() -> MultiPoly:
    return parse_poly(_QPRIME_SRC, XYZT, {})


@dataclass(frozen=True)
class SurfaceLine:
    """A line on the surface with its provenance."""
    line: ProjLine
    kind: str                  # "origin" | "residual"
    label: object              # point index | collinear triple

    def serialize(self) -> dict:
        d = self.line.serialize()
        d["kind"] = self.kind
        d["label"] = list(self.label) if isinstance(self.label, tuple) else self.label
        return d


class DegenerateSurfaceError(GeometryError):
    """Surface construction or line extraction degenerated."""


class MonoidSurface:
    """A quartic monoid t*C + D together with its point configuration."""

    def __init__(self, poly: MultiPoly, flavor: str, a=None, b=None,
                 config: Configuration | None = None):
        if poly.is_zero() or not poly.is_homogeneous() or poly.degree() != 4:
            raise ValueError("defining polynomial must be a nonzero quartic form")
        for e in poly.terms:
            if e[0] + e[1] + e[2] < 3:
                raise ValueError("origin is not a triple point")
        self.poly = poly
        self.flavor = flavor
        self.a = a
        self.b = b
        self.config = config
        self._residual: dict[tuple, SurfaceLine] = {}
        self._origin: list[SurfaceLine] | None = None

    # -- structure ----------------------------------------------------

    def t_cubic(self) -> MultiPoly:
        """C in the normal form t*C + D (coefficient of t)."""
        terms = {e[:3] + (0,): c for e, c in self.poly.terms.items() if e[3] == 1}
        return MultiPoly(XYZT, terms)

    def t_free_quartic(self) -> MultiPoly:
        """D in the normal form t*C + D."""
        terms = {e: c for e, c in self.poly.terms.items() if e[3] == 0}
        return MultiPoly(XYZT, terms)

    def contains_line(self, line: ProjLine) -> bool:
        return line_restrict(self.poly, line).is_zero()

    def contains_point(self, p: ProjPoint) -> bool:
        return not self.poly.evaluate(dict(zip(XYZT, p.coords)))

    # -- the 31 lines ---------------------------------------------------

    def origin_lines(self) -> list[SurfaceLine]:
        """The 12 lines through the triple point."""
        if self.config is None:
            raise ValueError(f"{self.flavor} surface has no configuration attached")
        if self._origin is None:
            lines = []
            for i, p in enumerate(self.config.points):
                sl = SurfaceLine(ProjLine(ORIGIN, p), "origin", i)
                if not self.contains_line(sl.line):
                    raise DegenerateSurfaceError(
                        f"line through point {i} is not on the surface")
                lines.append(sl)
            self._origin = lines
        return list(self._origin)

    def residual_line(self, triple) -> SurfaceLine:
        """The fourth line cut by the plane through O and a collinear triple.

        The plane through O, Pi, Pj meets the surface in the lines O+Pi,
        O+Pj, O+Pk and one more line that misses O; the three known linear
        factors are divided out exactly.
        """
        triple = tuple(triple)
        key = tuple(sorted(triple))
        if key not in TRIPLES:
            raise ValueError(f"{triple} is not one of the 19 collinear triples")
        if key in self._residual:
            return self._residual[key]
        if self.config is None:
            raise ValueError(f"{self.flavor} surface has no configuration attached")
        i, j, k = triple
        pi, pj, pk = (self.config.points[m] for m in triple)

        # write Pk = alpha*Pi + beta*Pj
        rows = [[pi.coords[c], pj.coords[c], pk.coords[c]] for c in range(4)]
        basis, rank = kernel(rows)
        if rank != 2 or len(basis) != 1:
            raise DegenerateSurfaceError(f"triple {triple} is not collinear")
        alpha, beta, delta = basis[0]
        if not delta:
            raise DegenerateSurfaceError(f"points {i}, {j} coincide")
        uvw = ("u", "v", "w")
        gens = {n: MultiPoly.var(uvw, n) for n in uvw}
        bindings = {}
        for c, name in enumerate(XYZT):
            acc = MultiPoly.zero(uvw)
            for pt, g in ((pi, "u"), (pj, "v"), (ORIGIN, "w")):
                if pt.coords[c]:
                    acc = acc + gens[g] * pt.coords[c]
            bindings[name] = acc
        section = self.poly.substitute(bindings, into_vars=uvw)

        u, v = gens["u"], gens["v"]
        try:
            rest = section.exact_divide(v)          # the line O + Pi
            rest = rest.exact_divide(u)             # the line O + Pj
            rest = rest.exact_divide(beta * u - alpha * v)   # the line O + Pk
        except NonDivisibleError as ex:
            raise DegenerateSurfaceError(
                f"plane section of triple {triple} does not split: {ex}") from ex
        lam = rest.coefficient((1, 0, 0))
        mu = rest.coefficient((0, 1, 0))
        nu = rest.coefficient((0, 0, 1))
        if rest.degree() != 1 or not nu:
            raise DegenerateSurfaceError(
                f"residual factor of triple {triple} is degenerate")
        # two points of the residual line, on O+Pi and on O+Pj
        e_i = ProjPoint([nu * c for c in pi.coords[:3]]
                        + [nu * pi.coords[3] - lam])
        e_j = ProjPoint([nu * c for c in pj.coords[:3]]
                        + [nu * pj.coords[3] - mu])
        sl = SurfaceLine(ProjLine(e_i, e_j), "residual", key)
        if not self.contains_line(sl.line):
            raise DegenerateSurfaceError(
                f"residual line of triple {triple} left the surface")
        self._residual[key] = sl
        return sl

    def all_lines(self) -> list[SurfaceLine]:
        """All 31 lines: 12 through O, then the 19 residual lines."""
        lines = self.origin_lines()
        lines += [self.residual_line(t) for t in TRIPLES]
        for m in range(len(lines)):
            for n in range(m + 1, len(lines)):
                if lines[m].line == lines[n].line:
                    raise DegenerateSurfaceError(
                        f"lines {lines[m].label} and {lines[n].label} coincide")
        return lines

    def incidence(self) -> dict:
        """Which origin lines meet which residual lines (Plucker pairing)."""
        origin = self.origin_lines()
        residual = [self.residual_line(t) for t in TRIPLES]
        matrix = [[origin[i].line.meets(r.line) for r in residual]
                  for i in range(12)]
        counts = {i: sum(row) for i, row in enumerate(matrix)}
        return {"matrix": matrix, "counts": counts}

    def serialize(self) -> dict:
        return {
            "flavor": self.flavor,
            "a": None if self.a is None else scalar_str(self.a),
            "b": None if self.b is None else scalar_str(self.b),
            "polynomial": self.poly.serialize(),
        }


def build_surface(flavor: str, a=None, b=None) -> MonoidSurface:
    """Construct one of the three surface families.

    qab: t*F3(a) + b*F4(a) on the original configuration (needs b != 0);
    qa:  the b-independent normal form on the normalized configuration;
    rohn: the classical 31-line example (no parameters, no configuration).
    """
    if flavor == "qab":
        if a is None or b is None:
            raise ValueError("qab needs both parameters")
        check_parameter(a)
        if not b:
            raise ValueError("qab needs b != 0")
        config = build_points(a, "original")
        t = MultiPoly.var(XYZT, "t")
        poly = t * f3_poly(a) + f4_poly(a) * b
        return MonoidSurface(poly, "qab", a, b, config)
    if flavor == "qa":
        if a is None:
            raise ValueError("qa needs the parameter a")
        check_parameter(a)
        config = build_points(a, "normalized")
        poly = parse_poly(_QA_SRC, XYZT, {"a": a})
        return MonoidSurface(poly, "qa", a, None, config)
    if flavor == "rohn":
        poly = parse_poly(_ROHN_SRC, XYZT, {})
        return MonoidSurface(poly, "rohn")
    raise ValueError(f"unknown flavor {flavor!r}")


# ---------------------------------------------------------------------------
# smoothness certificate
# ---------------------------------------------------------------------------


def _partials_on_line(surface: MonoidSurface, i: int):
    """Coefficients of the gradient restricted to T = O + lambda*Pi.

    With Q = t*C + D, the t-partial is C(Pi)*lambda^3 = 0 and each space
    partial is lambda^2 * (alpha_v + beta_v*lambda) where alpha_v, beta_v
    are the gradients of C and D at Pi.
    """
    p = surface.config.points[i]
    point = dict(zip(XYZT, p.coords))
    cubic = surface.t_cubic()
    quartic = surface.t_free_quartic()
    if cubic.evaluate(point):
        raise DegenerateSurfaceError(f"point {i} is not on the cubic")
    alphas, betas = [], []
    for v in ("x", "y", "z"):
        alphas.append(cubic.partial(v).evaluate(point))
        betas.append(quartic.partial(v).evaluate(point))
    return alphas, betas


def _numerator_in_a(x):
    """Numerator of a scalar as a polynomial in a, ignoring unit factors of b.

    Returns a UPoly in a, or None when the scalar mixes powers of b (then a
    one-variable root analysis is not faithful).
    """
    from .scalars import RatFun, UPoly
    if isinstance(x, (int, Fraction)):
        return UPoly("a", (Fraction(x),))
    if not isinstance(x, RatFun):
        return None
    if x.var == "a":
        if all(isinstance(c, (int, Fraction)) for c in x.num.coeffs):
            return x.num.monic()
        return None
    # outer variable (b): strip the b-power, demand a single surviving term
    nz = [c for c in x.num.coeffs if c]
    if len(nz) != 1:
        return None
    return _numerator_in_a(nz[0])


def _rational_roots(p) -> tuple[dict, bool]:
    """All rational roots of a nonzero UPoly over Q with multiplicities.

    Returns ({root: multiplicity}, completely_split) where the flag says the
    polynomial is a constant times the product of the found linear factors.
    """
    from .scalars import UPoly
    roots: dict[Fraction, int] = {}
    coeffs = list(p.coeffs)
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
    q = UPoly(p.var, tuple(coeffs))
    if q.degree > 0:
        den = 1
        for c in q.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in q.coeffs]
        c0, cn = abs(ints[0]), abs(ints[-1])
        cands = set()
        for pnum in _divisors(c0):
            for pden in _divisors(cn):
                cands.add(Fraction(pnum, pden))
                cands.add(Fraction(-pnum, pden))
        for r in sorted(cands):
            while q.degree > 0 and not q.eval(r):
                q = q.quo_rem(UPoly(q.var, (-r, Fraction(1))))[0]
                roots[r] = roots.get(r, 0) + 1
    return roots, q.degree == 0


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _vector_nonzero_at(values, r) -> bool:
    """Whether some component stays nonzero at a = r (b treated as a unit).

    r is None for concrete parameters: test the values as they stand.
    """
    from .scalars import RatFun
    for x in values:
        if r is None or isinstance(x, (int, Fraction)):
            if x:
                return True
        elif isinstance(x, RatFun) and x.var == "a":
            if x.num.eval(r):
                return True
        elif isinstance(x, RatFun):
            if any(_vector_nonzero_at([c], r) for c in x.num.coeffs):
                return True
    return False


@dataclass
class LineSmoothnessReport:
    """Per-line outcome: the gcd shape and the special-parameter loci.

    Roots are classified as "degenerate" (inside the excluded parameter
    set), "singular" (admissible value where the surface genuinely acquires
    a singular point) or "harmless" (the proportionality is vacuous because
    one of the two gradient vectors vanishes there).
    """
    index: int
    gcd_is_lambda_squared: bool
    gcd_string: str
    proportionality_roots: list   # [(root, label)]
    proportionality_resolved: bool
    vertex_roots: list            # [(root, label)]
    vertex_resolved: bool

    @property
    def ok(self) -> bool:
        bad = any(lab == "singular"
                  for _, lab in self.proportionality_roots + self.vertex_roots)
        return (self.gcd_is_lambda_squared and not bad
                and self.proportionality_resolved and self.vertex_resolved)

    def serialize(self) -> dict:
        return {
            "index": self.index,
            "gcd": self.gcd_string,
            "gcd_is_lambda_squared": self.gcd_is_lambda_squared,
            "proportionality_roots": [[str(r), lab] for r, lab in
                                      self.proportionality_roots],
            "proportionality_resolved": self.proportionality_resolved,
            "vertex_roots": [[str(r), lab] for r, lab in self.vertex_roots],
            "vertex_resolved": self.vertex_resolved,
            "ok": self.ok,
        }


def _locus_roots(values, degenerate: frozenset, classify) -> tuple[list, bool]:
    """Root analysis of the common zero locus of a family of scalars.

    The locus is the set of parameter values killing every member.  For
    concrete parameters the family is a list of constants and the locus is
    empty or everything; for a symbolic parameter the locus is cut out by
    the gcd of the numerators.  classify(root) labels an admissible root.
    """
    nonzero = [v for v in values if v]
    if not nonzero:
        return [(None, classify(None))], True
    if all(isinstance(v, (int, Fraction)) for v in nonzero):
        return [], True
    from .scalars import UPoly, poly_gcd
    g = UPoly("a")
    for v in nonzero:
        num = _numerator_in_a(v)
        if num is None:
            return [], False
        g = poly_gcd(g, num)
    if g.degree == 0:
        return [], True
    roots, split = _rational_roots(g)
    out = []
    for r in sorted(roots):
        if r in degenerate:
            out.append((r, "degenerate"))
        else:
            out.append((r, classify(r)))
    return out, split


def smoothness_certificate(surface: MonoidSurface) -> dict:
    """Certify that the surface is singular only at the triple point.

    Any singular point off O lies on one of the 12 lines through O, so per
    line the gradient is restricted to T = O + lambda*Pi, giving
    g_v = lambda^2 (alpha_v + beta_v lambda).  Three checks per line: the
    gcd of the restricted partials over the parameter field is lambda^2;
    the parameter locus where alpha and beta become proportional (common
    zeros of their pairwise 2x2 minors, where a singular lambda != 0 could
    appear) contains no admissible value; and the locus where beta vanishes
    entirely (then Pi itself, the point the lambda chart misses, is
    singular) contains no admissible value.
    """
    from .scalars import UPoly, poly_gcd
    from .configuration import DEGENERATE_VALUES

    if surface.config is None:
        raise ValueError("smoothness certificate needs a configuration")
    degenerate = frozenset(Fraction(v) for v in DEGENERATE_VALUES)
    reports = []
    singular_values = set()
    for i in range(12):
        alphas, betas = _partials_on_line(surface, i)
        one = None
        for c in alphas + betas:
            if c:
                one = c / c
                break
        if one is None:
            raise DegenerateSurfaceError(f"gradient vanishes on line {i}")
        # g_v = lambda^2 * (alpha_v + beta_v*lambda) as polynomials in lambda
        lam_polys = [UPoly("lam", (av * one, bv * one)).shift_mul(2)
                     for av, bv in zip(alphas, betas)]
        g = UPoly("lam")
        for p in lam_polys:
            g = poly_gcd(g, p)
        lam_sq = UPoly("lam", (0, 0, one))
        gcd_ok = g == lam_sq.monic()

        resultants = [alphas[v] * betas[w] - alphas[w] * betas[v]
                      for v in range(3) for w in range(v + 1, 3)]

        def classify_prop(r):
            # alpha = -lambda*beta needs both vectors nonzero at r
            if (_vector_nonzero_at(alphas, r)
                    and _vector_nonzero_at(betas, r)):
                return "singular"
            return "harmless"

        prop_roots, prop_done = _locus_roots(
            resultants, degenerate, classify_prop)
        vert_roots, vert_done = _locus_roots(
            betas, degenerate, lambda r: "singular")

        for r, lab in prop_roots + vert_roots:
            if lab == "singular":
                singular_values.add(r)
        reports.append(LineSmoothnessReport(
            index=i,
            gcd_is_lambda_squared=gcd_ok,
            gcd_string="lam^2" if gcd_ok else str(g),
            proportionality_roots=prop_roots,
            proportionality_resolved=prop_done,
            vertex_roots=vert_roots,
            vertex_resolved=vert_done,
        ))
    return {
        "lines": reports,
        "gcds_ok": all(r.gcd_is_lambda_squared for r in reports),
        "singular_parameter_values": sorted(
            singular_values, key=lambda r: (r is None, r)),
        "ok": all(r.ok for r in reports),
    }
