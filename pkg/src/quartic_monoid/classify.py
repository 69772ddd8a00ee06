"""Stabilizers, projective equivalence and the j-invariant classification.

Every surface of the normalized family carries the base sextuple as a
standard sextuple, so each of the 720 admissible triplets induces one
projectivity candidate; sweeping them yields the full PGL(4) stabilizer
and decides equivalence between two members of the family.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ._util import pmap
from .configuration import (DEGENERATE_VALUES, admissible_triplets,
                            check_parameter)
from .monoid import XYZT, MonoidSurface, build_surface
from .mpoly import MultiPoly
from .projective import Projectivity
from .scalars import (EPS, QuadExt, RatFun, UPoly, parse_scalar, poly_gcd,
                      scalar_str, squarefree_part)
from .sextuple import BASE_SEXTUPLE, sextuple_projectivity, standard_sextuple


class CoincidenceCondition:
    """When two symbolic surfaces define the same point set.

    variant is "always", "never" or "onlocus"; in the last case locus is a
    monic square-free polynomial in a, with factors vanishing only at
    degenerate parameter values removed.
    """

    __slots__ = ("variant", "locus")

    def __init__(self, variant: str, locus: UPoly | None = None):
        if variant not in ("always", "never", "onlocus"):
            raise ValueError(f"unknown variant {variant!r}")
        if (variant == "onlocus") != (locus is not None):
            raise ValueError("locus is required exactly for onlocus")
        if locus is not None and locus.degree < 1:
            raise ValueError("locus must be nonconstant")
        self.variant = variant
        self.locus = locus

    @classmethod
    def always(cls) -> "CoincidenceCondition":
        return cls("always")

    @classmethod
    def never(cls) -> "CoincidenceCondition":
        return cls("never")

    @classmethod
    def on_locus(cls, locus: UPoly) -> "CoincidenceCondition":
        return cls("onlocus", locus)

    def holds_at(self, value) -> bool:
        if self.variant == "always":
            return True
        if self.variant == "never":
            return False
        return not self.locus.eval(value)

    def __eq__(self, other):
        if not isinstance(other, CoincidenceCondition):
            return NotImplemented
        return self.variant == other.variant and self.locus == other.locus

    def __bool__(self):
        raise TypeError("a symbolic condition has no truth value; "
                        "use .variant or .holds_at(a)")

    def __repr__(self):
        if self.variant == "onlocus":
            return f"CoincidenceCondition.on_locus({self.locus!s})"
        return f"CoincidenceCondition.{self.variant}()"

    def serialize(self):
        if self.variant == "onlocus":
            return {"variant": "onlocus", "locus": str(self.locus)}
        return {"variant": self.variant}


def _coeff_rows(f: MultiPoly, g: MultiPoly):
    for p in (f, g):
        if p.is_zero():
            raise ValueError("zero polynomial is not a surface")
        if len(p.vars) != 4 or not p.is_homogeneous() or p.degree() != 4:
            raise ValueError("expected a quartic form in four variables")
    return f.coeff_vector(4), g.coeff_vector(4)


def _is_symbolic(x) -> bool:
    return isinstance(x, RatFun)


def _numerator(x) -> UPoly:
    if isinstance(x, RatFun):
        return x.num
    return UPoly("a", (Fraction(x),))


def _strip_degenerate_factors(p: UPoly) -> UPoly:
    for d in DEGENERATE_VALUES:
        lin = UPoly(p.var, (-Fraction(d), Fraction(1)))
        while p.degree > 0:
            q, r = p.quo_rem(lin)
            if r.is_zero():
                p = q
            else:
                break
    return p.monic()


class _LocusAccumulator:
    """Incremental gcd of constraint numerators; constant gcd means never.

    Factors rooted at degenerate parameter values are stripped as they
    appear: they cannot contribute admissible solutions, and removing them
    early lets hopeless candidates bail out after a couple of constraints.
    """

    def __init__(self):
        self.gcd = UPoly("a")
        self.saw_constraint = False

    def add(self, value) -> bool:
        """Fold one scalar that must vanish; False once the locus is empty."""
        if not value:
            return True
        self.saw_constraint = True
        g = poly_gcd(self.gcd, _numerator(value))
        if g.degree > 0:
            g = _strip_degenerate_factors(g)
        self.gcd = g
        return g.degree > 0

    def condition(self) -> CoincidenceCondition:
        if not self.saw_constraint:
            return CoincidenceCondition.always()
        if self.gcd.degree == 0:
            return CoincidenceCondition.never()
        locus = _strip_degenerate_factors(squarefree_part(self.gcd))
        if locus.degree == 0:
            return CoincidenceCondition.never()
        return CoincidenceCondition.on_locus(locus)


def surfaces_coincide(f: MultiPoly, g: MultiPoly):
    """Whether two quartic forms cut the same surface (rank-1 test).

    The 2 x 35 coefficient matrix must have rank one: columns with both
    entries zero are dropped, a column with exactly one zero entry settles
    the concrete case immediately, and the remaining columns must have
    vanishing 2 x 2 minors.  Concrete coefficients give a bool, symbolic
    ones a CoincidenceCondition describing the values of a where the rank
    drops to one.
    """
    v1, v2 = _coeff_rows(f, g)
    if any(_is_symbolic(c) for c in v1 + v2):
        return _coincide_symbolic(v1, v2)
    pairs = []
    for w1, w2 in zip(v1, v2):
        if not w1 and not w2:
            continue
        if not w1 or not w2:
            return False
        pairs.append((w1, w2))
    p1, p2 = pairs[0]
    return all(p1 * w2 == p2 * w1 for w1, w2 in pairs[1:])


def _coincide_symbolic(v1, v2) -> CoincidenceCondition:
    acc = _LocusAccumulator()
    kept = []
    for w1, w2 in zip(v1, v2):
        z1, z2 = not w1, not w2
        if z1 and z2:
            continue
        if z1 or z2:
            # the other entry must vanish for the column to be rank-one
            if not acc.add(w2 if z1 else w1):
                return CoincidenceCondition.never()
            continue
        kept.append((w1, w2))
    # minors against a pivot column; exact when the pivot cannot vanish on
    # the candidate locus, otherwise fall back to all pairs
    if kept:
        p1, p2 = kept[0]
        for w1, w2 in kept[1:]:
            if not acc.add(p1 * w2 - p2 * w1):
                return CoincidenceCondition.never()
        cond = acc.condition()
        if cond.variant == "onlocus" and _pivot_vanishes_on(kept[0], cond.locus):
            for i in range(len(kept)):
                for j in range(i + 1, len(kept)):
                    if not acc.add(kept[i][0] * kept[j][1]
                                   - kept[j][0] * kept[i][1]):
                        return CoincidenceCondition.never()
    return acc.condition()


def _pivot_vanishes_on(pivot, locus: UPoly) -> bool:
    g = poly_gcd(_numerator(pivot[0]), locus)
    if g.degree > 0 and poly_gcd(_numerator(pivot[1]), g).degree > 0:
        return True
    return False


# ---------------------------------------------------------------------------
# group machinery
# ---------------------------------------------------------------------------


@dataclass
class GroupReport:
    """A finite subgroup of PGL(4) with its identification data."""
    matrices: tuple
    order: int
    abelian: bool
    profile: dict
    label: str
    closure_added: bool

    def serialize(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "order_profile": {str(k): v for k, v in sorted(self.profile.items())},
            "label": self.label,
            "closure_added": self.closure_added,
            "matrices": [[scalar_str(c) for c in m.flat()]
                         for m in self.matrices],
        }


def build_group(elements) -> GroupReport:
    """Deduplicate, close under composition, and identify the group."""
    seen: dict = {}
    for m in elements:
        seen.setdefault(m.canonical(), m)
    added = False
    while True:
        new = {}
        mats = list(seen.values())
        for m in mats:
            for n in mats:
                c = m @ n
                key = c.canonical()
                if key not in seen and key not in new:
                    new[key] = c
        if not new:
            break
        added = True
        seen.update(new)
        if len(seen) > 60:
            raise ValueError("does not generate a small finite group")
    mats = sorted(seen.values(), key=lambda m: str(m.canonical().flat()))
    abelian = all((m @ n) == (n @ m)
                  for i, m in enumerate(mats) for n in mats[i + 1:])
    profile = dict(Counter(m.order() for m in mats))
    report = GroupReport(tuple(mats), len(mats), abelian, profile, "",
                         added)
    report.label = group_identify(report)
    return report


def group_identify(report: GroupReport) -> str:
    """Name the group from order, abelianness and the element-order profile."""
    mats = report.matrices
    keys = {m.canonical() for m in mats}
    for m in mats:
        for n in mats:
            if (m @ n).canonical() not in keys:
                raise ValueError("matrix set is not closed under composition")
    if report.order == 6 and not report.abelian:
        return "S3"
    if (report.order == 18 and not report.abelian
            and report.profile == {1: 1, 2: 3, 3: 8, 6: 6}):
        return "S3xC3"
    return f"unrecognized (order {report.order})"


# the two generators of the generic stabilizer and the extra generator
# appearing when a^2 - a + 1 = 0
STABILIZER_GENERATORS = (
    Projectivity(((2, 2, 2, 0), (0, -2, 0, 0), (-2, 0, 0, 0), (0, 1, 3, -2))),
    Projectivity(((2, 2, 2, 0), (0, -2, 0, 0), (0, 0, -2, 0), (0, -2, -3, 2))),
)

EPSILON_GENERATORS = (
    STABILIZER_GENERATORS[1],
    Projectivity((
        (0, 2 * EPS - 2, 2 * EPS - 4, 0),
        (0, -4 * EPS + 2, QuadExt(0), 0),
        (2 * EPS - 4, 2 * EPS - 2, 0, 0),
        (-3, -3 * EPS, -3 * EPS, 4 * EPS - 2),
    )),
)


# ---------------------------------------------------------------------------
# stabilizer sweep
# ---------------------------------------------------------------------------


def _surface(a) -> MonoidSurface:
    return build_surface("qa", a)


def _points_land_on(poly: MultiPoly, m: Projectivity, points, fold) -> bool:
    """Necessary condition: the images of the 12 vertices stay on the surface.

    fold receives each evaluation; returning False aborts (locus empty).
    """
    for p in points:
        q = m.apply_point(p)
        if not fold(poly.evaluate(dict(zip(XYZT, q.coords)))):
            return False
    return True


@dataclass
class StabilizerScan:
    """Symbolic sweep outcome: which triplets stabilize and where."""
    always: list = field(default_factory=list)      # (triple, Projectivity)
    onlocus: list = field(default_factory=list)     # (triple, M, locus UPoly)
    never_count: int = 0

    def locus_union_squarefree(self) -> UPoly:
        prod = None
        for _, _, locus in self.onlocus:
            prod = locus if prod is None else prod * locus
        if prod is None:
            return UPoly("a", (Fraction(1),))
        return _strip_degenerate_factors(squarefree_part(prod))

    def group(self) -> GroupReport:
        return build_group(m for _, m in self.always)

    def serialize(self) -> dict:
        return {
            "always": [{"triple": list(t),
                        "matrix": [scalar_str(c) for c in m.flat()]}
                       for t, m in self.always],
            "onlocus": [{"triple": list(t), "locus": str(loc),
                         "matrix": [scalar_str(c) for c in m.flat()]}
                        for t, m, loc in self.onlocus],
            "never_count": self.never_count,
            "locus_union": str(self.locus_union_squarefree()),
            "group": self.group().serialize(),
        }


def stabilizer_verdict(surface: MonoidSurface, triple):
    """One sweep step: the candidate projectivity and whether it fixes Q.

    Returns (verdict, M) where M carries the base sextuple onto the
    standard sextuple of the triplet; verdict is a bool for concrete
    parameters and a CoincidenceCondition for a symbolic one.  A cheap
    necessary condition (the twelve vertices must stay on the surface)
    filters most candidates before the full rank test.
    """
    sx = standard_sextuple(surface, triple)
    m = sextuple_projectivity(BASE_SEXTUPLE, sx)
    if isinstance(surface.config.a, RatFun):
        pre = _LocusAccumulator()
        if not _points_land_on(surface.poly, m, surface.config.points,
                               pre.add):
            return CoincidenceCondition.never(), m
        return surfaces_coincide(m.apply_form(surface.poly),
                                 surface.poly), m
    if not _points_land_on(surface.poly, m, surface.config.points,
                           lambda val: not val):
        return False, m
    return surfaces_coincide(m.apply_form(surface.poly), surface.poly), m


# worker-process state for parallel sweeps: each process rebuilds the
# surface once from the parameter text, results travel back as text
_SWEEP_SURFACE = None


def _sweep_init(a_text: str):
    global _SWEEP_SURFACE
    _SWEEP_SURFACE = _surface(parse_scalar(a_text))


def _sweep_job(triple):
    verdict, m = stabilizer_verdict(_SWEEP_SURFACE, triple)
    if verdict is False:
        return ("never", None, None)
    mat = [scalar_str(c) for c in m.flat()]
    if verdict is True:
        return ("always", mat, None)
    if verdict.variant == "onlocus":
        return (verdict.variant, mat, scalar_str(RatFun(verdict.locus)))
    return (verdict.variant, mat if verdict.variant == "always" else None,
            None)


def _unmarshal_matrix(mat) -> Projectivity:
    vals = [parse_scalar(c) for c in mat]
    return Projectivity(tuple(tuple(vals[4 * r:4 * r + 4]) for r in range(4)))


def _unmarshal_locus(text: str) -> UPoly:
    val = parse_scalar(text)
    if not isinstance(val, RatFun):
        raise ValueError(f"locus text {text!r} is not a polynomial in a")
    return val.num


def stabilizer(a, threads: int | None = None):
    """The PGL(4) stabilizer of a family member.

    Concrete a: sweep the 720 standard sextuples, keep the frame
    projectivities fixing the surface, return the GroupReport.  Symbolic a
    (a rational-function generator): return a StabilizerScan with a
    CoincidenceCondition verdict per passing triplet.  threads only
    affects speed, never the result.
    """
    if not isinstance(a, RatFun):
        check_parameter(a)
    triples = admissible_triplets()
    if threads is not None and threads > 1:
        raw = pmap(_sweep_job, triples, threads,
                   initializer=_sweep_init, initargs=(scalar_str(a),))
        verdicts = []
        for kind, mat, locus in raw:
            m = None if mat is None else _unmarshal_matrix(mat)
            if kind == "never":
                verdicts.append((CoincidenceCondition.never(), m))
            elif kind == "always":
                verdicts.append((CoincidenceCondition.always(), m))
            else:
                verdicts.append((CoincidenceCondition.on_locus(
                    _unmarshal_locus(locus)), m))
    else:
        surface = _surface(a)
        verdicts = []
        for triple in triples:
            verdict, m = stabilizer_verdict(surface, triple)
            if verdict is True:
                verdict = CoincidenceCondition.always()
            elif verdict is False:
                verdict = CoincidenceCondition.never()
            verdicts.append((verdict, m))
    if isinstance(a, RatFun):
        scan = StabilizerScan()
        for triple, (cond, m) in zip(triples, verdicts):
            if cond.variant == "always":
                scan.always.append((triple, m))
            elif cond.variant == "onlocus":
                scan.onlocus.append((triple, m, cond.locus))
            else:
                scan.never_count += 1
        return scan
    return build_group(m for cond, m in verdicts if cond.variant == "always")


# ---------------------------------------------------------------------------
# equivalence and the j-invariant
# ---------------------------------------------------------------------------


def j_invariant(a):
    """256 (a^2-a+1)^3 / (a^2 (a-1)^2); constant exactly on each orbit."""
    if isinstance(a, int):
        a = Fraction(a)
    if a == 0 or a == 1:
        raise ZeroDivisionError("j has poles at 0 and 1")
    n = a * a - a + 1
    return 256 * n ** 3 / (a * a * (a - 1) ** 2)


_ORBIT_MAPS = (
    ("b", lambda b: b),
    ("1/b", lambda b: 1 / b),
    ("1/(1-b)", lambda b: 1 / (1 - b)),
    ("b/(b-1)", lambda b: b / (b - 1)),
    ("1-b", lambda b: 1 - b),
    ("(b-1)/b", lambda b: (b - 1) / b),
)


def orbit(b) -> list:
    """The at most six parameter values giving the same surface class."""
    if isinstance(b, int):
        b = Fraction(b)
    if b == 0 or b == 1:
        raise ValueError("orbit is undefined at 0 and 1")
    out = []
    for _, f in _ORBIT_MAPS:
        v = f(b)
        if not any(v == w for w in out):
            out.append(v)
    return out


def equivalent(a, b) -> dict:
    """Decide projective equivalence of two family members, with a witness.

    Two independent paths must agree: the j-invariant comparison, and the
    sweep looking for a projectivity carrying one surface onto the other.
    """
    if isinstance(a, RatFun) or isinstance(b, RatFun):
        raise TypeError("equivalence needs concrete parameters")
    check_parameter(a)
    check_parameter(b)
    ja, jb = j_invariant(a), j_invariant(b)
    witness = None
    if a == b:
        witness = Projectivity.identity()
    else:
        src = _surface(a)
        target = _surface(b).poly
        for triple in admissible_triplets():
            sx = standard_sextuple(src, triple)
            m = sextuple_projectivity(sx, BASE_SEXTUPLE)
            if not _points_land_on(target, m, src.config.points,
                                   lambda val: not val):
                continue
            if surfaces_coincide(m.apply_form(src.poly), target):
                witness = m
                break
    if (witness is not None) != (ja == jb):
        raise RuntimeError(
            f"j-invariant and witness sweep disagree for {a}, {b}")
    return {
        "a": a,
        "b": b,
        "equivalent": witness is not None,
        "j_a": ja,
        "j_b": jb,
        "witness": witness,
    }
