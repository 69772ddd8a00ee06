"""The planar 12-point configuration and its interpolation spaces.

Twelve points of the plane t=0 realize the maximal number (19) of collinear
triples.  Their coordinates depend on one parameter a; five exceptional
values degenerate the configuration.  The module builds the points (two
coordinate flavors), verifies the collinearity pattern, and computes the
spaces of plane cubics and quartics through all twelve points.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .mpoly import MultiPoly, monomials
from .projective import ProjPoint, collinear, kernel
from .scalars import RatFun, UPoly, parse_expression, poly_gcd, squarefree_part

# the 19 collinear triples; every pair of labels occurs in at most one
TRIPLES = (
    (0, 1, 2), (0, 3, 4), (0, 5, 6), (0, 7, 8), (0, 9, 10),
    (1, 3, 7), (1, 4, 5), (1, 6, 8), (1, 10, 11),
    (2, 3, 5), (2, 6, 7), (2, 9, 11),
    (3, 6, 10), (3, 8, 11),
    (4, 6, 9), (4, 7, 11), (4, 8, 10),
    (5, 7, 10), (5, 8, 9),
)

_PAIR_TO_TRIPLE = {}
for _t in TRIPLES:
    for _p in combinations(_t, 2):
        assert _p not in _PAIR_TO_TRIPLE, "pair in two triples"
        _PAIR_TO_TRIPLE[_p] = _t

# parameter values where points coincide or extra collinearities appear
COINCIDENT_VALUES = (Fraction(-1), Fraction(0))
EXTRA_COLLINEAR_VALUES = (Fraction(1, 2), Fraction(1), Fraction(2))
DEGENERATE_VALUES = COINCIDENT_VALUES + EXTRA_COLLINEAR_VALUES

_ORIGINAL = (
    ("0", "0", "1", "0"),
    ("1", "0", "1", "0"),
    ("2", "0", "1", "0"),
    ("0", "1", "1", "0"),
    ("0", "2", "1", "0"),
    ("1", "1", "3/2", "0"),
    ("1", "1", "a/2 + 2", "0"),
    ("a + 1", "1", "a + 2", "0"),
    ("a + 1", "1", "3*a/2 + 2", "0"),
    ("1", "-a + 1", "2", "0"),
    ("1", "-a + 1", "-a/2 + 2", "0"),
    ("a + 1", "-a + 1", "a/2 + 2", "0"),
)

_NORMALIZED = (
    ("0", "1", "-1", "0"),
    ("1", "-1", "0", "0"),
    ("1", "0", "-1", "0"),
    ("1", "2*a - 1", "-a", "0"),
    ("1", "a - 2", "1", "0"),
    ("a", "-2*a + 1", "-1", "0"),
    ("1", "a - 2", "-a", "0"),
    ("a", "-a + 2", "-1", "0"),
    ("a", "-2*a + 1", "a", "0"),
    ("0", "0", "1", "0"),
    ("0", "1", "0", "0"),
    ("1", "0", "0", "0"),
)

_FLAVORS = {"original": _ORIGINAL, "normalized": _NORMALIZED}


class DegenerateParameterError(ValueError):
    """Parameter value in the degenerate set."""

    def __init__(self, value, reason: str):
        super().__init__(f"degenerate parameter a = {value}: {reason}")
        self.value = value
        self.reason = reason


def check_parameter(a) -> None:
    """Raise when a is one of the five degenerate values."""
    for bad in COINCIDENT_VALUES:
        if a == bad:
            raise DegenerateParameterError(a, "configuration points coincide")
    for bad in EXTRA_COLLINEAR_VALUES:
        if a == bad:
            raise DegenerateParameterError(
                a, "extra collinearity among the configuration points")


class Configuration:
    """Twelve labeled points in the plane t=0 with the triple list."""

    def __init__(self, a, flavor: str, points):
        self.a = a
        self.flavor = flavor
        self.points = tuple(points)
        self.triples = TRIPLES

    def point(self, i: int) -> ProjPoint:
        return self.points[i]

    def serialize(self) -> dict:
        from .scalars import scalar_str
        return {
            "a": scalar_str(self.a),
            "flavor": self.flavor,
            "points": [p.serialize() for p in self.points],
        }


def build_points(a, flavor: str = "original") -> Configuration:
    """The 12 configuration points at parameter a (may be symbolic)."""
    if flavor not in _FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    check_parameter(a)
    env = {"a": a}
    pts = [ProjPoint([parse_expression(c, env) for c in row])
           for row in _FLAVORS[flavor]]
    return Configuration(a, flavor, pts)


def triple_through_pair(i: int, j: int):
    """The triple covering the label pair, or None (9 pairs are uncovered)."""
    return _PAIR_TO_TRIPLE.get(tuple(sorted((i, j))))


def incidence_counts() -> dict[int, int]:
    counts = {i: 0 for i in range(12)}
    for t in TRIPLES:
        for i in t:
            counts[i] += 1
    return counts


def admissible_triplets() -> list[tuple[int, int, int]]:
    """Ordered (i,j,k): not collinear, but every pair extends to a triple."""
    out = []
    for i in range(12):
        for j in range(12):
            if j == i:
                continue
            if triple_through_pair(i, j) is None:
                continue
            for k in range(12):
                if k in (i, j):
                    continue
                if tuple(sorted((i, j, k))) in TRIPLES:
                    continue
                if (triple_through_pair(i, k) is None
                        or triple_through_pair(j, k) is None):
                    continue
                out.append((i, j, k))
    return out


def verify_collinearities(config: Configuration) -> dict:
    """Scan all 220 triples and compare against the expected 19."""
    pts = config.points
    present, extra = [], []
    for t in combinations(range(12), 3):
        if collinear(pts[t[0]], pts[t[1]], pts[t[2]]):
            (present if t in TRIPLES else extra).append(t)
    missing = [t for t in TRIPLES if t not in present]
    distinct = all(pts[i] != pts[j] for i, j in combinations(range(12), 2))
    return {
        "present": present,
        "extra": extra,
        "missing": missing,
        "distinct": distinct,
        "ok": distinct and not extra and not missing,
    }


# ---------------------------------------------------------------------------
# interpolation: plane curves through the 12 points
# ---------------------------------------------------------------------------

XYZ = ("x", "y", "z")


def _interpolation_matrix(config: Configuration, degree: int):
    """Rows: degree-d monomials evaluated at each point (graded lex)."""
    mons = monomials(3, degree)
    rows = []
    for p in config.points:
        x, y, z = p.coords[0], p.coords[1], p.coords[2]
        row = []
        for e in mons:
            v = Fraction(1)
            for base, k in zip((x, y, z), e):
                for _ in range(k):
                    v = v * base
            row.append(v)
        rows.append(row)
    return rows, mons


def _poly_from_vector(vec, mons, vars=XYZ) -> MultiPoly:
    terms = {e: c for e, c in zip(mons, vec) if c}
    return MultiPoly(vars, terms)


class InterpolationError(ValueError):
    """Kernel dimension differs from the expected one."""


def cubic_through_points(config: Configuration) -> MultiPoly:
    """The unique plane cubic through the 12 points (up to scale)."""
    rows, mons = _interpolation_matrix(config, 3)
    basis, rank = kernel(rows)
    if len(basis) != 1:
        raise InterpolationError(
            f"cubic system has nullity {len(basis)}, expected 1 (rank {rank})")
    return _poly_from_vector(basis[0], mons)


def _line_through(p: ProjPoint, q: ProjPoint) -> MultiPoly:
    """Linear form cutting the plane line through two configuration points."""
    u, v = p.coords, q.coords
    c = (u[1] * v[2] - u[2] * v[1],
         u[2] * v[0] - u[0] * v[2],
         u[0] * v[1] - u[1] * v[0])
    if not any(c):
        raise InterpolationError("coincident points span no line")
    return MultiPoly(XYZ, {(1, 0, 0): c[0], (0, 1, 0): c[1], (0, 0, 1): c[2]})


# the four triples whose lines multiply to the quartic basis element
PRODUCT_TRIPLES = ((0, 1, 2), (3, 6, 10), (4, 7, 11), (5, 8, 9))

# generic-line candidates for the cubic-times-line basis elements
_LINE_CANDIDATES = (
    {(1, 0, 0): 1},
    {(0, 1, 0): 1},
    {(0, 0, 1): 1},
    {(1, 0, 0): 1, (0, 1, 0): 2, (0, 0, 1): 3},
    {(1, 0, 0): 1, (0, 1, 0): -1, (0, 0, 1): 1},
    {(1, 0, 0): 2, (0, 1, 0): 1, (0, 0, 1): -1},
    {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 2},
    {(1, 0, 0): 3, (0, 1, 0): 1, (0, 0, 1): 1},
    {(1, 0, 0): 1, (0, 1, 0): 3, (0, 0, 1): 2},
    {(1, 0, 0): 1, (0, 1, 0): 2, (0, 0, 1): 5},
    {(1, 0, 0): 1, (0, 1, 0): 5, (0, 0, 1): 3},
    {(1, 0, 0): 2, (0, 1, 0): 1, (0, 0, 1): 5},
)


def _generic_lines(config: Configuration) -> list[MultiPoly]:
    """Three independent lines avoiding all 12 points, deterministically."""
    chosen, chosen_coeffs = [], []
    for cand in _LINE_CANDIDATES:
        line = MultiPoly(XYZ, {e: Fraction(c) for e, c in cand.items()})
        hits = any(
            not line.evaluate({"x": p.coords[0], "y": p.coords[1],
                               "z": p.coords[2]})
            for p in config.points)
        if hits:
            continue
        coeffs = [line.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        _, rank = kernel(chosen_coeffs + [coeffs])
        if rank != len(chosen) + 1:
            continue
        chosen.append(line)
        chosen_coeffs.append(coeffs)
        if len(chosen) == 3:
            return chosen
    raise InterpolationError("could not find three generic lines")


def quartic_system(config: Configuration) -> dict:
    """The 4-dimensional space of plane quartics through the 12 points.

    Returns the dimension and the structured basis: the cubic times each of
    three generic lines, plus the product of the four lines through the
    triples (0,1,2), (3,6,10), (4,7,11), (5,8,9).
    """
    rows, mons = _interpolation_matrix(config, 4)
    basis_vecs, rank = kernel(rows)
    dim = len(basis_vecs)
    if rank != 11 or dim != 4:
        raise InterpolationError(
            f"quartic system has rank {rank} (dim {dim}), expected 11 (dim 4)")

    cubic = cubic_through_points(config)
    lines = _generic_lines(config)
    quartics = [cubic * l for l in lines]
    product = None
    for t in PRODUCT_TRIPLES:
        l = _line_through(config.points[t[0]], config.points[t[1]])
        third = config.points[t[2]]
        if l.evaluate({"x": third.coords[0], "y": third.coords[1],
                       "z": third.coords[2]}):
            raise InterpolationError(f"triple {t} is not collinear")
        product = l if product is None else product * l
    quartics.append(product)

    # each basis quartic vanishes at all 12 points ...
    for q in quartics:
        for p in config.points:
            if q.evaluate({"x": p.coords[0], "y": p.coords[1],
                           "z": p.coords[2]}):
                raise InterpolationError("basis quartic misses a point")
    # ... and the four are linearly independent
    vecs = [q.coeff_vector(4) for q in quartics]
    _, vrank = kernel(vecs)
    if vrank != 4:
        raise InterpolationError("basis quartics are dependent")

    return {"dim": dim, "basis": quartics, "rank": rank,
            "product_quartic": product, "cubic": cubic, "lines": lines}


# ---------------------------------------------------------------------------
# the paper-sized minor analysis of the quartic system
# ---------------------------------------------------------------------------

def _poly_det(mat) -> UPoly:
    """Determinant of a square UPoly matrix, fraction-free (Bareiss)."""
    n = len(mat)
    a = [row[:] for row in mat]
    var = a[0][0].var
    sign = 1
    prev = UPoly.const(var, Fraction(1))
    for k in range(n - 1):
        if a[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if p is None:
                return UPoly(var)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                q, r = num.quo_rem(prev)
                assert r.is_zero(), "non-exact Bareiss step"
                a[i][j] = q
            a[i][k] = UPoly(var)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def reduced_quartic_matrix(config: Configuration):
    """Eliminate the six constant rows of the 12 x 15 quartic matrix.

    The first six points do not depend on a, so their rows solve six of the
    linear conditions; what remains is a 6 x 9 matrix with entries in Q[a].
    Only meaningful for a symbolic parameter.
    """
    if not isinstance(config.a, RatFun):
        raise ValueError("minor analysis needs a symbolic parameter")
    var = config.a.var
    rows, _ = _interpolation_matrix(config, 4)
    const_rows = rows[:6]
    for row in const_rows:
        for c in row:
            if isinstance(c, RatFun) and not c.is_constant():
                raise ValueError("first six rows are not constant")
    const = [[Fraction(c.constant_value()) if isinstance(c, RatFun) else Fraction(c)
              for c in row] for row in const_rows]

    # reduced row echelon form of the constant block over Q
    piv_cols = []
    r = 0
    work = [row[:] for row in const]
    for col in range(15):
        if r == 6:
            break
        p = next((i for i in range(r, 6) if work[i][col]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = 1 / work[r][col]
        work[r] = [c * inv for c in work[r]]
        for i in range(6):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [c - f * d for c, d in zip(work[i], work[r])]
        piv_cols.append(col)
        r += 1
    if r != 6:
        raise ValueError(f"constant block has rank {r}, expected 6")

    other_cols = [c for c in range(15) if c not in piv_cols]
    reduced = []
    for row in rows[6:]:
        row = list(row)
        for idx, col in enumerate(piv_cols):
            f = row[col]
            if f:
                row = [c - f * d for c, d in zip(row, work[idx])]
        entries = []
        for col in other_cols:
            c = row[col]
            if not isinstance(c, RatFun):
                entries.append(UPoly.const(var, Fraction(c)))
                continue
            if c.den.degree != 0:
                raise ValueError("entry is not polynomial in a")
            entries.append(c.num * (Fraction(1) / c.den.constant_value()))
        reduced.append(entries)
    return reduced


def _all_minor_gcd(mat, size: int) -> UPoly:
    var = mat[0][0].var
    g = UPoly(var)
    for rows_sel in combinations(range(len(mat)), size):
        for cols in combinations(range(len(mat[0])), size):
            d = _poly_det([[mat[r][c] for c in cols] for r in rows_sel])
            g = poly_gcd(g, d)
            if g.degree == 0 and not g.is_zero():
                return g
    return g


def quartic_minor_analysis(config: Configuration) -> dict:
    """Minors of the reduced 6 x 9 matrix: the rank-5 locus.

    All 84 maximal (6 x 6) minors vanish identically, so the rank is at
    most 5.  The gcd of the 756 minors of size 5 pins down where it drops
    further.  Three rows of the raw matrix carry a common factor a+1
    (coincident points at a = -1, a degenerate value), so the analysis is
    also run with row contents divided out; there the locus is a = 0 only.
    """
    mat = reduced_quartic_matrix(config)
    var = mat[0][0].var

    max_minors_zero = True
    for cols in combinations(range(9), 6):
        d = _poly_det([[row[c] for c in cols] for row in mat])
        if not d.is_zero():
            max_minors_zero = False
            break

    contents = []
    prim = []
    for row in mat:
        g = UPoly(var)
        for e in row:
            g = poly_gcd(g, e)
        contents.append(g)
        prim.append([e.quo_rem(g)[0] for e in row] if g.degree > 0 else row)

    raw_gcd = _all_minor_gcd(mat, 5)
    prim_gcd = _all_minor_gcd(prim, 5)

    def sf(p):
        return squarefree_part(p) if not p.is_zero() else p

    return {
        "max_minors_zero": max_minors_zero,
        "minor_gcd": raw_gcd,
        "minor_gcd_squarefree": sf(raw_gcd),
        "row_contents": contents,
        "primitive_minor_gcd": prim_gcd,
        "primitive_minor_gcd_squarefree": sf(prim_gcd),
    }
