"""Exact projective geometry over the scalar fields.

Points, lines (with Plucker coordinates), planes and projectivities of P^3.
Everything is represented up to scale; equality means proportionality.
Linear algebra is done by fraction-free (Bareiss) elimination so that
rational-function entries stay reduced.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .mpoly import MultiPoly
from .scalars import Scalar, scalar_str

_RAT = (int, Fraction)


class GeometryError(ValueError):
    """Degenerate geometric input (coincident points, identical lines...)."""


class GeneralPositionError(GeometryError):
    """A point quadruple required to be independent is coplanar."""


def _s(x):
    return Fraction(x) if isinstance(x, int) else x


def _div(x, y):
    return _s(x) / _s(y)


def proportional(u: Sequence, v: Sequence) -> bool:
    """True when the coordinate vectors differ by a nonzero scalar factor."""
    if len(u) != len(v):
        return False
    pivot = None
    for a, b in zip(u, v):
        if bool(a) != bool(b):
            return False
        if pivot is None and a:
            pivot = (a, b)
    if pivot is None:
        return True  # both zero vectors
    a0, b0 = pivot
    return all(_s(a) * _s(b0) == _s(b) * _s(a0) for a, b in zip(u, v))


class ProjPoint:
    """Point of projective space, stored as a nonzero coordinate tuple."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        cs = tuple(_s(c) for c in coords)
        if not any(cs):
            raise GeometryError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", cs)

    def __setattr__(self, *a):
        raise AttributeError("ProjPoint is immutable")

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def canonical(self) -> "ProjPoint":
        """Scale so the first nonzero coordinate is 1."""
        lead = next(c for c in self.coords if c)
        return ProjPoint(tuple(_div(c, lead) for c in self.coords))

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return proportional(self.coords, other.coords)

    def __hash__(self):
        return hash(self.canonical().coords)

    def serialize(self) -> list[str]:
        return [scalar_str(c) for c in self.canonical().coords]

    def __repr__(self):
        return "ProjPoint((" + ", ".join(scalar_str(c) for c in self.coords) + "))"


def _det3(m) -> Scalar:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    """Rank of the 3 x n coordinate matrix is at most 2."""
    rows = (p.coords, q.coords, r.coords)
    n = len(rows[0])
    for cols in _column_triples(n):
        m = [[row[c] for c in cols] for row in rows]
        if _det3(m):
            return False
    return True


def _column_triples(n: int):
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                yield (i, j, k)


class ProjLine:
    """Line of P^3 through two distinct points, with Plucker coordinates.

    plucker = (p01, p02, p03, p12, p13, p23) where pij = a_i b_j - a_j b_i.
    """

    __slots__ = ("a", "b", "plucker")

    def __init__(self, a: ProjPoint, b: ProjPoint):
        if len(a) != 4 or len(b) != 4:
            raise GeometryError("lines live in P^3")
        u, v = a.coords, b.coords
        pl = tuple(u[i] * v[j] - u[j] * v[i]
                   for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
        if not any(pl):
            raise GeometryError("coincident points do not span a line")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "plucker", pl)

    def __setattr__(self, *a):
        raise AttributeError("ProjLine is immutable")

    def contains(self, p: ProjPoint) -> bool:
        return collinear(self.a, self.b, p)

    def meets(self, other: "ProjLine") -> bool:
        """Intersecting (equivalently coplanar) lines in P^3."""
        p, q = self.plucker, other.plucker
        pairing = (p[0] * q[5] - p[1] * q[4] + p[2] * q[3]
                   + p[5] * q[0] - p[4] * q[1] + p[3] * q[2])
        return not pairing

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return proportional(self.plucker, other.plucker)

    def __hash__(self):
        lead = next(c for c in self.plucker if c)
        return hash(tuple(_div(c, lead) for c in self.plucker))

    def serialize(self) -> dict:
        lead = next(c for c in self.plucker if c)
        return {
            "points": [self.a.serialize(), self.b.serialize()],
            "plucker": [scalar_str(_div(c, lead)) for c in self.plucker],
        }

    def __repr__(self):
        return f"ProjLine({self.a!r}, {self.b!r})"


def plucker_relation(pl: Sequence) -> Scalar:
    """p01 p23 - p02 p13 + p03 p12; identically zero for genuine lines."""
    return pl[0] * pl[5] - pl[1] * pl[4] + pl[2] * pl[3]


class ProjPlane:
    """Plane of P^3 given by its coefficient 4-vector."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = tuple(_s(c) for c in coeffs)
        if len(cs) != 4 or not any(cs):
            raise GeometryError("plane needs a nonzero coefficient 4-vector")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *a):
        raise AttributeError("ProjPlane is immutable")

    @classmethod
    def through(cls, p: ProjPoint, q: ProjPoint, r: ProjPoint) -> "ProjPlane":
        if collinear(p, q, r):
            raise GeometryError("collinear points do not span a plane")
        rows = (p.coords, q.coords, r.coords)
        cof = []
        for i in range(4):
            cols = [c for c in range(4) if c != i]
            m = [[row[c] for c in cols] for row in rows]
            cof.append(_det3(m) if i % 2 == 0 else -_det3(m))
        return cls(cof)

    def contains(self, p: ProjPoint) -> bool:
        total = None
        for c, x in zip(self.coeffs, p.coords):
            term = c * x
            total = term if total is None else total + term
        return not total

    def __eq__(self, other):
        if not isinstance(other, ProjPlane):
            return NotImplemented
        return proportional(self.coeffs, other.coeffs)

    def __hash__(self):
        lead = next(c for c in self.coeffs if c)
        return hash(tuple(_div(c, lead) for c in self.coeffs))

    def __repr__(self):
        return "ProjPlane((" + ", ".join(scalar_str(c) for c in self.coeffs) + "))"


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def kernel(rows: Sequence[Sequence]) -> tuple[list[list[Scalar]], int]:
    """Nullspace basis and rank by fraction-free Gaussian elimination.

    Returns (basis, rank); the basis is deterministic (free columns in
    ascending order, each basis vector has a 1 in its free column).
    """
    m = len(rows)
    if m == 0:
        raise ValueError("kernel of an empty matrix")
    n = len(rows[0])
    a = [[_s(c) for c in row] for row in rows]
    if any(len(row) != n for row in a):
        raise ValueError("ragged matrix")

    piv_cols: list[int] = []
    prev = Fraction(1)
    r = 0
    for col in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][col]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pivot = a[r][col]
        for i in range(r + 1, m):
            head = a[i][col]
            for j in range(col + 1, n):
                a[i][j] = _div(pivot * a[i][j] - head * a[r][j], prev)
            a[i][col] = Fraction(0)
        prev = pivot
        piv_cols.append(col)
        r += 1
    rank = r

    free_cols = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        v: list = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i in range(rank - 1, -1, -1):
            pc = piv_cols[i]
            acc = None
            for j in range(pc + 1, n):
                if a[i][j] and v[j]:
                    term = a[i][j] * v[j]
                    acc = term if acc is None else acc + term
            if acc is not None and acc:
                v[pc] = _div(-acc, a[i][pc])
        basis.append(v)
    return basis, rank


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return kernel(rows)[1]


def line_intersect(l1: ProjLine, l2: ProjLine) -> ProjPoint | None:
    """Common point of two distinct lines; None when they are skew."""
    if l1 == l2:
        raise GeometryError("lines are identical")
    cols = [l1.a.coords, l1.b.coords,
            tuple(-c for c in l2.a.coords), tuple(-c for c in l2.b.coords)]
    rows = [[cols[k][i] for k in range(4)] for i in range(4)]
    basis, rank = kernel(rows)
    if rank == 4:
        return None
    alpha, beta = basis[0][0], basis[0][1]
    coords = tuple(alpha * x + beta * y for x, y in zip(l1.a.coords, l1.b.coords))
    return ProjPoint(coords)


# ---------------------------------------------------------------------------
# projectivities
# ---------------------------------------------------------------------------

def _det4(m) -> Scalar:
    total = None
    for j in range(4):
        if not m[0][j]:
            continue
        sub = [[m[i][k] for k in range(4) if k != j] for i in range(1, 4)]
        term = m[0][j] * _det3(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return Fraction(0) if total is None else total


def _adjugate4(m) -> list[list[Scalar]]:
    adj = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            sub = [[m[r][c] for c in range(4) if c != j]
                   for r in range(4) if r != i]
            cof = _det3(sub)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof  # transpose of the cofactor matrix
    return adj


class Projectivity:
    """Invertible 4x4 matrix up to scale, acting on points and forms."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rs = tuple(tuple(_s(c) for c in row) for row in rows)
        if len(rs) != 4 or any(len(r) != 4 for r in rs):
            raise ValueError("projectivity needs a 4x4 matrix")
        object.__setattr__(self, "rows", rs)

    def __setattr__(self, *a):
        raise AttributeError("Projectivity is immutable")

    @classmethod
    def identity(cls) -> "Projectivity":
        return cls([[Fraction(i == j) for j in range(4)] for i in range(4)])

    def det(self) -> Scalar:
        return _det4(self.rows)

    def adjugate(self) -> "Projectivity":
        return Projectivity(_adjugate4(self.rows))

    def inverse(self) -> "Projectivity":
        """Inverse up to scale (the adjugate; exact and fraction-light)."""
        if not self.det():
            raise GeometryError("singular matrix has no inverse")
        return self.adjugate()

    def __matmul__(self, other):
        if isinstance(other, Projectivity):
            rows = [[sum_prod(self.rows[i], [other.rows[k][j] for k in range(4)])
                     for j in range(4)] for i in range(4)]
            return Projectivity(rows)
        return NotImplemented

    def __pow__(self, n: int) -> "Projectivity":
        if n < 0:
            return self.inverse() ** (-n)
        out = Projectivity.identity()
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(tuple(sum_prod(row, p.coords) for row in self.rows))

    def apply_line(self, l: ProjLine) -> ProjLine:
        return ProjLine(self.apply_point(l.a), self.apply_point(l.b))

    def apply_form(self, f: MultiPoly) -> MultiPoly:
        """Transform a form: the zero set moves forward with the matrix.

        Substitutes the adjugate (inverse up to scale) linear change of
        variables, so apply_form(M, F) vanishes exactly on M . (zeros of F).
        """
        if len(f.vars) != 4:
            raise ValueError("apply_form expects a form in 4 variables")
        if not self.det():
            raise GeometryError("cannot transform a form by a singular matrix")
        adj = _adjugate4(self.rows)
        gens = [MultiPoly.var(f.vars, v) for v in f.vars]
        bindings = {}
        for i, name in enumerate(f.vars):
            acc = MultiPoly.zero(f.vars)
            for j in range(4):
                if adj[i][j]:
                    acc = acc + gens[j] * adj[i][j]
            bindings[name] = acc
        return f.substitute(bindings, into_vars=f.vars)

    def is_identity(self) -> bool:
        return self == Projectivity.identity()

    def order(self, cap: int = 60) -> int:
        """Smallest k with M^k proportional to the identity."""
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc @ self
        raise GeometryError(f"order exceeds cap {cap}")

    def flat(self) -> tuple:
        return tuple(c for row in self.rows for c in row)

    def canonical(self) -> "Projectivity":
        """Scale so the first nonzero entry (row-major) is 1."""
        lead = next(c for c in self.flat() if c)
        return Projectivity([[_div(c, lead) for c in row] for row in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Projectivity):
            return NotImplemented
        return proportional(self.flat(), other.flat())

    def __hash__(self):
        return hash(self.canonical().flat())

    def serialize(self) -> list[list[str]]:
        return [[scalar_str(c) for c in row] for row in self.canonical().rows]

    def __repr__(self):
        return f"Projectivity({[list(r) for r in self.rows]!r})"


def sum_prod(u, v) -> Scalar:
    total = None
    for a, b in zip(u, v):
        if a and b:
            term = a * b
            total = term if total is None else total + term
    return Fraction(0) if total is None else total


def projectivity_from_five_points(src: Sequence[ProjPoint],
                                  dst: Sequence[ProjPoint]) -> Projectivity:
    """The unique projectivity sending five general-position points to five.

    Scales the first four source points so their sum is the fifth, same on
    the target side, and composes the two frames.  Raises
    GeneralPositionError naming the offending quadruple otherwise.
    """
    if len(src) != 5 or len(dst) != 5:
        raise ValueError("need exactly five source and five target points")

    def frame(points, side):
        cols = [p.coords for p in points[:4]]
        m = [[cols[k][i] for k in range(4)] for i in range(4)]
        if not _det4(m):
            raise GeneralPositionError(f"{side} points (0,1,2,3) are coplanar")
        adj = _adjugate4(m)
        alpha = [sum_prod(adj[i], points[4].coords) for i in range(4)]
        for k, ak in enumerate(alpha):
            if not ak:
                others = tuple(x for x in range(4) if x != k) + (4,)
                raise GeneralPositionError(f"{side} points {others} are coplanar")
        return [[cols[k][i] * alpha[k] for k in range(4)] for i in range(4)]

    ms = frame(src, "source")
    md = frame(dst, "target")
    return Projectivity(md) @ Projectivity(_adjugate4(ms))


def plane_restrict(f: MultiPoly, plane: ProjPlane,
                   basis: Sequence[ProjPoint] | None = None):
    """Restrict a form on P^3 to a plane.

    Returns (form in (u, v, w), basis points); the parametrization is
    u*G0 + v*G1 + w*G2 over the returned (or supplied) spanning points.
    """
    if len(f.vars) != 4:
        raise ValueError("plane_restrict expects a form in 4 variables")
    if basis is None:
        vecs, rank = kernel([list(plane.coeffs)])
        if rank != 1:
            raise GeometryError("degenerate plane")
        basis = [ProjPoint(v) for v in vecs]
    else:
        basis = list(basis)
        if len(basis) != 3:
            raise ValueError("a plane basis needs three points")
        for p in basis:
            if not plane.contains(p):
                raise GeometryError("basis point not on the plane")
        if collinear(*basis):
            raise GeometryError("collinear plane basis")
    uvw = ("u", "v", "w")
    gens = [MultiPoly.var(uvw, n) for n in uvw]
    bindings = {}
    for i, name in enumerate(f.vars):
        acc = MultiPoly.zero(uvw)
        for k in range(3):
            if basis[k].coords[i]:
                acc = acc + gens[k] * basis[k].coords[i]
        bindings[name] = acc
    return f.substitute(bindings, into_vars=uvw), list(basis)


def plane_embed(coords, basis: Sequence[ProjPoint]) -> ProjPoint:
    """Point of P^3 from plane coordinates against a spanning basis."""
    out = [Fraction(0)] * 4
    for c, g in zip(coords, basis):
        if c:
            for i in range(4):
                out[i] = out[i] + c * g.coords[i]
    return ProjPoint(out)


def line_restrict(f: MultiPoly, line: ProjLine) -> MultiPoly:
    """Restrict a form on P^3 to a line, parametrized u*A + v*B."""
    if len(f.vars) != 4:
        raise ValueError("line_restrict expects a form in 4 variables")
    uv = ("u", "v")
    gu, gv = MultiPoly.var(uv, "u"), MultiPoly.var(uv, "v")
    bindings = {}
    for i, name in enumerate(f.vars):
        acc = MultiPoly.zero(uv)
        if line.a.coords[i]:
            acc = acc + gu * line.a.coords[i]
        if line.b.coords[i]:
            acc = acc + gv * line.b.coords[i]
        bindings[name] = acc
    return f.substitute(bindings, into_vars=uv)
