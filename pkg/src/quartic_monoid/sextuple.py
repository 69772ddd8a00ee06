"""Convergent sextuples and the unique projectivity between two of them.

A convergent sextuple is six points of P^3 whose pairing lines E0+E1,
E2+E3, E4+E5 pass through one common apex, with no further degeneracy.
Such a sextuple carries a distinguished projective frame, which pins down
a unique projectivity between any two convergent sextuples.
"""

from __future__ import annotations

from fractions import Fraction

from .configuration import TRIPLES, triple_through_pair
from .projective import (GeometryError, ProjLine, ProjPoint, Projectivity,
                         collinear, line_intersect, matrix_rank,
                         projectivity_from_five_points)

ORIGIN = ProjPoint((0, 0, 0, 1))

BASE_SEXTUPLE_COORDS = ((1, 0, 0, 1), (2, 0, 0, 1), (0, 1, 0, 1),
                        (0, 2, 0, 1), (0, 0, 1, 1), (0, 0, 2, 1))


class SextupleError(GeometryError):
    """A sextuple fails convergence or a derived construction degenerates."""


class ConvergenceReport:
    """Outcome of the four convergence conditions, with the apex on success."""

    def __init__(self, ok: bool, reason: str | None = None,
                 apex: ProjPoint | None = None):
        self.ok = ok
        self.reason = reason
        self.apex = apex

    def __bool__(self) -> bool:
        return self.ok

    def serialize(self) -> dict:
        return {
            "ok": self.ok,
            "reason": self.reason,
            "apex": None if self.apex is None else self.apex.serialize(),
        }


class Sextuple:
    """Six ordered points, optionally remembering the triplet they came from."""

    def __init__(self, points, triple=None):
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint(tuple(p))
                    for p in points)
        if len(pts) != 6:
            raise ValueError("a sextuple needs exactly six points")
        self.points = pts
        self.triple = triple

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> ProjPoint:
        return self.points[i]

    def __eq__(self, other):
        if not isinstance(other, Sextuple):
            return NotImplemented
        return self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"Sextuple({self.points!r})"

    def serialize(self) -> dict:
        rep = is_convergent(self.points)
        return {
            "triple": None if self.triple is None else list(self.triple),
            "points": [p.serialize() for p in self.points],
            "A": None if rep.apex is None else rep.apex.serialize(),
        }


BASE_SEXTUPLE = Sextuple(BASE_SEXTUPLE_COORDS)


def is_convergent(points) -> ConvergenceReport:
    """Check the four conditions; the report names the first failure."""
    pts = [p if isinstance(p, ProjPoint) else ProjPoint(tuple(p))
           for p in points]
    if len(pts) != 6:
        return ConvergenceReport(False, "expected six points")
    for i in range(6):
        if pts[i] == ORIGIN:
            return ConvergenceReport(False, f"point {i} is the origin")
        for j in range(i + 1, 6):
            if pts[i] == pts[j]:
                return ConvergenceReport(False, f"points {i} and {j} coincide")
    try:
        pairing = [ProjLine(pts[0], pts[1]), ProjLine(pts[2], pts[3]),
                   ProjLine(pts[4], pts[5])]
        apex = line_intersect(pairing[0], pairing[1])
    except GeometryError as ex:
        return ConvergenceReport(False, f"pairing lines degenerate: {ex}")
    if apex is None:
        return ConvergenceReport(False, "lines E0+E1 and E2+E3 are skew")
    if not pairing[2].contains(apex):
        return ConvergenceReport(False, "line E4+E5 misses the common point")
    if any(apex == p for p in pts):
        return ConvergenceReport(False, "apex is one of the six points")
    for i in range(4):
        for j in range(i + 1, 5):
            for k in range(j + 1, 6):
                if collinear(pts[i], pts[j], pts[k]):
                    return ConvergenceReport(
                        False, f"points {i}, {j}, {k} are collinear")
    if matrix_rank([p.coords for p in pts]) < 4:
        return ConvergenceReport(False, "the six points are coplanar")
    return ConvergenceReport(True, None, apex)


def _require_convergent(s) -> tuple[list[ProjPoint], ProjPoint]:
    pts = list(s.points if isinstance(s, Sextuple) else s)
    rep = is_convergent(pts)
    if not rep:
        raise SextupleError(f"not a convergent sextuple: {rep.reason}")
    return pts, rep.apex


def admissible_triplet(triple) -> bool:
    """Ordered (i, j, k): distinct indices, not collinear, each pair covered."""
    if len(triple) != 3 or len(set(triple)) != 3:
        return False
    if not all(0 <= i < 12 for i in triple):
        return False
    if tuple(sorted(triple)) in TRIPLES:
        return False
    i, j, k = triple
    return all(triple_through_pair(p, q) is not None
               for p, q in ((i, j), (i, k), (j, k)))


def standard_sextuple(surface, triple) -> Sextuple:
    """The convergent sextuple cut on a surface by an admissible triplet.

    For (i, j, k), the residual lines l_ij, l_ik, l_jk of the collinear
    triples through the three pairs are intersected with the surface lines
    O+Pi, O+Pj, O+Pk following the fixed pattern, so the apex is O.
    """
    triple = tuple(triple)
    if not admissible_triplet(triple):
        raise ValueError(f"{triple} is not an admissible ordered triplet")
    i, j, k = triple
    l_ij = surface.residual_line(triple_through_pair(i, j)).line
    l_ik = surface.residual_line(triple_through_pair(i, k)).line
    l_jk = surface.residual_line(triple_through_pair(j, k)).line
    spokes = {m: ProjLine(ORIGIN, surface.config.points[m]) for m in triple}
    pairs = ((i, l_ij), (i, l_ik), (j, l_ij), (j, l_jk), (k, l_ik), (k, l_jk))
    pts = []
    for m, residual in pairs:
        p = line_intersect(spokes[m], residual)
        if p is None:
            raise SextupleError(
                f"line through point {m} misses the residual line")
        pts.append(p)
    sx = Sextuple(pts, triple)
    rep = is_convergent(sx.points)
    if not rep:
        raise SextupleError(f"triplet {triple} is degenerate: {rep.reason}")
    if rep.apex != ORIGIN:
        raise SextupleError(f"apex of triplet {triple} moved off the origin")
    return sx


class AuxFrame:
    """Derived points of a convergent sextuple.

    R1 = (E0+E3) cap (E1+E2), R2 = (E0+E5) cap (E1+E4),
    R3 = (E2+E5) cap (E3+E4); the lines R1+E4, R2+E2, R3+E0 are concurrent
    in A1, and (A, E0, E2, E4, A1) is a projective frame.  A2 (same recipe
    with the complementary points) completes the collinearity A, A1, A2.
    """

    def __init__(self, s):
        pts, apex = _require_convergent(s)
        self.points = pts
        self.apex = apex
        self.r1 = self._meet(pts[0], pts[3], pts[1], pts[2], "R1")
        self.r2 = self._meet(pts[0], pts[5], pts[1], pts[4], "R2")
        self.r3 = self._meet(pts[2], pts[5], pts[3], pts[4], "R3")
        self.a1 = self._concurrent(
            (self.r1, pts[4]), (self.r2, pts[2]), (self.r3, pts[0]), "A1")

    @staticmethod
    def _meet(p1, p2, q1, q2, name) -> ProjPoint:
        r = line_intersect(ProjLine(p1, p2), ProjLine(q1, q2))
        if r is None:
            raise SextupleError(f"the lines defining {name} are skew")
        return r

    @staticmethod
    def _concurrent(c1, c2, c3, name) -> ProjPoint:
        lines = [ProjLine(p, q) for p, q in (c1, c2, c3)]
        common = line_intersect(lines[0], lines[1])
        if common is None or not lines[2].contains(common):
            raise SextupleError(f"the three lines defining {name} are "
                                "not concurrent")
        return common

    def frame(self) -> tuple[ProjPoint, ...]:
        return (self.apex, self.points[0], self.points[2], self.points[4],
                self.a1)

    def second_apex(self) -> ProjPoint:
        return self._concurrent((self.r1, self.points[5]),
                                (self.r2, self.points[3]),
                                (self.r3, self.points[1]), "A2")


def sextuple_projectivity(src, dst) -> Projectivity:
    """The unique projectivity sending one convergent sextuple to another.

    Both carry the frame (A, E0, E2, E4, A1); the projectivity matching the
    frames is computed and the images of E1, E3, E5 are then verified.
    """
    fs, fd = AuxFrame(src), AuxFrame(dst)
    m = projectivity_from_five_points(fs.frame(), fd.frame())
    for idx in (1, 3, 5):
        if m.apply_point(fs.points[idx]) != fd.points[idx]:
            raise SextupleError(
                f"frame projectivity does not map point {idx} correctly")
    return m


def aux_collinearity_check(s) -> bool:
    """Whether A, A1 and A2 line up (they do for every convergent sextuple)."""
    frame = AuxFrame(s)
    return collinear(frame.apex, frame.a1, frame.second_apex())
