"""Shared heavy artifacts: the big sweeps run once per session, timed."""

import time
from fractions import Fraction

import pytest

from quartic_monoid.classify import equivalent, stabilizer
from quartic_monoid.configuration import (build_points, cubic_through_points,
                                          quartic_minor_analysis,
                                          quartic_system)
from quartic_monoid.monoid import build_surface, smoothness_certificate
from quartic_monoid.projective import GeometryError, ProjPoint
from quartic_monoid.scalars import EPS, RatFun
from quartic_monoid.sextuple import Sextuple, is_convergent


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def random_convergent(rng) -> Sextuple:
    """A random convergent sextuple: two points on each of three random
    lines through a random apex, resampled until every condition holds."""
    while True:
        try:
            apex = ProjPoint(tuple(Fraction(rng.randint(-9, 9))
                                   for _ in range(4)))
        except GeometryError:
            continue
        pts = []
        for _ in range(3):
            d = [Fraction(rng.randint(-9, 9)) for _ in range(4)]
            for lam in rng.sample(range(1, 9), 2):
                coords = tuple(c + lam * dc for c, dc in zip(apex.coords, d))
                if any(coords):
                    pts.append(ProjPoint(coords))
        if len(pts) == 6 and is_convergent(pts):
            return Sextuple(pts)


@pytest.fixture(scope="session")
def interp_symbolic():
    """Cubic, quartic system and minor analysis over Q(a), timed together."""
    def run():
        config = build_points(RatFun.gen("a"), "original")
        return {
            "config": config,
            "cubic": cubic_through_points(config),
            "quartic": quartic_system(config),
            "minors": quartic_minor_analysis(config),
        }
    return _timed(run)


@pytest.fixture(scope="session")
def stab3():
    """(GroupReport at a=3, wall seconds of the 720-sweep)."""
    return _timed(lambda: stabilizer(Fraction(3)))


@pytest.fixture(scope="session")
def stab_eps():
    """(GroupReport at a=eps, wall seconds)."""
    return _timed(lambda: stabilizer(EPS))


@pytest.fixture(scope="session")
def symbolic_scan():
    """(StabilizerScan over Q(a), wall seconds)."""
    return _timed(lambda: stabilizer(RatFun.gen("a")))


@pytest.fixture(scope="session")
def equivalence_table():
    """equivalent(3, x) for the five orbit members and three outsiders."""
    values = (Fraction(1, 3), Fraction(-1, 2), Fraction(3, 2), Fraction(-2),
              Fraction(2, 3), Fraction(5), Fraction(7), Fraction(-3))
    return _timed(lambda: {v: equivalent(Fraction(3), v) for v in values})


@pytest.fixture(scope="session")
def qab_symbolic_cert():
    """Smoothness certificate of the two-parameter family, symbolic."""
    a = RatFun.gen("a")
    b = RatFun.gen("b", one=a / a)
    return _timed(lambda: smoothness_certificate(build_surface("qab", a, b)))
