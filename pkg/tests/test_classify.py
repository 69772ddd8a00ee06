"""Stabilizer groups, parameter orbits and the j-invariant."""

from fractions import Fraction

import pytest

from quartic_monoid.classify import (CoincidenceCondition,
                                     EPSILON_GENERATORS, GroupReport,
                                     STABILIZER_GENERATORS, build_group,
                                     equivalent, group_identify, j_invariant,
                                     orbit, stabilizer_verdict,
                                     surfaces_coincide)
from quartic_monoid.configuration import (DegenerateParameterError,
                                          admissible_triplets)
from quartic_monoid.monoid import build_surface
from quartic_monoid.mpoly import parse_poly
from quartic_monoid.projective import Projectivity
from quartic_monoid.scalars import EPS, QuadExt, RatFun, UPoly

A = RatFun.gen("a")
# a^2 - a + 1, the locus where the extra symmetries appear
LOCUS = UPoly("a", (Fraction(1), Fraction(-1), Fraction(1)))

ALWAYS_TRIPLES = {(2, 0, 9), (2, 1, 11), (9, 0, 2),
                  (9, 10, 11), (11, 1, 2), (11, 10, 9)}


def qa_poly(a):
    return build_surface("qa", a).poly


# ---------------------------------------------------------------------------
# coincidence conditions
# ---------------------------------------------------------------------------


def test_condition_holds_at():
    assert CoincidenceCondition.always().holds_at(Fraction(7))
    assert not CoincidenceCondition.never().holds_at(Fraction(7))
    cond = CoincidenceCondition.on_locus(LOCUS)
    assert not cond.holds_at(Fraction(3))
    assert cond.holds_at(EPS)


def test_condition_guards():
    with pytest.raises(ValueError):
        CoincidenceCondition("sometimes")
    with pytest.raises(ValueError):
        CoincidenceCondition("always", LOCUS)
    with pytest.raises(ValueError):
        CoincidenceCondition("onlocus")
    with pytest.raises(ValueError):
        CoincidenceCondition.on_locus(UPoly("a", (Fraction(2),)))


def test_condition_has_no_truth_value():
    """The symbolic answer must never slip into an if-statement."""
    with pytest.raises(TypeError):
        bool(CoincidenceCondition.always())
    with pytest.raises(TypeError):
        if CoincidenceCondition.on_locus(LOCUS):
            pass


def test_condition_eq_serialize():
    assert CoincidenceCondition.on_locus(LOCUS) == \
        CoincidenceCondition.on_locus(LOCUS)
    assert CoincidenceCondition.always() != CoincidenceCondition.never()
    assert CoincidenceCondition.on_locus(LOCUS).serialize() == {
        "variant": "onlocus", "locus": "a^2-a+1"}
    assert CoincidenceCondition.never().serialize() == {"variant": "never"}


def test_coincide_concrete():
    f = qa_poly(Fraction(3))
    assert surfaces_coincide(f, f * Fraction(-7, 2)) is True
    assert surfaces_coincide(f, qa_poly(Fraction(5))) is False


def test_coincide_rejects_bad_forms():
    f = qa_poly(Fraction(3))
    with pytest.raises(ValueError):
        surfaces_coincide(f, f - f)
    with pytest.raises(ValueError):
        surfaces_coincide(f, parse_poly("x^3+y^3+z^3+t^3", ("x", "y", "z", "t")))


def test_coincide_symbolic_always():
    f = parse_poly("x^4+a*y^4", ("x", "y", "z", "t"), params={"a": A})
    assert surfaces_coincide(f, f * A) == CoincidenceCondition.always()


def test_coincide_symbolic_onlocus():
    # x^4 + a y^4 and x^4 + (a^2+1) y^4 agree exactly on a^2 - a + 1 = 0
    f = parse_poly("x^4+a*y^4", ("x", "y", "z", "t"), params={"a": A})
    g = parse_poly("x^4+(a^2+1)*y^4", ("x", "y", "z", "t"), params={"a": A})
    cond = surfaces_coincide(f, g)
    assert cond == CoincidenceCondition.on_locus(LOCUS)
    assert cond.holds_at(EPS) and not cond.holds_at(Fraction(3))


def test_coincide_symbolic_drops_degenerate_roots():
    # the rank drops only at a = 1 and a = -1, both degenerate values
    f = parse_poly("x^4+a*y^4", ("x", "y", "z", "t"), params={"a": A})
    g = parse_poly("a*x^4+y^4", ("x", "y", "z", "t"), params={"a": A})
    assert surfaces_coincide(f, g) == CoincidenceCondition.never()


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


def test_build_group_closes_a_cyclic_generator():
    m = Projectivity(((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0)))
    g = build_group([m])
    assert g.order == 4 and g.abelian and g.closure_added
    assert g.profile == {1: 1, 2: 1, 4: 2}
    assert g.label == "unrecognized (order 4)"


def test_build_group_rejects_infinite_order():
    shear = Projectivity(((1, 1, 0, 0), (0, 1, 0, 0),
                          (0, 0, 1, 0), (0, 0, 0, 1)))
    with pytest.raises(ValueError):
        build_group([shear])


def test_group_identify_requires_closure():
    rot = Projectivity(((0, 1, 0, 0), (0, 0, 1, 0),
                        (1, 0, 0, 0), (0, 0, 0, 1)))
    bad = GroupReport((Projectivity.identity(), rot), 2, True,
                      {1: 1, 3: 1}, "", False)
    with pytest.raises(ValueError):
        group_identify(bad)


def test_generator_orders():
    assert [m.order() for m in STABILIZER_GENERATORS] == [3, 2]
    assert [m.order() for m in EPSILON_GENERATORS] == [2, 6]


def test_generators_fix_concrete_surface():
    f = qa_poly(Fraction(3))
    for m in STABILIZER_GENERATORS:
        assert surfaces_coincide(m.apply_form(f), f) is True


def test_generators_fix_symbolic_surface():
    """Both generic generators preserve the surface for every parameter."""
    f = qa_poly(A)
    for m in STABILIZER_GENERATORS:
        assert surfaces_coincide(m.apply_form(f), f) == \
            CoincidenceCondition.always()


def test_epsilon_generators_fix_epsilon_surface():
    f = qa_poly(EPS)
    for m in EPSILON_GENERATORS:
        assert surfaces_coincide(m.apply_form(f), f) is True


def test_generators_span_s3():
    g = build_group(STABILIZER_GENERATORS)
    assert g.order == 6 and g.label == "S3" and not g.abelian
    assert g.profile == {1: 1, 2: 3, 3: 2}
    assert g.closure_added


def test_epsilon_generators_span_s3xc3():
    g = build_group(EPSILON_GENERATORS)
    assert g.order == 18 and g.label == "S3xC3" and not g.abelian
    assert g.profile == {1: 1, 2: 3, 3: 8, 6: 6}


def test_verdict_on_the_identity_triplet():
    surface = build_surface("qa", Fraction(3))
    verdict, m = stabilizer_verdict(surface, (11, 10, 9))
    assert verdict is True
    assert m == Projectivity.identity()


def test_verdict_rejects_a_non_stabilizing_triplet():
    surface = build_surface("qa", Fraction(3))
    triple = next(t for t in admissible_triplets()
                  if t not in ALWAYS_TRIPLES)
    verdict, m = stabilizer_verdict(surface, triple)
    assert verdict is False
    assert m != Projectivity.identity()


def test_stabilizer_at_three(stab3):
    report, _ = stab3
    assert report.order == 6 and report.label == "S3"
    assert not report.abelian and not report.closure_added
    assert report.profile == {1: 1, 2: 3, 3: 2}
    assert any(m == Projectivity.identity() for m in report.matrices)
    for gen in STABILIZER_GENERATORS:
        assert any(m == gen for m in report.matrices)


def test_stabilizer_at_epsilon(stab_eps):
    """On the locus the group grows from S3 to S3 x C3."""
    report, _ = stab_eps
    assert report.order == 18 and report.label == "S3xC3"
    assert not report.abelian
    assert report.profile == {1: 1, 2: 3, 3: 8, 6: 6}
    for gen in EPSILON_GENERATORS:
        assert any(m == gen for m in report.matrices)


def test_group_report_serialize(stab3):
    report, _ = stab3
    doc = report.serialize()
    assert doc["order"] == 6 and doc["label"] == "S3"
    assert doc["order_profile"] == {"1": 1, "2": 3, "3": 2}
    assert len(doc["matrices"]) == 6
    assert all(len(mat) == 16 for mat in doc["matrices"])


# ---------------------------------------------------------------------------
# the symbolic sweep
# ---------------------------------------------------------------------------


def test_sweep_partition(symbolic_scan):
    scan, _ = symbolic_scan
    assert {t for t, _ in scan.always} == ALWAYS_TRIPLES
    assert len(scan.onlocus) == 12
    assert scan.never_count == 702
    assert len(scan.always) + len(scan.onlocus) + scan.never_count == 720


def test_sweep_every_locus_is_the_same(symbolic_scan):
    scan, _ = symbolic_scan
    assert all(locus == LOCUS for _, _, locus in scan.onlocus)
    assert scan.locus_union_squarefree() == LOCUS


def test_sweep_group_is_s3(symbolic_scan):
    scan, _ = symbolic_scan
    g = scan.group()
    assert g.order == 6 and g.label == "S3" and not g.closure_added
    assert g.profile == {1: 1, 2: 3, 3: 2}
    base = dict(scan.always)[(11, 10, 9)]
    assert base == Projectivity.identity()


def test_sweep_serialize(symbolic_scan):
    scan, _ = symbolic_scan
    doc = scan.serialize()
    assert set(doc) == {"always", "onlocus", "never_count",
                        "locus_union", "group"}
    assert doc["locus_union"] == "a^2-a+1"
    assert doc["never_count"] == 702
    assert {tuple(e["triple"]) for e in doc["always"]} == ALWAYS_TRIPLES
    assert all(e["locus"] == "a^2-a+1" for e in doc["onlocus"])
    assert doc["group"]["label"] == "S3"


# ---------------------------------------------------------------------------
# j-invariant, orbits, equivalence
# ---------------------------------------------------------------------------


def test_j_values():
    assert j_invariant(Fraction(3)) == Fraction(21952, 9)
    assert j_invariant(Fraction(1, 3)) == Fraction(21952, 9)
    assert j_invariant(Fraction(5)) == Fraction(148176, 25)
    assert j_invariant(3) == Fraction(21952, 9)
    assert j_invariant(EPS) == 0


def test_j_poles():
    for v in (Fraction(0), Fraction(1)):
        with pytest.raises(ZeroDivisionError):
            j_invariant(v)


def test_j_symbolic_form():
    expected = 256 * RatFun(LOCUS) ** 3 / RatFun(
        UPoly.gen("a") ** 2 * (UPoly.gen("a") - UPoly.const("a", 1)) ** 2)
    assert j_invariant(A) == expected


def test_j_is_constant_on_the_symbolic_orbit():
    j = j_invariant(A)
    values = orbit(A)
    assert len(values) == 6
    for v in values:
        assert j_invariant(v) == j


def test_orbit_of_three():
    values = orbit(Fraction(3))
    assert values[0] == Fraction(3)
    assert set(values) == {Fraction(3), Fraction(1, 3), Fraction(-1, 2),
                           Fraction(3, 2), Fraction(-2), Fraction(2, 3)}


def test_orbit_merges_coincident_values():
    assert orbit(Fraction(-1)) == [Fraction(-1), Fraction(1, 2), Fraction(2)]
    assert set(orbit(Fraction(2))) == set(orbit(Fraction(-1)))


def test_orbit_at_epsilon():
    assert orbit(EPS) == [EPS, QuadExt(1) - EPS]


def test_orbit_guards():
    for v in (Fraction(0), Fraction(1)):
        with pytest.raises(ValueError):
            orbit(v)


def test_equivalent_within_the_orbit(equivalence_table):
    table, _ = equivalence_table
    for v in (Fraction(1, 3), Fraction(-1, 2), Fraction(3, 2),
              Fraction(-2), Fraction(2, 3)):
        res = table[v]
        assert res["equivalent"] is True
        assert res["witness"] is not None
        assert res["j_a"] == res["j_b"] == Fraction(21952, 9)


def test_equivalent_outside_the_orbit(equivalence_table):
    table, _ = equivalence_table
    expected = {Fraction(5): Fraction(148176, 25),
                Fraction(7): Fraction(5088448, 441),
                Fraction(-3): Fraction(35152, 9)}
    for v, jb in expected.items():
        res = table[v]
        assert res["equivalent"] is False
        assert res["witness"] is None
        assert res["j_b"] == jb != res["j_a"]


def test_witness_carries_one_surface_onto_the_other(equivalence_table):
    table, _ = equivalence_table
    m = table[Fraction(1, 3)]["witness"]
    f = qa_poly(Fraction(3))
    g = qa_poly(Fraction(1, 3))
    assert surfaces_coincide(m.apply_form(f), g) is True


def test_self_equivalence():
    res = equivalent(Fraction(3), Fraction(3))
    assert res["equivalent"] is True
    assert res["witness"] == Projectivity.identity()


def test_equivalent_guards():
    with pytest.raises(TypeError):
        equivalent(A, Fraction(3))
    with pytest.raises(DegenerateParameterError):
        equivalent(Fraction(3), Fraction(0))
    with pytest.raises(DegenerateParameterError):
        equivalent(Fraction(3), Fraction(2))
