"""Standard complexes, smash products, lifting checks, exponentials."""

import pytest

from gammaspace.catcore import poset_category, walking_iso_category
from gammaspace.nerve import nerve
from gammaspace.shapes import (
    Exponential,
    boundary,
    build_standard,
    exponential_map,
    has_rlp,
    horn,
    interval_groupoid_nerve,
    is_quasicategory_up_to,
    pointed_point,
    pushout_product,
    simplex_inclusion,
    smash,
    sphere_zero,
    standard_point,
    standard_simplex,
)
from gammaspace.simplicial import (
    Colimit,
    FinSimpSet,
    SimplexRef,
    SimpMap,
    constant_map,
    empty_set,
    hom_set,
    identity_map,
    inclusion_map,
    iso_check,
    product,
)


def spine_of_two_edges():
    pt = standard_point()
    d1 = standard_simplex(1)
    a0 = SimpMap(pt, d1, {(0, "0"): SimplexRef("1")})
    a1 = SimpMap(pt, d1, {(0, "0"): SimplexRef("0")})
    return Colimit([pt, d1, d1], [(0, 1, a0), (0, 2, a1)]).space


def test_build_standard_counts():
    assert build_standard("simplex", 2).summary() == [3, 3, 1]
    assert build_standard("boundary", 1).summary() == [2, 0]
    assert build_standard("horn", 2, k=1).summary() == [3, 2, 0]
    assert build_standard("point").summary() == [1]
    with pytest.raises(ValueError):
        build_standard("horn", 2, k=3)


def test_horn_is_simplex_minus_interior_and_face():
    h = horn(2, 1)
    d2 = standard_simplex(2)
    assert set(h.cell_ids(1)) == set(d2.cell_ids(1)) - {"02"}
    assert h.cell_count(2) == 0
    simplex_inclusion(h, 2).validate()


def test_interval_groupoid_nerve_matches_walking_iso():
    j = interval_groupoid_nerve(bound=3)
    assert j.summary() == [2, 2, 2, 2]
    assert iso_check(j, nerve(walking_iso_category(), bound=3)).holds


def test_smash_unit_and_collapse():
    d1p = FinSimpSet(
        1, {0: {"0": (), "1": ()}, 1: {"01": (SimplexRef("1"), SimplexRef("0"))}},
        pointed="0",
    )
    sm, _ = smash(d1p, sphere_zero(bound=1))
    assert iso_check(sm, d1p).holds
    smp, _ = smash(d1p, pointed_point(bound=1))
    assert smp.cell_count(0) == 1 and smp.cell_count(1) == 0
    # frozen by the explicit quotient computation: collapsing the wedge of
    # two intervals inside the square leaves 2 vertices, 3 edges, 2 cells
    sq, _ = smash(d1p, d1p)
    assert sq.summary() == [2, 3, 2]


def test_smash_requires_basepoints():
    with pytest.raises(ValueError):
        smash(standard_simplex(1), sphere_zero())


def test_rlp_verdicts():
    d1 = standard_simplex(1)
    i1 = inclusion_map(boundary(1), d1)
    # identity against anything lifts
    assert has_rlp(identity_map(d1), i1).holds
    # the interval onto the point is refuted by the reversed-boundary square
    v = has_rlp(constant_map(d1, standard_point(), "0"), i1)
    assert v.fails
    # the nerve of the free isomorphism does lift
    j = interval_groupoid_nerve(bound=2)
    assert has_rlp(constant_map(j, standard_point(), "0"), i1).holds
    # spine onto the point: no composite edge, inner horn square fails
    spine = spine_of_two_edges()
    v2 = has_rlp(constant_map(spine, standard_point(), "0"),
                 simplex_inclusion(horn(2, 1), 2))
    assert v2.fails and v2.witness is not None


def test_rlp_against_identity_always_holds():
    spine = spine_of_two_edges()
    p = constant_map(spine, standard_point(), "0")
    assert has_rlp(p, identity_map(standard_simplex(1))).holds
    assert has_rlp(p, identity_map(boundary(2))).holds


def test_rlp_budget_exhaustion_is_inconclusive():
    from gammaspace.verdicts import Budget

    j = interval_groupoid_nerve(bound=2)
    i1 = inclusion_map(boundary(1), standard_simplex(1))
    v = has_rlp(constant_map(j, standard_point(), "0"), i1, budget=Budget(3))
    assert v.status == "inconclusive"


def test_quasicategory_checks():
    assert is_quasicategory_up_to(standard_simplex(3), 3).holds
    assert is_quasicategory_up_to(nerve(poset_category(2), bound=3), 4).holds
    v = is_quasicategory_up_to(spine_of_two_edges(), 2)
    assert v.fails and v.witness["horn"] == [2, 1]
    assert is_quasicategory_up_to(interval_groupoid_nerve(bound=3), 3).holds


def test_pushout_product_square():
    i1 = inclusion_map(boundary(1), standard_simplex(1))
    pp = pushout_product(i1, i1)
    assert pp.is_mono()
    assert pp.target.summary() == [4, 5, 2]
    assert pp.source.summary() == [4, 4]
    # unit: (empty -> point) box g is g itself
    e = SimpMap(empty_set(), standard_point(), {})
    unit = pushout_product(e, i1)
    assert unit.source.summary() == [2] and unit.target.summary() == [2, 1]
    # f box identity lands isomorphically onto its factor
    pid = pushout_product(i1, identity_map(standard_simplex(1)))
    assert pid.is_iso() or iso_check(pid.source, pid.target).holds


def test_exponential_laws():
    d2 = standard_simplex(2)
    e0 = Exponential(d2, standard_point())
    assert iso_check(e0.space, d2).holds
    e1 = Exponential(d2, standard_simplex(1))
    assert e1.space.cell_count(0) == len(d2.refs(1))
    for k in [standard_point(), standard_simplex(1)]:
        lhs = len(hom_set(product(k, standard_simplex(1))[0], d2))
        assert lhs == len(hom_set(k, e1.space))
    em = exponential_map(
        SimpMap(standard_point(), standard_simplex(1), {(0, "0"): SimplexRef("0")}),
        e1, e0,
    )
    em.validate()
