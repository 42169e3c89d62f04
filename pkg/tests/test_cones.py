from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest

from stablemaps import cones
from stablemaps.cones import (ATLAS, EFF44, Containment, Membership, RationalCone, certify_face,
                              classify_base_locus, cone_contains, effective_cone, group_rank,
                              named_regions, verify_coplanarity_groups)
from stablemaps.errors import DimensionMismatch, NotEffective, UnknownCone
from stablemaps.picard import DivisorClass, d4_classes, named_class, test_curve

C = d4_classes()


def d4(a, b, c):
    return DivisorClass(4, a, (b, c))


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _section_area2(gens, w=(10, 1, 1)):
    """Twice the area (up to a fixed factor) of the cone's slice by w.v = 1."""
    pts = [tuple(x / sum(F(wi) * xi for wi, xi in zip(w, g)) for x in g) for g in gens]
    if len(pts) == 3:
        return abs(_det3(*pts))
    assert len(pts) == 4
    # a convex quadrilateral: the four triangles cover it exactly twice
    return sum(abs(_det3(*t)) for t in combinations(pts, 3)) / 2


def test_membership_states():
    cone = RationalCone(2, ((1, 0), (0, 1)))
    assert cone_contains(cone, (1, 1)) is Membership.INTERIOR
    assert cone_contains(cone, (1, 0)) is Membership.BOUNDARY
    assert cone_contains(cone, (-1, 1)) is Membership.OUTSIDE
    with pytest.raises(DimensionMismatch):
        cone_contains(cone, (1, 1, 1))


def test_lower_dimensional_cone_uses_relative_interior():
    ray = RationalCone(3, ((1, 2, 3),))
    assert cone_contains(ray, (2, 4, 6)) is Membership.INTERIOR
    assert cone_contains(ray, (0, 0, 0)) is Membership.BOUNDARY
    assert cone_contains(ray, (1, 2, 4)) is Membership.OUTSIDE


def test_known_effective_cones():
    eff43 = effective_cone(4, 3)
    assert cones.contains(eff43, C["NI"]) and cones.contains(eff43, C["H"])
    assert not cones.contains(eff43, -C["H"])
    eff42 = effective_cone(4, 2)
    assert cones.contains(eff42, C["TR"]) and cones.contains(eff42, C["TN"])
    with pytest.raises(UnknownCone):
        effective_cone(5, 2)


def test_coplanarity():
    assert all(ok for _, ok in verify_coplanarity_groups())
    assert group_rank(cones.CONTROL_GROUP) == 3


def test_face_certificate_rejects_wrong_face():
    assert not certify_face([test_curve("B2", 4)], [C["NI"], C["Delta13"]])


def test_atlas_tiles_effective_cone():
    total = _section_area2(EFF44.generators)
    parts = [_section_area2(c.generators) for c in ATLAS.chambers.values()]
    assert sum(parts) == total
    for c in ATLAS.chambers.values():
        assert all(cones.contains(EFF44, g) for g in c.generators)


def test_chamber_barycenters_are_in_one_chamber():
    for name, c in ATLAS.chambers.items():
        bary = tuple(sum(g[i] for g in c.generators) for i in range(3))
        assert ATLAS.locate(bary) == [name]


def test_random_effective_classes_have_no_gaps():
    rng = np.random.default_rng(7)
    gens = EFF44.generators
    for _ in range(500):
        w = rng.integers(0, 1000, size=3)
        if not w.any():
            continue
        v = tuple(sum(int(wi) * g[i] for wi, g in zip(w, gens)) for i in range(3))
        assert ATLAS.locate(v)
        classify_base_locus(d4(*v))


@pytest.mark.parametrize("coeffs,key,state", [
    ((0, 0, 1), "delta22", Containment.YES),
    ((1, 1, 4), "delta22", Containment.WALL),
    ((1, 0, 0), "delta22", Containment.NO),
])
def test_classifier_examples(coeffs, key, state):
    assert getattr(classify_base_locus(d4(*coeffs)), "contains_" + key) is state


def test_h_is_moving_and_clear():
    rep = classify_base_locus(C["H"])
    assert rep.moving_cone_member
    assert (rep.contains_delta22, rep.contains_ddeg, rep.contains_delta13) == (Containment.NO,) * 3


def test_ddeg_plus_ni_has_ddeg():
    assert classify_base_locus(C["D_deg"] + C["NI"]).contains_ddeg is Containment.YES


def test_not_effective():
    with pytest.raises(NotEffective):
        classify_base_locus(-C["H"])


def test_report_json_round_trip():
    rep = classify_base_locus(C["H"] + C["Delta22"] * F(1, 3))
    assert cones.BaseLocusReport.from_json_obj(rep.to_json_obj()) == rep


def test_named_regions_cover_forced_cones():
    regions = named_regions()
    assert "moving:NI-Q-P-TR" in regions
    assert sum(k.startswith("delta22:") for k in regions) == 2
