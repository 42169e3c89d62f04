from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablemaps.chowring import (ChernClass, H12_P3, RingPresentation, Rule, bundle_presentation,
                                 check_confluence, check_integration_table, check_interreduced,
                                 flag_normalization_oracle, format_presentation, integrate,
                                 load_preset, nef_volume, normal_form, parse_presentation,
                                 plane_cubic_bundle_chern, projective_bundle_relation,
                                 projective_space, tensor_line, volume_table_d3_r2,
                                 volume_table_d3_r3, whitney_quotient)
from stablemaps.errors import NonTerminating, NonUnitLeadingTerm, PresentationError, WrongDegree

P2 = load_preset("m03-p2")
P3 = load_preset("m03-p3")


def test_normal_forms_on_plane_bundle():
    eta, l = P2.var("η"), P2.var("l")
    assert eta ** 8 == 12 * eta ** 6 * l ** 2
    assert eta ** 7 * l == 6 * eta ** 6 * l ** 2
    assert normal_form(P2.element(5)) == P2.element(5)


def test_integration_on_plane_bundle():
    eta, l = P2.var("η"), P2.var("l")
    assert integrate(eta ** 8) == 12
    assert integrate(eta ** 6 * l ** 2) == 1
    assert integrate(l ** 3 * eta ** 5) == 0
    assert integrate(P2.element(0)) == 0
    with pytest.raises(WrongDegree):
        integrate(eta ** 7)


def test_nef_volume():
    eta, l = P2.var("η"), P2.var("l")
    assert nef_volume(eta) == 12
    assert nef_volume(l) == 0
    assert nef_volume(eta + l) == 88
    with pytest.raises(WrongDegree):
        nef_volume(eta * l)


@pytest.mark.parametrize("ring", [P2, P3], ids=["p2", "p3"])
def test_presets_are_confluent(ring):
    assert check_confluence(ring) == []
    assert check_interreduced(ring)
    assert check_integration_table(ring) == []


def test_flag_ring_equal_integrals():
    eta, k, lam = P3.var("η"), P3.var("κ"), P3.var("λ")
    assert integrate(eta ** 6 * lam ** 3 * k ** 2) == integrate(eta ** 6 * lam ** 2 * k ** 3) == 1
    assert integrate(eta ** 7 * lam ** 4) == 0
    assert flag_normalization_oracle() == 1


def test_grading_preserved():
    eta, k, lam = P3.var("η"), P3.var("κ"), P3.var("λ")
    x = (eta + 2 * k) ** 4 * (lam - k) ** 3
    assert x.degrees() == {7}
    assert x.is_homogeneous()


def test_chern_steps():
    base = projective_space(2)
    l = base.var("l")
    e1 = whitney_quotient(ChernClass.of(base, 10, 1), ChernClass(1, 1 + 3 * l))
    assert e1.total == 1 - 3 * l + 9 * l ** 2 and e1.rank == 9
    twisted = tensor_line(ChernClass(2, 1 - 3 * l + 3 * l ** 2), 3 * l)
    assert twisted.total == 1 + 3 * l + 3 * l ** 2
    assert tensor_line(e1, base.element(0)) == e1
    assert tensor_line(ChernClass.of(base, 1, 1), 3 * l).total == 1 + 3 * l
    assert whitney_quotient(e1, e1).total == base.element(1)


def test_non_unit_quotient():
    base = projective_space(2)
    with pytest.raises(NonUnitLeadingTerm):
        whitney_quotient(ChernClass.of(base, 3, 1), ChernClass(1, 2 * base.var("l")))


def test_bundle_relations():
    base = projective_space(2)
    l = base.var("l")
    c = plane_cubic_bundle_chern()
    assert str(c) == "1 - 6*l + 24*l^2"
    assert str(projective_bundle_relation(c, "η")) == "η^7 -> 6*η^6*l - 24*η^5*l^2"
    assert str(projective_bundle_relation(ChernClass.of(base, 3, 1), "η")) == "η^3 -> 0"
    assert str(projective_bundle_relation(ChernClass(2, 1 + 3 * l), "η")) == "η^2 -> -3*η*l"


def test_derived_bundle_matches_shipped_preset():
    base = projective_space(2)
    ring = bundle_presentation(base, plane_cubic_bundle_chern(), "η", (("l", 2),))
    assert [str(r) for r in ring.rule_objects()] == [str(r) for r in P2.rule_objects()]
    eta = ring.var("η")
    assert integrate(eta ** 8) == 12


def test_volume_tables():
    assert list(volume_table_d3_r2().values()) == [12, 6, 1, 0, 0, 0, 0, 0, 0]
    t = volume_table_d3_r3()
    assert [t[a] for a in range(12, -1, -1)] == [80160, 93120, 104280, 112360, 116896, 118660] + [119020] * 7
    zero = volume_table_d3_r3(0)
    assert all(zero[a] == t[a] - H12_P3 for a in t)


def test_parser_round_trip():
    again = parse_presentation(format_presentation(P3))
    assert again.rules == P3.rules and again.integrals == P3.integrals


@pytest.mark.parametrize("text", [
    "var x deg 1\nrule x^2 -> x\ntop 2",          # not homogeneous
    "var x deg 1\nvar y deg 1\nrule y^2 -> x*y\ntop 2",  # right side larger
    "var x deg 1\nrule x^2 -> z^2\ntop 2",        # unknown variable
    "var x deg 1\nrule x^2 -> 0",                 # missing top
    "var x deg 1\nfrobnicate\ntop 1",
])
def test_bad_presentations(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_step_budget():
    x_to_y = Rule((("x", 1),), (((("y", 1),), F(1)),))
    ring = RingPresentation([("x", 1), ("y", 1)], [x_to_y], 40, step_budget=5)
    with pytest.raises(NonTerminating):
        ring.element("x^20")


def test_rational_coefficients():
    ring = parse_presentation("var a deg 1\nrule a^3 -> 0\ntop 2\nint a^2 = 1/2")
    assert integrate(ring.element("3/4*a^2")) == F(3, 8)


monomials3 = st.tuples(st.integers(0, 8), st.integers(0, 4), st.integers(0, 4))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(monomials3, st.integers(-5, 5)), max_size=6), st.data())
def test_both_rule_orders_agree(terms, data):
    raw = {}
    for m, c in terms:
        raw[m] = raw.get(m, 0) + F(c)
    assert P3.normal_form_terms(raw) == P3.normal_form_terms(raw, reverse=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6))
def test_integrate_is_linear(a, b):
    eta, k, lam = P3.var("η"), P3.var("κ"), P3.var("λ")
    x = eta ** 6 * lam ** 3 * k ** 2
    y = eta ** 8 * k * lam * (eta + k)
    assert integrate(x * a + y * b) == a * integrate(x) + b * integrate(y)
