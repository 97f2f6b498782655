"""Reflection group catalog: enumeration, invariants, branch verification."""

from fractions import Fraction

import pytest

from polymap.maps import topological_degree, verify_branch
from polymap.numberfield import zeta
from polymap.parser import parse_poly
from polymap.polyring import (MultiPoly, QQ, common_field, is_scalar_multiple,
                              jacobian_det, substitute)
from polymap.refgroups import (GroupRecord, Matrix2, basic_invariants,
                               basic_set_transition, build_group,
                               claimed_branch, classes_of_degree, cyclic_group,
                               default_table4_rows, enumerate_group,
                               exceptional_group, fingerprint,
                               imprimitive_group, invariant_seed, is_invariant,
                               parse_group_spec, product_group, quotient_map,
                               reynolds, verify_presentation,
                               verify_table4_row)

X = MultiPoly.variable("x", ("x", "y"))
Y = MultiPoly.variable("y", ("x", "y"))

# Shephard-Todd numbers 4..22 with their orders and invariant degrees
EXCEPTIONAL_TABLE = {
    4: (24, (4, 6)), 5: (72, (6, 12)), 6: (48, (4, 12)), 7: (144, (12, 12)),
    8: (96, (8, 12)), 9: (192, (8, 24)), 10: (288, (12, 24)),
    11: (576, (24, 24)), 12: (48, (6, 8)), 13: (96, (8, 12)),
    14: (144, (6, 24)), 15: (288, (12, 24)), 16: (600, (20, 30)),
    17: (1200, (20, 60)), 18: (1800, (30, 60)), 19: (3600, (60, 60)),
    20: (360, (12, 30)), 21: (720, (12, 60)), 22: (240, (12, 20)),
}


def test_matrix_arithmetic():
    i = Matrix2.identity(4)
    d = Matrix2.diagonal(zeta(4), zeta(4).inverse())
    assert d * d.inverse() == i
    assert (d ** 4).is_identity()
    assert not (d ** 2).is_identity()
    assert d.det() == zeta(4).one(4)
    assert d.trace() == zeta(4) + zeta(4).inverse()


def test_cyclic_and_product_records():
    g = cyclic_group(5)
    assert g.expected_order == 5 and g.degrees == (1, 5)
    assert len(enumerate_group(g)) == 5
    h = product_group(2, 3)
    assert h.expected_order == 6 and h.degrees == (2, 3)
    assert len(enumerate_group(h)) == 6


def test_imprimitive_records():
    g = imprimitive_group(6, 2)
    assert g.expected_order == 36 and g.degrees == (6, 6)
    assert len(enumerate_group(g)) == 36
    h = imprimitive_group(4, 1)
    assert h.expected_order == 32 and h.degrees == (8, 4)
    assert len(enumerate_group(h)) == 32


def test_exceptional_catalog_orders():
    for no, (order, degrees) in EXCEPTIONAL_TABLE.items():
        rec = exceptional_group(no)
        assert rec.expected_order == order, no
        assert rec.degrees == degrees, no


def test_small_exceptional_enumeration():
    for no in (4, 5, 6, 12, 13, 22):
        rec = exceptional_group(no)
        assert len(enumerate_group(rec)) == rec.expected_order


def test_presentations_hold():
    for no in (4, 7, 12, 16, 20):
        assert verify_presentation(exceptional_group(no)), no


def test_center_order_equals_presentation_k():
    for no in (4, 5, 8, 12, 22):
        rec = exceptional_group(no)
        fp = fingerprint(enumerate_group(rec))
        assert fp["center_order"] == rec.presentation.k
        assert 2 * rec.presentation.k < rec.expected_order


def test_conjugate_imprimitive_groups_share_fingerprints():
    a = fingerprint(enumerate_group(imprimitive_group(2, 1)))
    b = fingerprint(enumerate_group(imprimitive_group(4, 4)))
    assert a == b


def test_involution_counts():
    # m even, p odd: m + 3 involutions
    for m, p in ((2, 1), (4, 1), (6, 1), (6, 3), (8, 1)):
        els = enumerate_group(imprimitive_group(m, p))
        count = sum(1 for g in els if els.element_order(g) == 2)
        assert count == m + 3, (m, p)
    # G(2m, 4p, 2): 2m + 3 when 4 | m, else 2m + 1
    for m, p in ((2, 1), (4, 1), (6, 1), (8, 1), (8, 2)):
        els = enumerate_group(imprimitive_group(2 * m, 4 * p))
        count = sum(1 for g in els if els.element_order(g) == 2)
        want = 2 * m + 3 if m % 4 == 0 else 2 * m + 1
        assert count == want, (m, p)


def test_parse_group_spec():
    assert parse_group_spec("G4") == exceptional_group(4)
    assert parse_group_spec("G(6,2,2)") == imprimitive_group(6, 2)
    assert parse_group_spec("Z_5") == cyclic_group(5)
    assert parse_group_spec("Z2xZ3") == product_group(2, 3)
    assert parse_group_spec("cyclic(7)") == cyclic_group(7)
    assert parse_group_spec("imprimitive(8, 2)") == imprimitive_group(8, 2)
    with pytest.raises(ValueError):
        parse_group_spec("H17")


def test_build_group_validation():
    with pytest.raises(ValueError):
        build_group("exceptional", 23)
    with pytest.raises(ValueError):
        build_group("imprimitive", 6, 4)  # p must divide m
    with pytest.raises(ValueError):
        build_group("cyclic", 0)


def test_seed_invariance():
    seeds = {"a4": 4, "b6": 4, "c8": 8, "d12": 8,
             "e12": 22, "f20": 22, "g30": 16}
    for name, no in seeds.items():
        assert is_invariant(exceptional_group(no), invariant_seed(name)), name
    # coordinates themselves are not invariant
    assert not is_invariant(exceptional_group(4), X)


def test_hessian_jacobian_reconstructions():
    from polymap.polyring import hessian_det
    a4 = invariant_seed("a4")
    b6 = invariant_seed("b6")
    assert is_scalar_multiple(jacobian_det(a4, hessian_det(a4)), b6)
    assert is_scalar_multiple(hessian_det(b6), invariant_seed("c8"))
    assert is_scalar_multiple(jacobian_det(b6, invariant_seed("c8")),
                              invariant_seed("d12"))
    e12 = invariant_seed("e12")
    assert is_scalar_multiple(hessian_det(e12), invariant_seed("f20"))
    assert is_scalar_multiple(jacobian_det(e12, invariant_seed("f20")),
                              invariant_seed("g30"))


def test_reynolds_projects_onto_invariants():
    rec = exceptional_group(4)
    els = enumerate_group(rec)
    seed = invariant_seed("a4")
    # averaging fixes invariants; the result lives in the group's field
    fixed = reynolds(els, seed)
    assert fixed == seed.in_field(fixed.field)
    # averaging any quartic yields an invariant
    image = reynolds(els, X ** 2 * Y ** 2)
    assert not image.terms or is_invariant(rec, image)


def test_basic_invariants_structure():
    assert basic_invariants(cyclic_group(4)) == (X, Y ** 4)
    assert basic_invariants(product_group(3, 4)) == (X ** 3, Y ** 4)
    p1, p2 = basic_invariants(imprimitive_group(6, 2))
    assert p1 == (X * Y) ** 3 and p2 == X ** 6 + Y ** 6
    for no in (4, 12, 20):
        rec = exceptional_group(no)
        q1, q2 = basic_invariants(rec)
        assert (q1.total_degree(), q2.total_degree()) == rec.degrees
        assert q1.total_degree() * q2.total_degree() == rec.expected_order
        assert jacobian_det(q1, q2).terms


def test_quotient_map_degree():
    assert topological_degree(quotient_map(cyclic_group(3))) == 3
    assert topological_degree(quotient_map(product_group(2, 2))) == 4
    assert topological_degree(quotient_map(imprimitive_group(2, 1))) == 8
    assert topological_degree(quotient_map(exceptional_group(4))) == 24


def test_claimed_branch_frozen():
    assert claimed_branch(cyclic_group(5)) == Y
    assert claimed_branch(product_group(2, 3)) == X * Y
    assert claimed_branch(imprimitive_group(4, 4)) == Y ** 2 - X ** 4 * 4
    assert claimed_branch(imprimitive_group(6, 2)) == \
        X * (Y ** 2 - X ** 2 * 4)
    assert claimed_branch(exceptional_group(4)) == \
        parse_poly("x^3 + (-24*zeta(6) + 12)*y^2")
    with pytest.raises(ValueError):
        claimed_branch(cyclic_group(1))


def test_verify_table4_divisibility_rows():
    for spec in ("Z_4", "Z2xZ3", "G(4,2,2)", "G4", "G5", "G6", "G7"):
        report = verify_table4_row(parse_group_spec(spec))
        assert report["ok"], spec
        assert report["tiers"]["elimination"] == "not-run"


def test_verify_table4_full_rows():
    for spec in ("Z_3", "G(3,3,2)", "G4"):
        report = verify_table4_row(parse_group_spec(spec), tier="full")
        assert report["ok"] and report["tiers"]["elimination"] == "pass", spec


def test_corrected_constants_pass_and_printed_variants_fail():
    # three catalog rows circulate with misprinted branch constants; the
    # forms used here are the ones certified by pullback divisibility
    corrected = {
        5: "y*(x^2 + (1/18*zeta(6) - 1/36)*y)",
        6: "y*(x^3 + (-24*zeta(6) + 12)*y)",
        7: "x*y*(x + (1/18*zeta(6) - 1/36)*y)",
    }
    misprinted = {
        5: "y*(x^2 + (-1/18*zeta(6) + 1/36)*y)",
        6: "y*(x^3 + (-24*zeta(6) + 12)*y^2)",
        7: "x*y*(x + (-1/18*zeta(6) + 1/36)*y)",
    }
    for no, text in corrected.items():
        rec = exceptional_group(no)
        assert claimed_branch(rec) == parse_poly(text)
        f = quotient_map(rec)
        good = verify_branch(f, parse_poly(text), run_elimination=False)
        assert good.substitution_divisible, no
        bad = verify_branch(f, parse_poly(misprinted[no]),
                            run_elimination=False)
        assert not bad.substitution_divisible, no


def test_default_slate_shape():
    rows = default_table4_rows()
    assert len(rows) == 43
    kinds = [r.kind for r in rows]
    assert kinds.count("cyclic") == 5
    assert kinds.count("product") == 6
    assert kinds.count("imprimitive") == 13
    assert kinds.count("exceptional") == 19


def test_basic_set_transition_diagonal():
    a4 = invariant_seed("a4")
    b6 = invariant_seed("b6")
    fld = common_field(a4.field, b6.field)
    psi = (a4.in_field(fld), b6.in_field(fld))
    phi = (psi[0] * 3, psi[1] * 5)
    auto = basic_set_transition(phi, psi)
    assert auto.forward[0] == MultiPoly.variable("x", ("x", "y"), fld) * 3
    assert auto.forward[1] == MultiPoly.variable("y", ("x", "y"), fld) * 5


def test_basic_set_transition_shear_case():
    psi = (parse_poly("x^2 + y^2"), parse_poly("x^2*y^2"))
    phi = (parse_poly("x^2 + y^2"), parse_poly("(x^2 + y^2)^2 - 4*x^2*y^2"))
    auto = basic_set_transition(phi, psi)
    assert auto.forward == (X, X ** 2 - Y * 4)
    # transition composed with psi reproduces phi
    for got, want in zip(auto.forward, (X, X ** 2 - Y * 4)):
        assert got == want
    rebuilt = tuple(substitute(c, {"x": psi[0], "y": psi[1]})
                    for c in auto.forward)
    assert rebuilt == phi


def test_basic_set_transition_identity_and_errors():
    psi = (parse_poly("x^2"), parse_poly("y^2"))
    auto = basic_set_transition(psi, psi)
    assert auto.forward == (X, Y)
    with pytest.raises(ValueError):
        basic_set_transition((X ** 2, Y ** 2), (X ** 3, Y ** 3))
    with pytest.raises(ValueError):
        basic_set_transition((parse_poly("x^2 + y"), parse_poly("y^2")),
                             (parse_poly("x^2"), parse_poly("y^2")))


def test_classes_of_degree_frozen():
    two = classes_of_degree(2)
    assert len(two) == 1 and two[0] == cyclic_group(2)
    seven = classes_of_degree(7)
    assert len(seven) == 1 and seven[0] == cyclic_group(7)
    labels = [r.label for r in classes_of_degree(24)]
    assert labels == ["Z_24", "Z_2xZ_12", "Z_3xZ_8", "Z_4xZ_6",
                      "G(6,3,2)", "G(12,12,2)", "G_4"]
    with pytest.raises(ValueError):
        classes_of_degree(1)


def test_classes_orders_match_request():
    for d in (4, 6, 36, 48, 96, 100):
        for rec in classes_of_degree(d):
            assert rec.expected_order == d, (d, rec.label)
