import json
import random
from fractions import Fraction

import pytest

from gcmatroid.brackets import BracketEvaluator, BracketPolynomial, proportional_mod_plucker
from gcmatroid.certificates import (
    NontrivialityCertificate,
    UnknownFamily,
    catalog,
    cb_valid_subsets,
    certify_cb,
    certify_family,
    certify_not_in_N,
    curve_membership_det,
    curves_through,
    family_matroid,
    named,
    sample,
    saturation_certificate_pencil,
    slide_pairs,
    slide_parameters,
    veronese_exponents,
    veronese_matrix,
    witness,
)
from gcmatroid.constructions import build_cb_grid, build_pascal, conic_point
from gcmatroid.gc import eval_numeric
from gcmatroid.matroid import matroid_from_config

from conftest import bracket_oracle, random_columns


def test_catalog_names():
    assert [p.name for p in catalog("pencil")] == ["F"]
    assert [p.name for p in catalog("pascal")] == ["f", "g7", "g8", "g9", "h78", "h79", "h89"]
    assert [p.name for p in catalog("more_points", n=8)] == ["f6", "f7", "f8"]
    assert len(catalog("cs", d=3)) == 7
    with pytest.raises(UnknownFamily):
        catalog("hexagon")


def test_pascal_f_text():
    assert named("pascal", "f").polynomial.to_text() == "+ 1 [123][145][246][356] - 1 [124][135][236][456]"


def test_h78_matches_displayed_form():
    h = named("pascal", "h78").polynomial
    shown = BracketPolynomial.product((7, 4, 8), (3, 6, 1)) - BracketPolynomial.product((4, 6, 1), (7, 3, 8))
    assert h == shown
    assert h == BracketPolynomial.from_text("- 1 [136][478] + 1 [146][378]")


@pytest.mark.parametrize("family,params", [("pencil", {}), ("pascal", {}), ("more_points", {"n": 8}), ("cs", {"d": 2})])
def test_gc_sources_are_plus_minus_one(family, params):
    for p in catalog(family, **params):
        assert p.source_ratio() in (1, -1), p.name


def test_more_points_f_i_is_relabelled_binomial():
    f6 = named("more_points", "f6", n=8).polynomial
    assert f6 == named("pascal", "f").polynomial
    f8 = named("more_points", "f8", n=8).polynomial
    assert f8.labels() == {1, 2, 3, 4, 5, 8}


def test_pascal_witness_patterns():
    pats = {
        "g7": ("g7", ["g8", "g9"]),
        "g8": ("g8", ["g7", "g9"]),
        "g9": ("g9", ["g7", "g8"]),
        "h78": ("h78", ["h79", "h89"]),
        "h79": ("h79", ["h78", "h89"]),
        "h89": ("h89", ["h78", "h79"]),
    }
    m = family_matroid("pascal")
    for which, (hot, cold) in pats.items():
        w = witness("pascal", which)
        assert named("pascal", hot).value(w) != 0
        for c in cold:
            assert named("pascal", c).value(w) == 0, (which, c)
        ev = BracketEvaluator(w.columns)
        assert all(ev.bracket(b) == 0 for b in m.nonbases())


def test_pascal_witness_structure():
    z = witness("pascal", "cubic")
    assert z.column(1) == z.column(7)
    assert bracket_oracle(z.columns, (1, 4, 5)) == 0
    assert not any(z.column(8)) and not any(z.column(9))
    w = witness("pascal", "quadric")
    assert w.column(1) == w.column(7) and w.column(3) == w.column(8)
    assert bracket_oracle(w.columns, (3, 5, 6)) == 0
    assert not any(w.column(9))


def test_quartic_witness_not_on_conic():
    w = witness("pascal", "quartic")
    assert curve_membership_det(w.columns[:6], 2) != 0
    assert all(not any(w.column(i)) for i in (7, 8, 9))


def test_stratum_point_is_not_a_witness():
    cfg = build_pascal()
    cert = certify_not_in_N(named("pascal", "f"), family_matroid("pascal"), cfg)
    assert not cert.valid
    assert cert.witness_value == 0
    assert "vanishes" in cert.failure


def test_nonbasis_failure_reported():
    cols = random_columns(random.Random(3), 3, 9)
    from gcmatroid.matroid import PointConfig

    cert = certify_not_in_N(named("pascal", "f"), family_matroid("pascal"), PointConfig(tuple(cols)))
    assert not cert.valid
    assert "nonbasis bracket" in cert.failure


def test_certificate_shape_mismatch():
    with pytest.raises(ValueError):
        certify_not_in_N(named("pascal", "f"), family_matroid("pencil"), witness("pascal", "f"))


def test_certificate_json_round_trip():
    cert = certify_family("pascal", "h78", trials=5)
    data = json.loads(json.dumps(cert.to_json()))
    assert set(data) >= {"polynomial", "matroid", "witness", "nonbasis_values", "witness_value", "stratum", "verdict"}
    assert data["verdict"] == "valid"
    again = NontrivialityCertificate.from_json(data)
    assert again.to_json() == cert.to_json()


def test_pascal_sampler_matroid():
    target = family_matroid("pascal")
    for cfg in sample("pascal", 42, 25):
        assert matroid_from_config(cfg) == target


def test_pencil_sampler_matroid():
    for cfg in sample("pencil", 5, 20):
        assert matroid_from_config(cfg).nonbases() == [(1, 2, 7), (3, 4, 7), (5, 6, 7)]


def test_sampler_deterministic():
    a = [c.columns for c in sample("pascal", 11, 5)]
    b = [c.columns for c in sample("pascal", 11, 5)]
    c = [c.columns for c in sample("pascal", 12, 5)]
    assert a == b and a != c


def test_sampler_unknown_family():
    with pytest.raises(UnknownFamily):
        next(sample("nope", 0, 1))


def test_cs_sampler_vanishing():
    exprs = catalog("cs", d=3)
    for cfg in sample("cs", 3, 3, d=3):
        for p in exprs:
            assert eval_numeric(p.gc_source, cfg).value == 0


def test_more_points_witness_diagonal():
    # y_i keeps every point except P_i on the conic, so exactly f_i survives
    ps = catalog("more_points", n=8)
    for i in (6, 7, 8):
        y = witness("more_points", i)
        for j, p in zip((6, 7, 8), ps):
            assert (p.value(y) != 0) == (i == j), (i, j)


def test_veronese_exponent_order():
    assert veronese_exponents(1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert veronese_exponents(2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def test_veronese_degree_one_is_bracket(rng):
    for _ in range(10):
        pts = random_columns(rng, 3, 3)
        assert curve_membership_det(pts, 1) == bracket_oracle(pts, (1, 2, 3))


def test_veronese_conic_points():
    pts = [conic_point(t) for t in (0, 1, -1, 2, Fraction(1, 3), 5)]
    assert curve_membership_det(pts, 2) == 0
    conics = curves_through(pts, 2)
    assert len(conics) == 1
    # x z - y^2 in (x^2, xy, xz, y^2, yz, z^2) order, up to sign
    assert conics[0] in ((0, 0, 1, -1, 0, 0), (0, 0, -1, 1, 0, 0))


def test_veronese_wrong_count():
    with pytest.raises(ValueError, match="exactly 6"):
        curve_membership_det([(1, 0, 0)] * 5, 2)


def test_veronese_matrix_shape():
    m = veronese_matrix([(1, 2, 3)] * 4, 3)
    assert (m.rows, m.cols) == (4, 10)
    assert m[0, 0] == 1 and m[0, 9] == 27


def test_cb_subsets_k3():
    subs = cb_valid_subsets(3)
    assert len(subs) == 1
    grid = build_cb_grid(3)
    assert list(subs[0][0]) == grid.meta["residual"]


def test_cb_unperturbed_grid_is_invalid():
    subset, line = cb_valid_subsets(4)[0]
    grid = build_cb_grid(4)
    cert = certify_cb(4, subset, line, witness_override=grid)
    assert not cert.valid
    assert cert.witness_value == 0


def test_cb_certificate_k3_matches_quartic_story():
    subset, line = cb_valid_subsets(3)[0]
    cert = certify_cb(3, subset, line)
    assert cert.valid
    assert cert.extra["grid_value"] == "0"
    assert cert.extra["slide"] is not None


def test_slide_sequences():
    it = slide_parameters()
    first = [next(it) for _ in range(8)]
    assert first == [1, -1, Fraction(1, 2), Fraction(-1, 2), 2, -2, Fraction(1, 3), Fraction(-1, 3)]
    pairs = slide_pairs()
    assert next(pairs) == (1, -1)
    assert next(pairs) == (-1, Fraction(1, 2))


def test_saturation_report():
    rep = saturation_certificate_pencil()
    assert rep["structural"] and rep["random_agree"] and rep["ok"]
    names = [d["name"] for d in rep["differences"]]
    assert names == ["a-b", "c-d", "e-f'"]
    assert rep["differences"][0]["multiple"] == "+ 1 [127][234]"
    assert rep["differences"][0]["ratio"] in ("1", "-1")


def test_a_minus_b_by_generic_expansion():
    P = BracketPolynomial.product
    diff = P((1, 2, 3), (2, 4, 7)) - P((1, 2, 4), (2, 3, 7))
    assert proportional_mod_plucker(diff, P((1, 2, 7), (2, 3, 4))) in (1, -1)


def test_cs_d2_certificate():
    cert = certify_family("cs", 0, d=2, trials=10)
    assert cert.valid


def test_more_points_certificate():
    cert = certify_family("more_points", 7, n=8, trials=10)
    assert cert.valid
