from fractions import Fraction

import pytest

from gcmatroid.constructions import (
    DEFAULT_MORE_POINTS_PARAMS,
    PASCAL_NONBASES,
    PENCIL_NONBASES,
    DegenerateConfiguration,
    build_caminata_schaffler,
    build_cb_grid,
    build_more_points,
    build_pascal,
    build_pencil,
    conic_point,
    cs_lambdas,
    cs_reference_matroid,
    grid_label,
    intersect,
    line_through,
    moment_point,
    point,
)
from gcmatroid.matroid import ConfigError, matroid_from_config

from conftest import bracket_oracle, proportional


def test_pencil_nonbases():
    cfg = build_pencil()
    assert matroid_from_config(cfg).nonbases() == [(1, 2, 7), (3, 4, 7), (5, 6, 7)]
    assert set(PENCIL_NONBASES) == {(1, 2, 7), (3, 4, 7), (5, 6, 7)}


def test_pascal_default():
    cfg = build_pascal()
    assert cfg.n == 9 and cfg.r == 3
    assert proportional(cfg.column(7), (1, 4, 4))
    nb = matroid_from_config(cfg).nonbases()
    assert len(nb) == 7
    assert set(nb) == set(PASCAL_NONBASES)
    # Pascal line: 7, 8, 9 collinear by an independent determinant
    assert bracket_oracle(cfg.columns, (7, 8, 9)) == 0


def test_pascal_auxiliaries_are_intersections():
    cfg = build_pascal()
    c = cfg.columns
    for aux, (a, b, x, y) in {7: (1, 2, 4, 5), 8: (2, 3, 5, 6), 9: (3, 4, 6, 1)}.items():
        assert bracket_oracle(c, (a, b, aux)) == 0
        assert bracket_oracle(c, (x, y, aux)) == 0


def test_pascal_rejects_repeated_params():
    with pytest.raises(DegenerateConfiguration):
        build_pascal([0, 1, 1, 2, 3, 4])


def test_pascal_rejects_wrong_count():
    with pytest.raises(ValueError):
        build_pascal([0, 1, 2])


def test_degenerate_reports_extra_dependencies():
    # directions chosen so two pencil points fall on a spurious line
    with pytest.raises(DegenerateConfiguration) as info:
        build_pencil(directions=((1, 0, 0), (0, 1, 0), (1, 1, 0)), params=((0, 1), (0, 1), (0, 1)))
    assert info.value.unexpected or info.value.missing


def test_more_points_q():
    for n in (6, 7, 8, 9):
        cfg = build_more_points(DEFAULT_MORE_POINTS_PARAMS[:n])
        assert cfg.meta["q"] == 2 * (n - 5) + 1
        assert cfg.n == n + 2 * (n - 5) + 1
    assert len(build_more_points(DEFAULT_MORE_POINTS_PARAMS[:6]).lines) == 7


def test_more_points_special_position_detected():
    # equally spaced parameters put 2, 5 and Q63 on a common line
    with pytest.raises(DegenerateConfiguration) as info:
        build_more_points(range(6))
    assert (2, 5, 9) in info.value.unexpected


def test_more_points_n6_matches_pascal_shape():
    m = matroid_from_config(build_more_points([0, 1, -1, 2, -2, 3]))
    assert len(m.nonbases()) == 7


def test_cs_d2():
    cfg, exprs = build_caminata_schaffler(2)
    assert cfg.meta["raw_auxiliaries"] == 3 and cfg.meta["q"] == 3
    assert len(exprs) == 1
    assert len(matroid_from_config(cfg).nonbases()) == 7


def test_cs_d3_counts_and_labels():
    cfg, exprs = build_caminata_schaffler(3)
    assert cfg.meta["raw_auxiliaries"] == 21
    assert cfg.meta["q"] == 14
    assert cfg.n == 21 and cfg.r == 4
    assert len(exprs) == 7
    labels = [s["label"] for s in cfg.meta["sources"]]
    assert labels == [8, 9, 10, 11, 9, 10, 11, 9, 12, 11, 13, 14, 15, 16, 17, 18, 19, 20, 21, 10, 20]
    assert matroid_from_config(cfg) == cs_reference_matroid(3)


def test_cs_lambdas():
    assert cs_lambdas(2) == [(1, 2, 3, 4, 5, 6)]
    assert len(cs_lambdas(3)) == 7
    assert cs_lambdas(3)[0] == (1, 2, 3, 4, 5, 6)


def test_moment_and_conic_points():
    assert conic_point(Fraction(1, 2)) == (1, Fraction(1, 2), Fraction(1, 4))
    assert moment_point(2, 3) == (1, 2, 4, 8)
    with pytest.raises(ValueError):
        moment_point(1, 1)


@pytest.mark.parametrize("k,count", [(3, 7), (4, 36), (5, 110)])
def test_cb_grid_nonbasis_counts(k, count):
    cfg = build_cb_grid(k)
    assert cfg.n == k * k
    assert len(matroid_from_config(cfg).nonbases()) == count


def test_cb_grid_incidences():
    k = 4
    cfg = build_cb_grid(k)
    c = cfg.columns
    diag = [grid_label(k, i, i) for i in range(1, k + 1)]
    assert tuple(diag) == cfg.lines["L"]
    for name, pts in cfg.lines.items():
        for a, b, x in zip(pts, pts[1:], pts[2:]):
            assert bracket_oracle(c, (a, b, x)) == 0, name
    assert len(cfg.meta["residual"]) == k * k - k
    assert cfg.annotations.count("original") == k


def test_cb_grid_too_small():
    with pytest.raises(ValueError):
        build_cb_grid(2)


def test_point_helpers():
    with pytest.raises(ConfigError):
        point(0, 0, 0)
    with pytest.raises(ConfigError):
        line_through((1, 2, 3), (2, 4, 6))
    a = line_through((1, 0, 0), (0, 1, 0))
    with pytest.raises(ConfigError):
        intersect(a, a)
    b = line_through((0, 0, 1), (1, 1, 0))
    assert proportional(intersect(a, b), (1, 1, 0))
