import json
from itertools import combinations

import pytest

from gcmatroid.brackets import BracketMonomial
from gcmatroid.matroid import (
    ConfigError,
    Matroid,
    PointConfig,
    j_generator,
    matroid_from_config,
    nonbases_from_flats,
    same_matroid,
)

from conftest import bracket_oracle, random_columns


def brute_bases(cols, r):
    return {s for s in combinations(range(1, len(cols) + 1), r) if bracket_oracle(cols, s) != 0}


def brute_exchange(m):
    for b1 in m.bases:
        for b2 in m.bases:
            for beta in set(b1) - set(b2):
                if not any(tuple(sorted((set(b1) - {beta}) | {x})) in m.bases for x in set(b2) - set(b1)):
                    return False
    return True


def test_bases_match_oracle(rng):
    for _ in range(25):
        cols = random_columns(rng, 3, 7, -2, 2)
        cfg = PointConfig(tuple(cols))
        try:
            m = matroid_from_config(cfg)
        except ConfigError:
            continue
        assert set(m.bases) == brute_bases(cols, 3)
        assert m.satisfies_exchange()


def test_zero_column_is_loop():
    cfg = PointConfig(((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)))
    m = matroid_from_config(cfg)
    assert m.loops() == [4]
    assert m.nonbases() == [(1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_rank_deficient_rejected():
    with pytest.raises(ConfigError, match="rank"):
        matroid_from_config(PointConfig(((1, 0, 0), (2, 0, 0), (0, 1, 0))))


def test_exchange_fast_matches_brute():
    cases = [
        Matroid(3, 6, frozenset({(1, 2, 3), (4, 5, 6)})),
        Matroid(2, 4, frozenset({(1, 2), (3, 4)})),
        Matroid(2, 4, frozenset({(1, 2), (1, 3), (2, 3)})),
        Matroid.from_nonbases(3, 6, [(1, 2, 3)]),
        Matroid(2, 3, frozenset({(1, 2), (1, 3)})),
        Matroid(2, 4, frozenset({(1, 2), (1, 3), (2, 4)})),
    ]
    for m in cases:
        assert m.satisfies_exchange() == brute_exchange(m)


def test_json_round_trip():
    m = Matroid.from_nonbases(3, 7, [(1, 2, 7), (3, 4, 7), (5, 6, 7)])
    again = Matroid.from_json(json.loads(json.dumps(m.to_json())))
    assert again == m
    assert m.to_json()["nonbases"] == [[1, 2, 7], [3, 4, 7], [5, 6, 7]]


def test_config_json_round_trip():
    cfg = PointConfig(((1, "1/2", 0), (0, 1, "-3")), ("original", "auxiliary"), {"L": (1, 2)}, {"k": 1})
    again = PointConfig.from_json(json.loads(cfg.dumps()))
    assert again == cfg


def test_config_json_shape_checks():
    with pytest.raises(ConfigError):
        PointConfig.from_json({"r": 3, "n": 2, "columns": [["1", "0", "0"]]})
    with pytest.raises(ConfigError):
        PointConfig.from_json({"r": 2, "columns": [["1", "0", "0"]]})
    with pytest.raises(ConfigError):
        PointConfig(((1, 0), (1, 0, 0)))


def test_config_unknown_label():
    cfg = PointConfig(((1, 0, 0),))
    with pytest.raises(ConfigError, match="unknown point label"):
        cfg.column(2)


def test_zeroed_and_scaling():
    cfg = PointConfig(((1, 0, 0), (0, 1, 0), (0, 0, 1)), ("original",) * 3)
    z = cfg.zeroed([2])
    assert z.column(2) == (0, 0, 0)
    assert z.annotations[1] == "zeroed"
    s = cfg.scale_columns([2, 3, 4])
    assert s.column(3) == (0, 0, 4)


def test_same_matroid_shape_mismatch():
    a = Matroid.from_nonbases(3, 6, [])
    b = Matroid.from_nonbases(3, 7, [])
    with pytest.raises(ConfigError):
        same_matroid(a, b)
    assert same_matroid(a, Matroid.from_nonbases(3, 6, []))


def test_nonbases_from_flats():
    assert nonbases_from_flats(3, [(1, 2, 3, 4)]) == {(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)}


def test_j_generator():
    m = Matroid.from_nonbases(2, 3, [(1, 2)])
    g = j_generator(m)
    assert isinstance(g, BracketMonomial)
    assert g.brackets == ((1, 3), (2, 3))
