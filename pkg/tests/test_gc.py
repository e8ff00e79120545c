import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcmatroid.brackets import BracketEvaluator, BracketPolynomial
from gcmatroid.gc import (
    Atom,
    Extensor,
    GcSyntaxError,
    Join,
    Meet,
    atoms,
    eval_numeric,
    expand_polynomial,
    expand_symbolic,
    join,
    meet,
    parse,
    to_text,
    word,
)

from conftest import bracket_oracle, cross, proportional, random_columns


def test_parse_example_structure():
    e = parse("(34^12)v56")
    assert e == Join(Meet(Join(Atom(3), Atom(4)), Join(Atom(1), Atom(2))), Join(Atom(5), Atom(6)))


def test_parse_alternative_symbols_and_spaces():
    assert parse("(34 ∧ 12) ∨ 5 6") == parse("(34^12)v56")
    assert parse("((12))") == word(1, 2)


def test_parse_large_labels():
    e = parse("{12}3^45")
    assert atoms(e) == [12, 3, 4, 5]
    assert parse(to_text(e)) == e


def test_join_is_left_associative():
    assert parse("1v2v3") == Join(Join(Atom(1), Atom(2)), Atom(3))
    assert parse("123") == parse("1v2v3")


@pytest.mark.parametrize("bad", ["", "(12", "12)", "12^34v56", "1^", "a", "{}", "{1"])
def test_parse_errors(bad):
    with pytest.raises(GcSyntaxError) as info:
        parse(bad)
    assert info.value.position >= 0


def test_mixed_operators_message():
    with pytest.raises(GcSyntaxError, match="parenthes"):
        parse("12^34v56")


labels = st.integers(1, 12)


def exprs():
    return st.recursive(
        labels.map(Atom),
        lambda sub: st.one_of(st.builds(Join, sub, sub), st.builds(Meet, sub, sub)),
        max_leaves=8,
    )


@given(exprs())
@settings(max_examples=200, deadline=None)
def test_to_text_round_trip(e):
    assert parse(to_text(e)) == e


def test_join_of_points_is_determinant(rng):
    for _ in range(20):
        cols = random_columns(rng, 3, 3)
        assert eval_numeric("123", cols).value == bracket_oracle(cols, (1, 2, 3))


def test_line_meet_matches_cross_product(rng):
    for _ in range(40):
        cols = random_columns(rng, 3, 4)
        got = eval_numeric("12^34", cols)
        want = cross(cross(cols[0], cols[1]), cross(cols[2], cols[3]))
        if any(want):
            assert got.step == 1
            assert proportional(got.vectors[0], want)
        else:
            assert got.is_zero()


def test_meet_with_low_total_step_is_zero():
    a = Extensor.point((1, 0, 0))
    b = Extensor.point((0, 1, 0))
    m = meet(a, b)
    assert m.step == 0 and m.value == 0


def test_meet_with_full_step_scales():
    full = Extensor.from_vectors([(1, 0, 0), (0, 1, 0), (0, 0, 2)])
    p = Extensor.point((1, 2, 3))
    assert meet(full, p) == p.scaled(2)


def test_join_dependent_is_zero():
    a = Extensor.from_vectors([(1, 2, 3), (2, 4, 6)])
    assert a.is_zero()
    assert join(Extensor.point((1, 0, 0)), Extensor.point((2, 0, 0))).is_zero()


def test_from_plucker_round_trip(rng):
    for _ in range(20):
        cols = random_columns(rng, 4, 2)
        e = Extensor.from_vectors(cols)
        if e.is_zero():
            continue
        again = Extensor.from_plucker(4, 2, e.plucker)
        assert again.plucker == e.plucker


def test_from_plucker_rejects_indecomposable():
    # e12 + e34 in rank 4 is not a decomposable bivector
    with pytest.raises(ValueError):
        Extensor.from_plucker(4, 2, [1, 0, 0, 0, 0, 1])


def test_numeric_join_associative(rng):
    for _ in range(20):
        cols = random_columns(rng, 4, 4)
        a = eval_numeric("(12)(34)", cols)
        b = eval_numeric("1(2(34))", cols)
        assert a.value == b.value


def test_unknown_label():
    with pytest.raises(ValueError, match="unknown point label"):
        eval_numeric("12^45", random_columns(random.Random(0), 3, 4))


def test_symbolic_expansion_example():
    p = expand_polynomial("(34^12)v56", 3)
    assert p == BracketPolynomial.from_text("+ 1 [123][456] - 1 [124][356]")


def test_symbolic_step_bookkeeping():
    fe = expand_symbolic("12^34", 3)
    assert fe.step == 1 and not fe.is_scalar()
    assert expand_symbolic("123", 3).is_scalar()


@pytest.mark.parametrize("expr,r,n", [
    ("(34^12)v56", 3, 6),
    ("(12^45)v(23^56)v(34^61)", 3, 6),
    ("7v8v(34^61)", 3, 8),
    ("(12^457)v(23^567)v(34^617)v7", 4, 7),
    ("(12^34)v(56^78)v9", 3, 9),
])
def test_symbolic_numeric_commute(expr, r, n, rng):
    poly = expand_polynomial(expr, r)
    for _ in range(15):
        cols = random_columns(rng, r, n)
        assert eval_numeric(expr, cols).value == BracketEvaluator(cols).polynomial(poly)


def test_symbolic_numeric_commute_with_fractions():
    rng = random.Random(99)
    poly = expand_polynomial("(12^45)v(23^56)v(34^61)", 3)
    for _ in range(10):
        cols = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)) for _ in range(6)]
        assert eval_numeric("(12^45)v(23^56)v(34^61)", cols).value == BracketEvaluator(cols).polynomial(poly)
