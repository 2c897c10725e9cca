import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from morrey.weights import (
    CappedPower,
    DoublingUndefined,
    Power,
    Table,
    TruncatedPower,
    WeightError,
    dim_over_p,
    parse_weight,
    ratio_sup,
)

INF = math.inf
lams = st.floats(0.0, 4.0)


# -- evaluation -------------------------------------------------------------------

def test_capped_power_values():
    assert CappedPower(2).eval(0.5) == 4.0
    assert CappedPower(2).eval(2) == 1.0
    assert CappedPower(2).eval(1.0) == 1.0


def test_truncated_power_vanishes_beyond_cutoff():
    w = TruncatedPower(1, 0.5)
    assert w.eval(0.7) == 0.0
    assert w.eval(0.5) == 0.0
    assert w.eval(0.25) == 4.0
    assert w.eval_left(0.5) == pytest.approx(2.0)


def test_eval_rejects_nonpositive_radius():
    with pytest.raises(WeightError):
        Power(1).eval(0.0)
    with pytest.raises(WeightError):
        Power(1)(np.array([1.0, -1.0]))


def test_vectorised_eval_matches_scalar():
    r = np.geomspace(1e-3, 10, 17)
    for w in (Power(0.7), TruncatedPower(0.5, 0.3), CappedPower(1.5), Table((0.0, 0.1), (2.0, 1.0))):
        assert np.array_equal(w(r), np.array([w(float(x)) for x in r]))


@pytest.mark.parametrize("lam", [-1.0, math.nan, math.inf])
def test_bad_lambda(lam):
    with pytest.raises(WeightError):
        Power(lam)


def test_truncated_needs_positive_cutoff():
    with pytest.raises(WeightError):
        TruncatedPower(1.0, 0.0)


# -- scalar constants ---------------------------------------------------------------

def test_infimum_and_supremum():
    assert CappedPower(1).infimum() == 1.0
    assert CappedPower(1).supremum() == INF
    assert Power(0).infimum() == 1.0 and Power(0).supremum() == 1.0
    assert TruncatedPower(0.5, 0.2).infimum() == 0.0
    assert Power(1).infimum() == 0.0


def test_tail_sup_values():
    assert Power(2).tail_sup(0.5) == pytest.approx(4.0)
    assert TruncatedPower(1, 1).tail_sup(2) == 0.0
    assert CappedPower(0.7).tail_sup(3) == 1.0
    with pytest.raises(WeightError):
        Power(1).tail_sup(0.0)


def test_doubling_constants():
    assert Power(3).doubling_constant() == 8.0
    assert CappedPower(3).doubling_constant() == 8.0
    assert Power(0).doubling_constant() == 1.0
    with pytest.raises(DoublingUndefined):
        TruncatedPower(1.0, 0.5).doubling_constant()


def test_table_doubling_from_pieces():
    w = Table((0.0, 1.0, 2.0), (4.0, 2.0, 1.0))
    # worst ratio: r just below 1 (w=4) against 2r just below 2 (w=2) = 2; r in [1, 2) gives 2 vs 1
    assert w.doubling_constant() == pytest.approx(2.0)
    steep = Table((0.0, 1.0), (10.0, 1.0))
    assert steep.doubling_constant() == pytest.approx(10.0)


def test_small_r_behaviour():
    n, p = 1, 2.0
    s = dim_over_p(n, p)
    assert Power(s).small_r_limsup(p, n) == 1.0
    assert Power(s / 2).small_r_limsup(p, n) == 0.0
    assert Power(s / 2).small_r_sup_vanishes(p, n)
    assert Power(s + 0.5).small_r_limsup(p, n) == INF
    assert dim_over_p(3, INF) == 0.0


@pytest.mark.parametrize("n, p", [(1, 1.0), (2, 2.0), (3, 4.0)])
def test_W_p_infinity_membership(n, p):
    s = dim_over_p(n, p)
    assert Power(0).is_W_p_infinity(p, n)
    assert Power(s).is_W_p_infinity(p, n)
    assert not Power(s + 0.1).is_W_p_infinity(p, n)
    assert CappedPower(0).is_W_p_infinity(p, n)


def test_ratio_sup_closed_form():
    # sup over (0, 1/4) of r^{1/2} * r^{-1/4} = (1/4)^{1/4}
    assert ratio_sup(Power(0.25), None, 0.5, 0.0, 0.25) == pytest.approx(0.25 ** 0.25)
    # den vanishing where num does not -> unbounded
    assert ratio_sup(Power(0.0), TruncatedPower(0.0, 1.0), 0.0, 0.5, 2.0) == INF


# -- table weights ------------------------------------------------------------------

def test_table_from_csv(tmp_path):
    p = tmp_path / "w.csv"
    p.write_text("r_break,value\n0.0,3\n0.1,2\n0.5,0\n")
    w = parse_weight(f"table:{p}")
    assert isinstance(w, Table)
    assert [w(x) for x in (0.05, 0.1, 0.3, 0.5, 9.0)] == [3.0, 2.0, 2.0, 0.0, 0.0]
    assert w.breakpoints() == (0.1, 0.5)
    assert w.spec == f"table:{p}"


@pytest.mark.parametrize("starts, values", [
    ((), ()),
    ((0.0, 0.0), (1.0, 1.0)),
    ((0.0,), (-1.0,)),
    ((0.0,), (0.0,)),
])
def test_table_validation(starts, values):
    with pytest.raises(WeightError):
        Table(starts, values)


@pytest.mark.parametrize("spec, cls", [("power:0.5", Power), ("trunc:1:0.25", TruncatedPower),
                                       ("capped:2", CappedPower)])
def test_parse_weight(spec, cls):
    w = parse_weight(spec)
    assert isinstance(w, cls)
    assert parse_weight(w.spec) == w


@pytest.mark.parametrize("spec", ["power:x", "trunc:1", "gauss:1", "table:", "power:-1"])
def test_parse_weight_errors(spec):
    with pytest.raises(WeightError):
        parse_weight(spec)


# -- properties ----------------------------------------------------------------------

weights = st.one_of(
    lams.map(Power),
    lams.map(CappedPower),
    st.tuples(lams, st.floats(0.01, 2.0)).map(lambda t: TruncatedPower(*t)),
)


@given(weights, st.floats(1e-4, 1e3))
def test_eval_nonnegative(w, r):
    assert w(r) >= 0
    if not isinstance(w, TruncatedPower):
        assert w(r) > 0


@given(weights, st.floats(1e-3, 10.0), st.floats(1e-3, 10.0))
def test_tail_sup_nonincreasing(w, a, b):
    a, b = min(a, b), max(a, b)
    assert w.tail_sup(b) <= w.tail_sup(a) * (1 + 1e-12)


@given(weights, st.floats(1e-3, 1e2))
def test_tail_sup_dominates_values(w, a):
    assert w(a) <= w.tail_sup(a) * (1 + 1e-12)


@given(st.one_of(lams.map(Power), lams.map(CappedPower)), st.floats(1e-4, 1e3))
def test_doubling_inequality(w, r):
    sigma = w.doubling_constant()
    assert sigma == 2.0 ** w.lam
    assert w(r) <= sigma * w(2 * r) * (1 + 1e-12)


@given(st.lists(st.floats(0.01, 5.0), min_size=1, max_size=6, unique=True),
       st.lists(st.floats(0.1, 5.0), min_size=6, max_size=6), st.floats(1e-3, 20.0))
def test_table_doubling_inequality(starts, values, r):
    starts = sorted(starts)
    w = Table(tuple(starts), tuple(values[: len(starts)]))
    assume(w(2 * r) > 0)
    assert w(r) <= w.doubling_constant() * w(2 * r) * (1 + 1e-12)
