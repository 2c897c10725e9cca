import csv
import io
import json
import math

import numpy as np
import pytest

from morrey import GridDomain, GridFunction
from morrey.verify import checks
from morrey.verify.battery import KINDS, generate, make_battery
from morrey.verify.checks import CHECK_IDS, Context, UnknownCheck, check, run_suite
from morrey.verify.constants import (
    IotaUndefined,
    discrete_measure,
    embedding_constants,
    iota_constant,
    jay_constant,
    lattice_counts,
)
from morrey.verify.report import CSV_COLUMNS, CheckReport, dumps, fmt_float, reports_to_csv, reports_to_json
from morrey.weights import CappedPower, Power, TruncatedPower

INF = math.inf


# -- constants -------------------------------------------------------------------------

def test_iota_examples():
    assert iota_constant(Power(0.25), Power(0.75), 2, 1, 0.3, 1) == pytest.approx(1.0)
    assert iota_constant(Power(0.25), Power(0.75), 2, 1, INF, 1) == pytest.approx(1.0)
    assert iota_constant(Power(0.25), Power(0.25), 2, 1, 0.5, 1) == pytest.approx(math.sqrt(0.5))
    assert iota_constant(Power(0.7), Power(0.7), 3, 3, 2.0, 2) == pytest.approx(1.0)
    with pytest.raises(IotaUndefined):
        iota_constant(TruncatedPower(0.5, 1.0), Power(0.5), 2, 1, 0.5, 1)
    with pytest.raises(ValueError):
        iota_constant(Power(0.5), Power(0.5), 1, 2, 0.5, 1)


def test_jay_examples():
    for v1, v2 in ((Power(0.25), Power(0.25)), (CappedPower(0.25), CappedPower(0.75))):
        assert jay_constant(v1, v2, 2, 1, 0.5, 1) == iota_constant(v1, v2, 2, 1, 0.5, 1)
    assert jay_constant(Power(0.3), Power(0.3), 2, 2, INF, 1) == pytest.approx(1.0)
    # lambda <= nu, p >= q, lambda - n/p >= nu - n/q  -> finite
    assert math.isfinite(jay_constant(Power(0.25), Power(0.5), 4, 2, INF, 1))
    const = embedding_constants(Power(0.25), Power(0.75), 2, 1, 0.25, 1)
    assert const.omega_factor == pytest.approx(2 ** 0.5)


def test_lattice_counts_and_measure():
    assert lattice_counts(2, 3).tolist() == [0, 1, 9, 25]
    m = discrete_measure(2, 0.5, 3, 10)
    assert m.tolist() == [0.25, 2.25, 2.5]


# -- battery ---------------------------------------------------------------------------

def test_battery_is_seeded():
    for kind in KINDS:
        a, b = generate(kind, 2, 16, 7), generate(kind, 2, 16, 7)
        assert a == b
    assert generate("box", 1, 64, 1) != generate("box", 1, 64, 2)
    names = [k for k, _ in make_battery(0, 1, 32)]
    assert "zero" not in names and len(names) == len(KINDS) - 1
    with pytest.raises(ValueError):
        generate("spiral", 1, 8)


# -- reports ---------------------------------------------------------------------------

def test_report_build_and_formats():
    r = CheckReport.build("x", 1.0, 2.0, 1e-9, "abc")
    assert r.passed and r.ratio == 0.5
    bad = CheckReport.build("y", 1.0, 0.5, 1e-9, "abc")
    assert not bad.passed
    nan = CheckReport.build("z", float("nan"), 1.0, 1e-9, "abc")
    assert not nan.passed
    doc = json.loads(reports_to_json([r, bad], {"seed": 1}))
    assert doc["summary"] == {"total": 2, "passed": 1, "failed": 1}
    assert doc["reports"][0]["pass"] is True
    rows = list(csv.reader(io.StringIO(reports_to_csv([r]))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[1][4] == "true"


def test_float_formatting():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(INF) == "inf" and fmt_float(-INF) == "-inf" and fmt_float(math.nan) == "nan"
    text = dumps({"a": 1.0, "b": INF, "c": [np.float64(2.5), np.int64(3)], "d": True})
    assert json.loads(text) == {"a": 1.0, "b": "inf", "c": [2.5, 3], "d": True}
    assert '"a": 1.0' in text


# -- checks ----------------------------------------------------------------------------

def test_check_ids_registry():
    assert len(CHECK_IDS) == len(set(CHECK_IDS))
    for cid in ("mulgm1", "emgm1a", "moud-equivalence", "zorko", "mocls", "motri", "prem"):
        assert cid in CHECK_IDS
    with pytest.raises(UnknownCheck):
        check("nope")


def test_multiplication_equality_case():
    one = GridFunction.constant(GridDomain.unit_cube(1, 512))
    rep = check("mulgm1", Context(functions=[one], options={"mulgm1_rhos": (0.25,)}))
    assert rep.passed
    assert rep.ratio == pytest.approx(1.0, abs=1e-9)


def test_restriction_check_on_random_function():
    rng = np.random.default_rng(0)
    f = GridFunction(GridDomain.unit_cube(2, 16), rng.normal(size=256))
    rep = check("prelprgm-i", Context(functions=[f]))
    assert rep.passed and rep.ratio <= 1


def test_extension_constant_function():
    one = GridFunction.constant(GridDomain.unit_cube(1, 512))
    ctx = Context(functions=[one], options={"mrhoext1_lambdas": (1.0,), "ext_rhos": (1 / 8,)})
    rep = check("mrhoext1", ctx)
    assert rep.passed and rep.ratio <= 1


def test_rhs_scale_hook_makes_checks_fail():
    reps, summary = run_suite("mulgm1", size=128, rhs_scale=0.5)
    assert not reps[0].passed
    assert summary == {"total": 1, "passed": 0, "failed": 1, "ok": False}


def test_empty_suite():
    reps, summary = run_suite([], size=64)
    assert reps == [] and summary["ok"] and summary["total"] == 0


def test_unknown_suite_name():
    with pytest.raises(UnknownCheck):
        run_suite("mulgm1,bogus")


def test_reports_follow_registry_order():
    reps, _ = run_suite("mobd,prelprgm-i,mobd", size=64)
    assert [r.check_id for r in reps] == ["prelprgm-i", "mobd"]


def test_digest_is_deterministic():
    a = check("molp", Context(size=64, seed=3))
    b = check("molp", Context(size=64, seed=3))
    c = check("molp", Context(size=64, seed=4))
    assert a == b
    assert a.inputs_digest != c.inputs_digest


def test_moud_reports_measured_ratio():
    rep = check("moud-equivalence", Context(size=128))
    assert rep.passed and math.isinf(rep.rhs)
    assert "measured equivalence ratio" in rep.notes
    assert rep.lhs >= 1


def test_loglog_slope():
    xs = np.geomspace(1e-3, 1e-1, 7)
    assert checks.loglog_slope(xs, 3 * xs ** -0.5) == pytest.approx(-0.5)


def test_closure_fixture_is_nonconvex():
    f = checks.mocls_fixture(1, 128)
    m = f.domain.mask
    inside = np.flatnonzero(m)
    assert np.any(~m[inside.min():inside.max() + 1])


@pytest.mark.parametrize("n, size", [(1, 128), (2, 24)])
def test_full_suite_passes_small(n, size):
    # the 2D slope checks keep their default refinement ladders
    opts = {"mocls_sizes": [24, 48, 96]} if n == 2 else {}
    reps, summary = run_suite("all", n=n, size=size, options=opts)
    failing = [(r.check_id, r.ratio, r.notes) for r in reps if not r.passed]
    assert summary["ok"], failing
