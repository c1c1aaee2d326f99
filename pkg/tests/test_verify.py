import math

import pytest

from zpwiener.verify import (
    CHECKS,
    ap_scan,
    check,
    digest,
    monitor,
    random_instance,
    random_set_scan,
    run_suite,
)


def fn_instance(p, entries, **extra):
    rows = [
        {"x": [x] if isinstance(x, int) else list(x), "re": complex(v).real, "im": complex(v).imag}
        for x, v in entries
    ]
    return {"p": p, "d": 1, "entries": rows, **extra}


def test_banach_delta_example():
    delta = fn_instance(5, [(0, 1.0)])
    report = check("banach", {"f": delta, "g": delta})
    assert report.lhs == pytest.approx(1.0)
    assert report.rhs == pytest.approx(1.0)
    assert report.passed


def test_energy_lower_two_point_example():
    inst = fn_instance(5, [(0, 1.0), (1, 1.0)], k=2, q_points=[[0], [1]])
    report = check("energy-lower", inst)
    assert report.lhs == pytest.approx(6.0)
    assert report.rhs == pytest.approx(4.774575, abs=1e-5)
    assert report.passed


def test_complement_identity_example():
    report = check("complement-identity", {"p": 5, "d": 1, "points": [[0]]})
    assert report.lhs == pytest.approx(1.0)
    assert report.rhs == pytest.approx(1.0, abs=1e-9)
    assert report.passed


def test_unknown_names_raise():
    with pytest.raises(ValueError):
        check("bogus", {})
    with pytest.raises(ValueError):
        run_suite("bogus")
    with pytest.raises(ValueError):
        monitor("bogus", {})


def test_registry_every_name_generates_and_passes():
    reports = run_suite("all", seed=0, count=5)
    names = {r.name for r in reports}
    assert names == set(CHECKS)
    for name in CHECKS:
        subset = [r for r in reports if r.name == name]
        assert len(subset) == 5  # no registered name without instances
        assert all(r.passed for r in subset)


def test_reports_have_consistent_slack_convention():
    for report in run_suite("all", seed=3, count=3):
        assert report.passed == (report.slack >= -report.tolerance)


def test_suite_reports_are_reproducible():
    a = [r.as_record() for r in run_suite("all", seed=7, count=4)]
    b = [r.as_record() for r in run_suite("all", seed=7, count=4)]
    assert a == b
    c = [r.as_record() for r in run_suite("all", seed=8, count=4)]
    assert a != c


def test_digest_is_stable_and_order_insensitive():
    assert digest({"a": 1, "b": 2}) == digest({"b": 2, "a": 1})
    assert len(digest({"a": 1})) == 16


def test_random_instance_kinds():
    ind = random_instance("indicator", 1, p=101, size=5)
    assert len(ind["entries"]) == 5
    assert all(e["re"] == 1.0 and e["im"] == 0.0 for e in ind["entries"])
    assert random_instance("indicator", 1, p=101, size=5) == ind

    uni = random_instance("unimodular-function", 2, p=101, size=4)
    for entry in uni["entries"]:
        assert math.hypot(entry["re"], entry["im"]) == pytest.approx(1.0)

    cand = random_instance("dissociated-candidate", 3, p=101, size=6)
    assert len(cand["points"]) == 6

    pair = random_instance("product-pair", 4, p=11, size=3)
    assert set(pair) == {"kind", "f", "g"}

    with pytest.raises(ValueError):
        random_instance("mystery", 0)


def test_monitors_produce_ratios():
    rec = monitor("rudin", {"p": 101, "d": 1, "points": [[1], [2]], "k": 2})
    assert rec.ratio == pytest.approx(math.sqrt(6) / 4)

    uni = random_instance("unimodular-function", 5, p=101, size=6)
    rec2 = monitor("dim-bound", uni)
    assert rec2.ratio > 0
    assert rec2.details["mode"] == "exact"

    rec3 = monitor("log-support", uni)
    assert rec3.ratio > 0

    rec4 = monitor("t2-lower", fn_instance(11, [(1, 1.0), (2, 2.0), (4, 1.0)]))
    assert rec4.ratio > 0


def test_ap_scan_rows():
    rows = ap_scan(101, [1])
    assert rows[0].size == 3
    assert rows[0].ratio == pytest.approx(rows[0].wiener_norm / math.log(3))

    flagged = ap_scan(101, [0])[0]
    assert flagged.size == 1
    assert flagged.wiener_norm == pytest.approx(1.0)
    assert flagged.ratio is None

    with pytest.raises(ValueError, match="p/2"):
        ap_scan(101, [30])


def test_random_set_scan_seeded():
    a = random_set_scan(101, [5, 10], seed=3)
    b = random_set_scan(101, [5, 10], seed=3)
    assert a == b
    assert all(row.structure == "random" for row in a)
