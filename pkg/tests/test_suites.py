import json

import pytest

from stripzeros.polycore import Poly
from stripzeros.suites import SUITES, SuiteReport, cos_limit_deviation, run_suite


def strip_time(rep):
    d = rep.to_json()
    d.pop("elapsed_ms")
    return json.dumps(d, sort_keys=True)


@pytest.mark.parametrize("suite", ["debruijn", "fock-bound", "enestrom-kakeya", "multiplier"])
def test_same_seed_reproduces_report(suite):
    a = run_suite(suite, seed=3, n=20)
    b = run_suite(suite, seed=3, n=20)
    assert strip_time(a) == strip_time(b)
    assert strip_time(a) != strip_time(run_suite(suite, seed=4, n=20))


def test_thread_count_does_not_change_results():
    a = run_suite("gauss", seed=1, n=40, threads=1)
    b = run_suite("gauss", seed=1, n=40, threads=4)
    assert strip_time(a) == strip_time(b)
    assert [c["case"] for c in b.cases] == list(range(len(b.cases)))


def test_report_json_round_trip():
    rep = run_suite("sinc", seed=0, n=10)
    back = SuiteReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert back.to_json() == json.loads(json.dumps(rep.to_json()))


def test_every_listed_suite_is_registered():
    expected = {"debruijn", "gauss", "stab-strip", "integral-shrink", "sinc", "cos-limit", "enestrom-kakeya",
                "dmu", "hb-pencil", "impart", "multiplier", "symbol", "fock-bound", "fourier", "jensen"}
    assert set(SUITES) == expected


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_cos_limit_deviation_is_relative():
    p = Poly([1, -2, 0.5, 3, 1, -1, 1])
    assert cos_limit_deviation(p * 1000.0, 1.0, 40) == pytest.approx(cos_limit_deviation(p, 1.0, 40))
