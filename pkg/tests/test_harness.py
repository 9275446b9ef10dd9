import pytest

from rainbowap import constructions
from rainbowap.core import Topology, find_rainbow_ap, make_coloring
from rainbowap.errors import InvalidParams, UnknownSuite
from rainbowap.harness import (
    Z8_REGRESSIONS,
    Report,
    has_rainbow_interval,
    run_suite,
    suite_names,
)

import naive


def test_suite_registry():
    assert suite_names() == sorted(
        ["thm1.1", "thm1.2", "k3-positive", "z8", "z24", "pow3", "open-q"]
    )
    with pytest.raises(UnknownSuite):
        run_suite("thm9.9")


def test_vectorized_checker_agrees_with_naive():
    import random

    rng = random.Random(5)
    for _ in range(400):
        n = rng.randint(4, 24)
        k = rng.randint(2, 5)
        length = rng.choice([3, 4, 5])
        letters = "".join(chr(65 + rng.randrange(k)) for _ in range(n))
        assignment = [ord(ch) - 65 for ch in letters]
        assert has_rainbow_interval(assignment, length) == naive.has_rainbow(
            letters, False, length
        )


def test_thm11_small_range_passes():
    report = run_suite("thm1.1", {"max_n": 64})
    assert report.passed and not report.counterexamples
    # one case per (n, variant): 57 defaults + 7 alt41 + 7 star
    assert report.cases == 57 + 7 + 7
    assert report.params == {"max_n": 64}


def test_thm11_rejects_max_n_below_8():
    with pytest.raises(InvalidParams):
        run_suite("thm1.1", {"max_n": 7})


def test_thm11_rejects_unknown_params():
    with pytest.raises(InvalidParams):
        run_suite("thm1.1", {"max_n": 64, "bogus": 1})


def test_thm12_small_grid_passes():
    report = run_suite("thm1.2", {"k_max": 6, "n_max": 6})
    assert report.passed
    assert report.cases == 5 * 5 + 5 * 6  # k=5: q 2..6, r 0..4; k=6: r 0..5


def test_k3_positive_small():
    report = run_suite("k3-positive", {"n_max": 3})
    assert report.passed
    assert report.cases == 90 + 1680


def test_k3_positive_guards_large_runs():
    with pytest.raises(InvalidParams):
        run_suite("k3-positive", {"n_max": 6})
    with pytest.raises(InvalidParams):
        run_suite("k3-positive", {"n_max": 7, "allow_large": True})


def test_z8_suite_counts_space_plus_regressions():
    report = run_suite("z8")
    assert report.passed
    assert report.cases == 2520 + 9
    assert len(Z8_REGRESSIONS) == 9


def test_z24_suite():
    report = run_suite("z24", {"max_times": 3})
    assert report.passed
    # per tile: one certificate check + four recessiveness checks
    assert report.cases == 3 * 5


def test_pow3_suite():
    report = run_suite("pow3", {"max_n": 243})
    assert report.passed and report.cases == 243


def test_openq_suite_verifies_found_certificates():
    report = run_suite(
        "open-q", {"moduli": [8, 12], "max_nodes": 100_000}
    )
    assert report.passed
    assert report.cases == 2
    assert report.params["moduli"] == [8, 12]


def test_openq_param_validation():
    with pytest.raises(InvalidParams):
        run_suite("open-q", {"moduli": [10]})  # not a multiple of k=4
    with pytest.raises(InvalidParams):
        run_suite("open-q", {"symmetry": "sideways"})


def test_reports_are_deterministic_modulo_elapsed():
    for name, params in [
        ("thm1.1", {"max_n": 40}),
        ("thm1.2", {"k_max": 5, "n_max": 4}),
        ("k3-positive", {"n_max": 2}),
        ("z8", {}),
        ("z24", {}),
        ("pow3", {"max_n": 81}),
        ("open-q", {"moduli": [8]}),
    ]:
        first = run_suite(name, params)
        second = run_suite(name, params)
        assert first.comparable() == second.comparable()


def test_report_json_schema_shape():
    report = run_suite("z24", {})
    payload = report.to_json_dict()
    assert set(payload) == {"suite", "params", "pass", "counterexamples", "stats"}
    assert isinstance(payload["pass"], bool)
    assert set(payload["stats"]) == {"cases", "elapsed_ms"}
    assert isinstance(payload["counterexamples"], list)


def test_failing_suite_carries_replayable_counterexample(monkeypatch):
    # sabotage the generator so thm1.1 must fail, then replay the reported
    # counterexample through core operations alone
    real = constructions.construct_interval4

    def broken(n, variant=constructions.Variant.DEFAULT):
        if n == 13 and variant is constructions.Variant.DEFAULT:
            return make_coloring(Topology.INTERVAL, 4, "ABCD" * 3 + "A")
        return real(n, variant)

    monkeypatch.setattr("rainbowap.harness.constructions.construct_interval4", broken)
    report = run_suite("thm1.1", {"max_n": 16})
    assert not report.passed
    assert report.counterexamples
    entry = report.counterexamples[0]
    bad = entry["input"]["coloring"]
    replay = make_coloring(Topology.INTERVAL, bad["k"], bad["colors"])
    witness = find_rainbow_ap(replay, 4)
    assert witness is not None
    assert entry["witness"]["d"] == witness.spec.d
    assert entry["witness"]["start"] == witness.spec.start


def test_report_comparable_strips_only_timing():
    report = Report(suite="x", params={}, passed=True, cases=1, elapsed_ms=5)
    d = report.comparable()
    assert "elapsed_ms" not in d["stats"] and d["stats"]["cases"] == 1
