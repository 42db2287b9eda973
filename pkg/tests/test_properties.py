"""Randomized identity checks bundled with the package."""

from cvteleport.properties import ALL_CHECKS, PropertyResult, run_all

EXPECTED_NAMES = {"db_roundtrip", "loss_composition", "epr_witness",
                  "fidelity_bounds", "uncertainty_preserved"}


def test_catalog_names():
    assert {check.__name__.removeprefix("check_") for check in ALL_CHECKS} == \
        EXPECTED_NAMES


def test_all_properties_hold():
    results = run_all(seed=0, cases=1000)
    assert {r.name for r in results} == EXPECTED_NAMES
    for result in results:
        assert result.cases == 1000
        assert result.failures == 0, f"{result.name}: {result.note}"
        assert result.passed


def test_run_all_deterministic():
    assert run_all(seed=4, cases=300) == run_all(seed=4, cases=300)


def test_result_semantics():
    assert PropertyResult("demo", 10, 0).passed
    assert not PropertyResult("demo", 10, 3, "first bad case").passed
