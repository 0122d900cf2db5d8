import pytest

from hcft.verify import SUITES, Check, VerifyConfig, VerifyReport, run_suite


def test_check_pass_logic():
    assert Check("a", 1e-13, 1e-12).passed
    assert not Check("b", 1e-11, 1e-12).passed
    assert not Check("c", float("nan"), 1.0).passed
    assert Check("d", 5.0, 1.0, passed=True).passed


def test_report_table_and_dict():
    rep = VerifyReport("demo", [Check("x", 0.0, 1.0), Check("y", 2.0, 1.0)], 0.5)
    assert not rep.passed
    table = rep.table()
    assert "FAIL" in table and "demo" in table
    assert rep.to_dict()["checks"][1]["passed"] is False


def test_config_caps_and_floor():
    cfg = VerifyConfig(n_max=3, tol_floor=1e-8)
    assert list(cfg.ns(8)) == [1, 2, 3]
    assert cfg.tol(1e-12) == 1e-8 and cfg.tol(1e-5) == 1e-5
    assert list(VerifyConfig().ns(5)) == [1, 2, 3, 4, 5]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("thm-nonexistent")


@pytest.mark.parametrize("name", ["clifford", "trace", "oracles", "delta", "lem-invariance", "conv-twopath"])
def test_fast_suites_pass(name):
    assert run_suite(name, VerifyConfig(n_max=3)).passed


def test_suite_names():
    assert {"thm-convft", "prop-inversion", "thm-intertwine", "thm-banach", "pw"} <= set(SUITES)
