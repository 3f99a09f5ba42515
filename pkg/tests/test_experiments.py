import pytest

from fmdlab.errors import ConfigError
from fmdlab.experiments import EXPERIMENTS, experiment_parameters, run_experiment


def _assert_passed(result):
    failed = [name for name, ok in result["checks"].items() if not ok]
    assert not failed, failed
    assert result["passed"] is True


def test_integers_twelve():
    result = run_experiment("integers", n=12)
    _assert_passed(result)
    assert result["molecules"] == [2, 3]
    assert result["factorizations"] == [[2, 2, 3]]


def test_integers_sweep_small():
    result = run_experiment("integers-sweep", max_n=40)
    _assert_passed(result)
    assert result["checked"] == 39


@pytest.mark.slow
def test_integers_sweep_to_two_hundred():
    _assert_passed(run_experiment("integers-sweep", max_n=200))


def test_quadratic_six():
    result = run_experiment("quadratic", d=-5)
    _assert_passed(result)
    assert "classical-factorization" in result["checks"]
    assert len(result["factorizations"]) == 1
    assert len(result["factorizations"][0]) == 4


def test_quadratic_gaussian_five():
    result = run_experiment("quadratic", d=-1, gens=[5])
    _assert_passed(result)
    assert "classical-factorization" not in result["checks"]


def test_cusp_lattice():
    result = run_experiment("cusp-lattice", q=2)
    _assert_passed(result)
    assert result["count"] == 2
    assert result["superideals"] == 7


@pytest.mark.slow
def test_cusp_trend():
    result = run_experiment("cusp-trend")
    _assert_passed(result)
    assert result["counts"] == [2, 3, 4]


def test_zx_primary():
    result = run_experiment("zx-primary", p=2)
    _assert_passed(result)
    assert (result["molecule"], result["primary"], result["prime"]) == (True, True, False)


@pytest.mark.slow
def test_zx_primary_odd_prime():
    _assert_passed(run_experiment("zx-primary", p=3))


def test_dedekind_split():
    result = run_experiment("dedekind-split", p=2)
    _assert_passed(result)
    assert result["witness"] is not None


@pytest.mark.slow
def test_dplusm():
    result = run_experiment("dplusm")
    _assert_passed(result)
    assert result["per_level"] == {"0": 1, "1": 4, "2": 4, "3": 1}
    assert [t["expected"] for t in result["trend"]] == [10, 32]


@pytest.mark.slow
def test_cross_depth():
    _assert_passed(run_experiment("cross-depth"))


def test_unknown_experiment():
    with pytest.raises(ConfigError):
        run_experiment("nope")


def test_bad_parameter_is_a_config_error():
    with pytest.raises(ConfigError):
        run_experiment("integers", q=3)
    with pytest.raises(ConfigError):
        run_experiment("integers-sweep", max_n=1)


def test_failed_check_marks_run_failed(monkeypatch):
    monkeypatch.setitem(EXPERIMENTS, "always-fails", lambda: {"checks": {"ok": True, "bad": False}})
    assert run_experiment("always-fails")["passed"] is False


def test_experiment_parameters():
    assert experiment_parameters("dplusm") == ["p", "k_d", "k_k", "depth"]
    assert experiment_parameters("integers") == ["n"]
