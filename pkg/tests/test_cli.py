import json

import pytest
from click.testing import CliRunner

from qcapelli import cli
from qcapelli.cli import ConfigError, InputError, SuiteConfig, compute, main, parse_compute_input, run_suite
from qcapelli.report import Report, check


@pytest.fixture
def runner():
    return CliRunner()


def _compute(runner, tmp_path, text, *args):
    f = tmp_path / "in.json"
    f.write_text(text)
    return runner.invoke(main, ["compute", str(f), *args])


def test_run_bialgebra_passes(runner):
    res = runner.invoke(main, ["run", "--suite", "bialgebra", "--n", "2"])
    assert res.exit_code == 0
    doc = json.loads(res.stdout)
    assert doc["pass"] is True and doc["schema"] == 1 and doc["suite"] == "bialgebra"
    ids = [d["id"] for d in doc["details"]]
    assert ids == sorted(ids)
    assert all(d["identity"] for d in doc["details"])


def test_symbolic_limit(runner):
    res = runner.invoke(main, ["run", "--suite", "bialgebra", "--n", "7"])
    assert res.exit_code == 2
    assert "symbolic limit exceeded" in res.stderr


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig("pfaffian", 3).validate()
    with pytest.raises(ConfigError):
        SuiteConfig("hyperpfaffian", 4, "specialized").validate()
    with pytest.raises(ConfigError):
        SuiteConfig("nope", 2).validate()
    SuiteConfig("capelli", 3, "specialized", 42).validate()


def test_unknown_suite_rejected_by_cli(runner):
    res = runner.invoke(main, ["run", "--suite", "nope", "--n", "2"])
    assert res.exit_code == 2


def test_json_out_is_deterministic(runner, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        res = runner.invoke(main, ["run", "--suite", "rmatrix", "--n", "2", "--mode", "specialized",
                                   "--seed", "5", "--json-out", str(path)])
        assert res.exit_code == 0
        assert "PASS" in res.stdout
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["seed_used"] == 5


def test_failing_suite_exits_one(runner, monkeypatch):
    monkeypatch.setitem(cli.RUNNERS, "laplace",
                        lambda params, cfg: Report([check("fake.fail", "always false", False)]))
    res = runner.invoke(main, ["run", "--suite", "laplace", "--n", "2"])
    assert res.exit_code == 1
    assert json.loads(res.stdout)["pass"] is False


def test_reseed_on_degenerate_draw(monkeypatch):
    seen = []

    def flaky(params, cfg):
        seen.append(params.seed)
        if len(seen) < 3:
            raise ZeroDivisionError("degenerate")
        return Report([check("fake.ok", "fine", True)])

    monkeypatch.setitem(cli.RUNNERS, "laplace", flaky)
    rep = run_suite(SuiteConfig("laplace", 2, "specialized", 10))
    assert rep.passed and rep.seed_used == 12 and seen == [10, 11, 12]


def test_reseed_gives_up(monkeypatch):
    def broken(params, cfg):
        raise ZeroDivisionError("degenerate")

    monkeypatch.setitem(cli.RUNNERS, "laplace", broken)
    rep = run_suite(SuiteConfig("laplace", 2, "specialized", 0))
    assert not rep.passed
    assert rep.checks[0].id == "precondition"


def test_compute_detq(runner, tmp_path):
    res = _compute(runner, tmp_path, '{"kind": "detq", "n": 2}')
    assert res.exit_code == 0
    assert res.stdout.strip() == "t11*t22 - q12*t12*t21"


def test_compute_pf(runner, tmp_path):
    res = _compute(runner, tmp_path, '{"kind": "pf", "m": 2, "N": 2}')
    assert res.stdout.strip() == "b12"


def test_compute_shape_error(runner, tmp_path):
    res = _compute(runner, tmp_path, '{"kind": "pf", "m": 2, "N": 3}')
    assert res.exit_code == 2
    assert "shape mismatch" in res.stderr


def test_compute_parse_error_has_position(runner, tmp_path):
    res = _compute(runner, tmp_path, '{"kind": "pf",\n "N": }')
    assert res.exit_code == 2
    assert "line 2, column 7" in res.stderr


def test_parse_compute_input():
    assert parse_compute_input('{"kind": "hyperpf", "m": 3, "N": 6}') == {"kind": "hyperpf", "N": 6, "m": 3}
    with pytest.raises(InputError):
        parse_compute_input('{"kind": "hyperpf", "m": 3, "N": 4}')
    with pytest.raises(InputError):
        parse_compute_input('{"kind": "other", "N": 4}')
    with pytest.raises(InputError):
        parse_compute_input('[1, 2]')


def test_compute_hyper_identity_term():
    out = compute({"kind": "hyperpf", "m": 3, "N": 6})
    assert out.startswith("b123*b456 ")


def test_compute_specialized_mode():
    out = compute({"kind": "detq", "N": 2, "m": None}, "specialized", 3)
    assert out.startswith("t11*t22 ")
    assert "q12" not in out
