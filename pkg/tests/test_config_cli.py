from __future__ import annotations

import json
from fractions import Fraction

import pytest

from nctoda import __version__
from nctoda.cli import main
from nctoda.config import PRESETS, SUITES, Config, parse_config
from nctoda.errors import ConfigError
from nctoda.harness import run


def test_defaults():
    cfg = parse_config("")
    assert cfg == Config()
    assert cfg.checks == list(SUITES)


def test_parse_values_and_comments():
    cfg = parse_config("""
        # comment
        base_point = 3/2   # trailing comment
        matrix_dim = 1
        beta = -2/3
        checks = quasidet, bilinear
    """)
    assert cfg.base_point == Fraction(3, 2)
    assert cfg.beta == Fraction(-2, 3)
    assert cfg.checks == ["quasidet", "bilinear"]


def test_explicit_matrices():
    cfg = parse_config("matrix_dim = 2\nbeta = -1/2\nseed_mode = explicit\n"
                       "phi0 = 1,0; 0,1\nphi1 = 0\npsi0 = 1\npsi1 = 1")
    assert cfg.explicit["phi0"] == (1, 0, 0, 1)
    assert cfg.explicit["psi1"] == (1, 0, 0, 1)


@pytest.mark.parametrize("text,fragment", [
    ("series_order = 10\nchain_depth = 3", "2*chain_depth + 6 = 12"),
    ("checks = nonsense", "unknown check suite"),
    ("colour = red", "unknown key"),
    ("beta = 1\nbeta = 2", "duplicate key"),
    ("beta = one", "expected a rational"),
    ("seed_mode = trivial\nbeta = 1/3", "beta = -1/2"),
    ("seed_mode = explicit", "requires phi0"),
    ("phi0 = 1", "only allowed"),
    ("just words", "expected 'key = value'"),
])
def test_rejections(text, fragment):
    with pytest.raises(ConfigError, match=None) as err:
        parse_config(text)
    assert fragment in str(err.value)


def test_small_order_allowed_without_deep_suites():
    cfg = parse_config("series_order = 4\nchain_depth = 3\nchecks = quasidet")
    assert cfg.series_order == 4


def test_presets_parse():
    for text in PRESETS.values():
        parse_config(text)


def test_trivial_theorem_run():
    cfg = parse_config("seed_mode = trivial\nbeta = -1/2\nbase_point = 2\nchecks = theorem32\n"
                       "chain_depth = 2\nseries_order = 10")
    report = run(cfg)
    assert report.all_passed
    u2 = [c for c in report.checks if c.params.get("side") == "theta" and c.params["n"] == 2]
    # a_2 keeps order 8, u_2 = theta_2' theta_2^-1 drops to 7, the residual to 5
    assert u2 and u2[0].valid_order == 5


def test_scalar_quasidet_run():
    report = run(parse_config("matrix_dim = 1\nchecks = quasidet"))
    assert report.all_passed
    assert any(c.name == "quasidet-det-ratio" for c in report.checks)


def test_failures_are_isolated():
    # theta_3 of the trivial seed is singular at x0 = 1 (tau_3 vanishes there)
    cfg = parse_config("seed_mode = trivial\nbeta = -1/2\nmatrix_dim = 1\nchecks = theorem32, hamiltonian\n"
                       "chain_depth = 3\nseries_order = 12")
    report = run(cfg)
    assert not report.all_passed
    broken = [c for c in report.checks if not c.passed and c.gating]
    assert broken and all(c.error for c in broken)
    assert all(c.passed for c in report.checks if c.params.get("suite") == "hamiltonian")


def test_json_shape():
    report = run(parse_config("matrix_dim = 1\nchecks = commutative-p2\nchain_depth = 1\nbeta = 1/3"))
    data = json.loads(report.to_json())
    assert list(data) == sorted(data)
    assert data["version"] == __version__
    assert data["config"]["beta"] == "1/3"
    assert {"name", "params", "valid_order", "passed", "first_nonzero"} <= set(data["checks"][0])


def test_cli_commands(tmp_path, capsys):
    assert main(["version"]) == 0
    assert capsys.readouterr().out.strip() == __version__
    assert main(["gen-config", "--preset", "quick"]) == 0
    assert capsys.readouterr().out == PRESETS["quick"]
    assert main(["frobnicate"]) == 2
    assert main(["verify"]) == 2
    assert main(["verify", "--config", str(tmp_path / "missing.cfg")]) == 2
