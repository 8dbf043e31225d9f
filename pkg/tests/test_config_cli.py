"""Config parsing, validation, hashing, and the CLI exit-code contract."""

import math

import pytest

from machlab import cli
from machlab.config import (
    ConfigError,
    ExperimentConfig,
    canonical_dump,
    config_hash,
    parse_config,
    validate_config,
    with_overrides,
)

GOOD = """\
# demo sweep
experiment = acoustic-decay
N = 64                      # keys are case-insensitive
box_length = 16pi
eps = 0.2, 0.1, 0.05
t_final = 0.5
p = inf
data = random-band:2
"""


class TestParsing:
    def test_happy_path(self):
        cfg = parse_config(GOOD)
        assert cfg.experiment == "acoustic-decay"
        assert cfg.n == 64
        assert cfg.box_length == pytest.approx(16.0 * math.pi, rel=1e-15)
        assert cfg.eps == (0.2, 0.1, 0.05)
        assert cfg.p_space == math.inf
        assert cfg.data == "random-band:2"
        assert cfg.gamma_bar == pytest.approx(0.2, rel=1e-12)

    def test_pi_suffix_variants(self):
        assert parse_config("box_length = pi\n").box_length == math.pi
        assert parse_config("box_length = 2.5 pi\n").box_length == pytest.approx(2.5 * math.pi)

    def test_experiment_key_is_optional_in_the_file(self):
        cfg = parse_config("n = 64\n")  # the CLI supplies the experiment
        assert cfg.experiment == ""
        with pytest.raises(ConfigError):
            parse_config("experiment = frobnicate\n")

    @pytest.mark.parametrize("text,lineno,fragment", [
        ("n = 64\nwat = 1\n", 2, "unknown key"),
        ("n = 64\nn = 32\n", 2, "duplicate key"),
        ("just words\n", 1, "expected key = value"),
        ("n =\n", 1, "empty value"),
        ("\n# c\nn = abc\n", 3, "bad value"),
    ])
    def test_errors_carry_the_line_number(self, text, lineno, fragment):
        with pytest.raises(ConfigError) as err:
            parse_config(text)
        assert err.value.line == lineno
        assert fragment in str(err.value)
        assert f"line {lineno}:" in str(err.value)


class TestValidation:
    @pytest.mark.parametrize("overrides", [
        {"n": 48},
        {"n": 4},
        {"box_length": -1.0},
        {"eps": ()},
        {"eps": (0.2, 1.5)},
        {"eps": (0.2, 0.2)},
        {"t_final": 0.0},
        {"gamma": 1.0},
        {"data": "vortex-quad"},
        {"amplitude": 0.0},
        {"profile": "cubic"},
        {"cfl": 0.0},
        {"cfl": 1.5},
        {"max_dt": 0.0},
        {"snapshots": 1},
        {"threads": 0},
        {"p_space": 1.5},
        {"c0": 0.0},
        {"t_cap": 0.0},
        {"blowup_factor": 1.0},
    ])
    def test_range_checks(self, overrides):
        with pytest.raises(ConfigError):
            with_overrides(ExperimentConfig(), **overrides)

    def test_defaults_validate_without_an_experiment(self):
        validate_config(ExperimentConfig(), require_experiment=False)
        with pytest.raises(ConfigError, match="experiment"):
            validate_config(ExperimentConfig())

    def test_named_profiles_are_accepted(self):
        for spec in ("from-data", "constant", "exp:1", "power:2"):
            validate_config(ExperimentConfig(profile=spec), require_experiment=False)


class TestHashing:
    def test_hash_ignores_where_artifacts_land(self):
        a = ExperimentConfig(experiment="selftest", out="here", threads=1)
        b = ExperimentConfig(experiment="selftest", out="there", threads=8)
        assert canonical_dump(a) == canonical_dump(b)
        assert config_hash(a) == config_hash(b)

    def test_hash_tracks_what_is_computed(self):
        a = ExperimentConfig(experiment="selftest", seed=0)
        b = ExperimentConfig(experiment="selftest", seed=1)
        assert config_hash(a) != config_hash(b)

    def test_hash_shape_and_dump_format(self):
        cfg = ExperimentConfig()
        h = config_hash(cfg)
        assert len(h) == 12 and int(h, 16) >= 0
        dump = canonical_dump(cfg)
        assert "n = 256" in dump
        assert "out" not in dump and "threads" not in dump
        assert dump.endswith("\n")


def _write_cfg(tmp_path, text):
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return str(path)


class TestCli:
    def test_passing_experiment_exits_zero(self, tmp_path, capsys):
        cfg = _write_cfg(tmp_path, "n = 32\neps = 0.2, 0.1, 0.05\n")
        code = cli.main(["strichartz-sweep", "--config", cfg,
                         "--out", str(tmp_path / "out")])
        out = capsys.readouterr().out
        assert code == 0
        assert "RESULT PASS" in out
        assert (tmp_path / "out" / "summary.txt").exists()
        assert (tmp_path / "out" / "config.resolved").exists()

    def test_failed_assertion_exits_one(self, tmp_path, capsys):
        # amplitude far too small to blow up inside the cap: the blowup check
        # honestly fails and the driver reports FAIL, not an exception
        cfg = _write_cfg(tmp_path, "n = 32\neps = 0.5, 0.25\namplitude = 0.05\n"
                                   "t_cap = 0.2\nmax_dt = 0.02\n")
        code = cli.main(["lifespan-table", "--config", cfg,
                         "--out", str(tmp_path / "out")])
        out = capsys.readouterr().out
        assert code == 1
        assert "RESULT FAIL" in out
        assert "stayed below the gradient threshold" in out

    def test_bad_config_exits_two(self, tmp_path, capsys):
        cfg = _write_cfg(tmp_path, "frequency = 11\n")
        assert cli.main(["selftest", "--config", cfg]) == 2
        assert "config error" in capsys.readouterr().err
        assert cli.main(["selftest", "--config", str(tmp_path / "missing.cfg")]) == 2

    def test_runtime_failure_exits_three(self, tmp_path, capsys):
        # a two-member sweep cannot support the decay-trend fit
        cfg = _write_cfg(tmp_path, "n = 32\neps = 0.2, 0.1\nt_final = 0.1\nmax_dt = 0.05\n")
        code = cli.main(["acoustic-decay", "--config", cfg,
                         "--out", str(tmp_path / "out")])
        assert code == 3

    def test_threads_fall_back_to_the_environment(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("MACHLAB_THREADS", "not-a-number")
        cfg = _write_cfg(tmp_path, "n = 32\n")
        assert cli.main(["selftest", "--config", cfg]) == 2
        assert "MACHLAB_THREADS" in capsys.readouterr().err

    def test_unknown_experiment_is_rejected_by_the_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == 2
