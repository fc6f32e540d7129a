import json
import math

import pytest

from twotone.cli import main, parse_config_file, parse_overrides
from twotone.errors import ConfigError
from twotone.presets import PRESETS


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConfigParsing:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "exp.cfg"
        path.write_text("# comment\nmodel.xi0 = 1.5\nmodel.delta=0.25\n\ngrid.n_t=64\n")
        values = parse_config_file(path)
        assert values == {"model.xi0": 1.5, "model.delta": 0.25, "grid.n_t": 64}

    def test_unknown_key_names_key_and_line(self, tmp_path):
        path = tmp_path / "exp.cfg"
        path.write_text("model.xi0=1.0\nmodel.bogus=3\n")
        with pytest.raises(ConfigError) as err:
            parse_config_file(path)
        assert "model.bogus" in str(err.value)
        assert "line 2" in str(err.value)

    def test_bad_value_reports_line(self, tmp_path):
        path = tmp_path / "exp.cfg"
        path.write_text("grid.n_t=abc\n")
        with pytest.raises(ConfigError) as err:
            parse_config_file(path)
        assert "line 1" in str(err.value)

    def test_override_parsing(self):
        assert parse_overrides(["--model.delta=0.4"]) == {"model.delta": 0.4}
        with pytest.raises(ConfigError):
            parse_overrides(["--definitely-not-a-key"])

    def test_presets_cover_report_parameters(self):
        combos = {(cfg["model.a"], cfg["model.delta"]) for cfg in PRESETS.values()}
        assert combos == {(1.3, 1.0), (1.3, 0.3), (1.0, 0.3), (1.0, 0.15)}
        assert all(cfg["model.sigma"] == math.sqrt(2.0) for cfg in PRESETS.values())


class TestCommands:
    def test_stft_outputs_and_determinism(self, tmp_path, capsys):
        out = tmp_path / "run"
        argv = ["stft", "--preset", "gap-small-a13", "--out", str(out),
                "--grid.n_t=12", "--grid.n_eta=16", "--grid.t_max=2.0"]
        code, _, _ = run(argv, capsys)
        assert code == 0
        names = ["abs_v.csv", "re_v.csv", "im_v.csv", "phase.csv",
                 "amp_weighted_phase.csv", "metadata.json"]
        blobs = {}
        for name in names:
            target = out / name
            assert target.exists()
            blobs[name] = target.read_bytes()
        meta = json.loads(blobs["metadata.json"])
        assert meta["command"] == "stft"
        assert meta["config"]["model.delta"] == 0.3
        code, _, _ = run(argv, capsys)
        assert code == 0
        for name in names:
            assert (out / name).read_bytes() == blobs[name]

    def test_unknown_override_exits_2(self, tmp_path, capsys):
        code, _, err = run(["stft", "--out", str(tmp_path), "--model.bogus=1"], capsys)
        assert code == 2
        assert "model.bogus" in err

    def test_unknown_preset_exits_2(self, tmp_path, capsys):
        code, _, err = run(["stft", "--preset", "nope", "--out", str(tmp_path)], capsys)
        assert code == 2

    def test_ridges_outputs(self, tmp_path, capsys):
        out = tmp_path / "ridges"
        code, _, _ = run(["ridges", "--preset", "gap-small-balanced", "--out", str(out),
                          "--grid.n_t=48", "--grid.n_eta=256", "--grid.t_max=3.5"], capsys)
        assert code == 0
        assert (out / "ridge_points.csv").exists()
        assert (out / "maxima_counts.csv").exists()
        assert (out / "bifurcation_times.csv").exists()
        ellipses = (out / "ellipses.csv").read_text().strip().splitlines()
        assert len(ellipses) >= 2  # header + at least bubble k=0

    def test_zeros_outputs(self, tmp_path, capsys):
        out = tmp_path / "zeros"
        code, _, _ = run(["zeros", "--preset", "gap-small-a13", "--out", str(out),
                          "--grid.n_t=71", "--grid.n_eta=51", "--grid.t_max=4.0",
                          "--grid.eta_min=0.6", "--grid.eta_max=1.7"], capsys)
        assert code == 0
        rows = (out / "zeros.csv").read_text().strip().splitlines()
        assert rows[0] == "t0,eta0,winding,residual"
        assert len(rows) == 2  # one zero inside t <= 4
        fields = rows[1].split(",")
        assert float(fields[0]) == pytest.approx(1 / 0.6, abs=1e-6)
        assert int(float(fields[2])) == 1

    def test_reassign_outputs(self, tmp_path, capsys):
        out = tmp_path / "reassign"
        code, _, _ = run(["reassign", "--preset", "gap-tiny-balanced", "--out", str(out),
                          "--grid.n_t=9", "--grid.n_eta=17", "--grid.t_max=2.0"], capsys)
        assert code == 0
        arcs = (out / "arc_circles.csv").read_text().strip().splitlines()
        assert len(arcs) == 4  # header + three default thetas
        audit = (out / "attraction_audit.csv").read_text().strip().splitlines()
        assert audit[0] == "t,eta,premise,bound,actual,holds"
        assert len(audit) > 1
        assert all(line.endswith(",1") for line in audit[1:])

    def test_squeeze_outputs(self, tmp_path, capsys):
        out = tmp_path / "squeeze"
        code, _, _ = run(["squeeze", "--preset", "gap-small-balanced", "--out", str(out),
                          "--grid.n_t=5", "--grid.n_eta=33", "--grid.t_max=2.0",
                          "--grid.eta_min=0.9", "--grid.eta_max=1.4"], capsys)
        assert code == 0
        for name in ("abs_s.csv", "cross_section_constructive.csv",
                     "cross_section_destructive.csv"):
            assert (out / name).exists()
        header = (out / "cross_section_constructive.csv").read_text().splitlines()[0]
        assert header == "xi,abs_quadrature,abs_density_limit,abs_erf_form"

    def test_squeeze_indicator_default_radius(self, tmp_path, capsys):
        out = tmp_path / "squeeze_ind"
        code, _, _ = run(["squeeze", "--preset", "gap-small-balanced", "--out", str(out),
                          "--squeeze.weighting=indicator",
                          "--grid.n_t=3", "--grid.n_eta=17", "--grid.t_max=2.0",
                          "--grid.eta_min=0.9", "--grid.eta_max=1.4"], capsys)
        assert code == 0
        assert (out / "abs_s.csv").exists()

    def test_squeeze_phase_mode(self, tmp_path, capsys):
        out = tmp_path / "squeeze_phase"
        code, _, _ = run(["squeeze", "--preset", "gap-small-balanced", "--out", str(out),
                          "--squeeze.reassignment_mode=phase",
                          "--grid.n_t=3", "--grid.n_eta=17", "--grid.t_max=2.0",
                          "--grid.eta_min=0.9", "--grid.eta_max=1.4"], capsys)
        assert code == 0


class TestCritical:
    def test_stft_balanced(self, capsys):
        code, out, _ = run(["critical", "--a", "1", "--sigma", repr(math.sqrt(2.0)),
                            "--method", "stft"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["delta_critical"] == pytest.approx(1 / math.pi, abs=1e-12)
        assert doc["auxiliary_root"] == {"s": 1.0}
        lo, hi = doc["empirical_bracket"]
        assert lo < 1 / math.pi < hi

    def test_stft_sigma_one(self, capsys):
        code, out, _ = run(["critical", "--a", "1", "--sigma", "1.0",
                            "--method", "stft", "--no-empirical"], capsys)
        doc = json.loads(out)
        assert doc["delta_critical"] == pytest.approx(math.sqrt(2) / math.pi, abs=1e-12)

    def test_sst_balanced(self, capsys):
        code, out, _ = run(["critical", "--a", "1", "--sigma", repr(math.sqrt(2.0)),
                            "--method", "sst", "--no-empirical"], capsys)
        doc = json.loads(out)
        assert doc["delta_critical"] == pytest.approx(0.192627, abs=2e-5)
        assert doc["auxiliary_root"]["r"] == pytest.approx(1 / 3, abs=1e-12)


def test_validate_fast_passes(capsys):
    code, out, _ = run(["validate", "--level", "fast"], capsys)
    assert code == 0
    assert "6/6 criteria passed" in out
