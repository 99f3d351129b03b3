import math
import shutil
import subprocess

import pytest

from rsma_plots import PlotError, PlotSpec, SchemaError, aggregate, load_rows, render
from rsma_plots.cli import main
from rsma_plots.render import EXPECTED_HEADER

HEADER = ",".join(EXPECTED_HEADER)


def make_csv(path, rows):
    lines = [HEADER]
    for theta1, snr, method, rep, sr in rows:
        lines.append(f"{theta1},{snr},{method},{rep},{sr},0.1,0.2,0.3,0.4,12.5,0")
    path.write_text("\n".join(lines) + "\n")


@pytest.fixture
def sample_csv(tmp_path):
    path = tmp_path / "sweep.csv"
    make_csv(path, [
        (0.349, 0, "parga", 0, 1.0),
        (0.349, 0, "parga", 1, 1.2),
        (0.349, 10, "parga", 0, 3.0),
        (0.349, 10, "parga", 1, 3.4),
        (0.349, 0, "fp_rsma", 0, 0.9),
        (0.349, 10, "fp_rsma", 0, 2.5),
    ])
    return path


class TestLoadAggregate:
    def test_two_methods_two_lines(self, sample_csv, tmp_path):
        out = tmp_path / "fig.png"
        series = render(PlotSpec(str(sample_csv), str(out)))
        assert out.exists()
        assert [s.method for s in series] == ["fp_rsma", "parga"]

    def test_mean_and_band_across_repeats(self, sample_csv):
        series = aggregate(load_rows(sample_csv))
        parga = next(s for s in series if s.method == "parga")
        assert parga.snr_db == (0.0, 10.0)
        assert parga.mean == (1.1, 3.2)
        assert parga.low == (1.0, 3.0)
        assert parga.high == (1.2, 3.4)

    def test_deterministic_series(self, sample_csv):
        a = aggregate(load_rows(sample_csv))
        b = aggregate(load_rows(sample_csv))
        assert a == b

    def test_theta_filter_matches(self, sample_csv):
        series = aggregate(load_rows(sample_csv), theta1_filter=0.349)
        assert len(series) == 2

    def test_theta_filter_matching_nothing(self, sample_csv):
        with pytest.raises(PlotError):
            aggregate(load_rows(sample_csv), theta1_filter=2.0)

    def test_schema_mismatch_reports_columns(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("theta1,snr_db,method,sum_rate\n0.3,0,parga,1.0\n")
        with pytest.raises(SchemaError) as exc:
            load_rows(path)
        assert "repeat" in str(exc.value)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(SchemaError):
            load_rows(path)

    def test_single_snr_point_no_crash(self, tmp_path):
        path = tmp_path / "one.csv"
        make_csv(path, [(0.349, 20, "parga", 0, 5.0)])
        out = tmp_path / "fig.png"
        series = render(PlotSpec(str(path), str(out)))
        assert out.exists()
        assert series[0].snr_db == (20.0,)


class TestCli:
    def test_success(self, sample_csv, tmp_path, capsys):
        out = tmp_path / "fig.png"
        code = main(["--in", str(sample_csv), "--out", str(out), "--theta1", "0.349"])
        assert code == 0
        assert out.exists()
        assert "2 lines" in capsys.readouterr().out

    def test_filter_mismatch_exit_code(self, sample_csv, tmp_path, capsys):
        code = main(["--in", str(sample_csv), "--out", str(tmp_path / "f.png"),
                     "--theta1", "9.9"])
        assert code == 1

    def test_schema_mismatch_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n1\n")
        code = main(["--in", str(bad), "--out", str(tmp_path / "f.png")])
        assert code == 1


@pytest.mark.skipif(shutil.which("rsma-parga") is None,
                    reason="rsma-parga CLI not installed")
def test_acceptance_pipeline(tmp_path):
    """Secondary acceptance: plot a real theta1=pi/9 sweep; one line per
    method and the PARGA line at or above FP-RSMA at every plotted SNR."""
    scenario = tmp_path / "scenario.txt"
    scenario.write_text(
        "theta1 = 0.3490658503988659\n"
        "theta2 = 0.6981317007977318\n"
        "ga.population_size = 40\n"
        "ga.max_generations = 60\n"
        "ga.stall_generations = 15\n"
    )
    csv_path = tmp_path / "sweep.csv"
    subprocess.run(
        [
            "rsma-parga", "sweep", "--scenario", str(scenario),
            "--snr", "0:30:10", "--theta1", "pi/9",
            "--methods", "parga,fp_rsma,sdma,noma", "--repeats", "2",
            "--out", str(csv_path),
        ],
        check=True, capture_output=True, text=True,
    )
    out = tmp_path / "fig.png"
    series = render(PlotSpec(str(csv_path), str(out), theta1_filter=math.pi / 9))
    assert out.exists()
    assert sorted(s.method for s in series) == ["fp_rsma", "noma", "parga", "sdma"]
    parga = next(s for s in series if s.method == "parga")
    fp = next(s for s in series if s.method == "fp_rsma")
    assert parga.snr_db == fp.snr_db
    for p, f in zip(parga.mean, fp.mean):
        assert p >= f
