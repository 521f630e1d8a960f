"""End-to-end command-line tests (in-process)."""

from __future__ import annotations

import json

import pytest

from rainrule import MatchFormat, fit_dl_family, resource_table, resource_table_csv
from rainrule.ball_log import CSV_HEADER
from rainrule.cli import main
from rainrule.fixtures import exponential_profile_corpus, synthetic_corpus, write_corpus

WORKED_SCENARIO = {
    "format": "odi",
    "innings": 2,
    "wickets": 4,
    "n": 120,
    "m": 180,
    "N": 300,
    "target_score": 275,
    "current_score": 100,
}
WORKED_FITS = {"a": -0.0031, "b": 1.0298, "c": 0.0, "degree": 3}


@pytest.fixture(scope="module")
def data_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    write_corpus(synthetic_corpus(MatchFormat.ODI, 12, seed=3), root)
    write_corpus(synthetic_corpus(MatchFormat.T20I, 8, seed=3), root)
    write_corpus(synthetic_corpus(MatchFormat.IPL, 8, seed=3), root)
    return root


def write_json(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class TestIngest:
    def test_counts_and_export(self, data_dir, tmp_path, capsys):
        out_csv = tmp_path / "log.csv"
        code = main(["ingest", "--data-dir", str(data_dir), "--export-csv", str(out_csv)])
        captured = capsys.readouterr()
        assert code == 0
        assert "matches: 28" in captured.out
        assert "odi: 12" in captured.out
        assert "t20i: 8" in captured.out
        assert "ipl: 8" in captured.out
        assert out_csv.read_text().splitlines()[0] == CSV_HEADER

    def test_until_filters_by_date(self, data_dir, capsys):
        code = main(["ingest", "--data-dir", str(data_dir), "--until", "2019-01-05"])
        captured = capsys.readouterr()
        assert code == 0
        assert "matches: 3" in captured.out  # one per format on the start date

    def test_empty_directory(self, tmp_path, capsys):
        code = main(["ingest", "--data-dir", str(tmp_path)])
        assert code == 2
        assert "empty" in capsys.readouterr().err

    def test_corrupt_only_directory(self, tmp_path, capsys):
        (tmp_path / "broken.json").write_text("{nope")
        code = main(["ingest", "--data-dir", str(tmp_path)])
        captured = capsys.readouterr()
        assert code == 2
        assert "broken.json" in captured.err

    def test_env_var_supplies_data_dir(self, data_dir, capsys, monkeypatch):
        monkeypatch.setenv("RAINRULE_DATA_DIR", str(data_dir))
        assert main(["ingest"]) == 0
        assert "matches: 28" in capsys.readouterr().out

    def test_no_data_source(self, capsys, monkeypatch):
        monkeypatch.delenv("RAINRULE_DATA_DIR", raising=False)
        code = main(["ingest"])
        assert code == 2
        assert "--data-dir" in capsys.readouterr().err


class TestStats:
    def test_writes_files_and_table(self, data_dir, tmp_path, capsys):
        out = tmp_path / "stats"
        code = main(
            ["stats", "--data-dir", str(data_dir), "--out", str(out), "--bin-width", "5"]
        )
        captured = capsys.readouterr()
        assert code == 0
        assert "xi" in captured.out and "sigma" in captured.out
        assert (out / "hist_odi_i1.csv").exists()
        summary = json.loads((out / "normal_odi_i1.json").read_text())
        assert summary["format"] == "odi" and summary["innings"] == 1
        assert summary["n_samples"] == 12

    def test_byte_identical_reruns(self, data_dir, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        argv = ["stats", "--data-dir", str(data_dir), "--bin-width", "5"]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        capsys.readouterr()
        for path in sorted(a.iterdir()):
            assert path.read_bytes() == (b / path.name).read_bytes()

    def test_single_format_restriction(self, data_dir, tmp_path, capsys):
        out = tmp_path / "stats"
        code = main(
            ["stats", "--data-dir", str(data_dir), "--format", "ipl",
             "--out", str(out), "--bin-width", "5"]
        )
        captured = capsys.readouterr()
        assert code == 0
        assert "odi" not in captured.out
        assert not (out / "hist_odi_i1.csv").exists()


class TestCurves:
    def test_writes_curves_and_fit_family(self, data_dir, tmp_path, capsys):
        out = tmp_path / "curves"
        code = main(
            ["curves", "--data-dir", str(data_dir), "--format", "odi",
             "--innings", "1", "--min-support", "2", "--out", str(out)]
        )
        captured = capsys.readouterr()
        assert code == 0
        assert "fitted" in captured.out
        family = json.loads((out / "poly_odi_i1.json").read_text())
        assert family["format"] == "odi"
        assert "0" in family["fits"]
        assert (out / "curve_odi_i1_w0.csv").exists()

    def test_all_states_empty_is_fit_error(self, data_dir, tmp_path, capsys):
        code = main(
            ["curves", "--data-dir", str(data_dir), "--format", "odi",
             "--min-support", "500", "--out", str(tmp_path / "x")]
        )
        captured = capsys.readouterr()
        assert code == 4
        assert "no wicket state" in captured.err


class TestTarget:
    def test_worked_example(self, tmp_path, capsys):
        scenario = write_json(tmp_path / "scenario.json", WORKED_SCENARIO)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        code = main(["target", "--scenario", str(scenario), "--fits", str(fits)])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["revised_total"] == 230
        assert payload["to_win"] == 231
        assert 0.745 <= payload["ratio"] <= 0.750

    def test_family_fits_file_selected_by_wickets(self, tmp_path, capsys):
        scenario = write_json(tmp_path / "scenario.json", WORKED_SCENARIO)
        fits = write_json(tmp_path / "family.json", {"fits": {"4": WORKED_FITS}})
        assert main(["target", "--scenario", str(scenario), "--fits", str(fits)]) == 0
        assert json.loads(capsys.readouterr().out)["revised_total"] == 230

        missing = dict(WORKED_SCENARIO, wickets=5)
        scenario5 = write_json(tmp_path / "scenario5.json", missing)
        code = main(["target", "--scenario", str(scenario5), "--fits", str(fits)])
        captured = capsys.readouterr()
        assert code == 4
        assert "wickets=5" in captured.err

    def test_no_interruption_keeps_target(self, tmp_path, capsys):
        doc = dict(WORKED_SCENARIO, n=150, m=150)
        scenario = write_json(tmp_path / "scenario.json", doc)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        assert main(["target", "--scenario", str(scenario), "--fits", str(fits)]) == 0
        assert json.loads(capsys.readouterr().out)["revised_total"] == 275

    def test_nothing_to_chase(self, tmp_path, capsys):
        doc = dict(WORKED_SCENARIO, n=0, m=300)
        scenario = write_json(tmp_path / "scenario.json", doc)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        code = main(["target", "--scenario", str(scenario), "--fits", str(fits)])
        captured = capsys.readouterr()
        assert code == 3
        assert json.loads(captured.out)["ratio"] == 0.0
        assert "nothing to chase" in captured.err

    def test_invalid_scenario_names_field(self, tmp_path, capsys):
        doc = dict(WORKED_SCENARIO, current_score=300)
        scenario = write_json(tmp_path / "scenario.json", doc)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        code = main(["target", "--scenario", str(scenario), "--fits", str(fits)])
        captured = capsys.readouterr()
        assert code == 3
        assert "current_score" in captured.err

    def test_malformed_scenario_file(self, tmp_path, capsys):
        scenario = tmp_path / "scenario.json"
        scenario.write_text("{not json")
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        code = main(["target", "--scenario", str(scenario), "--fits", str(fits)])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_deterministic_stdout(self, tmp_path, capsys):
        scenario = write_json(tmp_path / "scenario.json", WORKED_SCENARIO)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        main(["target", "--scenario", str(scenario), "--fits", str(fits)])
        first = capsys.readouterr().out
        main(["target", "--scenario", str(scenario), "--fits", str(fits)])
        assert capsys.readouterr().out == first


class TestCompare:
    def test_with_table_file(self, tmp_path, capsys):
        family = fit_dl_family(
            exponential_profile_corpus(MatchFormat.ODI), MatchFormat.ODI, min_support=1
        )
        table_path = tmp_path / "table.csv"
        table_path.write_text(resource_table_csv(resource_table(family, 50)))
        scenario = write_json(tmp_path / "scenario.json", WORKED_SCENARIO)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        code = main(
            ["compare", "--scenario", str(scenario), "--fits", str(fits),
             "--dl-table", str(table_path)]
        )
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["area_ratio"]["revised_total"] == 230
        model = payload["resource_model"]
        assert model["percent_at_stoppage"] > model["percent_at_restart"]
        assert model["percent_lost"] == pytest.approx(
            model["percent_at_stoppage"] - model["percent_at_restart"]
        )

    def test_without_table_warns_and_degrades(self, tmp_path, capsys, monkeypatch):
        monkeypatch.delenv("RAINRULE_DATA_DIR", raising=False)
        scenario = write_json(tmp_path / "scenario.json", WORKED_SCENARIO)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        code = main(["compare", "--scenario", str(scenario), "--fits", str(fits)])
        captured = capsys.readouterr()
        assert code == 0
        payload = json.loads(captured.out)
        assert payload["resource_model"] is None
        assert "warning" in captured.err

    def test_fits_table_from_corpus(self, data_dir, tmp_path, capsys):
        out = tmp_path / "cmp"
        scenario = write_json(tmp_path / "scenario.json", WORKED_SCENARIO)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        code = main(
            ["compare", "--scenario", str(scenario), "--fits", str(fits),
             "--data-dir", str(data_dir), "--min-support", "2", "--out", str(out)]
        )
        captured = capsys.readouterr()
        assert code == 0
        assert (out / "resource_odi.csv").exists()
        assert (out / "comparison.json").exists()
        assert json.loads(captured.out)["resource_model"] is not None

    def test_bad_table_rejected(self, tmp_path, capsys):
        table_path = tmp_path / "table.csv"
        table_path.write_text("wrong,header\n1,2\n")
        scenario = write_json(tmp_path / "scenario.json", WORKED_SCENARIO)
        fits = write_json(tmp_path / "fits.json", WORKED_FITS)
        code = main(
            ["compare", "--scenario", str(scenario), "--fits", str(fits),
             "--dl-table", str(table_path)]
        )
        assert code == 2
        assert "header" in capsys.readouterr().err


class TestArgumentValidation:
    def test_nonpositive_bin_width_rejected(self, data_dir):
        with pytest.raises(SystemExit) as exc:
            main(["stats", "--data-dir", str(data_dir), "--bin-width", "0"])
        assert exc.value.code == 2

    def test_unknown_format_rejected(self, data_dir):
        with pytest.raises(SystemExit) as exc:
            main(["ingest", "--data-dir", str(data_dir), "--format", "test"])
        assert exc.value.code == 2
