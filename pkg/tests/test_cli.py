"""End-to-end command-line behavior, run in-process."""

import csv
import io

import pytest

from newscast import toy_config_path
from newscast.cli import main

TOY_DIR = toy_config_path().parent


def run(*args):
    return main([str(a) for a in args])


def write_config(dir_path, **overrides):
    """Config reusing the bundled series files via absolute paths.

    Pass key=None to omit a key entirely.
    """
    settings = {
        "cpi": TOY_DIR / "cpi.csv",
        "ccpi": TOY_DIR / "ccpi.csv",
        "fcpi": TOY_DIR / "fcpi.csv",
        "gas": TOY_DIR / "gas.csv",
        "window": "1",
        "train_start": "2015-01",
        "train_end": "2019-12",
        "eval_start": "2020-01",
        "eval_end": "2023-12",
    }
    settings.update(overrides)
    path = dir_path / "custom.cfg"
    path.write_text(
        "".join(f"{k} = {v}\n" for k, v in settings.items() if v is not None)
    )
    return path


def read_csv_after_provenance(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# newscast ")
    return list(csv.reader(io.StringIO("\n".join(lines[1:]))))


@pytest.fixture(scope="module")
def toy_run(tmp_path_factory):
    """One full pipeline run on the bundled config, shared read-only."""
    out = tmp_path_factory.mktemp("toy-out")
    for command in ("score", "build-index", "fit", "backtest"):
        assert run("--config", "toy", "--out", out, command) == 0
    return out


class TestParser:
    def test_help_lists_commands_and_exit_codes(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run("--help")
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for token in (
            "score", "build-index", "fit", "nowcast", "backtest", "evaluate",
            "exit codes:", "--config toy",
        ):
            assert token in out

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run("--version")
        assert exc.value.code == 0
        assert "newscast 0.1.0" in capsys.readouterr().out

    def test_command_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run("--config", "toy")
        assert exc.value.code == 2


class TestScore:
    def test_toy_outputs(self, toy_run):
        scored = toy_run / "articles_scored.csv"
        rows = read_csv_after_provenance(scored)
        assert rows[0] == ["id", "date", "score"]
        assert len(rows) > 1000  # every probability row scores
        for row in rows[1:]:
            assert -1.0 <= float(row[2]) <= 1.0

    def test_probs_route_preferred_over_text(self, toy_run):
        # toy.cfg lists both inputs; the probability route wins, so the
        # probs sidecar mirrors the input probabilities.
        rows = read_csv_after_provenance(toy_run / "articles_probs.csv")
        assert rows[0] == ["id", "date", "p_down", "p_neutral", "p_up"]
        assert len(rows) == 1 + sum(
            1 for _ in open(TOY_DIR / "news_probs.csv")
        ) - 1

    def test_deterministic_outputs(self, tmp_path, toy_run):
        # The provenance line carries the config digest, which covers the
        # --out override, so only the payload below it is comparable.
        out2 = tmp_path / "second"
        assert run("--config", "toy", "--out", out2, "score") == 0
        for name in ("articles_scored.csv", "articles_probs.csv"):
            first = (toy_run / name).read_text().splitlines()[1:]
            second = (out2 / name).read_text().splitlines()[1:]
            assert first == second

    def test_text_route_uses_keyword_baseline(self, tmp_path, capsys):
        cfg = write_config(tmp_path, news_text=TOY_DIR / "news_text.csv")
        assert run("--config", cfg, "--out", tmp_path / "out", "score") == 0
        rows = read_csv_after_provenance(tmp_path / "out" / "articles_scored.csv")
        assert len(rows) > 1  # the bundled headlines pass the filter
        stdout = capsys.readouterr().out
        assert "filtered out" in stdout

    def test_zero_match_lexicon_warns_but_succeeds(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            news_text=TOY_DIR / "news_text.csv",
            lexicon="xyzzy plugh",
        )
        assert run("--config", cfg, "--out", tmp_path / "out", "score") == 0
        captured = capsys.readouterr()
        assert "no articles passed the lexicon filter" in captured.err
        rows = read_csv_after_provenance(tmp_path / "out" / "articles_scored.csv")
        assert rows == [["id", "date", "score"]]

    def test_small_rejection_rate_tolerated(self, tmp_path):
        lines = ["id,date,p_down,p_neutral,p_up"]
        lines += [f"a{i:02d},2015-01-{(i % 28) + 1:02d},0.2,0.3,0.5"
                  for i in range(20)]
        lines.append("bad,2015-01-05,0.9,0.9,0.9")
        probs = tmp_path / "probs.csv"
        probs.write_text("\n".join(lines) + "\n")
        cfg = write_config(tmp_path, news_probs=probs)
        assert run("--config", cfg, "--out", tmp_path / "out", "score") == 0
        rejected = tmp_path / "out" / "articles_rejected.csv"
        rows = read_csv_after_provenance(rejected)
        assert rows[0] == ["line", "reason"]
        assert len(rows) == 2
        assert rows[1][0] == "22"  # physical line of the bad row

    def test_excessive_rejection_rate_fails(self, tmp_path, capsys):
        lines = ["id,date,p_down,p_neutral,p_up"]
        lines += [f"a{i:02d},2015-01-{i + 1:02d},0.2,0.3,0.5" for i in range(10)]
        lines += ["bad1,2015-01-05,0.9,0.9,0.9", "bad2,2015-02-30,0.2,0.3,0.5"]
        probs = tmp_path / "probs.csv"
        probs.write_text("\n".join(lines) + "\n")
        cfg = write_config(tmp_path, news_probs=probs)
        assert run("--config", cfg, "--out", tmp_path / "out", "score") == 3
        assert "malformed" in capsys.readouterr().err
        assert (tmp_path / "out" / "articles_rejected.csv").exists()

    def test_score_without_news_inputs_is_config_error(self, tmp_path, capsys):
        cfg = write_config(tmp_path)
        assert run("--config", cfg, "--out", tmp_path / "out", "score") == 2
        assert "news_probs or news_text" in capsys.readouterr().err


class TestBuildIndex:
    def test_outputs(self, toy_run):
        index_rows = read_csv_after_provenance(toy_run / "news_index.csv")
        assert index_rows[0] == ["date", "value"]
        assert len(index_rows) == 133  # 2013-01..2023-12, contiguous
        meta_rows = read_csv_after_provenance(toy_run / "news_index_meta.csv")
        assert meta_rows[0] == ["month", "article_count", "gap"]
        assert len(meta_rows) == 133
        assert all(r[2] == "0" for r in meta_rows[1:])  # no gaps in toy data

    def test_requires_scored_file(self, tmp_path, capsys):
        assert run("--config", "toy", "--out", tmp_path / "out",
                   "build-index") == 3
        err = capsys.readouterr().err
        assert "score command first" in err


class TestFit:
    def test_stdout_table(self, toy_run, capsys):
        assert run("--config", "toy", "--out", toy_run, "fit") == 0
        out = capsys.readouterr().out
        assert "Dependent variable: CPI" in out
        assert "pi-NEWS" in out
        assert "Note: *p<0.1; **p<0.05; ***p<0.01" in out

    def test_written_files(self, toy_run):
        text = (toy_run / "regression.txt").read_text()
        assert text.startswith("# newscast ")
        assert "Dependent variable: CPI" in text
        rows = read_csv_after_provenance(toy_run / "regression.csv")
        assert rows[0] == ["term", "statistic", "fed", "fed+news"]

    def test_spec_arguments_override_config(self, toy_run, capsys):
        assert run("--config", "toy", "--out", toy_run, "fit", "fed") == 0
        rows = read_csv_after_provenance(toy_run / "regression.csv")
        assert rows[0] == ["term", "statistic", "fed"]
        # Restore the two-model outputs for later tests in this module.
        assert run("--config", "toy", "--out", toy_run, "fit") == 0
        capsys.readouterr()

    def test_fit_all_uses_every_spec(self, toy_run, capsys):
        assert run("--config", "toy", "--out", toy_run, "fit", "all") == 0
        rows = read_csv_after_provenance(toy_run / "regression.csv")
        assert rows[0] == [
            "term", "statistic",
            "fed", "news", "fed+news", "fed-gas+news", "ccpi+news",
        ]
        assert run("--config", "toy", "--out", toy_run, "fit") == 0
        capsys.readouterr()

    def test_unknown_spec_is_config_error(self, toy_run, capsys):
        assert run("--config", "toy", "--out", toy_run, "fit", "fed+tweets") == 2
        assert "unknown model" in capsys.readouterr().err

    def test_news_spec_requires_index_file(self, tmp_path, capsys):
        assert run("--config", "toy", "--out", tmp_path / "out", "fit") == 3
        assert "build-index command first" in capsys.readouterr().err

    def test_price_only_spec_needs_no_index(self, tmp_path, capsys):
        assert run("--config", "toy", "--out", tmp_path / "out",
                   "fit", "fed") == 0
        assert "Dependent variable: CPI" in capsys.readouterr().out


class TestNowcast:
    def test_default_month_follows_training(self, toy_run, capsys):
        assert run("--config", "toy", "--out", toy_run, "nowcast") == 0
        out = capsys.readouterr().out
        assert "2020-01" in out
        rows = read_csv_after_provenance(toy_run / "nowcast.csv")
        assert rows[0] == ["date", "model", "nowcast", "nowcast_annualized"]
        assert [r[1] for r in rows[1:]] == ["fed", "fed+news"]
        assert all(r[0] == "2020-01" for r in rows[1:])

    def test_explicit_month(self, toy_run, capsys):
        assert run("--config", "toy", "--out", toy_run,
                   "nowcast", "--month", "2021-06") == 0
        rows = read_csv_after_provenance(toy_run / "nowcast.csv")
        assert all(r[0] == "2021-06" for r in rows[1:])
        capsys.readouterr()

    def test_matches_first_backtest_month(self, toy_run, capsys):
        # A fixed-scheme backtest's first month is exactly the nowcast
        # of eval_start: same fit, same bundle, same arithmetic.
        assert run("--config", "toy", "--out", toy_run,
                   "nowcast", "--month", "2020-01") == 0
        capsys.readouterr()
        nowcast_rows = read_csv_after_provenance(toy_run / "nowcast.csv")
        forecast_rows = read_csv_after_provenance(toy_run / "forecasts.csv")
        for model in ("fed", "fed+news"):
            direct = next(
                float(r[2]) for r in nowcast_rows[1:] if r[1] == model
            )
            from_backtest = next(
                float(r[2]) for r in forecast_rows[1:]
                if r[0] == "2020-01" and r[1] == model
            )
            assert direct == from_backtest


class TestBacktestAndEvaluate:
    def test_forecast_file_shape(self, toy_run):
        rows = read_csv_after_provenance(toy_run / "forecasts.csv")
        assert rows[0] == [
            "date", "model", "nowcast", "nowcast_annualized",
            "realized", "realized_annualized",
        ]
        data = rows[1:]
        assert len(data) == 2 * 48  # two models, four evaluation years
        assert data[0][0] == "2020-01"
        assert data[47][0] == "2023-12"
        # Realized values are model-independent.
        fed = [r for r in data if r[1] == "fed"]
        news = [r for r in data if r[1] == "fed+news"]
        assert [r[4] for r in fed] == [r[4] for r in news]

    def test_evaluation_outputs(self, toy_run):
        text = (toy_run / "evaluation.txt").read_text()
        assert text.startswith("# newscast ")
        assert "RMSE" in text
        assert "FED" in text and "FED+NEWS" in text
        assert "(--)" in text
        rows = read_csv_after_provenance(toy_run / "evaluation.csv")
        assert rows[0] == [
            "model", "rmse", "gw_statistic", "gw_df", "gw_p_value",
            "gw_variant", "stars",
        ]
        assert rows[1][0] == "fed" and rows[1][2] == ""
        assert rows[2][0] == "fed+news" and rows[2][5] == "unconditional"
        assert 0.0 <= float(rows[2][4]) <= 1.0

    def test_evaluate_reproduces_backtest_report(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert run("--config", "toy", "--out", out, "score") == 0
        assert run("--config", "toy", "--out", out, "build-index") == 0
        assert run("--config", "toy", "--out", out, "backtest") == 0
        first = (out / "evaluation.csv").read_bytes()
        assert run("--config", "toy", "--out", out, "evaluate") == 0
        assert (out / "evaluation.csv").read_bytes() == first
        capsys.readouterr()

    def test_evaluate_requires_forecasts(self, tmp_path, capsys):
        assert run("--config", "toy", "--out", tmp_path / "out", "evaluate") == 3
        assert "backtest command first" in capsys.readouterr().err

    def test_single_spec_report_has_no_test_column(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert run("--config", "toy", "--out", out, "score") == 0
        assert run("--config", "toy", "--out", out, "build-index") == 0
        assert run("--config", "toy", "--out", out, "backtest", "fed+news") == 0
        capsys.readouterr()
        rows = read_csv_after_provenance(out / "evaluation.csv")
        assert len(rows) == 2
        assert rows[1][0] == "fed+news"
        assert rows[1][2:] == ["", "", "", "", ""]
        text = (out / "evaluation.txt").read_text()
        assert "(--)" in text


class TestExitCodes:
    def test_missing_config_file(self, tmp_path, capsys):
        assert run("--config", tmp_path / "no.cfg", "fit") == 2
        assert "cannot read config" in capsys.readouterr().err

    def test_unknown_override_key(self, capsys, tmp_path):
        assert run("--config", "toy", "--out", tmp_path / "out",
                   "--set", "windoze=1", "fit") == 2
        assert "unknown key" in capsys.readouterr().err

    def test_bad_override_value(self, capsys, tmp_path):
        assert run("--config", "toy", "--out", tmp_path / "out",
                   "--set", "window=zero", "fit") == 2
        assert "not an integer" in capsys.readouterr().err

    def test_malformed_series_file_is_data_error(self, tmp_path, capsys):
        bad = tmp_path / "cpi.csv"
        bad.write_text("date,value\n2015-13,100.0\n")
        cfg = write_config(tmp_path, cpi=bad)
        assert run("--config", cfg, "--out", tmp_path / "out", "fit", "fed") == 3
        assert "line 2" in capsys.readouterr().err

    def test_sign_crossing_index_is_numeric_error(self, tmp_path, capsys):
        crafted = tmp_path / "index.csv"
        crafted.write_text("date,value\n2019-01,0.5\n2019-02,-0.5\n")
        cfg = write_config(tmp_path, news_index=crafted)
        assert run("--config", cfg, "--out", tmp_path / "out",
                   "fit", "news") == 4
        err = capsys.readouterr().err
        assert "sign-crossing" in err
        assert "level-diff" in err
