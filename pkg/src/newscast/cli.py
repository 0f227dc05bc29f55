"""Command-line pipeline over the library modules.

Commands compose through files in the output directory: score writes
the scored articles that build-index reads, build-index writes the
index that fit and backtest read, backtest writes the forecasts that
evaluate reads. Every output is a pure function of the config and the
input files, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from typing import Mapping, Sequence

from .config import RunConfig, load_config, toy_config_path
from .errors import ConfigError, DataError, NewscastError, NumericError
from .evaluation import evaluate_forecasts
from .index import build_news_index, monthly_aggregate, news_pi
from .io import (
    read_forecasts,
    read_probability_articles,
    read_scored_articles,
    read_series,
    read_text_articles,
    write_forecasts,
    write_index_metadata,
    write_probability_articles,
    write_rejections,
    write_scored_articles,
    write_series,
)
from .nowcast import MODEL_SPECS, backtest, fit_model, nowcast, resolve_spec
from .report import (
    evaluation_table,
    evaluation_table_delimited,
    regression_table,
    regression_table_delimited,
)
from .sentiment import Article, SentimentScorer, baseline_classify, lexicon_filter
from .timeseries import MonthKey, MonthlySeries, annualize, pct_change
from .version import __version__

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

# Fraction of malformed input rows above which score refuses to run.
MAX_REJECTED_FRACTION = 0.10

EPILOG = """\
exit codes:
  0  success
  2  configuration problem (bad config file or override, unknown model name)
  3  data problem (malformed rows, missing months, missing pipeline files)
  4  numerical problem (singular design, zero denominator, degenerate test)

The bundled demo config is selected with --config toy.
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newscast",
        description="News-sentiment index construction and inflation "
        "nowcasting pipeline.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--config",
        default="toy",
        help="config file path, or 'toy' for the bundled demo (default: toy)",
    )
    parser.add_argument("--out", help="output directory, overrides the config")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key (repeatable)",
    )
    parser.add_argument(
        "--version", action="version", version=f"newscast {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("score", help="filter news articles and score their sentiment")
    sub.add_parser("build-index", help="aggregate scores into the NEWS index")

    p_fit = sub.add_parser("fit", help="fit model specs over the training window")
    p_fit.add_argument(
        "specs",
        nargs="*",
        metavar="SPEC",
        help="model names, or 'all' for every spec (default: config specs)",
    )

    p_now = sub.add_parser("nowcast", help="nowcast one month with fitted models")
    p_now.add_argument("specs", nargs="*", metavar="SPEC")
    p_now.add_argument(
        "--month",
        help="target month YYYY-MM (default: the month after train_end)",
    )

    p_back = sub.add_parser(
        "backtest", help="nowcast the evaluation window and evaluate"
    )
    p_back.add_argument("specs", nargs="*", metavar="SPEC")

    sub.add_parser(
        "evaluate", help="recompute the evaluation report from the forecast file"
    )
    return parser


def _resolve_spec_names(cfg: RunConfig, names: Sequence[str]) -> list[str]:
    if not names:
        return list(cfg.specs)
    if list(names) == ["all"]:
        return list(MODEL_SPECS)
    for name in names:
        resolve_spec(name)
    return list(dict.fromkeys(names))


def cmd_score(cfg: RunConfig) -> int:
    if cfg.news_probs_path is not None:
        articles, rejections = read_probability_articles(
            cfg.news_probs_path, strict=False
        )
        filtered_out = 0
        retained = articles
    elif cfg.news_text_path is not None:
        articles, rejections = read_text_articles(cfg.news_text_path, strict=False)
        retained = []
        for a in articles:
            if not lexicon_filter(a.text or "", cfg.lexicon):
                continue
            probs = baseline_classify(
                a.text or "",
                up_lexicon=cfg.baseline_up_lexicon,
                down_lexicon=cfg.baseline_down_lexicon,
                gain=cfg.baseline_gain,
                cap=cfg.baseline_cap,
            )
            retained.append(
                Article(id=a.id, date=a.date, day=a.day, text=a.text, probs=probs)
            )
        filtered_out = len(articles) - len(retained)
    else:
        raise ConfigError(
            "score needs a news_probs or news_text file in the config"
        )

    comment = cfg.provenance()
    if rejections:
        write_rejections(rejections, cfg.out_path("articles_rejected.csv"), comment)
        total = len(articles) + len(rejections)
        if len(rejections) > MAX_REJECTED_FRACTION * total:
            raise DataError(
                f"{len(rejections)} of {total} rows are malformed "
                f"(> {MAX_REJECTED_FRACTION:.0%}); see articles_rejected.csv"
            )

    scored = SentimentScorer(cfg.score).fit_transform(retained)
    write_probability_articles(retained, cfg.out_path("articles_probs.csv"), comment)
    write_scored_articles(scored, cfg.out_path("articles_scored.csv"), comment)

    if not scored:
        print("warning: no articles passed the lexicon filter", file=sys.stderr)
    print(
        f"scored {len(scored)} articles "
        f"({len(rejections)} rejected, {filtered_out} filtered out) "
        f"-> {cfg.out_path('articles_scored.csv')}"
    )
    return EXIT_OK


def cmd_build_index(cfg: RunConfig) -> int:
    scored_path = cfg.effective_scored_path()
    if not scored_path.exists():
        raise DataError(
            f"scored-article file {scored_path} does not exist; "
            "run the score command first or set the 'scored' config key"
        )
    scored, _ = read_scored_articles(scored_path)
    monthly = monthly_aggregate(scored, day_cutoff=cfg.day_cutoff)
    index = build_news_index(monthly)
    comment = cfg.provenance()
    write_series(index.series, cfg.out_path("news_index.csv"), comment)
    write_index_metadata(
        index.counts, index.gap_months, cfg.out_path("news_index_meta.csv"), comment
    )
    gaps = len(index.gap_months)
    print(
        f"built NEWS index over {len(index.series)} months "
        f"({gaps} gap months) -> {cfg.out_path('news_index.csv')}"
    )
    return EXIT_OK


def _load_pi_bundle(
    cfg: RunConfig, spec_names: Sequence[str]
) -> Mapping[str, MonthlySeries]:
    """Percent-change series for the target and every needed regressor."""
    needed = {"cpi"}
    for name in spec_names:
        needed.update(resolve_spec(name).regressors)
    level_paths = {
        "cpi": cfg.cpi_path,
        "ccpi": cfg.ccpi_path,
        "fcpi": cfg.fcpi_path,
        "gas": cfg.gas_path,
    }
    bundle: dict[str, MonthlySeries] = {}
    for key, path in level_paths.items():
        if key not in needed:
            continue
        levels = read_series(path, name=key)
        bundle[key] = pct_change(levels, cfg.window)
    if "news" in needed:
        index_path = cfg.effective_news_index_path()
        if not index_path.exists():
            raise DataError(
                f"news index file {index_path} does not exist; "
                "run the build-index command first or set the "
                "'news_index' config key"
            )
        index_series = read_series(index_path, name="NEWS")
        bundle["news"] = news_pi(index_series, cfg.window, mode=cfg.news_pi_mode)
    return bundle


def cmd_fit(cfg: RunConfig, spec_names: Sequence[str]) -> int:
    names = _resolve_spec_names(cfg, spec_names)
    bundle = _load_pi_bundle(cfg, names)
    results = [
        fit_model(name, bundle, cfg.train_start, cfg.train_end, robust=cfg.robust)
        for name in names
    ]
    text = regression_table(results, names)
    comment = cfg.provenance()
    cfg.out_path("regression.txt").write_text(
        f"{comment}\n{text}", encoding="utf-8"
    )
    cfg.out_path("regression.csv").write_text(
        f"{comment}\n{regression_table_delimited(results, names)}",
        encoding="utf-8",
    )
    print(text, end="")
    return EXIT_OK


def cmd_nowcast(cfg: RunConfig, spec_names: Sequence[str], month: str | None) -> int:
    names = _resolve_spec_names(cfg, spec_names)
    t = MonthKey.parse(month) if month else cfg.train_end.shift(1)
    bundle = _load_pi_bundle(cfg, names)
    lines = ["date,model,nowcast,nowcast_annualized"]
    for name in names:
        fitted = fit_model(
            name, bundle, cfg.train_start, cfg.train_end, robust=cfg.robust
        )
        value = nowcast(name, fitted, bundle, t)
        annual = annualize(value)
        lines.append(f"{t},{name},{value!r},{annual!r}")
        print(f"{name}: {t} nowcast {value:.4f} (annualized {annual:.4f})")
    cfg.out_path("nowcast.csv").write_text(
        "\n".join([cfg.provenance(), *lines]) + "\n", encoding="utf-8"
    )
    return EXIT_OK


def cmd_backtest(cfg: RunConfig, spec_names: Sequence[str]) -> int:
    names = _resolve_spec_names(cfg, spec_names)
    bundle = _load_pi_bundle(cfg, names)
    forecasts = [
        backtest(
            name,
            bundle,
            (cfg.train_start, cfg.train_end),
            (cfg.eval_start, cfg.eval_end),
            cfg.scheme,
            robust=cfg.robust,
        )
        for name in names
    ]
    comment = cfg.provenance()
    write_forecasts(forecasts, cfg.effective_forecasts_path(), comment)
    report = evaluate_forecasts(
        forecasts,
        variant=cfg.gw_variant,
        unit=cfg.rmse_unit,
        truncation_lag=cfg.truncation_lag,
    )
    text = evaluation_table(report)
    cfg.out_path("evaluation.txt").write_text(f"{comment}\n{text}", encoding="utf-8")
    cfg.out_path("evaluation.csv").write_text(
        f"{comment}\n{evaluation_table_delimited(report)}", encoding="utf-8"
    )
    print(text, end="")
    return EXIT_OK


def cmd_evaluate(cfg: RunConfig) -> int:
    forecasts_path = cfg.effective_forecasts_path()
    if not forecasts_path.exists():
        raise DataError(
            f"forecast file {forecasts_path} does not exist; "
            "run the backtest command first or set the 'forecasts' config key"
        )
    forecasts = read_forecasts(forecasts_path)
    report = evaluate_forecasts(
        forecasts,
        variant=cfg.gw_variant,
        unit=cfg.rmse_unit,
        truncation_lag=cfg.truncation_lag,
    )
    comment = cfg.provenance()
    text = evaluation_table(report)
    cfg.out_path("evaluation.txt").write_text(f"{comment}\n{text}", encoding="utf-8")
    cfg.out_path("evaluation.csv").write_text(
        f"{comment}\n{evaluation_table_delimited(report)}", encoding="utf-8"
    )
    print(text, end="")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config_path = toy_config_path() if args.config == "toy" else args.config
        cfg = load_config(config_path, args.overrides, args.out)
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "score":
            return cmd_score(cfg)
        if args.command == "build-index":
            return cmd_build_index(cfg)
        if args.command == "fit":
            return cmd_fit(cfg, args.specs)
        if args.command == "nowcast":
            return cmd_nowcast(cfg, args.specs, args.month)
        if args.command == "backtest":
            return cmd_backtest(cfg, args.specs)
        if args.command == "evaluate":
            return cmd_evaluate(cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NewscastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
