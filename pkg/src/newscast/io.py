"""File formats: series, article, forecast, and metadata CSVs.

Every file is UTF-8, comma-delimited, with a fixed header row. Files
written by this package start with one comment line (prefixed '#')
carrying the tool version and the config digest; readers skip leading
comment and blank lines, so pipeline outputs feed back in cleanly.
Errors carry 1-based physical line numbers.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io as _io
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import DataError, NewscastError, SeriesFormatError
from .nowcast import ForecastSeries
from .sentiment import Article, LabeledArticle, ScoredArticle, SentimentProbs
from .timeseries import INDEX_LEVEL, MonthKey, MonthlySeries
from .version import __version__

SERIES_HEADER = ["date", "value"]
PROBS_HEADER = ["id", "date", "p_down", "p_neutral", "p_up"]
TEXT_HEADER = ["id", "date", "text"]
LABELED_HEADER = ["id", "date", "label"]
SCORED_HEADER = ["id", "date", "score"]
FORECAST_HEADER = [
    "date", "model", "nowcast", "nowcast_annualized",
    "realized", "realized_annualized",
]
INDEX_META_HEADER = ["month", "article_count", "gap"]

LABEL_ENCODINGS = ("signed", "indexed")
# The indexed file encoding: 0 negative, 1 neutral, 2 positive.
_INDEXED_TO_SIGNED = {0: -1, 1: 0, 2: 1}
_SIGNED_TO_INDEXED = {v: k for k, v in _INDEXED_TO_SIGNED.items()}


def provenance_line(digest: str) -> str:
    return f"# newscast {__version__} config:{digest}"


@dataclass(frozen=True)
class Rejection:
    """One malformed input row: physical line number and the reason."""

    line: int
    reason: str


def _read_rows(path: str | Path, header: Sequence[str]):
    """Yield (line_number, row) for each data row after the header.

    Leading comment ('#') and blank lines are skipped; the first real
    line must be the exact expected header.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    lines = raw.splitlines()
    start = 0
    while start < len(lines) and (
        not lines[start].strip() or lines[start].lstrip().startswith("#")
    ):
        start += 1
    if start == len(lines):
        raise SeriesFormatError(f"{path} has no header row", line=start or 1)
    reader = csv.reader(_io.StringIO("\n".join(lines[start:])))
    first = next(reader)
    if [c.strip() for c in first] != list(header):
        raise SeriesFormatError(
            f"{path} header is {first}, expected {list(header)}",
            line=start + 1,
        )
    for row in reader:
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        yield start + reader.line_num, row


def _write_lines(path: str | Path, lines: Iterable[str]) -> None:
    Path(path).write_text("".join(f"{l}\n" for l in lines), encoding="utf-8")


def _csv_line(cells: Sequence[str]) -> str:
    buffer = _io.StringIO()
    csv.writer(buffer, lineterminator="").writerow(cells)
    return buffer.getvalue()


# ---------------------------------------------------------------- series


def read_series(
    path: str | Path,
    name: str | None = None,
    unit: str = INDEX_LEVEL,
) -> MonthlySeries:
    """Load a `date,value` file into a MonthlySeries.

    Month keys must be strictly increasing; duplicates, unparseable
    dates, and non-numeric values are rejected with their line number.
    """
    path = Path(path)
    pairs: list[tuple[MonthKey, float]] = []
    previous: MonthKey | None = None
    for line_num, row in _read_rows(path, SERIES_HEADER):
        if len(row) != 2:
            raise SeriesFormatError(
                f"{path}: expected 2 fields, got {len(row)}", line=line_num
            )
        try:
            month = MonthKey.parse(row[0].strip())
        except NewscastError as exc:
            raise SeriesFormatError(f"{path}: {exc}", line=line_num) from None
        try:
            value = float(row[1])
        except ValueError:
            raise SeriesFormatError(
                f"{path}: value {row[1]!r} is not a number", line=line_num
            ) from None
        if previous is not None and month <= previous:
            kind = "duplicate" if month == previous else "non-monotone"
            raise SeriesFormatError(
                f"{path}: {kind} month {month}", line=line_num
            )
        previous = month
        pairs.append((month, value))
    return MonthlySeries(name or path.stem, pairs, unit)


def write_series(
    series: MonthlySeries, path: str | Path, comment: str | None = None
) -> None:
    lines = []
    if comment:
        lines.append(comment)
    lines.append(_csv_line(SERIES_HEADER))
    for month, value in series.items():
        lines.append(_csv_line([str(month), repr(value)]))
    _write_lines(path, lines)


# --------------------------------------------------------------- articles


def _parse_full_date(text: str) -> tuple[MonthKey, int]:
    d = _dt.date.fromisoformat(text.strip())
    return MonthKey(d.year, d.month), d.day


def _full_date(article) -> str:
    day = 1 if article.day is None else article.day
    return f"{article.date}-{day:02d}"


def _read_articles(
    path: str | Path,
    header: Sequence[str],
    parse: Callable,
    strict: bool,
) -> tuple[list, list[Rejection]]:
    items: list = []
    rejections: list[Rejection] = []
    for line_num, row in _read_rows(Path(path), header):
        try:
            if len(row) != len(header):
                raise DataError(
                    f"expected {len(header)} fields, got {len(row)}"
                )
            items.append(parse(row))
        except (NewscastError, ValueError) as exc:
            if strict:
                raise SeriesFormatError(
                    f"{path}: {exc}", line=line_num
                ) from None
            rejections.append(Rejection(line=line_num, reason=str(exc)))
    return items, rejections


def read_probability_articles(
    path: str | Path, strict: bool = True
) -> tuple[list[Article], list[Rejection]]:
    """Load `id,date,p_down,p_neutral,p_up` rows (date YYYY-MM-DD)."""

    def parse(row) -> Article:
        month, day = _parse_full_date(row[1])
        probs = SentimentProbs(float(row[2]), float(row[3]), float(row[4]))
        if not row[0].strip():
            raise DataError("empty article id")
        return Article(id=row[0].strip(), date=month, day=day, probs=probs)

    return _read_articles(path, PROBS_HEADER, parse, strict)


def read_text_articles(
    path: str | Path, strict: bool = True
) -> tuple[list[Article], list[Rejection]]:
    """Load `id,date,text` rows (date YYYY-MM-DD, text quoted)."""

    def parse(row) -> Article:
        month, day = _parse_full_date(row[1])
        if not row[0].strip():
            raise DataError("empty article id")
        return Article(id=row[0].strip(), date=month, day=day, text=row[2])

    return _read_articles(path, TEXT_HEADER, parse, strict)


def read_labeled_articles(
    path: str | Path, encoding: str = "signed", strict: bool = True
) -> tuple[list[LabeledArticle], list[Rejection]]:
    """Load `id,date,label` rows under the signed or indexed encoding."""
    if encoding not in LABEL_ENCODINGS:
        raise DataError(
            f"label encoding must be one of {LABEL_ENCODINGS}, got {encoding!r}"
        )

    def parse(row) -> LabeledArticle:
        month, day = _parse_full_date(row[1])
        raw = int(row[2])
        if encoding == "indexed":
            if raw not in _INDEXED_TO_SIGNED:
                raise DataError(f"indexed label must be 0, 1, or 2; got {raw}")
            label = _INDEXED_TO_SIGNED[raw]
        else:
            label = raw
        if not row[0].strip():
            raise DataError("empty article id")
        return LabeledArticle(
            id=row[0].strip(), date=month, gold_label=label, day=day
        )

    return _read_articles(path, LABELED_HEADER, parse, strict)


def read_scored_articles(
    path: str | Path, strict: bool = True
) -> tuple[list[ScoredArticle], list[Rejection]]:
    """Load `id,date,score` rows written by the score command."""

    def parse(row) -> ScoredArticle:
        month, day = _parse_full_date(row[1])
        if not row[0].strip():
            raise DataError("empty article id")
        return ScoredArticle(
            id=row[0].strip(), date=month, day=day, score=float(row[2])
        )

    return _read_articles(path, SCORED_HEADER, parse, strict)


def write_probability_articles(
    articles: Sequence[Article], path: str | Path, comment: str | None = None
) -> None:
    lines = []
    if comment:
        lines.append(comment)
    lines.append(_csv_line(PROBS_HEADER))
    for a in articles:
        if a.probs is None:
            raise DataError(f"article {a.id!r} has no probabilities")
        lines.append(
            _csv_line(
                [
                    a.id,
                    _full_date(a),
                    repr(a.probs.p_down),
                    repr(a.probs.p_neutral),
                    repr(a.probs.p_up),
                ]
            )
        )
    _write_lines(path, lines)


def write_scored_articles(
    articles: Sequence[ScoredArticle], path: str | Path, comment: str | None = None
) -> None:
    lines = []
    if comment:
        lines.append(comment)
    lines.append(_csv_line(SCORED_HEADER))
    for a in articles:
        lines.append(_csv_line([a.id, _full_date(a), repr(a.score)]))
    _write_lines(path, lines)


def write_rejections(
    rejections: Sequence[Rejection], path: str | Path, comment: str | None = None
) -> None:
    lines = []
    if comment:
        lines.append(comment)
    lines.append(_csv_line(["line", "reason"]))
    for r in rejections:
        lines.append(_csv_line([str(r.line), r.reason]))
    _write_lines(path, lines)


# -------------------------------------------------------------- forecasts


def write_forecasts(
    series_list: Sequence[ForecastSeries],
    path: str | Path,
    comment: str | None = None,
) -> None:
    lines = []
    if comment:
        lines.append(comment)
    lines.append(_csv_line(FORECAST_HEADER))
    for series in series_list:
        for i, month in enumerate(series.months):
            lines.append(
                _csv_line(
                    [
                        str(month),
                        series.model,
                        repr(series.nowcasts[i]),
                        repr(series.nowcasts_annualized[i]),
                        repr(series.realized[i]),
                        repr(series.realized_annualized[i]),
                    ]
                )
            )
    _write_lines(path, lines)


def read_forecasts(path: str | Path) -> list[ForecastSeries]:
    """Load a forecast file back into per-model series, in file order."""
    order: list[str] = []
    collected: dict[str, list[tuple[MonthKey, float, float, float, float]]] = {}
    for line_num, row in _read_rows(Path(path), FORECAST_HEADER):
        if len(row) != len(FORECAST_HEADER):
            raise SeriesFormatError(
                f"{path}: expected {len(FORECAST_HEADER)} fields, got {len(row)}",
                line=line_num,
            )
        try:
            month = MonthKey.parse(row[0].strip())
            values = tuple(float(cell) for cell in row[2:])
        except (NewscastError, ValueError) as exc:
            raise SeriesFormatError(f"{path}: {exc}", line=line_num) from None
        model = row[1].strip()
        if model not in collected:
            order.append(model)
            collected[model] = []
        collected[model].append((month, *values))
    if not order:
        raise DataError(f"{path} contains no forecast rows")
    out = []
    for model in order:
        rows = collected[model]
        out.append(
            ForecastSeries(
                model=model,
                months=tuple(r[0] for r in rows),
                nowcasts=tuple(r[1] for r in rows),
                nowcasts_annualized=tuple(r[2] for r in rows),
                realized=tuple(r[3] for r in rows),
                realized_annualized=tuple(r[4] for r in rows),
            )
        )
    return out


# ----------------------------------------------------------- index sidecar


def write_index_metadata(
    counts, gap_months, path: str | Path, comment: str | None = None
) -> None:
    """Sidecar `month,article_count,gap` rows for a NEWS index."""
    gaps = set(gap_months)
    lines = []
    if comment:
        lines.append(comment)
    lines.append(_csv_line(INDEX_META_HEADER))
    for month in sorted(counts):
        lines.append(
            _csv_line(
                [str(month), str(counts[month]), "1" if month in gaps else "0"]
            )
        )
    _write_lines(path, lines)
