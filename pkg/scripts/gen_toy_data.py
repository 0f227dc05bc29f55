"""Regenerate the bundled toy dataset (seeded, deterministic).

Writes price-level series, a per-article sentiment probability file,
and a small headline file into src/newscast/data/toy/. The price
series are built from monthly percent-change processes with a 2021-22
inflation hump; CPI is the linear combination of the component changes
(the fed model's coefficient vector) plus Gaussian noise, and article
sentiment tracks the resulting inflation so the news index carries
signal. Run from the repository root:

    python3 scripts/gen_toy_data.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "newscast" / "data" / "toy"

SEED = 20240615

START = (2013, 1)   # first level month
END = (2023, 12)    # last level month

# fed-model coefficients and residual spread used to synthesize CPI.
BETA = (0.021, 0.616, 0.186, 0.035)
SIGMA = 0.064


def month_list(start, end):
    months = []
    y, m = start
    while (y, m) <= end:
        months.append((y, m))
        m += 1
        if m == 13:
            y, m = y + 1, 1
    return months


def month_str(ym):
    return f"{ym[0]:04d}-{ym[1]:02d}"


def piecewise(months, anchors):
    """Linear interpolation between (index, value) anchor points."""
    idx = np.arange(len(months), dtype=float)
    xs = [a[0] for a in anchors]
    ys = [a[1] for a in anchors]
    return np.interp(idx, xs, ys)


def ar1(rng, n, phi, sigma):
    out = np.zeros(n)
    for i in range(1, n):
        out[i] = phi * out[i - 1] + rng.normal(0.0, sigma)
    return out


def main():
    months = month_list(START, END)
    # First sub-seed whose sentiment draw keeps the cumulative index
    # safely positive (checked below) wins; the search is deterministic.
    for attempt in range(64):
        rng = np.random.default_rng(SEED + attempt)
        if _generate(rng, months):
            print(f"seed {SEED} + {attempt}")
            return
    raise SystemExit("no sub-seed kept the index positive; rework constants")


def _generate(rng, months) -> bool:
    n = len(months)
    index = {ym: i for i, ym in enumerate(months)}

    def at(y, m):
        return index[(y, m)]

    # Monthly percent-change processes (percentage points per month).
    base_ccpi = piecewise(
        months,
        [
            (0, 0.15),
            (at(2020, 2), 0.15),
            (at(2020, 6), 0.05),
            (at(2021, 6), 0.35),
            (at(2022, 6), 0.45),
            (at(2023, 12), 0.25),
        ],
    )
    base_fcpi = piecewise(
        months,
        [
            (0, 0.20),
            (at(2020, 2), 0.20),
            (at(2020, 8), 0.30),
            (at(2021, 9), 0.55),
            (at(2022, 8), 0.80),
            (at(2023, 12), 0.25),
        ],
    )
    base_gas = piecewise(
        months,
        [
            (0, 0.20),
            (at(2020, 1), 0.20),
            (at(2020, 4), -6.0),
            (at(2020, 11), 0.50),
            (at(2021, 10), 3.00),
            (at(2022, 6), 5.00),
            (at(2022, 12), -2.00),
            (at(2023, 12), 0.00),
        ],
    )

    pi_ccpi = base_ccpi + ar1(rng, n, 0.6, 0.035)
    pi_fcpi = base_fcpi + ar1(rng, n, 0.3, 0.14)
    pi_gas = base_gas + ar1(rng, n, 0.5, 3.2)

    eps = rng.normal(0.0, SIGMA, size=n)
    pi_cpi = (
        BETA[0]
        + BETA[1] * pi_ccpi
        + BETA[2] * pi_fcpi
        + BETA[3] * pi_gas
        + eps
    )

    # Levels: percent changes apply from the second month onward.
    def levels(pi, p0):
        out = [p0]
        for i in range(1, n):
            out.append(out[-1] * (1.0 + pi[i] / 100.0))
        return np.array(out)

    series = {
        "cpi": levels(pi_cpi, 230.0),
        "ccpi": levels(pi_ccpi, 235.0),
        "fcpi": levels(pi_fcpi, 240.0),
        "gas": levels(pi_gas, 250.0),
    }

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, values in series.items():
        lines = ["date,value"]
        for ym, value in zip(months, values):
            lines.append(f"{month_str(ym)},{value:.4f}")
        (OUT_DIR / f"{name}.csv").write_text("\n".join(lines) + "\n")

    # Articles: monthly sentiment tracks CPI inflation, article scores
    # scatter around the monthly mean, days spread across the month
    # with at least two early-month articles so a mid-month cutoff
    # leaves no gap months.
    mean_sentiment = np.clip(0.25 + 0.9 * (pi_cpi - 0.16), -0.8, 0.8)
    prob_lines = ["id,date,p_down,p_neutral,p_up"]
    serial = 0
    cutoff_means = []
    all_means = []
    for i, ym in enumerate(months):
        count = int(6 + rng.integers(0, 7))
        days = rng.integers(1, 29, size=count)
        days[0], days[1] = 3, 11
        days = np.sort(days)
        kept = []
        month_scores = []
        for day in days:
            serial += 1
            s = float(np.clip(mean_sentiment[i] + rng.normal(0.0, 0.22), -0.9, 0.9))
            neutral = float(rng.uniform(0.2, 0.45))
            s = float(np.clip(s, -(1.0 - neutral) + 0.02, (1.0 - neutral) - 0.02))
            p_up = round(((1.0 - neutral) + s) / 2.0, 6)
            p_down = round(((1.0 - neutral) - s) / 2.0, 6)
            p_neutral = round(1.0 - p_up - p_down, 6)
            date = f"{month_str(ym)}-{day:02d}"
            prob_lines.append(
                f"a{serial:04d},{date},{p_down:.6f},{p_neutral:.6f},{p_up:.6f}"
            )
            month_scores.append(p_up - p_down)
            if day <= 15:
                kept.append(p_up - p_down)
        cutoff_means.append(np.mean(kept))
        all_means.append(np.mean(month_scores))

    # The cumulative index must stay safely positive (with and without
    # the mid-month cutoff) or the ratio transform is undefined.
    cumulative = np.cumsum(cutoff_means)
    cumulative_all = np.cumsum(all_means)
    if min(cumulative.min(), cumulative_all.min()) <= 0.3:
        return False
    (OUT_DIR / "news_probs.csv").write_text("\n".join(prob_lines) + "\n")

    headlines = [
        ("t001", "2021-03-02", "Inflation expectations surge as recovery gathers pace"),
        ("t002", "2021-03-09", "Gasoline prices jump for a third straight week"),
        ("t003", "2021-03-15", "Food prices climb as supply chains strain"),
        ("t004", "2021-03-22", "Consumer price index posts its largest rise in a decade"),
        ("t005", "2021-04-05", "Core CPI holds steady while headline inflation accelerates"),
        ("t006", "2021-04-12", "Central bank sees transitory inflation, markets disagree"),
        ("t007", "2021-04-19", "Used-car market overheats; CPI components spike"),
        ("t008", "2021-05-03", "Deflation fears fade as demand rebounds"),
        ("t009", "2021-05-10", "Rent growth slows even as CPI stays hot"),
        ("t010", "2021-05-17", "Gasoline prices ease after pipeline reopens"),
        ("t011", "2021-06-01", "Grocery bills fall slightly; food prices cool at last"),
        ("t012", "2021-06-08", "Inflation cools as energy costs decline"),
        ("t013", "2021-06-15", "CPI report lands below forecasts, bonds rally"),
        ("t014", "2021-06-22", "Quarterly earnings beat expectations at major retailers"),
        ("t015", "2021-07-06", "Housing starts dip on labor shortages"),
        ("t016", "2021-07-13", "Inflation hits wallets: consumer price index rises again"),
        ("t017", "2021-07-20", "Fuel surcharge lifts shipping costs; gasoline prices soar"),
        ("t018", "2021-08-03", "Core CPI falls for the first time this year"),
        ("t019", "2021-08-10", "Tech stocks slide on chip supply woes"),
        ("t020", "2021-08-17", "Deflation risk returns as spending slows"),
    ]
    text_lines = ["id,date,text"]
    for tid, date, text in headlines:
        quoted = '"' + text.replace('"', '""') + '"'
        text_lines.append(f"{tid},{date},{quoted}")
    (OUT_DIR / "news_text.csv").write_text("\n".join(text_lines) + "\n")

    config = """\
# Bundled demo configuration. Paths are relative to this file.
cpi = cpi.csv
ccpi = ccpi.csv
fcpi = fcpi.csv
gas = gas.csv
news_probs = news_probs.csv
news_text = news_text.csv

# sentiment scoring
score = polarity
label_encoding = signed
baseline_gain = 1.0
baseline_cap = 8

# index construction: monthly changes, mid-month information set
window = 1
day_cutoff = 15
news_pi_mode = pct-change

# model windows (5 training years, 4 evaluation years)
train_start = 2015-01
train_end = 2019-12
eval_start = 2020-01
eval_end = 2023-12
scheme = fixed
specs = fed, fed+news

# evaluation
gw_variant = unconditional
truncation_lag = 0
rmse_unit = fraction

out = out
seed = 0
"""
    (OUT_DIR / "toy.cfg").write_text(config)

    print(f"wrote toy data to {OUT_DIR}")
    print(f"  months: {month_str(months[0])}..{month_str(months[-1])} ({n})")
    print(f"  articles: {serial}")
    print(f"  index min/max: {cumulative.min():.3f}/{cumulative.max():.3f}")
    print(f"  pi_cpi mean/sd: {pi_cpi.mean():.3f}/{pi_cpi.std():.3f}")
    return True


if __name__ == "__main__":
    main()
