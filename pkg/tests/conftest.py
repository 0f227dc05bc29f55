import numpy as np
import pytest

from newscast import MonthKey, MonthlySeries


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)


def make_series(start: str, values, name="s", unit="index-level") -> MonthlySeries:
    """Contiguous series beginning at start (YYYY-MM)."""
    first = MonthKey.parse(start)
    return MonthlySeries(
        name, [(first.shift(i), v) for i, v in enumerate(values)], unit
    )


@pytest.fixture
def series_factory():
    return make_series
