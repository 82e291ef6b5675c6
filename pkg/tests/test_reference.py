import pytest

from cbalance.indices import MEASURES, season_indices
from cbalance.ingest import load_season
from cbalance.reference import all_reference_series, bundled_season_file, reference_series
from cbalance.stats import fit_trend
from conftest import SEASON_2023, real_cache
from test_acceptance import TABLE_3


def test_bundled_series_shape():
    series = all_reference_series()
    assert list(series) == list(MEASURES)
    for s in series.values():
        assert s.seasons == list(range(2003, 2024))
    assert reference_series("cb1a").points[0] == (2003, 0.283710492057469)
    assert reference_series("CB2A").points[-1] == (2023, 0.327010697669181)


def test_unknown_measure():
    with pytest.raises(ValueError):
        reference_series("hhi")


def test_ex_post_series_are_multiples_of_group_resolution():
    # Eight groups: tau means move in steps of 1/24, exempt-tau means in steps of 1/20.
    for m, step in (("cb1p", 24), ("cb3p", 24), ("cb2p", 20), ("cb4p", 20)):
        for _, v in reference_series(m).points:
            assert v * step == pytest.approx(round(v * step), abs=1e-9)


@pytest.mark.parametrize("key", list(TABLE_3))
def test_table_3_at_printed_precision(key):
    measure, lo, hi = key
    c, a, r2, p = TABLE_3[key]
    fit = fit_trend(reference_series(measure), lo, hi)
    # R² is printed with two decimals in this table.
    assert round(fit.r_squared, 2) == r2
    assert fit.intercept == pytest.approx(c, abs=5e-5)
    assert fit.slope == pytest.approx(a, abs=5e-6)
    assert fit.p_value == pytest.approx(p, abs=5e-6)


def test_bundled_season_file_lookup():
    assert bundled_season_file(2023) is not None
    assert bundled_season_file(1990) is None


@pytest.mark.skipif(real_cache() is None, reason="set CBALANCE_REAL_CACHE to a cache holding the real 2023-09-01 snapshot")
def test_2023_means_against_published_series():
    ds = load_season(SEASON_2023, real_cache(), network=False)
    means = season_indices(ds).as_dict()
    for m in MEASURES:
        published = dict(reference_series(m).points)[2023]
        assert means[m] == pytest.approx(published, abs=5e-4), m
