"""Linear trend fits for seasonal index series, with a two-sided t-test on the slope."""

import math
from dataclasses import dataclass

from cbalance.errors import DegenerateFitError, DomainError

_CF_TOL = 1e-12
_CF_MAX_ITER = 500
_TINY = 1e-300


@dataclass(frozen=True)
class IndexSeries:
    """Seasonal values of one measure, sorted by season."""

    measure: str
    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        pts = tuple(sorted((int(s), float(v)) for s, v in self.points))
        seasons = [s for s, _ in pts]
        if len(set(seasons)) != len(seasons):
            raise DomainError(f"{self.measure}: duplicate seasons in series")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_mapping(cls, measure, values):
        return cls(measure, tuple(values.items()))

    def between(self, from_year=None, to_year=None) -> "IndexSeries":
        """Inclusive on both ends."""
        lo = -math.inf if from_year is None else from_year
        hi = math.inf if to_year is None else to_year
        return IndexSeries(self.measure, tuple((s, v) for s, v in self.points if lo <= s <= hi))

    @property
    def seasons(self):
        return [s for s, _ in self.points]

    @property
    def values(self):
        return [v for _, v in self.points]


@dataclass(frozen=True)
class TrendFit:
    intercept: float
    slope: float
    r_squared: float
    t_stat: float
    p_value: float
    n: int
    slope_se: float


def _beta_cf(a, b, x):
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = _TINY if abs(d) < _TINY else d
        c = 1.0 + aa / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = _TINY if abs(d) < _TINY else d
        c = 1.0 + aa / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc_regularized(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise DomainError(f"beta parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # The fraction converges fast only on this side of the mean; use symmetry otherwise.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: int) -> float:
    """Two-sided tail probability P(|T| >= |t|) for Student's t with ``df`` degrees of freedom.

    >>> student_t_sf(0.0, 5)
    1.0
    >>> round(student_t_sf(1.0, 1), 12)
    0.5
    """
    if isinstance(df, bool) or int(df) != df or df < 1:
        raise DomainError(f"degrees of freedom must be a positive integer, got {df!r}")
    if math.isnan(t):
        raise DomainError("t is NaN")
    if math.isinf(t):
        return 0.0
    if t == 0:
        return 1.0
    df = float(df)
    return betainc_regularized(df / 2.0, 0.5, df / (df + t * t))


def fit_trend(series, from_year=None, to_year=None) -> TrendFit:
    """OLS fit of ``value = intercept + slope * season`` over an inclusive season range.

    ``series`` is an :class:`IndexSeries`, a ``{season: value}`` mapping, or
    ``(season, value)`` pairs. The regressor is the calendar year itself.
    """
    if not isinstance(series, IndexSeries):
        items = series.items() if hasattr(series, "items") else series
        series = IndexSeries("series", tuple(items))
    series = series.between(from_year, to_year)
    xs, ys = series.seasons, series.values
    n = len(xs)
    if n < 3:
        raise DomainError(f"need at least 3 seasons to fit a trend, got {n}")

    x_mean = math.fsum(xs) / n
    y_mean = math.fsum(ys) / n
    sxx = math.fsum((x - x_mean) ** 2 for x in xs)
    sxy = math.fsum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    sst = math.fsum((y - y_mean) ** 2 for y in ys)
    if sst == 0:
        raise DegenerateFitError("series is constant; R² and the slope test are undefined")

    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    ssr = math.fsum((y - intercept - slope * x) ** 2 for x, y in zip(xs, ys))
    # SSR via residuals can exceed SST by rounding on a perfect fit.
    r_squared = min(max(1.0 - ssr / sst, 0.0), 1.0)
    dof = n - 2
    slope_se = math.sqrt(ssr / dof / sxx)
    if slope_se == 0:
        t_stat = math.copysign(math.inf, slope)
    else:
        t_stat = slope / slope_se
    return TrendFit(intercept, slope, r_squared, t_stat, student_t_sf(t_stat, dof), n, slope_se)
