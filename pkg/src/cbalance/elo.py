"""Elo win probabilities and rating updates.

Ratings are on the usual 400-point logistic scale: a 400-point gap means the
stronger side is ten times as likely to win as to lose.
"""

import math

from cbalance.errors import DomainError

K_FACTOR = 20
SCALE = 400.0

OUTCOMES = (0.0, 0.5, 1.0)


def _check_rating(value, name):
    try:
        ok = math.isfinite(value)
    except TypeError:
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}") from None
    if not ok:
        raise DomainError(f"{name} must be finite, got {value!r}")


def win_probability(r_i: float, r_j: float) -> float:
    """Probability that a team rated ``r_i`` beats a team rated ``r_j``.

    >>> win_probability(1500, 1500)
    0.5
    """
    _check_rating(r_i, "r_i")
    _check_rating(r_j, "r_j")
    diff = r_i - r_j
    if diff == 0:
        return 0.5
    # Keep the power <= 1 so huge gaps cannot overflow.
    if diff > 0:
        return 1.0 / (1.0 + 10.0 ** (-diff / SCALE))
    p = 10.0 ** (diff / SCALE)
    return p / (1.0 + p)


def update(r_i: float, r_j: float, q: float) -> tuple[float, float]:
    """Rating changes ``(delta_i, delta_j)`` after one game.

    ``q`` is the first team's score: 1 win, 0.5 draw, 0 loss.
    """
    if q not in OUTCOMES:
        raise DomainError(f"outcome must be one of {OUTCOMES}, got {q!r}")
    delta = K_FACTOR * (q - win_probability(r_i, r_j))
    return delta, -delta
