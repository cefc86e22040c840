"""Level derivation for the twelve criteria.

Every function here converts structured assessor observations into an integer
level 1..5 (comparability alone may return None, meaning not applicable).
Thresholds are compared with exact fractions so boundary cases land on the
documented side of each half-open interval. Functions are pure and total over
their stated domains; out-of-domain input raises CriterionInputError.
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import isqrt
import math
from typing import Iterable, Mapping, Optional, Sequence, Union

from .kop import Kop, Suitability, SUITABILITY_RANK
from .rationals import frac


class CriterionInputError(ValueError):
    """Raised when observation inputs fall outside a criterion's domain."""


class CorrelationUndefined(CriterionInputError):
    """Raised for zero-variance rank vectors; a sentinel 0 would fake level 1."""


def _count(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CriterionInputError(f"{name} must be an integer count")
    if value < 0:
        raise CriterionInputError(f"{name} must be >= 0")
    return value


def _a_few(count: int, population: int) -> bool:
    # "a few" = strictly under 10 percent, but never less than one item
    return count >= 1 and (count == 1 or Fraction(count, population) < Fraction(1, 10))


# --- typedness -------------------------------------------------------------

def typedness_variable_score(
    per_channel: Sequence[Mapping[Kop, Suitability]], akops: Iterable[Kop]
) -> int:
    """Score one variable from per-channel suitability verdicts.

    For each applicable KOP the best verdict across the variable's channels
    counts; a single channel is just the one-element case.
    """
    akop_list = [Kop(k) for k in akops]
    if not akop_list:
        raise CriterionInputError("akops must be non-empty")
    if len(set(akop_list)) != len(akop_list):
        raise CriterionInputError("duplicate akops")
    channels = list(per_channel)
    if not channels:
        raise CriterionInputError("at least one channel required")
    best: dict[Kop, Suitability] = {}
    for akop in akop_list:
        verdicts = []
        for idx, chan in enumerate(channels):
            if akop not in chan:
                raise CriterionInputError(f"channel {idx} missing verdict for {akop.value}")
            verdicts.append(Suitability(chan[akop]))
        best[akop] = max(verdicts, key=SUITABILITY_RANK.__getitem__)
    values = set(best.values())
    if values == {Suitability.APPROPRIATE}:
        return 5
    if values == {Suitability.INAPPROPRIATE}:
        return 1
    if Suitability.INAPPROPRIATE in values:
        return 2
    if values == {Suitability.USABLE}:
        return 3
    return 4


# --- discernability --------------------------------------------------------

def pair_count(k: int) -> int:
    """Pairs to differentiate among k key values: k(k-1)/2."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise CriterionInputError("k must be an integer >= 1")
    return k * (k - 1) // 2


def discernability_score(
    pairs_easy: int, pairs_differentiable: int, pairs_not: int
) -> int:
    easy = _count(pairs_easy, "pairs_easy")
    diff = _count(pairs_differentiable, "pairs_differentiable")
    not_ = _count(pairs_not, "pairs_not")
    n = easy + diff + not_
    if n == 0:
        raise CriterionInputError("at least one pair required")
    u = Fraction(not_, n)
    if u >= Fraction(1, 4):
        return 1
    if not_ > 0:
        # remaining cases have (easy+diff)/n in (3/4, 1)
        return 2
    e = Fraction(easy, n)
    if e == 1:
        return 5
    if e >= Fraction(3, 4):
        return 4
    if e >= Fraction(1, 2):
        return 3
    # all pairs differentiable but under half at ease: no published row;
    # clamp to the adjacent level below (level 1 needs >= 25% not differentiable)
    return 2


def discernability_clamped(pairs_easy: int, pairs_differentiable: int, pairs_not: int) -> bool:
    """True when the fall-through clamp (u = 0, e < 1/2) decided the level."""
    n = pairs_easy + pairs_differentiable + pairs_not
    return n > 0 and pairs_not == 0 and Fraction(pairs_easy, n) < Fraction(1, 2)


# --- intuitiveness ---------------------------------------------------------

class DomainConvention(str, Enum):
    NO_DC = "noDC"
    CONSISTENT = "cnDC"
    INCONSISTENT = "inDC"


class MetaphorQuality(str, Enum):
    NO_AM = "noAM"
    APPROPRIATE = "apAM"
    ADEQUATE = "okAM"
    INAPPROPRIATE = "inAM"


_INTUITIVENESS_LEVELS: dict[tuple[DomainConvention, MetaphorQuality], int] = {
    (DomainConvention.CONSISTENT, MetaphorQuality.APPROPRIATE): 5,
    (DomainConvention.NO_DC, MetaphorQuality.APPROPRIATE): 5,
    (DomainConvention.CONSISTENT, MetaphorQuality.NO_AM): 4,
    (DomainConvention.CONSISTENT, MetaphorQuality.ADEQUATE): 4,
    (DomainConvention.NO_DC, MetaphorQuality.ADEQUATE): 4,
    (DomainConvention.NO_DC, MetaphorQuality.NO_AM): 3,
    (DomainConvention.CONSISTENT, MetaphorQuality.INAPPROPRIATE): 2,
    (DomainConvention.INCONSISTENT, MetaphorQuality.ADEQUATE): 2,
    (DomainConvention.INCONSISTENT, MetaphorQuality.APPROPRIATE): 2,
    (DomainConvention.NO_DC, MetaphorQuality.INAPPROPRIATE): 1,
    (DomainConvention.INCONSISTENT, MetaphorQuality.NO_AM): 1,
    (DomainConvention.INCONSISTENT, MetaphorQuality.INAPPROPRIATE): 1,
}


def intuitiveness_score(dc: DomainConvention, am: MetaphorQuality) -> int:
    return _INTUITIVENESS_LEVELS[(DomainConvention(dc), MetaphorQuality(am))]


# --- invariance: geometry / colorimetry ------------------------------------

GEOMETRY_SCALES: tuple[Fraction, ...] = (
    Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5)
)

COLORIMETRY_MAGNITUDES: tuple[Fraction, ...] = (
    Fraction(51, 2), Fraction(51), Fraction(153, 2), Fraction(102)
)


def _normalize_flags(
    invariant_at: Mapping, expected: tuple[Fraction, ...], what: str
) -> dict[Fraction, bool]:
    flags: dict[Fraction, bool] = {}
    for key, value in invariant_at.items():
        try:
            key_f = frac(key)
        except (ValueError, TypeError) as exc:
            raise CriterionInputError(f"{what} key {key!r}: {exc}") from exc
        if key_f not in expected:
            raise CriterionInputError(f"unexpected {what} key {key!r}")
        if not isinstance(value, bool):
            raise CriterionInputError(f"{what}[{key!r}] must be a boolean")
        if key_f in flags:
            raise CriterionInputError(f"duplicate {what} key {key!r}")
        flags[key_f] = value
    missing = [str(k) for k in expected if k not in flags]
    if missing:
        raise CriterionInputError(f"missing {what} keys: {', '.join(missing)}")
    return flags


def geometry_score(invariant_at: Mapping) -> int:
    """Flags say whether discernability survives each downscale factor."""
    flags = _normalize_flags(invariant_at, GEOMETRY_SCALES, "scale")
    for smaller, larger in zip(GEOMETRY_SCALES, GEOMETRY_SCALES[1:]):
        # surviving a harsher (smaller) scale implies surviving milder ones
        if flags[smaller] and not flags[larger]:
            raise CriterionInputError(
                f"inconsistent invariance observations: invariant at {smaller} "
                f"but variant at {larger}"
            )
    for level, scale in zip((5, 4, 3, 2), GEOMETRY_SCALES):
        if flags[scale]:
            return level
    return 1


def colorimetry_score(invariant_at: Mapping) -> int:
    """Flags say whether discernability survives every sign combination at a
    kappa magnitude (contrast and brightness shifted together)."""
    flags = _normalize_flags(invariant_at, COLORIMETRY_MAGNITUDES, "magnitude")
    for smaller, larger in zip(COLORIMETRY_MAGNITUDES, COLORIMETRY_MAGNITUDES[1:]):
        # surviving a harsher (larger) magnitude implies surviving milder ones
        if flags[larger] and not flags[smaller]:
            raise CriterionInputError(
                f"inconsistent invariance observations: invariant at {larger} "
                f"but variant at {smaller}"
            )
    for level, magnitude in zip((5, 4, 3, 2), reversed(COLORIMETRY_MAGNITUDES)):
        if flags[magnitude]:
            return level
    return 1


# --- composition: separability ----------------------------------------------

class SeparabilitySeverity(str, Enum):
    MAJOR = "major"
    MEDIUM = "medium"
    MINOR = "minor"
    NONE = "none"


SEVERITY_VALUES: dict[SeparabilitySeverity, Fraction] = {
    SeparabilitySeverity.MAJOR: Fraction(1),
    SeparabilitySeverity.MEDIUM: Fraction(1, 10),
    SeparabilitySeverity.MINOR: Fraction(1, 100),
    SeparabilitySeverity.NONE: Fraction(0),
}

_VALUE_TO_SEVERITY = {v: k for k, v in SEVERITY_VALUES.items()}


def severity_value(severity: Union[SeparabilitySeverity, str, int, float, Fraction]) -> Fraction:
    """Accept a severity token or its numeric value; return the exact value."""
    if isinstance(severity, SeparabilitySeverity):
        return SEVERITY_VALUES[severity]
    if isinstance(severity, str):
        try:
            return SEVERITY_VALUES[SeparabilitySeverity(severity)]
        except ValueError:
            pass  # fall through to numeric parsing ("0.1" etc.)
    try:
        value = frac(severity)
    except (ValueError, TypeError) as exc:
        raise CriterionInputError(f"unknown severity {severity!r}") from exc
    if value not in _VALUE_TO_SEVERITY:
        raise CriterionInputError(f"severity value must be one of 1, 0.1, 0.01, 0; got {severity!r}")
    return value


def separability_channel_score(pairwise: Sequence) -> Fraction:
    """Worst interference a channel receives; an empty list means none."""
    values = [severity_value(s) for s in pairwise]
    return max(values, default=Fraction(0))


def separability_exact(channel_scores: Sequence) -> tuple[Fraction, Fraction]:
    """(max_int, avg_int) over per-channel interference scores."""
    values = [severity_value(s) for s in channel_scores]
    if not values:
        raise CriterionInputError("at least one channel score required")
    return max(values), sum(values, Fraction(0)) / len(values)


def separability_estimate(channel_scores: Sequence) -> Fraction:
    """Counting-based mental estimate of avg_int.

    Count majors (K_a), mediums (K_b), minors (K_c); the dominant class sets
    the tally T and the next class adds a correction per block of ten beyond
    the first five. Three pathways depending on which class is populated.
    """
    values = [severity_value(s) for s in channel_scores]
    if not values:
        raise CriterionInputError("at least one channel score required")
    n = len(values)
    k_a = values.count(Fraction(1))
    k_b = values.count(Fraction(1, 10))
    k_c = values.count(Fraction(1, 100))
    if k_a > 0:
        t = Fraction(k_a)
        if k_b >= 5:
            t += 1 + (k_b - 5) // 10
    elif k_b > 0:
        t = Fraction(1, 10) * k_b
        if k_c >= 5:
            t += Fraction(1, 10) * (1 + (k_c - 5) // 10)
    else:
        t = Fraction(1, 100) * k_c
    return t / n


def separability_score(max_int, avg_int) -> int:
    max_v = frac(max_int)
    avg_v = frac(avg_int)
    if not (0 <= max_v <= 1) or not (0 <= avg_v <= 1):
        raise CriterionInputError("interference scores live in [0, 1]")
    if max_v < Fraction(1, 10):
        return 5
    if max_v < 1:
        return 4
    if avg_v < Fraction(1, 8):
        return 3
    if avg_v < Fraction(1, 4):
        return 2
    return 1


# --- composition: comparability ---------------------------------------------

def comparability_pair_count(group_sizes: Sequence[int]) -> int:
    """Pairs across the comparable groups (the non-comparable pool excluded)."""
    total = 0
    for i, size in enumerate(group_sizes):
        size = _count(size, f"group_sizes[{i}]")
        total += size * (size - 1) // 2
    return total


def comparability_score(
    major: int, medium: int, minor: int, pair_count_m: int
) -> Optional[int]:
    """None when there are no pairs to compare (criterion not applicable)."""
    major = _count(major, "major")
    medium = _count(medium, "medium")
    minor = _count(minor, "minor")
    m = _count(pair_count_m, "pair_count_m")
    if major + medium + minor > m:
        raise CriterionInputError("obstacle counts exceed the number of pairs")
    if m == 0:
        return None
    if major >= 1:
        return 1
    if medium > 1:
        return 2
    if medium == 1:
        return 3
    if minor == 0:
        return 5
    if _a_few(minor, m):
        return 4
    # minor beyond "a few" with no mediums: unpublished combination, clamp to
    # the level where that many minors first appear
    return 3


def comparability_clamped(major: int, medium: int, minor: int, pair_count_m: int) -> bool:
    return (
        pair_count_m > 0
        and major == 0
        and medium == 0
        and minor > 0
        and not _a_few(minor, pair_count_m)
    )


# --- attention: importance ---------------------------------------------------

def _finish_pearson(a: Fraction, b_iota: Fraction, b_alpha: Fraction):
    if b_iota == 0 or b_alpha == 0:
        raise CorrelationUndefined("rank vector has zero variance; correlation undefined")
    if a == 0:
        return Fraction(0)
    b_prod = b_iota * b_alpha
    root_num, root_den = isqrt(b_prod.numerator), isqrt(b_prod.denominator)
    if root_num * root_num == b_prod.numerator and root_den * root_den == b_prod.denominator:
        return a / Fraction(root_num, root_den)
    magnitude = math.sqrt(float(a * a / b_prod))
    return magnitude if a > 0 else -magnitude


def importance_pearson(iota: Sequence, alpha: Sequence):
    """Pearson correlation of importance vs attention ranks (ties allowed).

    Returns an exact Fraction whenever the square root is rational (all the
    diagonal, anti-diagonal, and zero cases), otherwise a float.
    """
    xs = [frac(v) for v in iota]
    ys = [frac(v) for v in alpha]
    if len(xs) != len(ys):
        raise CriterionInputError("rank vectors must have equal length")
    if len(xs) < 2:
        raise CriterionInputError("need at least two ranked variables")
    n = len(xs)
    mean_x = sum(xs, Fraction(0)) / n
    mean_y = sum(ys, Fraction(0)) / n
    a = sum(((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)), Fraction(0))
    b_x = sum(((x - mean_x) ** 2 for x in xs), Fraction(0))
    b_y = sum(((y - mean_y) ** 2 for y in ys), Fraction(0))
    return _finish_pearson(a, b_x, b_y)


def importance_pearson_boxes(counts: Sequence[Sequence[int]]):
    """Correlation from k x k box counts; counts[a][i] holds the number of
    variables at attention level a+1 and importance level i+1.

    The 2 x 2 case uses the closed-form mean/moment expressions; larger boxes
    expand into rank vectors and delegate. Both routes share exact arithmetic,
    so they agree exactly where they overlap.
    """
    k = len(counts)
    if k < 2:
        raise CriterionInputError("need at least 2 x 2 boxes")
    grid: list[list[int]] = []
    for row in counts:
        cells = [_count(c, "box count") for c in row]
        if len(cells) != k:
            raise CriterionInputError("box counts must form a square matrix")
        grid.append(cells)
    n = sum(sum(row) for row in grid)
    if n < 2:
        raise CriterionInputError("need at least two ranked variables")
    if k == 2:
        n11, n12 = grid[0][0], grid[0][1]
        n21, n22 = grid[1][0], grid[1][1]
        ibar = Fraction(n11 + n21 + 2 * n12 + 2 * n22, n)
        abar = Fraction(n11 + n12 + 2 * n21 + 2 * n22, n)
        a = (
            n11 * (1 - ibar) * (1 - abar)
            + n12 * (2 - ibar) * (1 - abar)
            + n21 * (1 - ibar) * (2 - abar)
            + n22 * (2 - ibar) * (2 - abar)
        )
        b_iota = (n11 + n21) * (1 - ibar) ** 2 + (n12 + n22) * (2 - ibar) ** 2
        b_alpha = (n11 + n12) * (1 - abar) ** 2 + (n21 + n22) * (2 - abar) ** 2
        return _finish_pearson(a, b_iota, b_alpha)
    iota: list[int] = []
    alpha: list[int] = []
    for a_idx, row in enumerate(grid):
        for i_idx, count in enumerate(row):
            iota.extend([i_idx + 1] * count)
            alpha.extend([a_idx + 1] * count)
    return importance_pearson(iota, alpha)


def importance_score(c) -> Optional[int]:
    """Map a correlation to a level; None passes through (no ranking exists)."""
    if c is None:
        return None
    value = c if isinstance(c, (int, float, Fraction)) else frac(c)
    if isinstance(value, (int, float)):
        value = frac(value)
    if not (-1 <= value <= 1):
        raise CriterionInputError("correlation must lie in [-1, 1]")
    if value > Fraction(19, 20):
        return 5
    if value > Fraction(17, 20):
        return 4
    if value > Fraction(1, 2):
        return 3
    if value > 0:
        return 2
    return 1


# --- attention: balance -------------------------------------------------------

def balance_score(weak_count: int) -> int:
    weak = _count(weak_count, "weak_count")
    if weak == 0:
        return 5
    if weak == 1:
        return 4
    if weak == 2:
        return 3
    if weak == 3:
        return 2
    return 1


# --- searchability -------------------------------------------------------------

def searchability_score(high: int, medium: int, low: int) -> int:
    high = _count(high, "high")
    medium = _count(medium, "medium")
    low = _count(low, "low")
    n = high + medium + low
    if n == 0:
        raise CriterionInputError("at least one variable required")
    if high > 0:
        return 2 if _a_few(high, n) else 1
    if medium == 0:
        return 5
    if _a_few(medium, n):
        return 4
    if Fraction(medium, n) < Fraction(1, 2):
        return 3
    # half or more mediums is below every published row; clamp downward
    return 2


def searchability_clamped(high: int, medium: int, low: int) -> bool:
    n = high + medium + low
    return (
        n > 0
        and high == 0
        and medium > 0
        and not _a_few(medium, n)
        and Fraction(medium, n) >= Fraction(1, 2)
    )


# --- learnability ---------------------------------------------------------------

class LearningMode(str, Enum):
    SELF_LEARNING = "self_learning"
    SELF_LEARNING_QA = "self_learning_qa"
    TUTORIAL = "tutorial"


class RepeatedEffort(str, Enum):
    EFFORTLESS = "effortless"
    MINOR = "minor"
    NOTICEABLE = "noticeable"
    SERIOUS = "serious"


_MODE_LEVEL = {
    LearningMode.SELF_LEARNING: 5,
    LearningMode.SELF_LEARNING_QA: 4,
    LearningMode.TUTORIAL: 3,
}

_EFFORT_LEVEL = {
    RepeatedEffort.EFFORTLESS: 5,
    RepeatedEffort.MINOR: 3,
    RepeatedEffort.NOTICEABLE: 2,
    RepeatedEffort.SERIOUS: 1,
}


def learnability_time_level(learning_time_hours) -> int:
    t = frac(learning_time_hours)
    if t < 0:
        raise CriterionInputError("learning time cannot be negative")
    if t < Fraction(1, 2):
        return 5
    if t < 1:
        return 4
    if t < Fraction(3, 2):
        return 3
    if t < 2:
        return 2
    return 1


def learnability_score(
    learning_time_hours, learning_mode: LearningMode, repeated_effort: RepeatedEffort
) -> int:
    """Min over the three sub-dimensions: time band, mode, repeat effort."""
    return min(
        learnability_time_level(learning_time_hours),
        _MODE_LEVEL[LearningMode(learning_mode)],
        _EFFORT_LEVEL[RepeatedEffort(repeated_effort)],
    )


# --- memorability ------------------------------------------------------------------

def _recall_pct(value, name: str) -> Fraction:
    pct = frac(value)
    if not (0 <= pct <= 100):
        raise CriterionInputError(f"{name} must lie in [0, 100]")
    return pct


def memorability_score(pct_1h, pct_24h) -> int:
    """Min over the two memory horizons (1 hour and 24 hours after learning)."""
    one_hour = _recall_pct(pct_1h, "pct_1h")
    day = _recall_pct(pct_24h, "pct_24h")
    if day > one_hour:
        raise CriterionInputError("24h recall cannot exceed 1h recall")
    if one_hour == 100:
        level_1h = 5
    elif one_hour >= 90:
        level_1h = 4
    elif one_hour >= 75:
        level_1h = 3
    elif one_hour >= 50:
        level_1h = 2
    else:
        level_1h = 1
    if day == 100:
        level_24h = 5
    elif day >= 75:
        level_24h = 4
    elif day >= 50:
        level_24h = 3
    elif day >= 25:
        level_24h = 2
    else:
        level_24h = 1
    return min(level_1h, level_24h)
