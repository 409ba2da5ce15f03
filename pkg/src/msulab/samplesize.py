"""Sample-size arithmetic: joint value spaces, the 10x rule, and the
chi-squared machinery that pins down when an under-covered sample becomes
statistically implausible.

A sample is "totally representative" when every possible joint value
combination appears at least once. The canonical extreme sample models the
mildest failure of that goal: exactly one empty cell, everything else as
balanced as the row count allows. Scanning the goodness-of-fit statistic of
that construction over m gives the smallest sample size m* at which such a
gap is rejected at level alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from scipy.optimize import brentq
from scipy.special import gammaincc

from .errors import InvalidInputError, ScanLimitError

# Ascending m scans stop here; hitting the cap is an error, not a hang.
SCAN_LIMIT = 10**7


@dataclass(frozen=True)
class CardinalityProfile:
    """Declared cardinalities of a set of attributes plus the class."""

    attribute_cards: tuple[int, ...]
    class_card: int

    def __post_init__(self) -> None:
        cards = tuple(int(c) for c in self.attribute_cards)
        if any(c < 1 for c in cards) or self.class_card < 1:
            raise InvalidInputError("cardinalities must be positive")
        object.__setattr__(self, "attribute_cards", cards)

    @property
    def has_constant_variables(self) -> bool:
        """True when some variable can take a single value only.

        Such profiles are allowed but the measures over them are degenerate,
        so callers may want to warn.
        """
        return self.class_card < 2 or any(c < 2 for c in self.attribute_cards)


def multivariate_cardinality(profile: CardinalityProfile) -> int:
    """Number of possible joint value combinations, class included."""
    return profile.class_card * math.prod(profile.attribute_cards)


def heuristic_sample_size(profile: CardinalityProfile, factor: float = 10.0) -> int:
    """factor x multivariate cardinality, rounded up."""
    if factor <= 0:
        raise InvalidInputError(f"factor must be positive, got {factor}")
    space = multivariate_cardinality(profile)
    if float(factor).is_integer():
        return int(factor) * space
    return math.ceil(factor * space)


def chi2_critical(alpha: float, df: int) -> float:
    """Upper-tail chi-squared critical value.

    Solves survival(x) = alpha where survival is the regularized upper
    incomplete gamma Q(df/2, x/2), bracketing the root and refining it with
    Brent's method to well under 1e-6 absolute error.
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidInputError(f"alpha must lie in (0, 1), got {alpha}")
    df = int(df)
    if df < 1:
        raise InvalidInputError(f"degrees of freedom must be at least 1, got {df}")

    def upper_tail(x: float) -> float:
        return gammaincc(df / 2.0, x / 2.0) - alpha

    hi = df + 10.0
    while upper_tail(hi) > 0.0:
        hi *= 2.0
    return float(brentq(upper_tail, 0.0, hi, xtol=1e-10, maxiter=200))


def chi2_statistic(observed: Sequence[int], probabilities: Sequence[float] | None = None) -> float:
    """Goodness-of-fit statistic sum (O - E)^2 / E against a multinomial null.

    Expected counts are m * p_i; the default null is equiprobable cells.
    """
    obs = [int(o) for o in observed]
    k = len(obs)
    if k < 2:
        raise InvalidInputError("need at least two cells")
    if any(o < 0 for o in obs):
        raise InvalidInputError("observed counts must be non-negative")
    m = sum(obs)
    if m == 0:
        raise InvalidInputError("observed counts must not all be zero")
    probs = _check_probabilities(probabilities, k)
    expected = [m / k] * k if probs is None else [m * p for p in probs]
    return math.fsum((o - e) ** 2 / e for o, e in zip(obs, expected))


def _check_probabilities(probabilities: Sequence[float] | None, k: int) -> list[float] | None:
    if probabilities is None:
        return None
    probs = [float(p) for p in probabilities]
    if len(probs) != k:
        raise InvalidInputError(f"expected {k} probabilities, got {len(probs)}")
    if any(p <= 0 for p in probs):
        raise InvalidInputError("cell probabilities must all be positive")
    if abs(math.fsum(probs) - 1.0) > 1e-9:
        raise InvalidInputError("cell probabilities must sum to 1")
    return probs


def extreme_sample(m: int, k: int, probabilities: Sequence[float] | None = None) -> list[int]:
    """Canonical under-covered sample: one empty cell, the rest balanced.

    Equiprobable cells (the default) spread m as evenly as possible over the
    first k-1 cells (m mod (k-1) of them get the extra unit) with the empty
    cell last. With explicit probabilities the empty cell is the least likely
    one, where a zero is most plausible, and m is apportioned over the other
    cells by largest remainder on the renormalized probabilities.
    """
    m, k = int(m), int(k)
    if k < 2:
        raise InvalidInputError(f"need at least two cells, got {k}")
    if m < k - 1:
        raise InvalidInputError(f"m={m} cannot fill {k - 1} cells with at least one item each")
    probs = _check_probabilities(probabilities, k)
    if probs is None:
        q, r = divmod(m, k - 1)
        return [q + 1] * r + [q] * (k - 1 - r) + [0]

    zero_cell = probs.index(min(probs))
    rest = [(i, p) for i, p in enumerate(probs) if i != zero_cell]
    scale = math.fsum(p for _, p in rest)
    quotas = [(i, m * p / scale) for i, p in rest]
    counts = {i: int(q) for i, q in quotas}
    shortfall = m - sum(counts.values())
    by_remainder = sorted(quotas, key=lambda iq: (-(iq[1] - int(iq[1])), iq[0]))
    for i, _ in by_remainder[:shortfall]:
        counts[i] += 1
    counts[zero_cell] = 0
    return [counts[i] for i in range(k)]


def extreme_sample_chi2(m: int, k: int, probabilities: Sequence[float] | None = None) -> float:
    """Goodness-of-fit statistic of the canonical extreme sample."""
    return chi2_statistic(extreme_sample(m, k, probabilities), probabilities)


def min_representative_m(
    k: int, alpha: float = 0.05, probabilities: Sequence[float] | None = None
) -> int:
    """Smallest m whose canonical extreme sample is rejected at level alpha.

    Ascending scan from m = k - 1; the empty cell's statistic term grows
    linearly in m so a crossing exists. Degrees of freedom are k - 1 (no
    parameters are estimated from the data).
    """
    k = int(k)
    if k < 2:
        raise InvalidInputError(f"need at least two cells, got {k}")
    critical = chi2_critical(alpha, k - 1)
    m = k - 1
    while extreme_sample_chi2(m, k, probabilities) <= critical:
        m += 1
        if m > SCAN_LIMIT:
            raise ScanLimitError(
                f"no extreme-sample rejection below m={SCAN_LIMIT} for k={k}, alpha={alpha}"
            )
    return m


@dataclass(frozen=True)
class RepresentativenessReport:
    """Joint-space size and the two sample-size recommendations for it."""

    multivariate_cardinality: int
    heuristic_m: int
    chi2_m_star: int
    alpha: float
    df: int
    critical_value: float

    def __post_init__(self) -> None:
        if self.chi2_m_star < self.multivariate_cardinality:
            raise InvalidInputError(
                f"m*={self.chi2_m_star} cannot cover a joint space of "
                f"{self.multivariate_cardinality} combinations"
            )


def representativeness_report(
    profile: CardinalityProfile, alpha: float = 0.05, factor: float = 10.0
) -> RepresentativenessReport:
    """Full recommendation for a profile: joint space, heuristic m, chi-squared m*."""
    space = multivariate_cardinality(profile)
    if space < 2:
        raise InvalidInputError("joint value space must have at least two combinations")
    return RepresentativenessReport(
        multivariate_cardinality=space,
        heuristic_m=heuristic_sample_size(profile, factor),
        chi2_m_star=min_representative_m(space, alpha),
        alpha=alpha,
        df=space - 1,
        critical_value=chi2_critical(alpha, space - 1),
    )
