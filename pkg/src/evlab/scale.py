"""Measurement-scale audits for transformations and evidence statistics.

Scale types (ordinal, interval, ratio) are distinguished by which
transformations leave their meaning intact: anything order-preserving,
only order-preserving linear maps, or only multiplication by a positive
constant. The auditors here classify a concrete transformation against
those families, quantify how badly a non-linear map stretches the unit
("rubber scale" distortion), and measure how far different evidence
statistics agree about the rank-ordering of data sets.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .evidence import (
    BinomialOutcome,
    CompositeHypothesis,
    EvidenceValue,
    Hypothesis,
    PointHypothesis,
    compute_evidence,
    uniform_prior,
)
from .numerics import linspace


class DegenerateGridError(ValueError):
    """A sample grid too short or not strictly increasing."""


class ScaleType(Enum):
    ORDINAL = "ordinal"
    INTERVAL = "interval"
    RATIO = "ratio"
    # Ratio-scale magnitude with a sign convention carrying direction.
    SIGNED_RATIO = "signed-ratio"


@dataclass(frozen=True)
class TransformationAudit:
    """Classification of a scalar transformation against the permissible families.

    order_preserving: strictly increasing on the probed grid.
    affine: an order-preserving linear map x -> s*x + c with s > 0
        (vanishing second differences on a uniform grid).
    positive_scalar: affine with zero intercept.
    unit_distortion: max/min ratio of first differences at the grid spacing;
        1 for affine maps, > 1 when the unit stretches across the range.
    """

    sample_grid: tuple[float, ...]
    order_preserving: bool
    affine: bool
    positive_scalar: bool
    unit_distortion: float


def classify_transformation(
    f: Callable[[float], float],
    grid: Sequence[float],
    tol: float = 1e-9,
) -> TransformationAudit:
    """Audit f on the range spanned by grid.

    Order preservation is checked on the grid as given; the affine and
    positive-scalar checks need equal spacing, so they are evaluated on a
    uniform grid over the same range with the same number of points.
    Tolerances are relative to the range of the transformed values.
    """
    pts = [float(x) for x in grid]
    if len(pts) < 4:
        raise DegenerateGridError(f"grid needs at least 4 points, got {len(pts)}")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise DegenerateGridError("grid must be strictly increasing")

    given_vals = [f(x) for x in pts]
    order_preserving = all(b > a for a, b in zip(given_vals, given_vals[1:]))

    uniform = linspace(pts[0], pts[-1], len(pts))
    vals = [f(x) for x in uniform]
    value_range = max(vals) - min(vals)
    scale = value_range if value_range > 0.0 else 1.0

    second_diffs = [vals[i + 2] - 2.0 * vals[i + 1] + vals[i] for i in range(len(vals) - 2)]
    step = uniform[1] - uniform[0]
    slope = (vals[1] - vals[0]) / step
    affine = max(abs(d) for d in second_diffs) <= tol * scale and slope > 0.0

    intercept = vals[0] - slope * uniform[0]
    positive_scalar = affine and abs(intercept) <= tol * scale

    first_diffs = [b - a for a, b in zip(vals, vals[1:])]
    min_diff = min(first_diffs)
    max_diff = max(first_diffs)
    distortion = max_diff / min_diff if min_diff > 0.0 else math.inf

    return TransformationAudit(
        sample_grid=tuple(pts),
        order_preserving=order_preserving,
        affine=affine,
        positive_scalar=positive_scalar,
        unit_distortion=distortion,
    )


def unit_distortion(
    f: Callable[[float], float],
    interval: tuple[float, float],
    unit: float,
    samples: int = 2048,
) -> float:
    """How much the image of a fixed unit step varies across an interval.

    Returns max_x [f(x+unit) - f(x)] / min_x [f(x+unit) - f(x)] with x
    sampled densely on [lo, hi-unit]. Affine maps give 1 (to rounding);
    larger values quantify rubber-scale stretching, e.g. the natural log
    maps a unit step near 50 to about twice the step near 100.
    """
    lo, hi = interval
    if unit <= 0.0:
        raise ValueError(f"unit must be positive, got {unit}")
    if hi - lo < 2.0 * unit:
        raise ValueError(
            f"interval ({lo}, {hi}) must span at least two units of {unit}"
        )
    steps = [f(x + unit) - f(x) for x in linspace(lo, hi - unit, samples)]
    min_step = min(steps)
    max_step = max(steps)
    if min_step <= 0.0:
        warnings.warn(
            "transformation is not increasing everywhere on the interval",
            stacklevel=2,
        )
        return math.inf
    return max_step / min_step


def permissible(scale: ScaleType, audit: TransformationAudit) -> bool:
    """Whether an audited transformation preserves meaning on the given scale type."""
    if scale is ScaleType.ORDINAL:
        return audit.order_preserving
    if scale is ScaleType.INTERVAL:
        return audit.affine
    # Ratio and signed-ratio magnitudes admit only positive rescaling; the
    # sign convention of a signed-ratio scale lives outside the magnitude map.
    return audit.positive_scalar


@dataclass(frozen=True)
class DiscordantPair:
    """Two outcomes whose rank order flips between two statistics."""

    outcome_a: BinomialOutcome
    outcome_b: BinomialOutcome
    kind_x: str
    kind_y: str
    x_values: tuple[float, float]
    y_values: tuple[float, float]


@dataclass(frozen=True)
class AgreementConfig:
    """Hypothesis setup under which every statistic kind is computed."""

    null: PointHypothesis = field(default_factory=lambda: PointHypothesis(0.5))
    alternative: CompositeHypothesis = field(default_factory=uniform_prior)
    slr_alternative: PointHypothesis = field(default_factory=lambda: PointHypothesis(0.25))

    def alternative_for(self, kind: str) -> Hypothesis | None:
        if kind in ("slr", "logslr"):
            return self.slr_alternative
        if kind in ("bf", "logbf", "abslogbf"):
            return self.alternative
        return None


@dataclass(frozen=True)
class AgreementReport:
    """Kendall tau-b between statistics over a data grid, with all discordant pairs."""

    dataset_grid: tuple[BinomialOutcome, ...]
    statistic_kinds: tuple[str, ...]
    kendall_tau: dict[tuple[str, str], float]
    discordant_pairs: tuple[DiscordantPair, ...]
    excluded: tuple[tuple[BinomialOutcome, str], ...] = ()


def outcome_grid(max_n: int, min_n: int = 2) -> list[BinomialOutcome]:
    """All (n, k) outcomes with min_n <= n <= max_n, in lexicographic order."""
    return [BinomialOutcome(n, k) for n in range(min_n, max_n + 1) for k in range(n + 1)]


def _sign(x: float) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _tau_b(pair_signs_x: list[int], pair_signs_y: list[int]) -> float:
    """Kendall tau-b from per-pair order signs (0 marks a tie)."""
    concordant = discordant = ties_x = ties_y = 0
    for sx, sy in zip(pair_signs_x, pair_signs_y):
        if sx == 0:
            ties_x += 1
        if sy == 0:
            ties_y += 1
        if sx == 0 or sy == 0:
            continue
        if sx == sy:
            concordant += 1
        else:
            discordant += 1
    total = len(pair_signs_x)
    denom = math.sqrt((total - ties_x) * (total - ties_y))
    if denom == 0.0:
        return math.nan
    return (concordant - discordant) / denom


def rank_order_agreement(
    grid: Sequence[BinomialOutcome],
    kinds: Sequence[str],
    config: AgreementConfig | None = None,
) -> AgreementReport:
    """Compute every statistic on every outcome and compare their rankings.

    Ties are handled with the tau-b correction, since grids of discrete
    outcomes produce exact ties (every balanced outcome has p = 1, for
    instance). Outcomes on which some statistic cannot be computed are
    excluded from all comparisons and reported. Deterministic given the
    grid order.
    """
    if not grid:
        raise ValueError("agreement requires a nonempty outcome grid")
    if config is None:
        config = AgreementConfig()
    kinds = tuple(kinds)

    values: dict[str, list[float]] = {k: [] for k in kinds}
    kept: list[BinomialOutcome] = []
    excluded: list[tuple[BinomialOutcome, str]] = []
    for outcome in grid:
        row: list[EvidenceValue] = []
        try:
            for kind in kinds:
                row.append(
                    compute_evidence(
                        kind,
                        outcome,
                        null=config.null,
                        alternative=config.alternative_for(kind),
                    )
                )
        except (ValueError, RuntimeError) as err:
            excluded.append((outcome, str(err)))
            continue
        kept.append(outcome)
        for ev in row:
            values[ev.kind].append(ev.value)

    m = len(kept)
    index_pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    signs = {
        kind: [_sign(values[kind][i] - values[kind][j]) for i, j in index_pairs]
        for kind in kinds
    }

    taus: dict[tuple[str, str], float] = {}
    discordant: list[DiscordantPair] = []
    for xi, kx in enumerate(kinds):
        for yi, ky in enumerate(kinds):
            if yi < xi:
                taus[(kx, ky)] = taus[(ky, kx)]
                continue
            taus[(kx, ky)] = _tau_b(signs[kx], signs[ky])
            if yi == xi:
                continue
            for (i, j), sx, sy in zip(index_pairs, signs[kx], signs[ky]):
                if sx != 0 and sy != 0 and sx != sy:
                    discordant.append(
                        DiscordantPair(
                            outcome_a=kept[i],
                            outcome_b=kept[j],
                            kind_x=kx,
                            kind_y=ky,
                            x_values=(values[kx][i], values[kx][j]),
                            y_values=(values[ky][i], values[ky][j]),
                        )
                    )

    return AgreementReport(
        dataset_grid=tuple(kept),
        statistic_kinds=kinds,
        kendall_tau=taus,
        discordant_pairs=tuple(discordant),
        excluded=tuple(excluded),
    )


@dataclass(frozen=True)
class DifferenceComparison:
    """Successive differences of three p-values, raw and after -log transform.

    The transformed differences are ln(p1/p2) and ln(p2/p3): the -log map
    reshuffles which gap looks larger, which is exactly why difference
    comparisons on such a scale carry no meaning.
    """

    p_values: tuple[float, float, float]
    raw: tuple[float, float]
    neg_log: tuple[float, float]


def difference_comparison_demo(p_values: tuple[float, float, float]) -> DifferenceComparison:
    """Compare (p1-p2, p2-p3) against the same gaps on the -log scale."""
    p1, p2, p3 = p_values
    for p in (p1, p2, p3):
        if not 0.0 < p <= 1.0:
            raise ValueError(f"p-values must lie in (0,1], got {p}")
    return DifferenceComparison(
        p_values=(p1, p2, p3),
        raw=(p1 - p2, p2 - p3),
        neg_log=(math.log(p1 / p2), math.log(p2 / p3)),
    )
