"""Transition points of log Bayes factors and the two routes to zero.

A transition point (TrP) is the observed proportion at which the log Bayes
factor between two hypotheses crosses 0: smaller proportions favor one
hypothesis, larger proportions the other. For two point hypotheses the TrP
has a closed form and does not depend on the trial count; for a one-sided
composite hypothesis against a point null it must be root-found and drifts
with n. This module also traces the two distinct ways the value 0 can be
reached (shrinking the trial count toward zero at fixed proportion, versus
riding the TrP as the trial count grows) along with a proxy for how
strongly the data contradict a pair of point hypotheses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .evidence import (
    CONTINUOUS,
    BinomialOutcome,
    CompositeHypothesis,
    PointHypothesis,
    log_bf,
    uniform_prior,
)
from .numerics import InvalidBracketError, RootBracket, find_root

# Root residuals above this are treated as a failed solve.
RESIDUAL_LIMIT = 1e-8
# Root brackets stay this far inside the support / away from the point null,
# since the log Bayes factor diverges toward the support edges.
BRACKET_MARGIN = 1e-6

SHRINK_N = "shrink-n"
RIDE_TRP = "ride-trp"
PATH_KINDS = (SHRINK_N, RIDE_TRP)


class NoSignChangeError(RuntimeError):
    """The log Bayes factor does not cross zero inside the search bracket."""


@dataclass(frozen=True)
class TrPResult:
    """A root of the log Bayes factor in the observed proportion, at fixed n."""

    n: float
    trp_y: float
    residual: float
    bracket_width: float

    def __post_init__(self) -> None:
        if not 0.0 < self.trp_y < 1.0:
            raise ValueError(f"transition point must be in (0,1), got {self.trp_y}")
        if not 0.0 <= self.residual <= RESIDUAL_LIMIT:
            raise ValueError(
                f"root residual {self.residual} exceeds the limit {RESIDUAL_LIMIT}"
            )
        if self.bracket_width < 0.0:
            raise ValueError(f"bracket width must be nonnegative, got {self.bracket_width}")


@dataclass(frozen=True)
class CurveEntry:
    """One sweep entry: a TrPResult on success, an error message on failure."""

    n: float
    result: TrPResult | None
    error: str | None = None


def trp_simple(theta1: float, theta2: float) -> float:
    """Closed-form transition point between two point hypotheses.

    Solves k ln(t1/t2) + (n-k) ln((1-t1)/(1-t2)) = 0 for y = k/n:

        y* = ln((1-t2)/(1-t1)) / [ ln(t1/t2) + ln((1-t2)/(1-t1)) ]

    The trial count cancels, so the result holds for every n.
    """
    if not (0.0 < theta1 < 1.0 and 0.0 < theta2 < 1.0):
        raise ValueError(f"hypotheses must lie in (0,1), got {theta1}, {theta2}")
    if theta1 == theta2:
        raise ValueError("transition point is undefined for identical hypotheses")
    comp = math.log((1.0 - theta2) / (1.0 - theta1))
    return comp / (math.log(theta1 / theta2) + comp)


def _log_bf_of_y(n: float, h1: CompositeHypothesis, h2: PointHypothesis):
    def g(y: float) -> float:
        return log_bf(BinomialOutcome(n, y * n, CONTINUOUS), h1, h2)

    return g


def _solve_trp(
    n: float, h1: CompositeHypothesis, h2: PointHypothesis, lo: float, hi: float, tol: float
) -> TrPResult:
    g = _log_bf_of_y(n, h1, h2)
    try:
        root = find_root(g, RootBracket(lo, hi, tol=tol))
    except InvalidBracketError as err:
        raise NoSignChangeError(
            f"log BF does not change sign on y in [{lo}, {hi}] at n={n}"
        ) from err
    return TrPResult(n=n, trp_y=root, residual=abs(g(root)), bracket_width=tol)


def trp_composite(
    n: float,
    h1: CompositeHypothesis,
    h2: PointHypothesis,
    tol: float = 1e-12,
) -> TrPResult:
    """Transition point for a one-sided composite hypothesis against a point null.

    The prior support must lie entirely on one side of the null value; the
    root is bracketed strictly between the support interior and the null.
    Unlike the two-point case, the location drifts with n.
    """
    if n <= 0:
        raise ValueError(f"trial count must be positive, got n={n}")
    lo, hi = h1.support
    theta0 = h2.theta0
    if hi <= theta0:
        y_lo, y_hi = lo + BRACKET_MARGIN, theta0 - BRACKET_MARGIN
    elif lo >= theta0:
        y_lo, y_hi = theta0 + BRACKET_MARGIN, hi - BRACKET_MARGIN
    else:
        raise ValueError(
            f"support {h1.support} straddles the null {theta0}; "
            "use trp_composite_two_sided for that case"
        )
    return _solve_trp(n, h1, h2, y_lo, y_hi, tol)


def trp_composite_two_sided(
    n: float,
    h1: CompositeHypothesis,
    h2: PointHypothesis,
    tol: float = 1e-12,
) -> tuple[TrPResult, TrPResult]:
    """The pair of transition points when the support straddles the null.

    Returns (lower, upper) roots bracketing the null value, one on each side.
    """
    if n <= 0:
        raise ValueError(f"trial count must be positive, got n={n}")
    lo, hi = h1.support
    theta0 = h2.theta0
    if not lo < theta0 < hi:
        raise ValueError(
            f"two-sided case requires the support {h1.support} to straddle the null {theta0}"
        )
    lower = _solve_trp(n, h1, h2, lo + BRACKET_MARGIN, theta0 - BRACKET_MARGIN, tol)
    upper = _solve_trp(n, h1, h2, theta0 + BRACKET_MARGIN, hi - BRACKET_MARGIN, tol)
    return lower, upper


def trp_curve(
    n_values: list[float] | tuple[float, ...],
    h1: CompositeHypothesis,
    h2: PointHypothesis,
    tol: float = 1e-12,
) -> list[CurveEntry]:
    """Transition point per trial count over a strictly increasing sweep.

    Failures (no sign change, residual over limit) are recorded per entry
    without aborting the rest of the sweep.
    """
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError(f"n values must be strictly increasing, got {list(n_values)}")
    entries: list[CurveEntry] = []
    for n in n_values:
        try:
            entries.append(CurveEntry(n=n, result=trp_composite(n, h1, h2, tol)))
        except (NoSignChangeError, ValueError, RuntimeError) as err:
            entries.append(CurveEntry(n=n, result=None, error=str(err)))
    return entries


def against_both(data: BinomialOutcome, theta1: float, theta2: float) -> float:
    """How strongly the data contradict the *better* of two point hypotheses.

    Defined as min_i [ log-likelihood at the MLE y minus log-likelihood at
    theta_i ]. It is 0 when the data sit exactly on one hypothesis and, for
    fixed y strictly between the two, grows linearly in the trial count.
    This is a proxy measure: each branch is n times the KL divergence of y
    from theta_i.
    """
    if data.n <= 0:
        raise ValueError(f"against_both requires n > 0, got n={data.n}")
    if not (0.0 < theta1 < 1.0 and 0.0 < theta2 < 1.0):
        raise ValueError(f"hypotheses must lie in (0,1), got {theta1}, {theta2}")
    if theta1 == theta2:
        raise ValueError("against_both requires distinct hypotheses")
    n, k = data.n, data.k

    def branch(theta: float) -> float:
        out = 0.0
        if k > 0:
            out += k * math.log((k / n) / theta)
        if n - k > 0:
            out += (n - k) * math.log(((n - k) / n) / (1.0 - theta))
        return out

    return min(branch(theta1), branch(theta2))


@dataclass(frozen=True)
class ZeroPathPoint:
    n: float
    y: float
    log_bf: float
    against_both: float


@dataclass(frozen=True)
class ZeroPathEndpoint:
    final_log_bf: float
    final_against_both: float


@dataclass(frozen=True)
class ZeroPathReport:
    """Trace of one route to log BF = 0, with its endpoint summary."""

    path_kind: str
    trace: tuple[ZeroPathPoint, ...]
    endpoint_summary: ZeroPathEndpoint


@dataclass(frozen=True)
class ZeroPathConfig:
    """Setup for a zero-path trace.

    h1/h2 define the Bayes factor being traced; against_pair is the pair of
    point hypotheses the contradiction proxy is evaluated against. For the
    shrink-n path y_fixed is held constant while n decreases toward 0; for
    the ride-trp path y is re-solved to the transition point at each n.
    """

    h1: CompositeHypothesis
    h2: PointHypothesis = field(default_factory=lambda: PointHypothesis(0.5))
    against_pair: tuple[float, float] = (0.25, 0.75)
    y_fixed: float = 0.9
    n_values: tuple[float, ...] = ()
    tol: float = 1e-12


def shrink_n_config() -> ZeroPathConfig:
    """Default shrink-n setup: uniform prior on [1/2, 1] against theta0 = 1/2,
    observed proportion held at 0.9 while n falls geometrically toward 0."""
    return ZeroPathConfig(
        h1=uniform_prior(0.5, 1.0),
        n_values=(8.0, 4.0, 2.0, 1.0, 0.5, 0.1),
    )


def ride_trp_config() -> ZeroPathConfig:
    """Default ride-trp setup: uniform prior on [0, 1/2] against theta0 = 1/2,
    riding the drifting transition point as n grows."""
    return ZeroPathConfig(
        h1=uniform_prior(0.0, 0.5),
        n_values=(10.0, 100.0, 1000.0),
    )


def zero_path(path_kind: str, config: ZeroPathConfig | None = None) -> ZeroPathReport:
    """Trace one of the two routes to log BF = 0.

    shrink-n: hold y fixed and walk n down toward 0; both the log Bayes
    factor and the contradiction proxy decay to 0.

    ride-trp: walk n up, setting y to the transition point at each step;
    the log Bayes factor is pinned at 0 (within the root residual) while
    the contradiction proxy keeps growing. The two traces end at the same
    log BF but at very different states.
    """
    if path_kind not in PATH_KINDS:
        raise ValueError(f"path kind must be one of {PATH_KINDS}, got {path_kind!r}")
    if config is None:
        config = shrink_n_config() if path_kind == SHRINK_N else ride_trp_config()
    ns = config.n_values
    if not ns:
        raise ValueError("zero path requires at least one n value")
    if path_kind == SHRINK_N:
        if any(b >= a for a, b in zip(ns, ns[1:])):
            raise ValueError(f"shrink-n requires strictly decreasing n values, got {list(ns)}")
        if not 0.0 < config.y_fixed < 1.0:
            raise ValueError(f"fixed y must be in (0,1), got {config.y_fixed}")
    else:
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError(f"ride-trp requires strictly increasing n values, got {list(ns)}")

    t1, t2 = config.against_pair
    points = []
    for n in ns:
        if path_kind == SHRINK_N:
            y = config.y_fixed
        else:
            y = trp_composite(n, config.h1, config.h2, config.tol).trp_y
        data = BinomialOutcome(n, y * n, CONTINUOUS)
        points.append(
            ZeroPathPoint(
                n=n,
                y=y,
                log_bf=log_bf(data, config.h1, config.h2),
                against_both=against_both(data, t1, t2),
            )
        )
    last = points[-1]
    return ZeroPathReport(
        path_kind=path_kind,
        trace=tuple(points),
        endpoint_summary=ZeroPathEndpoint(last.log_bf, last.against_both),
    )
