"""Horizon scheduling of one or more links under dynamic capacity limits.

The horizon problem bounds each step's dispatch by a time-varying cap
x_t in [0, X_max^t] and values it at the step's marginal value

    lambda_t = max(p_a^t - p_b^t - r*p_a^t, p_b^t - p_a^t - r*p_b^t, 0)

(the tight bound of the epigraph constraints; any bias is subtracted
inside the max so a zero bias recovers the unbiased problem). The
objective sum x_t * lambda_t is separable across timesteps and linear in
each x_t over a box, so the per-step bang-bang rule of
:func:`hvdcarb.arbitrage.optimal_flow` attains the horizon optimum.
:func:`lp_oracle` re-solves the same problem by explicit per-step
enumeration and exists as an independent check on the production path.

Links share no constraints in this model (shared-node network limits are
folded into each link's capacity profile), so a portfolio schedules each
link independently and sums.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arbitrage import BiasPolicy, Direction, FlowDecision, optimal_flow
from .errors import AlignmentError
from .model import CapacityProfile, Interconnector, Network, PriceSeries

__all__ = [
    "HOURS_PER_YEAR",
    "Schedule",
    "PortfolioResult",
    "schedule_link",
    "schedule_portfolio",
    "extrapolate_annual",
    "lp_oracle",
]

HOURS_PER_YEAR = 8760

# lp_oracle enumerates every step explicitly; cap the horizon so nobody
# mistakes it for the production path.
_ORACLE_MAX_STEPS = 10_000


@dataclass(frozen=True)
class Schedule:
    """Per-timestep dispatch of one link over a horizon, with total profit."""

    interconnector_id: str
    decisions: tuple[FlowDecision, ...]
    total_profit: float

    @property
    def timesteps(self) -> tuple[int, ...]:
        return tuple(d.timestep for d in self.decisions)


@dataclass(frozen=True)
class PortfolioResult:
    """Independent schedules for several links plus aggregate figures.

    ``annualized`` linearly extrapolates the horizon's mean hourly profit
    to a full year.
    """

    schedules: tuple[Schedule, ...]
    grand_total: float
    annualized: float


def _aligned_horizon(
    prices_a: PriceSeries,
    prices_b: PriceSeries,
    capacity: CapacityProfile,
) -> tuple[int, ...]:
    """Common timestep tuple, or AlignmentError naming what is missing where."""
    sources = {
        f"prices '{prices_a.region_id}'": prices_a.timesteps,
        f"prices '{prices_b.region_id}'": prices_b.timesteps,
        f"capacity '{capacity.interconnector_id}'": capacity.timesteps,
    }
    union = sorted(set().union(*sources.values()))
    missing = {
        name: tuple(t for t in union if t not in set(ts))
        for name, ts in sources.items()
        if set(ts) != set(union)
    }
    if missing:
        detail = "; ".join(
            f"{name} missing timesteps {list(gaps)}" for name, gaps in missing.items()
        )
        raise AlignmentError(f"horizon mismatch: {detail}", missing)
    reference = prices_a.timesteps
    if prices_b.timesteps != reference or capacity.timesteps != reference:
        # Same sets but different sequences means a source violates its
        # own strictly-increasing invariant.
        raise AlignmentError(
            "horizon mismatch: sources cover the same timesteps in different order"
        )
    if any(t1 <= t0 for t0, t1 in zip(reference, reference[1:])):
        raise AlignmentError("horizon timesteps must be strictly increasing")
    return reference


def schedule_link(
    prices_a: PriceSeries,
    prices_b: PriceSeries,
    link: Interconnector,
    capacity: CapacityProfile | None = None,
    bias: BiasPolicy | None = None,
    duration_h: float = 1.0,
) -> Schedule:
    """Optimal dispatch of one link over the price series' horizon.

    Both price series and the capacity profile must cover exactly the same
    timesteps. With no profile given, the link's rated capacity applies at
    every step. Separability makes the per-step optimum the horizon
    optimum.

    Raises:
        AlignmentError: the three sources cover different timesteps.
        ValueError: the series do not belong to the link's endpoints.
    """
    if not (duration_h > 0):
        raise ValueError(f"duration_h must be > 0, got {duration_h}")
    if {prices_a.region_id, prices_b.region_id} != {link.endpoint_a, link.endpoint_b}:
        raise ValueError(
            f"price series ({prices_a.region_id}, {prices_b.region_id}) do not "
            f"match link '{link.id}' endpoints ({link.endpoint_a}, {link.endpoint_b})"
        )
    # Present prices endpoint-relative so A_to_B always means a -> b.
    if prices_a.region_id != link.endpoint_a:
        prices_a, prices_b = prices_b, prices_a
    if capacity is None:
        capacity = CapacityProfile.constant(link, prices_a.timesteps)
    r_b = (bias or BiasPolicy()).r_b

    _aligned_horizon(prices_a, prices_b, capacity)
    caps = dict(capacity.steps)
    decisions = []
    for (t, p_a), (_, p_b) in zip(prices_a.steps, prices_b.steps):
        decisions.append(
            optimal_flow(p_a, p_b, link.loss_fraction, caps[t], r_b, duration_h, t)
        )
    total = sum(d.profit for d in decisions)
    return Schedule(link.id, tuple(decisions), total)


def schedule_portfolio(
    network: Network,
    capacities: dict[str, CapacityProfile] | None = None,
    bias: BiasPolicy | None = None,
    duration_h: float = 1.0,
) -> PortfolioResult:
    """Schedule every link in the network independently and aggregate.

    Links are processed in id order so results are reproducible however
    the per-link work is executed. ``capacities`` may supply a dynamic
    profile per link id; links without one run at rated capacity.

    Raises:
        AlignmentError: propagated from a link, annotated with its id.
        KeyError: a link endpoint has no price series.
    """
    capacities = capacities or {}
    schedules = []
    for link in sorted(network.interconnectors, key=lambda ln: ln.id):
        try:
            prices_a = network.prices_for(link.endpoint_a)
            prices_b = network.prices_for(link.endpoint_b)
            schedules.append(
                schedule_link(
                    prices_a,
                    prices_b,
                    link,
                    capacities.get(link.id),
                    bias,
                    duration_h,
                )
            )
        except AlignmentError as exc:
            raise AlignmentError(f"link '{link.id}': {exc}", exc.missing) from exc
        except KeyError as exc:
            raise KeyError(
                f"link '{link.id}': no price series for region {exc}"
            ) from exc
    grand_total = sum(s.total_profit for s in schedules)
    horizon_hours = 0.0
    if schedules:
        horizon_hours = len(schedules[0].decisions) * duration_h
    if horizon_hours > 0:
        annualized = extrapolate_annual(grand_total / horizon_hours)
    else:
        annualized = 0.0
    return PortfolioResult(tuple(schedules), grand_total, annualized)


def extrapolate_annual(hourly_profit: float) -> float:
    """Linear extrapolation of an hourly profit to a 8760-hour year."""
    if not (hourly_profit >= 0):
        raise ValueError(f"hourly_profit must be >= 0, got {hourly_profit}")
    return hourly_profit * HOURS_PER_YEAR


def lp_oracle(
    prices_a: PriceSeries,
    prices_b: PriceSeries,
    link: Interconnector,
    capacity: CapacityProfile | None = None,
    bias: BiasPolicy | None = None,
    duration_h: float = 1.0,
) -> Schedule:
    """Reference solver: per-step enumeration over x_t in {0, X_max^t}.

    The objective is linear in x_t, so only the box corners can be
    optimal; this solver checks both corners explicitly instead of
    trusting the bang-bang rule, and must agree with
    :func:`schedule_link` decision for decision. Intended as a test
    oracle for small horizons, not the production path.
    """
    if not (duration_h > 0):
        raise ValueError(f"duration_h must be > 0, got {duration_h}")
    if {prices_a.region_id, prices_b.region_id} != {link.endpoint_a, link.endpoint_b}:
        raise ValueError(
            f"price series ({prices_a.region_id}, {prices_b.region_id}) do not "
            f"match link '{link.id}' endpoints ({link.endpoint_a}, {link.endpoint_b})"
        )
    if prices_a.region_id != link.endpoint_a:
        prices_a, prices_b = prices_b, prices_a
    if capacity is None:
        capacity = CapacityProfile.constant(link, prices_a.timesteps)
    r_b = (bias or BiasPolicy()).r_b
    horizon = _aligned_horizon(prices_a, prices_b, capacity)
    if len(horizon) > _ORACLE_MAX_STEPS:
        raise ValueError(
            f"lp_oracle is limited to {_ORACLE_MAX_STEPS} steps, got {len(horizon)}"
        )

    r = link.loss_fraction
    caps = dict(capacity.steps)
    decisions = []
    for (t, p_a), (_, p_b) in zip(prices_a.steps, prices_b.steps):
        x_max = caps[t]
        raw_to_a = p_a - p_b - r * p_a
        raw_to_b = p_b - p_a - r * p_b
        lam = max(raw_to_a - r_b, raw_to_b - r_b, 0.0)
        # Enumerate the two box corners; keep the strictly better one.
        best_x = 0.0
        for x in (0.0, x_max):
            if x * duration_h * lam > best_x * duration_h * lam:
                best_x = x
        if best_x > 0:
            # direction ties on the pre-bias margins resolve into endpoint a
            direction = Direction.B_TO_A if raw_to_a >= raw_to_b else Direction.A_TO_B
        else:
            direction = Direction.IDLE
        decisions.append(
            FlowDecision(
                timestep=t,
                direction=direction,
                quantity_mw=best_x,
                marginal_value=lam,
                profit=best_x * duration_h * lam,
            )
        )
    total = sum(d.profit for d in decisions)
    return Schedule(link.id, tuple(decisions), total)
