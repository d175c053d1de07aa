"""Single-link, single-timestep arbitrage economics.

Sending x MW across a link with loss fraction r delivers (1 - r) * x MW
at the far end. Buying at the origin price and selling the delivered
power at the destination price earns, per MW sent,

    p_dest - p_origin - r * p_dest

i.e. the spread net of the loss charge levied on the destination price.
The operator's marginal value of the link at a timestep is the better of
the two directions, floored at zero; dispatching is worthwhile only when
that value is strictly positive. Because profit is linear in x, the
optimal dispatch is bang-bang: either nothing or the full capacity.

A bias (minimum margin in EUR/MWh) filters out low-return transactions
that would otherwise cause the link to chatter at full power for cents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Direction",
    "FlowDecision",
    "BiasPolicy",
    "flow_condition",
    "marginal_value",
    "pairwise_profit",
    "pairwise_profit_biased",
    "optimal_flow",
]


class Direction(str, Enum):
    """Flow direction relative to a link's declared endpoints."""

    A_TO_B = "A_to_B"
    B_TO_A = "B_to_A"
    IDLE = "Idle"


@dataclass(frozen=True)
class FlowDecision:
    """Dispatch for one link at one timestep.

    ``marginal_value`` is the per-MWh value of the chosen direction after
    any bias, floored at zero; ``profit`` equals
    quantity_mw * marginal_value * step duration.
    """

    timestep: int
    direction: Direction
    quantity_mw: float
    marginal_value: float
    profit: float

    def __post_init__(self):
        if (self.quantity_mw == 0) != (self.direction is Direction.IDLE):
            raise ValueError(
                f"quantity_mw must be 0 exactly when idle "
                f"(got {self.quantity_mw} MW, {self.direction.value})"
            )
        if not (self.marginal_value >= 0):
            raise ValueError(f"marginal_value must be >= 0, got {self.marginal_value}")


@dataclass(frozen=True)
class BiasPolicy:
    """Minimum per-MWh margin required before dispatching.

    Zero bias dispatches on any strictly positive margin.
    """

    r_b: float = 0.0

    def __post_init__(self):
        if not (self.r_b >= 0 and math.isfinite(self.r_b)):
            raise ValueError(f"bias r_b must be finite and >= 0, got {self.r_b}")


def flow_condition(p_to: float, p_from: float, r: float) -> bool:
    """Whether delivering toward the p_to side is strictly profitable.

    Ratio form of the operating condition: p_to / p_from > 1 / (1 - r),
    evaluated for positive prices as the equivalent delivered-value test
    p_to * (1 - r) > p_from. For general (possibly non-positive) prices use
    :func:`marginal_value` instead, which needs no ratio.

    Raises:
        ValueError: either price is not strictly positive.
    """
    if not (p_to > 0 and p_from > 0):
        raise ValueError(
            "flow_condition is a ratio test and requires strictly positive "
            f"prices (got p_to={p_to}, p_from={p_from}); use marginal_value "
            "for general prices"
        )
    if not (0 <= r < 1):
        raise ValueError(f"loss fraction must be in [0, 1), got {r}")
    return p_to * (1 - r) > p_from


def _margins(p_a: float, p_b: float, r: float) -> tuple[float, float]:
    """Per-MWh margins (deliver-into-a, deliver-into-b), before bias."""
    return (p_a - p_b - r * p_a, p_b - p_a - r * p_b)


def marginal_value(p_i: float, p_j: float, r: float) -> float:
    """Per-MWh value of the link: best direction's margin, floored at zero.

    max(p_i - p_j - r*p_i, p_j - p_i - r*p_j, 0)
    """
    if not (0 <= r < 1):
        raise ValueError(f"loss fraction must be in [0, 1), got {r}")
    m_to_i, m_to_j = _margins(p_i, p_j, r)
    return max(m_to_i, m_to_j, 0.0)


def pairwise_profit(
    p_i: float, p_j: float, r: float, x: float, duration_h: float = 1.0
) -> float:
    """Profit (EUR) of dispatching x MW for duration_h hours, best direction.

    Never negative: an unprofitable link is simply not operated.

    Raises:
        ValueError: x < 0 or r outside [0, 1).
    """
    return pairwise_profit_biased(p_i, p_j, r, x, 0.0, duration_h)


def pairwise_profit_biased(
    p_i: float,
    p_j: float,
    r: float,
    x: float,
    r_b: float,
    duration_h: float = 1.0,
) -> float:
    """Profit (EUR) with a minimum-margin filter of r_b EUR/MWh.

    x * duration_h * max(p_i - p_j - r*p_i - r_b, p_j - p_i - r*p_j - r_b, 0).
    With r_b = 0 this is exactly :func:`pairwise_profit`.
    """
    if not (x >= 0):
        raise ValueError(f"dispatch quantity must be >= 0, got {x}")
    if not (0 <= r < 1):
        raise ValueError(f"loss fraction must be in [0, 1), got {r}")
    if not (r_b >= 0):
        raise ValueError(f"bias must be >= 0, got {r_b}")
    m_to_i, m_to_j = _margins(p_i, p_j, r)
    return x * duration_h * max(m_to_i - r_b, m_to_j - r_b, 0.0)


def optimal_flow(
    p_a: float,
    p_b: float,
    r: float,
    x_max: float,
    r_b: float = 0.0,
    duration_h: float = 1.0,
    timestep: int = 0,
) -> FlowDecision:
    """Profit-maximal dispatch of one link at one timestep.

    Profit is linear in the dispatched quantity, so the optimum is
    bang-bang: full capacity toward the higher-price endpoint when the
    biased margin is strictly positive, otherwise idle. Exact threshold
    equality yields idle (zero-profit trades are pointless); the bias is
    the designated mechanism for suppressing marginal trades, so no
    epsilon is applied to the comparison.

    When both directions tie on margin (equal prices, negative enough for
    the loss charge to act as a subsidy), the tie resolves toward
    delivering into endpoint a, mirroring the argument order of the
    combined profit expression.
    """
    if not (x_max >= 0):
        raise ValueError(f"x_max must be >= 0, got {x_max}")
    m_to_a, m_to_b = _margins(p_a, p_b, r)
    lam = max(m_to_a - r_b, m_to_b - r_b, 0.0)
    if lam > 0 and x_max > 0:
        direction = Direction.B_TO_A if m_to_a >= m_to_b else Direction.A_TO_B
        quantity = x_max
    else:
        direction = Direction.IDLE
        quantity = 0.0
    profit = pairwise_profit_biased(p_a, p_b, r, quantity, r_b, duration_h)
    return FlowDecision(
        timestep=timestep,
        direction=direction,
        quantity_mw=quantity,
        marginal_value=lam,
        profit=profit,
    )
