"""Three-area wheeling: moving power origin -> transit -> destination.

Power injected in area 1 crosses the first link (losing fraction r1),
transits area 2 (losing fraction c to the internal grid), and crosses the
second link (losing r2), so x MW injected delivers
x*(1-r1)*(1-r2)*(1-c) MW in area 3. A wheel is worthwhile only when each
hand-off adds value on its own; the per-scenario gate pair encodes that:

    1 -> 2 -> 3:  p3*(1-r2)*(1-c) - p2 > 0   and   p2*(1-r1) - p1 > 0
    3 -> 2 -> 1:  p1*(1-r1)*(1-c) - p2 > 0   and   p2*(1-r2) - p3 > 0

Note the two scenarios' gate pairs are not exact mirrors: the forward
scenario charges the transit loss on the destination-side gate while the
reverse charges it on the gate involving p1. Both are implemented
verbatim; normalizing them is deliberately avoided.

End-to-end profit per scenario (may be negative when evaluated on an
infeasible instance; :func:`evaluate_wheel` dispatches zero instead):

    Profit(1->3) = (p3*(1-r1)*(1-r2)*(1-c) - p1) * x
    Profit(3->1) = (p1*(1-r1)*(1-r2)*(1-c) - p3) * x
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import CapacityError
from .model import Interconnector

__all__ = [
    "WheelScenario",
    "WheelingChain",
    "WheelingResult",
    "wheel_gates_123",
    "wheel_profit_123",
    "wheel_gates_321",
    "wheel_profit_321",
    "evaluate_wheel",
]


class WheelScenario(str, Enum):
    S123 = "S123"  # area1 -> area2 -> area3
    S321 = "S321"  # area3 -> area2 -> area1


@dataclass(frozen=True)
class WheelingChain:
    """An ordered 3-area path: two HVDC links plus the transit area's loss."""

    area1: str
    area2: str
    area3: str
    link12: Interconnector
    link23: Interconnector
    transit_loss_c: float = 0.0

    def __post_init__(self):
        if not (0 <= self.transit_loss_c < 1):
            raise ValueError(
                f"transit_loss_c must be in [0, 1), got {self.transit_loss_c}"
            )
        if not self.link12.connects(self.area1, self.area2):
            raise ValueError(
                f"link '{self.link12.id}' does not connect "
                f"'{self.area1}' and '{self.area2}'"
            )
        if not self.link23.connects(self.area2, self.area3):
            raise ValueError(
                f"link '{self.link23.id}' does not connect "
                f"'{self.area2}' and '{self.area3}'"
            )


@dataclass(frozen=True)
class WheelingResult:
    """One scenario's gates, feasibility, and profit at the dispatched quantity."""

    scenario: WheelScenario
    feasible: bool
    gate_values: tuple[float, float]
    dispatched_mw: float
    profit: float


def wheel_gates_123(
    p1: float, p2: float, p3: float, r1: float, r2: float, c: float
) -> tuple[float, float]:
    """Gate pair for wheeling area1 -> area2 -> area3; feasible iff both > 0."""
    _check_losses(r1, r2, c)
    return (p3 * (1 - r2) * (1 - c) - p2, p2 * (1 - r1) - p1)


def wheel_profit_123(
    p1: float,
    p3: float,
    r1: float,
    r2: float,
    c: float,
    x: float,
    duration_h: float = 1.0,
) -> float:
    """End-to-end profit (EUR) of wheeling x MW from area 1 to area 3.

    Raw formula value: negative on an infeasible instance.
    """
    _check_losses(r1, r2, c)
    if not (x >= 0):
        raise ValueError(f"dispatch quantity must be >= 0, got {x}")
    return (p3 * (1 - r1) * (1 - r2) * (1 - c) - p1) * x * duration_h


def wheel_gates_321(
    p1: float, p2: float, p3: float, r1: float, r2: float, c: float
) -> tuple[float, float]:
    """Gate pair for wheeling area3 -> area2 -> area1; feasible iff both > 0."""
    _check_losses(r1, r2, c)
    return (p1 * (1 - r1) * (1 - c) - p2, p2 * (1 - r2) - p3)


def wheel_profit_321(
    p1: float,
    p3: float,
    r1: float,
    r2: float,
    c: float,
    x: float,
    duration_h: float = 1.0,
) -> float:
    """End-to-end profit (EUR) of wheeling x MW from area 3 to area 1."""
    _check_losses(r1, r2, c)
    if not (x >= 0):
        raise ValueError(f"dispatch quantity must be >= 0, got {x}")
    return (p1 * (1 - r1) * (1 - r2) * (1 - c) - p3) * x * duration_h


def _check_losses(r1: float, r2: float, c: float):
    for name, value in (("r1", r1), ("r2", r2), ("c", c)):
        if not (0 <= value < 1):
            raise ValueError(f"loss {name} must be in [0, 1), got {value}")


def evaluate_wheel(
    chain: WheelingChain,
    p1: float,
    p2: float,
    p3: float,
    x_request: float,
    duration_h: float = 1.0,
) -> tuple[WheelingResult, WheelingResult]:
    """Evaluate both wheeling scenarios for one timestep's prices.

    A scenario dispatches x_request when both of its gates are strictly
    positive, and zero otherwise (the raw, possibly negative, formula
    value stays available through the wheel_profit functions). Capacity is
    checked leg by leg on the dispatching scenario only: the second leg
    carries the post-loss flow, so its cap binds against the already
    attenuated quantity.

    Raises:
        ValueError: x_request < 0.
        CapacityError: a dispatching scenario's leg cannot carry its flow;
            the error names the binding link.
    """
    if not (x_request >= 0):
        raise ValueError(f"x_request must be >= 0, got {x_request}")
    r1 = chain.link12.loss_fraction
    r2 = chain.link23.loss_fraction
    c = chain.transit_loss_c

    results = []
    for scenario in (WheelScenario.S123, WheelScenario.S321):
        if scenario is WheelScenario.S123:
            gates = wheel_gates_123(p1, p2, p3, r1, r2, c)
            legs = (
                (chain.link12, x_request),
                (chain.link23, x_request * (1 - r1) * (1 - c)),
            )
        else:
            gates = wheel_gates_321(p1, p2, p3, r1, r2, c)
            legs = (
                (chain.link23, x_request),
                (chain.link12, x_request * (1 - r2) * (1 - c)),
            )
        feasible = gates[0] > 0 and gates[1] > 0
        if feasible:
            for link, flow in legs:
                if flow > link.capacity_mw:
                    raise CapacityError(
                        f"scenario {scenario.value}: leg '{link.id}' would carry "
                        f"{flow} MW, above its {link.capacity_mw} MW capacity",
                        binding_link=link.id,
                    )
            if scenario is WheelScenario.S123:
                profit = wheel_profit_123(p1, p3, r1, r2, c, x_request, duration_h)
            else:
                profit = wheel_profit_321(p1, p3, r1, r2, c, x_request, duration_h)
            results.append(
                WheelingResult(scenario, True, gates, x_request, profit)
            )
        else:
            results.append(WheelingResult(scenario, False, gates, 0.0, 0.0))
    return (results[0], results[1])
