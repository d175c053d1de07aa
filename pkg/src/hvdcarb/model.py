"""Domain model: market areas, price series, HVDC links, capacity profiles.

Units follow European market conventions: power in MW, energy in MWh,
prices in EUR/MWh, loss fractions dimensionless in [0, 1). One timestep
defaults to one hour, so MW dispatched for a step equals MWh.

All types are immutable value objects. Construction never raises on a
broken domain invariant; :func:`validate_network` reports violations as
data so that loaders and callers decide how to fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidLossError

__all__ = [
    "Region",
    "PriceSeries",
    "Interconnector",
    "CapacityProfile",
    "Network",
    "loss_from_length",
    "validate_network",
]


def _as_steps(steps: Iterable[tuple[int, float]]) -> tuple[tuple[int, float], ...]:
    out = []
    for t, v in steps:
        if int(t) != t:
            raise ValueError(f"timestep {t!r} is not an integer")
        out.append((int(t), float(v)))
    return tuple(out)


@dataclass(frozen=True)
class Region:
    """A market area with a single electricity price."""

    id: str
    name: str = ""


@dataclass(frozen=True)
class PriceSeries:
    """Per-timestep prices (EUR/MWh) for one region.

    Timestep indices must be strictly increasing. Negative prices are
    admitted: European day-ahead markets produce them and the
    difference-form profit expressions stay valid.
    """

    region_id: str
    steps: tuple[tuple[int, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", _as_steps(self.steps))

    @property
    def timesteps(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.steps)

    @property
    def prices(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.steps)

    def price_at(self, timestep: int) -> float:
        for t, p in self.steps:
            if t == timestep:
                return p
        raise KeyError(timestep)

    def restricted(self, start: int | None = None, end: int | None = None) -> "PriceSeries":
        """Sub-series with start <= t <= end (either bound optional)."""
        kept = [
            (t, p)
            for t, p in self.steps
            if (start is None or t >= start) and (end is None or t <= end)
        ]
        return PriceSeries(self.region_id, tuple(kept))

    def violations(self) -> list[str]:
        out = []
        for (t0, _), (t1, _) in zip(self.steps, self.steps[1:]):
            if t1 <= t0:
                out.append(
                    f"price series '{self.region_id}': timesteps not strictly "
                    f"increasing at t={t1}"
                )
        for t, p in self.steps:
            if not math.isfinite(p):
                out.append(f"price series '{self.region_id}': non-finite price at t={t}")
            if t < 0:
                out.append(f"price series '{self.region_id}': negative timestep {t}")
        return out


@dataclass(frozen=True)
class Interconnector:
    """A lossy bidirectional HVDC link between two regions.

    ``loss_fraction`` is the share of injected power dissipated end to
    end: sending x MW delivers (1 - loss_fraction) * x MW.
    """

    id: str
    endpoint_a: str
    endpoint_b: str
    capacity_mw: float
    loss_fraction: float
    length_km: float | None = None

    def endpoints(self) -> tuple[str, str]:
        return (self.endpoint_a, self.endpoint_b)

    def connects(self, region_x: str, region_y: str) -> bool:
        return {self.endpoint_a, self.endpoint_b} == {region_x, region_y}

    def violations(self) -> list[str]:
        out = []
        if not self.id:
            out.append("interconnector with empty id")
        if not (self.capacity_mw >= 0) or not math.isfinite(self.capacity_mw):
            out.append(
                f"interconnector '{self.id}': capacity_mw {self.capacity_mw} must "
                f"be finite and >= 0"
            )
        if not (0 <= self.loss_fraction < 1):
            out.append(
                f"interconnector '{self.id}': loss_fraction {self.loss_fraction} "
                f"outside [0, 1)"
            )
        if self.endpoint_a == self.endpoint_b:
            out.append(f"interconnector '{self.id}': both endpoints are '{self.endpoint_a}'")
        if self.length_km is not None and (
            not (self.length_km >= 0) or not math.isfinite(self.length_km)
        ):
            out.append(
                f"interconnector '{self.id}': length_km {self.length_km} must "
                f"be finite and >= 0"
            )
        return out


@dataclass(frozen=True)
class CapacityProfile:
    """Per-timestep cap on transferable power (MW) for one link.

    Network capability to import/export varies over time; the horizon
    scheduler bounds each step's dispatch by the profile's value.
    """

    interconnector_id: str
    steps: tuple[tuple[int, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", _as_steps(self.steps))

    @property
    def timesteps(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.steps)

    @classmethod
    def constant(cls, link: Interconnector, timesteps: Iterable[int]) -> "CapacityProfile":
        """Flat profile at the link's rated capacity over the given horizon."""
        return cls(link.id, tuple((t, link.capacity_mw) for t in timesteps))

    def violations(self) -> list[str]:
        out = []
        for (t0, _), (t1, _) in zip(self.steps, self.steps[1:]):
            if t1 <= t0:
                out.append(
                    f"capacity profile '{self.interconnector_id}': timesteps not "
                    f"strictly increasing at t={t1}"
                )
        for t, x in self.steps:
            if not (x >= 0) or not math.isfinite(x):
                out.append(
                    f"capacity profile '{self.interconnector_id}': x_max {x} at t={t} "
                    f"must be finite and >= 0"
                )
        return out


@dataclass(frozen=True)
class Network:
    """Regions, the HVDC links joining them, and one price series per region.

    Regions that have no interconnector may omit a price series.
    """

    regions: tuple[Region, ...] = ()
    interconnectors: tuple[Interconnector, ...] = ()
    price_series: tuple[PriceSeries, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        object.__setattr__(self, "interconnectors", tuple(self.interconnectors))
        object.__setattr__(self, "price_series", tuple(self.price_series))

    def region(self, region_id: str) -> Region:
        for r in self.regions:
            if r.id == region_id:
                return r
        raise KeyError(region_id)

    def link(self, link_id: str) -> Interconnector:
        for link in self.interconnectors:
            if link.id == link_id:
                return link
        raise KeyError(link_id)

    def prices_for(self, region_id: str) -> PriceSeries:
        for s in self.price_series:
            if s.region_id == region_id:
                return s
        raise KeyError(region_id)

    def with_prices(self, series: Iterable[PriceSeries]) -> "Network":
        """Copy of this network with its price series replaced.

        Series are reordered to follow region declaration order; the first
        series wins if a region appears twice, and series for undeclared
        regions are kept (validation flags them).
        """
        by_region: dict[str, PriceSeries] = {}
        for s in series:
            by_region.setdefault(s.region_id, s)
        ordered = [by_region.pop(r.id) for r in self.regions if r.id in by_region]
        ordered.extend(by_region.values())
        return Network(self.regions, self.interconnectors, tuple(ordered))


def loss_from_length(length_km: float, loss_rate_per_100km: float) -> float:
    """Loss fraction of a link from its length, linear in km.

    A 575 km link at 1% per 100 km loses 5.75% of injected power. The
    model is linear (rate * km / 100), not compounding per segment.

    Raises:
        ValueError: negative length, or rate outside [0, 1).
        InvalidLossError: the resulting fraction reaches 1; such a link
            would consume all power it carries.
    """
    if not (length_km >= 0):
        raise ValueError(f"length_km must be >= 0, got {length_km}")
    if not (0 <= loss_rate_per_100km < 1):
        raise ValueError(
            f"loss_rate_per_100km must be in [0, 1), got {loss_rate_per_100km}"
        )
    loss = length_km * loss_rate_per_100km / 100
    if loss >= 1:
        raise InvalidLossError(
            f"derived loss fraction {loss} >= 1 for length {length_km} km at "
            f"rate {loss_rate_per_100km} per 100 km"
        )
    return loss


def validate_network(network: Network) -> list[str]:
    """Check every model invariant; return one message per violation.

    An empty report means the network is well formed. Violations are data,
    not exceptions: callers (e.g. the config loader) decide whether to fail.
    """
    report: list[str] = []

    seen_regions: set[str] = set()
    for r in network.regions:
        if not r.id:
            report.append("region with empty id")
        elif r.id in seen_regions:
            report.append(f"duplicate region id '{r.id}'")
        seen_regions.add(r.id)

    seen_links: set[str] = set()
    for link in network.interconnectors:
        report.extend(link.violations())
        if link.id in seen_links:
            report.append(f"duplicate interconnector id '{link.id}'")
        seen_links.add(link.id)
        for endpoint in link.endpoints():
            if endpoint not in seen_regions:
                report.append(
                    f"interconnector '{link.id}': endpoint '{endpoint}' is not a "
                    f"declared region"
                )

    seen_series: set[str] = set()
    for series in network.price_series:
        report.extend(series.violations())
        if series.region_id in seen_series:
            report.append(f"duplicate price series for region '{series.region_id}'")
        seen_series.add(series.region_id)
        if series.region_id not in seen_regions:
            report.append(
                f"price series references unknown region '{series.region_id}'"
            )

    # Every region touched by a link needs prices, and the priced horizons of
    # linked regions must coincide (they define the analysis horizon).
    linked = sorted({e for link in network.interconnectors for e in link.endpoints()})
    horizons: dict[str, tuple[int, ...]] = {}
    for region_id in linked:
        if region_id not in seen_series:
            if region_id in seen_regions:
                report.append(
                    f"region '{region_id}' has an interconnector but no price series"
                )
            continue
        horizons[region_id] = network.prices_for(region_id).timesteps
    if horizons:
        reference = next(iter(horizons.values()))
        for region_id, ts in horizons.items():
            if ts != reference:
                report.append(
                    f"price series '{region_id}' horizon {ts} differs from other "
                    f"linked regions"
                )

    return report
