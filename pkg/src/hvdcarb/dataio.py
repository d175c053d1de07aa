"""File ingestion and report emission.

Formats (all stable):

* Price CSV: header ``timestep,region_id,price_eur_mwh``, one row per
  (timestep, region), UTF-8, decimal point. Timesteps must be strictly
  increasing within each region.
* Network config: YAML with a ``regions`` list, a ``links`` list, and an
  optional ``prices_csv`` reference resolved relative to the config file.
  A link carries either ``loss_fraction`` directly or ``length_km`` plus
  ``loss_rate_per_100km``; giving both is accepted only when they agree.
* Reports: CSV (schema per result kind, below) or a structured JSON
  document carrying every per-timestep decision.

Writers are deterministic: identical inputs yield byte-identical output,
and writing what was loaded reproduces the file.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

import yaml

from .errors import (
    ConfigConflictError,
    DuplicateRowError,
    ParseError,
    ValidationError,
)
from .model import (
    Interconnector,
    Network,
    PriceSeries,
    Region,
    loss_from_length,
    validate_network,
)
from .scheduler import PortfolioResult, Schedule
from .wheeling import WheelingResult

__all__ = [
    "PRICE_CSV_HEADER",
    "SCHEDULE_CSV_HEADER",
    "WHEELING_CSV_HEADER",
    "CaseStudyBundle",
    "load_prices",
    "save_prices",
    "prices_to_csv",
    "load_network",
    "save_network",
    "network_to_yaml",
    "write_report",
    "load_case_study",
    "default_data_dir",
]

PRICE_CSV_HEADER = "timestep,region_id,price_eur_mwh"
SCHEDULE_CSV_HEADER = "timestep,link_id,direction,quantity_mw,lambda_eur_mwh,profit_eur"
WHEELING_CSV_HEADER = "scenario,feasible,gate_a_eur_mwh,gate_b_eur_mwh,dispatched_mw,profit_eur"

DATA_DIR_ENV = "HVDCARB_DATA_DIR"
_BUNDLED_DATA = Path(__file__).resolve().parent / "data" / "ireland"

Source = Union[str, Path, IO[str]]


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text(encoding="utf-8")


# ---------------------------------------------------------------------------
# price CSV


def load_prices(source: Source) -> dict[str, PriceSeries]:
    """Parse a price CSV into one series per region, keyed by region id.

    Raises:
        ParseError: bad header, malformed row, non-finite price,
            out-of-order timesteps (with the offending line number).
        DuplicateRowError: a (timestep, region) pair repeats.
    """
    text = _read_text(source)
    lines = text.splitlines()
    if not lines or lines[0].strip() != PRICE_CSV_HEADER:
        raise ParseError(
            f"expected header '{PRICE_CSV_HEADER}', got "
            f"{lines[0].strip() if lines else '<empty file>'!r}",
            line=1,
        )
    steps: dict[str, list[tuple[int, float]]] = {}
    reader = csv.reader(io.StringIO("\n".join(lines[1:])))
    for offset, row in enumerate(reader):
        lineno = offset + 2
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=lineno)
        raw_t, region_id, raw_price = (field.strip() for field in row)
        try:
            t = int(raw_t)
        except ValueError:
            raise ParseError(f"timestep {raw_t!r} is not an integer", line=lineno)
        if t < 0:
            raise ParseError(f"timestep {t} is negative", line=lineno)
        if not region_id:
            raise ParseError("empty region_id", line=lineno)
        try:
            price = float(raw_price)
        except ValueError:
            raise ParseError(f"price {raw_price!r} is not a number", line=lineno)
        if not math.isfinite(price):
            raise ParseError(f"price {raw_price!r} is not finite", line=lineno)
        series = steps.setdefault(region_id, [])
        if series:
            last_t = series[-1][0]
            if t == last_t:
                raise DuplicateRowError(
                    f"duplicate timestep {t} for region '{region_id}'", line=lineno
                )
            if t < last_t:
                raise ParseError(
                    f"timestep {t} for region '{region_id}' is out of order "
                    f"(last was {last_t})",
                    line=lineno,
                )
        series.append((t, price))
    return {rid: PriceSeries(rid, tuple(s)) for rid, s in steps.items()}


def prices_to_csv(series: Iterable[PriceSeries]) -> str:
    """Render price series back to the CSV format, deterministically."""
    out = [PRICE_CSV_HEADER]
    for s in series:
        for t, p in s.steps:
            out.append(f"{t},{s.region_id},{p!r}")
    return "\n".join(out) + "\n"


def save_prices(series: Iterable[PriceSeries], path: str | Path) -> None:
    Path(path).write_text(prices_to_csv(series), encoding="utf-8")


# ---------------------------------------------------------------------------
# network config


_REGION_KEYS = {"id", "name"}
_LINK_KEYS = {
    "id",
    "from",
    "to",
    "capacity_mw",
    "loss_fraction",
    "length_km",
    "loss_rate_per_100km",
}
_TOP_KEYS = {"regions", "links", "prices_csv"}


def _number(mapping: dict, key: str, context: str) -> float:
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{context}: '{key}' must be a number, got {value!r}")
    return float(value)


def load_network(source: Source, base_dir: str | Path | None = None) -> Network:
    """Load and validate a network config, including referenced prices.

    ``base_dir`` anchors the ``prices_csv`` reference; it defaults to the
    config file's directory and is required when loading from a stream
    that references prices.

    Raises:
        ParseError: the document does not match the schema.
        ConfigConflictError: a link's declared and length-derived losses
            disagree.
        ValidationError: the loaded network violates a model invariant;
            the message lists every violation.
    """
    if base_dir is None and not hasattr(source, "read"):
        base_dir = Path(source).parent
    try:
        doc = yaml.safe_load(_read_text(source))
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("config root must be a mapping")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ParseError(f"unknown top-level keys: {sorted(unknown)}")

    regions = []
    for entry in _mapping_list(doc.get("regions", []), "regions"):
        unknown = set(entry) - _REGION_KEYS
        if unknown:
            raise ParseError(f"region entry: unknown keys {sorted(unknown)}")
        if "id" not in entry or not isinstance(entry["id"], str):
            raise ParseError(f"region entry {entry!r}: 'id' must be a string")
        regions.append(Region(entry["id"], str(entry.get("name", ""))))

    links = []
    for entry in _mapping_list(doc.get("links", []), "links"):
        unknown = set(entry) - _LINK_KEYS
        if unknown:
            raise ParseError(f"link entry: unknown keys {sorted(unknown)}")
        for key in ("id", "from", "to"):
            if key not in entry or not isinstance(entry[key], str):
                raise ParseError(f"link entry {entry!r}: '{key}' must be a string")
        context = f"link '{entry['id']}'"
        capacity = _number(entry, "capacity_mw", context)
        length = _number(entry, "length_km", context) if "length_km" in entry else None
        links.append(
            Interconnector(
                id=entry["id"],
                endpoint_a=entry["from"],
                endpoint_b=entry["to"],
                capacity_mw=capacity,
                loss_fraction=_resolve_loss(entry, length, context),
                length_km=length,
            )
        )

    price_series: Iterable[PriceSeries] = ()
    ref = doc.get("prices_csv")
    if ref is not None:
        if not isinstance(ref, str):
            raise ParseError(f"'prices_csv' must be a path string, got {ref!r}")
        if base_dir is None:
            raise ParseError(
                "config references a prices_csv but no base_dir was given"
            )
        price_series = load_prices(Path(base_dir) / ref).values()

    network = Network(tuple(regions), tuple(links)).with_prices(price_series)
    report = validate_network(network)
    if report:
        raise ValidationError(
            "network config is invalid:\n" + "\n".join(f"- {v}" for v in report)
        )
    return network


def _mapping_list(value, name: str) -> list[dict]:
    if value is None:
        return []
    if not isinstance(value, list) or not all(isinstance(e, dict) for e in value):
        raise ParseError(f"'{name}' must be a list of mappings")
    return value


def _resolve_loss(entry: dict, length: float | None, context: str) -> float:
    """Loss fraction from a link entry, cross-checking redundant declarations."""
    declared = (
        _number(entry, "loss_fraction", context) if "loss_fraction" in entry else None
    )
    rate = (
        _number(entry, "loss_rate_per_100km", context)
        if "loss_rate_per_100km" in entry
        else None
    )
    derived = None
    if rate is not None:
        if length is None:
            raise ParseError(
                f"{context}: 'loss_rate_per_100km' requires 'length_km'"
            )
        try:
            derived = loss_from_length(length, rate)
        except ValueError as exc:
            raise ValidationError(f"{context}: {exc}") from exc
    if declared is not None and derived is not None:
        if abs(declared - derived) > 1e-12:
            raise ConfigConflictError(
                f"{context}: loss_fraction {declared} disagrees with "
                f"length-derived value {derived}"
            )
        return declared
    if declared is not None:
        return declared
    if derived is not None:
        return derived
    raise ParseError(
        f"{context}: needs 'loss_fraction' or 'length_km' + 'loss_rate_per_100km'"
    )


def network_to_yaml(network: Network, prices_csv: str | None = None) -> str:
    """Render a network to the config format, deterministically."""
    doc: dict = {"regions": [], "links": []}
    for region in network.regions:
        entry: dict = {"id": region.id}
        if region.name:
            entry["name"] = region.name
        doc["regions"].append(entry)
    for link in network.interconnectors:
        entry = {
            "id": link.id,
            "from": link.endpoint_a,
            "to": link.endpoint_b,
            "capacity_mw": link.capacity_mw,
            "loss_fraction": link.loss_fraction,
        }
        if link.length_km is not None:
            entry["length_km"] = link.length_km
        doc["links"].append(entry)
    if prices_csv is not None:
        doc["prices_csv"] = prices_csv
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False)


def save_network(
    network: Network,
    path: str | Path,
    prices_filename: str = "prices.csv",
) -> None:
    """Write the config file, plus the referenced price CSV if prices exist."""
    path = Path(path)
    ref = prices_filename if network.price_series else None
    path.write_text(network_to_yaml(network, ref), encoding="utf-8")
    if ref is not None:
        save_prices(network.price_series, path.parent / ref)


# ---------------------------------------------------------------------------
# reports


def write_report(
    result: Union[Schedule, PortfolioResult, Sequence[WheelingResult]],
    fmt: str = "csv",
    expected: dict | None = None,
) -> str:
    """Render a result as a document string.

    ``fmt`` is ``csv`` (schema fixed per result kind) or ``structured``
    (JSON carrying every decision). ``expected`` attaches a ledger of
    reference values to the structured form; the case-study command uses
    it to keep reported-vs-computed figures side by side.
    """
    if fmt == "csv":
        return _report_csv(result)
    if fmt == "structured":
        doc = _report_dict(result)
        if expected is not None:
            doc["expected"] = expected
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r} (use 'csv' or 'structured')")


def _report_csv(result) -> str:
    if isinstance(result, Schedule):
        return _report_csv_schedules([result])
    if isinstance(result, PortfolioResult):
        return _report_csv_schedules(result.schedules)
    return _report_csv_wheeling(result)


def _report_csv_schedules(schedules: Sequence[Schedule]) -> str:
    out = [SCHEDULE_CSV_HEADER]
    for schedule in schedules:
        for d in schedule.decisions:
            out.append(
                f"{d.timestep},{schedule.interconnector_id},{d.direction.value},"
                f"{d.quantity_mw!r},{d.marginal_value!r},{d.profit!r}"
            )
    return "\n".join(out) + "\n"


def _report_csv_wheeling(results: Sequence[WheelingResult]) -> str:
    out = [WHEELING_CSV_HEADER]
    for r in results:
        out.append(
            f"{r.scenario.value},{str(r.feasible).lower()},{r.gate_values[0]!r},"
            f"{r.gate_values[1]!r},{r.dispatched_mw!r},{r.profit!r}"
        )
    return "\n".join(out) + "\n"


def _decision_dict(d) -> dict:
    return {
        "timestep": d.timestep,
        "direction": d.direction.value,
        "quantity_mw": d.quantity_mw,
        "lambda_eur_mwh": d.marginal_value,
        "profit_eur": d.profit,
    }


def _schedule_dict(s: Schedule) -> dict:
    return {
        "link_id": s.interconnector_id,
        "total_profit_eur": s.total_profit,
        "decisions": [_decision_dict(d) for d in s.decisions],
    }


def _report_dict(result) -> dict:
    if isinstance(result, Schedule):
        return {"type": "schedule", **_schedule_dict(result)}
    if isinstance(result, PortfolioResult):
        return {
            "type": "portfolio",
            "grand_total_eur": result.grand_total,
            "annualized_eur": result.annualized,
            "schedules": [_schedule_dict(s) for s in result.schedules],
        }
    return {
        "type": "wheeling",
        "scenarios": [
            {
                "scenario": r.scenario.value,
                "feasible": r.feasible,
                "gate_a_eur_mwh": r.gate_values[0],
                "gate_b_eur_mwh": r.gate_values[1],
                "dispatched_mw": r.dispatched_mw,
                "profit_eur": r.profit,
            }
            for r in result
        ],
    }


# ---------------------------------------------------------------------------
# bundled case study


@dataclass(frozen=True)
class CaseStudyBundle:
    """The Irish four-link study: network, prices, and reference figures.

    ``expected`` maps link ids (plus totals and the annual extrapolation)
    to reported and independently computed profit values; the two disagree
    for some links, and the case-study report keeps both visible.
    """

    network: Network
    expected: dict

    @property
    def prices(self) -> dict[str, PriceSeries]:
        return {s.region_id: s for s in self.network.price_series}


def default_data_dir() -> Path:
    """Bundled case-study directory, overridable via HVDCARB_DATA_DIR."""
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return _BUNDLED_DATA


def load_case_study(data_dir: str | Path | None = None) -> CaseStudyBundle:
    """Load the bundled Irish case study through the regular file loaders."""
    directory = Path(data_dir) if data_dir is not None else default_data_dir()
    network = load_network(directory / "network.yaml")
    expected_path = directory / "expected.yaml"
    expected = {}
    if expected_path.exists():
        expected = yaml.safe_load(expected_path.read_text(encoding="utf-8")) or {}
    return CaseStudyBundle(network, expected)
