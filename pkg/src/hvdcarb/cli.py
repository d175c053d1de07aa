"""Command-line front door: evaluate, schedule, wheel, case-ireland, plot-data.

Batch-oriented: every command loads its inputs, computes, emits a
deterministic report, and exits. Exit codes: 0 success, 2 parse failure,
3 validation failure, 4 unresolvable reference.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .arbitrage import BiasPolicy, Direction, optimal_flow
from .dataio import (
    default_data_dir,
    load_case_study,
    load_network,
    load_prices,
    write_report,
)
from .errors import (
    AlignmentError,
    CapacityError,
    HvdcArbError,
    ParseError,
    ResolutionError,
    ValidationError,
)
from .model import Network, validate_network
from .scheduler import extrapolate_annual, schedule_portfolio
from .wheeling import WheelScenario, WheelingChain, evaluate_wheel

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RESOLUTION = 4


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, OSError) as exc:
        return _fail(exc, EXIT_PARSE)
    except ResolutionError as exc:
        return _fail(exc, EXIT_RESOLUTION)
    except (ValidationError, AlignmentError, CapacityError, ValueError) as exc:
        return _fail(exc, EXIT_VALIDATION)
    except HvdcArbError as exc:
        return _fail(exc, EXIT_VALIDATION)


def _fail(exc: Exception, code: int) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hvdcarb",
        description=(
            "Profit-optimal dispatch of lossy HVDC interconnectors from "
            "inter-area price spreads."
        ),
    )
    sub = parser.add_subparsers(required=True, metavar="command")

    p = sub.add_parser(
        "evaluate", help="optimal flow for one link at one timestep"
    )
    p.add_argument("link", help="interconnector id")
    p.add_argument(
        "-t",
        "--timestep",
        type=int,
        default=None,
        help="timestep to evaluate (default: first of the horizon)",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_evaluate)

    p = sub.add_parser(
        "schedule", help="optimal dispatch of every link over the horizon"
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_schedule)

    p = sub.add_parser(
        "wheel", help="3-area wheeling feasibility and profit at one timestep"
    )
    p.add_argument("area1", help="origin area id")
    p.add_argument("area2", help="transit area id")
    p.add_argument("area3", help="destination area id")
    p.add_argument(
        "--via",
        nargs=2,
        required=True,
        metavar=("LINK12", "LINK23"),
        help="link ids joining area1-area2 and area2-area3",
    )
    p.add_argument(
        "--transit-loss",
        type=float,
        default=0.0,
        help="loss fraction inside the transit area (default 0)",
    )
    p.add_argument(
        "--quantity", type=float, required=True, help="MW injected at the origin"
    )
    p.add_argument(
        "-t",
        "--timestep",
        type=int,
        default=None,
        help="timestep to evaluate (default: first of the horizon)",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_wheel)

    p = sub.add_parser(
        "case-ireland",
        help="reproduce the bundled Irish four-link study, reported vs computed",
    )
    p.add_argument("--out", type=Path, default=None, help="write a report here")
    p.add_argument(
        "--format",
        choices=("csv", "structured"),
        default="structured",
        help="report format for --out (default structured)",
    )
    p.set_defaults(handler=_cmd_case_ireland)

    p = sub.add_parser(
        "plot-data",
        help="long-format CSV of per-step marginal value, dispatch, cumulative profit",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_plotdata)

    return parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--network",
        type=Path,
        default=None,
        help="network config YAML (default: $HVDCARB_DATA_DIR/network.yaml "
        "or the bundled Irish study)",
    )
    p.add_argument(
        "--prices",
        type=Path,
        default=None,
        help="price CSV replacing the series referenced by the config",
    )
    p.add_argument(
        "--bias",
        type=float,
        default=0.0,
        help="minimum margin (EUR/MWh) required to dispatch; zero dispatches on "
        "any positive margin, which flips the link at full power for even "
        "negligible spreads, so set a bias to suppress low-return trades",
    )
    p.add_argument(
        "--duration-hours",
        type=float,
        default=1.0,
        help="length of one timestep in hours (default 1)",
    )
    p.add_argument(
        "--from",
        dest="t_from",
        type=int,
        default=None,
        help="first timestep of the analysis horizon",
    )
    p.add_argument(
        "--to",
        dest="t_to",
        type=int,
        default=None,
        help="last timestep of the analysis horizon",
    )
    p.add_argument("--out", type=Path, default=None, help="write the report here")
    p.add_argument(
        "--format",
        choices=("csv", "structured"),
        default="csv",
        help="report format (default csv)",
    )


def _load_run_network(args) -> Network:
    path = args.network if args.network is not None else default_data_dir() / "network.yaml"
    network = load_network(path)
    if args.prices is not None:
        network = network.with_prices(load_prices(args.prices).values())
    if args.t_from is not None or args.t_to is not None:
        network = network.with_prices(
            s.restricted(args.t_from, args.t_to) for s in network.price_series
        )
    if args.prices is not None or args.t_from is not None or args.t_to is not None:
        report = validate_network(network)
        if report:
            raise ValidationError(
                "inputs are invalid:\n" + "\n".join(f"- {v}" for v in report)
            )
    if not (args.duration_hours > 0):
        raise ValueError(f"--duration-hours must be > 0, got {args.duration_hours}")
    return network


def _pick_timestep(network: Network, requested: int | None) -> int:
    if requested is not None:
        return requested
    timesteps = sorted({t for s in network.price_series for t in s.timesteps})
    if not timesteps:
        raise ResolutionError("no priced timesteps in the loaded data")
    return timesteps[0]


def _price_at(network: Network, region_id: str, t: int) -> float:
    try:
        return network.prices_for(region_id).price_at(t)
    except KeyError:
        raise ResolutionError(f"no price for region '{region_id}' at timestep {t}")


def _emit(args, document: str) -> None:
    if args.out is not None:
        args.out.write_text(document, encoding="utf-8")
        print(f"report written to {args.out}")
    else:
        print(document, end="")


def _cmd_evaluate(args) -> int:
    network = _load_run_network(args)
    try:
        link = network.link(args.link)
    except KeyError:
        raise ResolutionError(f"unknown link '{args.link}'")
    t = _pick_timestep(network, args.timestep)
    p_a = _price_at(network, link.endpoint_a, t)
    p_b = _price_at(network, link.endpoint_b, t)
    decision = optimal_flow(
        p_a,
        p_b,
        link.loss_fraction,
        link.capacity_mw,
        BiasPolicy(args.bias).r_b,
        args.duration_hours,
        t,
    )
    print(f"link: {link.id}")
    print(f"timestep: {decision.timestep}")
    print(f"direction: {_describe_direction(decision.direction, link)}")
    print(f"quantity_mw: {decision.quantity_mw!r}")
    print(f"lambda_eur_mwh: {decision.marginal_value!r}")
    print(f"profit_eur: {decision.profit!r}")
    return EXIT_OK


def _describe_direction(direction: Direction, link) -> str:
    if direction is Direction.A_TO_B:
        return f"{direction.value} ({link.endpoint_a} -> {link.endpoint_b})"
    if direction is Direction.B_TO_A:
        return f"{direction.value} ({link.endpoint_b} -> {link.endpoint_a})"
    return direction.value


def _cmd_schedule(args) -> int:
    network = _load_run_network(args)
    result = schedule_portfolio(
        network, None, BiasPolicy(args.bias), args.duration_hours
    )
    print(f"links_scheduled: {len(result.schedules)}")
    print(f"grand_total_eur: {result.grand_total!r}")
    print(f"annualized_eur: {result.annualized!r}")
    if args.out is not None:
        _emit(args, write_report(result, args.format))
    return EXIT_OK


def _cmd_wheel(args) -> int:
    network = _load_run_network(args)
    for area in (args.area1, args.area2, args.area3):
        try:
            network.region(area)
        except KeyError:
            raise ResolutionError(f"unknown region '{area}'")
    try:
        link12 = network.link(args.via[0])
        link23 = network.link(args.via[1])
    except KeyError as exc:
        raise ResolutionError(f"unknown link {exc}")
    try:
        chain = WheelingChain(
            args.area1, args.area2, args.area3, link12, link23, args.transit_loss
        )
    except ValueError as exc:
        raise ResolutionError(f"chain does not resolve: {exc}")
    t = _pick_timestep(network, args.timestep)
    p1 = _price_at(network, args.area1, t)
    p2 = _price_at(network, args.area2, t)
    p3 = _price_at(network, args.area3, t)
    results = evaluate_wheel(chain, p1, p2, p3, args.quantity, args.duration_hours)
    routes = {
        WheelScenario.S123: f"{args.area1} -> {args.area2} -> {args.area3}",
        WheelScenario.S321: f"{args.area3} -> {args.area2} -> {args.area1}",
    }
    print(f"timestep: {t}")
    for r in results:
        print(f"scenario: {r.scenario.value} ({routes[r.scenario]})")
        print(f"  gate_a_eur_mwh: {r.gate_values[0]!r}")
        print(f"  gate_b_eur_mwh: {r.gate_values[1]!r}")
        print(f"  feasible: {str(r.feasible).lower()}")
        print(f"  dispatched_mw: {r.dispatched_mw!r}")
        print(f"  profit_eur: {r.profit!r}")
    if args.out is not None:
        _emit(args, write_report(results, args.format))
    return EXIT_OK


def _cmd_case_ireland(args) -> int:
    bundle = load_case_study()
    result = schedule_portfolio(bundle.network, None, BiasPolicy(0.0), 1.0)
    expected_links = bundle.expected.get("links", {})
    expected_totals = bundle.expected.get("totals", {})
    annual = bundle.expected.get("annual", {})

    print("Irish interconnector case study (one hour, zero bias)")
    print()
    print(f"{'link':<10} {'computed_eur':>13} {'reported_eur':>13} {'delta_eur':>10} status")
    rows = [
        (s.interconnector_id, s.total_profit, expected_links.get(s.interconnector_id, {}))
        for s in result.schedules
    ]
    rows.append(("total", result.grand_total, expected_totals))
    for name, computed, expected in rows:
        reported = expected.get("reported_eur")
        if reported is None:
            print(f"{name:<10} {computed!r:>13} {'?':>13} {'?':>10} unchecked")
            continue
        delta = computed - reported
        status = "match" if abs(delta) < 0.005 else "delta"
        print(f"{name:<10} {computed!r:>13} {reported!r:>13} {delta!r:>10} {status}")
    print()
    print(f"annualized_computed_eur: {result.annualized!r}")
    reported_total = expected_totals.get("reported_eur")
    if reported_total is not None:
        print(f"annualized_reported_eur: {extrapolate_annual(reported_total)!r}")
    threshold = annual.get("claim_exceeds_eur")
    if threshold is not None:
        both = result.annualized > threshold and (
            reported_total is None or extrapolate_annual(reported_total) > threshold
        )
        print(f"annual_income_exceeds_{threshold!r}_eur: {str(both).lower()}")
    if args.out is not None:
        _emit(args, write_report(result, args.format, expected=bundle.expected))
    return EXIT_OK


def _cmd_plotdata(args) -> int:
    network = _load_run_network(args)
    result = schedule_portfolio(
        network, None, BiasPolicy(args.bias), args.duration_hours
    )
    lines = ["timestep,link_id,lambda_eur_mwh,quantity_mw,cumulative_profit_eur"]
    for schedule in result.schedules:
        running = 0.0
        for d in schedule.decisions:
            running += d.profit
            lines.append(
                f"{d.timestep},{schedule.interconnector_id},"
                f"{d.marginal_value!r},{d.quantity_mw!r},{running!r}"
            )
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
