"""Three-area wheeling: gates, profits, feasibility, oracles."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hvdcarb import (
    CapacityError,
    Interconnector,
    WheelingChain,
    WheelScenario,
    evaluate_wheel,
    wheel_gates_123,
    wheel_gates_321,
    wheel_profit_123,
    wheel_profit_321,
)

positive_prices = st.floats(min_value=0.1, max_value=200)
losses = st.floats(min_value=0, max_value=0.2)


def make_chain(r1=0.02, r2=0.02, c=0.01, cap1=1000.0, cap2=1000.0):
    return WheelingChain(
        "one",
        "two",
        "three",
        Interconnector("l12", "one", "two", cap1, r1),
        Interconnector("l23", "two", "three", cap2, r2),
        c,
    )


def forwarding_oracle(p1, p2, p3, r1, r2, c):
    """Scenario feasibility by shipping one MWh leg by leg.

    Each hand-off must add value on its own: the energy surviving a leg,
    valued at the leg's destination, must beat what it cost to buy.
    """
    first_leg = 1.0 * (1 - r1)  # one -> two over l12
    second_leg = 1.0 * (1 - c) * (1 - r2)  # two -> three, transit then l23
    s123 = p2 * first_leg > p1 and p3 * second_leg > p2
    first_leg_back = 1.0 * (1 - r2)  # three -> two over l23
    second_leg_back = 1.0 * (1 - c) * (1 - r1)  # two -> one, transit then l12
    s321 = p2 * first_leg_back > p3 and p1 * second_leg_back > p2
    return s123, s321


class TestGates123:
    def test_rising_price_chain_is_feasible(self):
        gate_a, gate_b = wheel_gates_123(50, 75, 100, 0.02, 0.02, 0.01)
        assert gate_a == pytest.approx(22.02, rel=1e-9)
        assert gate_b == pytest.approx(23.5, rel=1e-9)
        assert gate_a > 0 and gate_b > 0

    def test_flat_lossless_chain_is_not(self):
        assert wheel_gates_123(80, 80, 80, 0, 0, 0) == (0.0, 0.0)

    def test_falling_price_chain_is_not(self):
        gate_a, gate_b = wheel_gates_123(100, 75, 50, 0.02, 0.02, 0.01)
        assert gate_a < 0 and gate_b < 0

    def test_bad_loss_rejected(self):
        with pytest.raises(ValueError):
            wheel_gates_123(1, 1, 1, 1.0, 0, 0)


class TestProfit123:
    def test_rising_chain_profit(self):
        assert wheel_profit_123(50, 100, 0.02, 0.02, 0.01, 100, 1) == pytest.approx(
            4507.96, rel=1e-9
        )

    def test_flat_lossless_chain_earns_nothing(self):
        assert wheel_profit_123(80, 80, 0, 0, 0, 250, 1) == 0.0

    def test_raw_value_goes_negative_on_falling_chain(self):
        assert wheel_profit_123(100, 50, 0.02, 0.02, 0.01, 100, 1) == -5246.02

    def test_negative_quantity_rejected(self):
        with pytest.raises(ValueError):
            wheel_profit_123(50, 100, 0.02, 0.02, 0.01, -1)


class TestScenario321Mirrors:
    def test_mirrored_rising_chain(self):
        gate_a, gate_b = wheel_gates_321(100, 75, 50, 0.02, 0.02, 0.01)
        assert gate_a == pytest.approx(22.02, rel=1e-9)
        assert gate_b == pytest.approx(23.5, rel=1e-9)
        assert wheel_profit_321(100, 50, 0.02, 0.02, 0.01, 100, 1) == pytest.approx(
            4507.96, rel=1e-9
        )

    def test_mirrored_infeasible(self):
        gate_a, gate_b = wheel_gates_321(50, 75, 100, 0.02, 0.02, 0.01)
        assert gate_a < 0 and gate_b < 0

    def test_flat_lossless(self):
        assert wheel_gates_321(80, 80, 80, 0, 0, 0) == (0.0, 0.0)


class TestEvaluateWheel:
    def test_rising_chain_feasible_one_way_only(self):
        s123, s321 = evaluate_wheel(make_chain(), 50, 75, 100, 100)
        assert s123.scenario is WheelScenario.S123
        assert s123.feasible and not s321.feasible
        assert s123.dispatched_mw == 100.0
        assert s123.profit == pytest.approx(4507.96, rel=1e-9)
        assert s321.dispatched_mw == 0.0 and s321.profit == 0.0

    def test_flat_prices_infeasible_both_ways(self):
        s123, s321 = evaluate_wheel(make_chain(), 80, 80, 80, 100)
        assert not s123.feasible and not s321.feasible

    def test_second_leg_capacity_binds_post_loss(self):
        # 100 MW injected arrives at the second leg as 100*(1-r1)*(1-c)
        chain = make_chain(cap2=97.0)
        with pytest.raises(CapacityError) as err:
            evaluate_wheel(chain, 50, 75, 100, 100)
        assert err.value.binding_link == "l23"
        # under the post-loss flow it fits
        ok_chain = make_chain(cap2=97.1)
        s123, _ = evaluate_wheel(ok_chain, 50, 75, 100, 100)
        assert s123.feasible

    def test_first_leg_capacity_binds_at_injection(self):
        with pytest.raises(CapacityError) as err:
            evaluate_wheel(make_chain(cap1=99.0), 50, 75, 100, 100)
        assert err.value.binding_link == "l12"

    def test_infeasible_scenario_skips_capacity_check(self):
        # flat prices: nothing dispatches, so tiny caps are irrelevant
        s123, s321 = evaluate_wheel(make_chain(cap1=1.0, cap2=1.0), 80, 80, 80, 100)
        assert not s123.feasible and not s321.feasible

    def test_negative_request_rejected(self):
        with pytest.raises(ValueError):
            evaluate_wheel(make_chain(), 50, 75, 100, -1)

    def test_chain_must_connect(self):
        far = Interconnector("far", "four", "five", 100.0, 0.0)
        with pytest.raises(ValueError, match="does not connect"):
            WheelingChain("one", "two", "three", far, far, 0.0)

    def test_transit_loss_range(self):
        link12 = Interconnector("l12", "one", "two", 100.0, 0.0)
        link23 = Interconnector("l23", "two", "three", 100.0, 0.0)
        with pytest.raises(ValueError):
            WheelingChain("one", "two", "three", link12, link23, 1.0)

    def test_mirror_symmetry(self):
        chain = make_chain(r1=0.03, r2=0.07, c=0.02)
        reversed_chain = WheelingChain(
            "three", "two", "one", chain.link23, chain.link12, chain.transit_loss_c
        )
        for p1, p2, p3 in [(50, 75, 100), (100, 75, 50), (60, 90, 70), (80, 80, 80)]:
            s123, s321 = evaluate_wheel(chain, p1, p2, p3, 10)
            m123, m321 = evaluate_wheel(reversed_chain, p3, p2, p1, 10)
            assert m123.gate_values == s321.gate_values
            assert m123.feasible == s321.feasible
            assert m123.profit == s321.profit
            assert m321.gate_values == s123.gate_values
            assert m321.feasible == s123.feasible
            assert m321.profit == s123.profit


class TestWheelingProperties:
    @given(
        p1=positive_prices,
        p2=positive_prices,
        p3=positive_prices,
        r1=losses,
        r2=losses,
        c=losses,
    )
    def test_never_feasible_both_ways_for_positive_prices(self, p1, p2, p3, r1, r2, c):
        # negative prices can make losing power profitable in both
        # directions at once; positive prices cannot
        g123 = wheel_gates_123(p1, p2, p3, r1, r2, c)
        g321 = wheel_gates_321(p1, p2, p3, r1, r2, c)
        feasible_123 = g123[0] > 0 and g123[1] > 0
        feasible_321 = g321[0] > 0 and g321[1] > 0
        assert not (feasible_123 and feasible_321)

    @given(
        p1=positive_prices,
        p2=positive_prices,
        p3=positive_prices,
        x=st.floats(min_value=0, max_value=500),
    )
    def test_lossless_case_reduces_to_monotone_chain(self, p1, p2, p3, x):
        gate_a, gate_b = wheel_gates_123(p1, p2, p3, 0, 0, 0)
        assert (gate_a > 0 and gate_b > 0) == (p3 > p2 > p1)
        assert wheel_profit_123(p1, p3, 0, 0, 0, x) == (p3 - p1) * x

    def test_feasibility_matches_forwarding_oracle(self):
        rng = random.Random(4040)
        for _ in range(10_000):
            p1, p2, p3 = (rng.uniform(-50, 200) for _ in range(3))
            r1, r2, c = (rng.uniform(0, 0.2) for _ in range(3))
            g123 = wheel_gates_123(p1, p2, p3, r1, r2, c)
            g321 = wheel_gates_321(p1, p2, p3, r1, r2, c)
            want_123, want_321 = forwarding_oracle(p1, p2, p3, r1, r2, c)
            assert (g123[0] > 0 and g123[1] > 0) == want_123
            assert (g321[0] > 0 and g321[1] > 0) == want_321

    def test_feasible_gates_imply_positive_profit(self):
        rng = random.Random(5050)
        checked = 0
        for _ in range(10_000):
            p1, p2, p3 = (rng.uniform(-50, 200) for _ in range(3))
            r1, r2, c = (rng.uniform(0, 0.2) for _ in range(3))
            g123 = wheel_gates_123(p1, p2, p3, r1, r2, c)
            if g123[0] > 0 and g123[1] > 0:
                assert wheel_profit_123(p1, p3, r1, r2, c, 1.0) > 0
                checked += 1
            g321 = wheel_gates_321(p1, p2, p3, r1, r2, c)
            if g321[0] > 0 and g321[1] > 0:
                assert wheel_profit_321(p1, p3, r1, r2, c, 1.0) > 0
                checked += 1
        assert checked > 100  # the sample actually exercises feasible cases

    def test_profit_strictly_decreasing_in_each_loss(self):
        base = dict(r1=0.02, r2=0.02, c=0.01)
        reference = wheel_profit_123(50, 100, x=100.0, **base)
        for key in base:
            worse = dict(base, **{key: base[key] + 0.05})
            assert wheel_profit_123(50, 100, x=100.0, **worse) < reference
