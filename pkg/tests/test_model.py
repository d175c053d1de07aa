"""Domain types, loss model, and network validation."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hvdcarb import (
    CapacityProfile,
    Interconnector,
    InvalidLossError,
    Network,
    PriceSeries,
    Region,
    loss_from_length,
    validate_network,
)


class TestLossFromLength:
    def test_moyle_length(self):
        assert loss_from_length(63.5, 0.01) == 0.00635

    def test_zero_length(self):
        assert loss_from_length(0, 0.01) == 0.0

    def test_celtic_length(self):
        assert loss_from_length(575, 0.01) == 0.0575

    def test_negative_length_rejected(self):
        with pytest.raises(ValueError):
            loss_from_length(-1, 0.01)

    def test_rate_at_one_rejected(self):
        with pytest.raises(ValueError):
            loss_from_length(10, 1.0)

    def test_lossy_beyond_one_rejected(self):
        with pytest.raises(InvalidLossError):
            loss_from_length(20000, 0.01)

    @given(
        a=st.floats(min_value=0, max_value=4000),
        b=st.floats(min_value=0, max_value=4000),
        rate=st.floats(min_value=0, max_value=0.01),
    )
    def test_linear_in_length(self, a, b, rate):
        combined = loss_from_length(a + b, rate)
        split = loss_from_length(a, rate) + loss_from_length(b, rate)
        assert abs(combined - split) <= 1e-12


class TestPriceSeries:
    def test_price_at(self):
        s = PriceSeries("x", ((1, 10.0), (2, 20.0)))
        assert s.price_at(2) == 20.0
        with pytest.raises(KeyError):
            s.price_at(3)

    def test_restricted(self):
        s = PriceSeries("x", ((1, 10.0), (2, 20.0), (3, 30.0)))
        assert s.restricted(2, 3).timesteps == (2, 3)
        assert s.restricted(None, 1).prices == (10.0,)
        assert s.restricted(4).steps == ()

    def test_fractional_timestep_rejected(self):
        with pytest.raises(ValueError):
            PriceSeries("x", ((1.5, 10.0),))

    def test_violations_out_of_order(self):
        s = PriceSeries("x", ((2, 10.0), (1, 20.0)))
        assert any("strictly increasing" in v for v in s.violations())

    def test_violations_non_finite(self):
        s = PriceSeries("x", ((1, float("nan")),))
        assert any("non-finite" in v for v in s.violations())


class TestCapacityProfile:
    def test_constant(self, celtic):
        profile = CapacityProfile.constant(celtic, (1, 2, 3))
        assert profile.interconnector_id == "celtic"
        assert profile.steps == ((1, 700.0), (2, 700.0), (3, 700.0))

    def test_negative_cap_is_violation(self):
        p = CapacityProfile("x", ((1, -5.0),))
        assert len(p.violations()) == 1


class TestNetworkLookups:
    def test_lookups(self, bundle):
        net = bundle.network
        assert net.region("ireland").name == "Ireland"
        assert net.link("celtic").capacity_mw == 700.0
        assert net.prices_for("france").price_at(1) == 50.0
        with pytest.raises(KeyError):
            net.link("nordlink")

    def test_with_prices_orders_by_region_declaration(self, bundle, one_hour_prices):
        shuffled = [
            one_hour_prices["france"],
            one_hour_prices["ireland"],
            one_hour_prices["wales"],
            one_hour_prices["scotland"],
        ]
        net = bundle.network.with_prices(shuffled)
        assert [s.region_id for s in net.price_series] == [
            "ireland",
            "scotland",
            "wales",
            "france",
        ]


class TestValidateNetwork:
    def test_bundled_network_is_clean(self, bundle):
        assert validate_network(bundle.network) == []

    def test_loss_fraction_at_one(self):
        net = Network(
            (Region("a"), Region("b")),
            (Interconnector("ab", "a", "b", 100.0, 1.0),),
            (PriceSeries("a", ((1, 1.0),)), PriceSeries("b", ((1, 1.0),))),
        )
        report = validate_network(net)
        assert len(report) == 1
        assert "ab" in report[0] and "loss_fraction" in report[0]

    def test_unknown_endpoint_region(self):
        net = Network(
            (Region("a"),),
            (Interconnector("ab", "a", "b", 100.0, 0.0),),
            (PriceSeries("a", ((1, 1.0),)),),
        )
        report = validate_network(net)
        assert any("'b' is not a declared region" in v for v in report)

    def test_empty_network_is_clean(self):
        assert validate_network(Network()) == []

    @pytest.mark.parametrize(
        "link, expected",
        [
            (Interconnector("x", "a", "a", 100.0, 0.0), "both endpoints"),
            (Interconnector("x", "a", "b", -1.0, 0.0), "capacity_mw"),
            (Interconnector("x", "a", "b", 100.0, -0.2), "loss_fraction"),
            (Interconnector("x", "a", "b", 100.0, 0.0, length_km=-5.0), "length_km"),
        ],
    )
    def test_link_invariants(self, link, expected):
        assert any(expected in v for v in link.violations())

    def test_duplicate_region_ids(self):
        net = Network((Region("a"), Region("a")))
        assert any("duplicate region id" in v for v in validate_network(net))

    def test_duplicate_link_ids(self):
        link = Interconnector("ab", "a", "b", 1.0, 0.0)
        net = Network(
            (Region("a"), Region("b")),
            (link, link),
            (PriceSeries("a", ((1, 1.0),)), PriceSeries("b", ((1, 1.0),))),
        )
        assert any("duplicate interconnector id" in v for v in validate_network(net))

    def test_linked_region_without_prices(self):
        net = Network(
            (Region("a"), Region("b")),
            (Interconnector("ab", "a", "b", 100.0, 0.0),),
            (PriceSeries("a", ((1, 1.0),)),),
        )
        assert any("no price series" in v for v in validate_network(net))

    def test_unknown_series_region(self):
        net = Network((Region("a"),), (), (PriceSeries("zz", ((1, 1.0),)),))
        assert any("unknown region 'zz'" in v for v in validate_network(net))

    def test_linked_horizons_must_match(self):
        net = Network(
            (Region("a"), Region("b")),
            (Interconnector("ab", "a", "b", 100.0, 0.0),),
            (
                PriceSeries("a", ((1, 1.0), (2, 1.0))),
                PriceSeries("b", ((1, 1.0),)),
            ),
        )
        assert any("horizon" in v for v in validate_network(net))

    def test_unpriced_unlinked_region_is_fine(self, bundle):
        # northern_ireland carries no link and needs no series
        assert "northern_ireland" in {r.id for r in bundle.network.regions}
        assert validate_network(bundle.network) == []
