# SPDX-License-Identifier: MIT

"""
ransim_physics.py

Property tests for the radio and energy models: path loss, channel gain,
SINR and Shannon rate, BS load and power consumption, and the CQI table.
Randomized checks draw 1000 cases from a seeded generator.
"""

import math

import numpy as np
import pytest

from intent_ran.ransim import CqiTableConfig, ScenarioConfig
from intent_ran.ransim.channel import (
    antenna_term_db,
    channel_gain,
    dbm_to_mw,
    dbm_to_watts,
    link_distance,
    noise_mw,
    path_loss,
    shannon_rate,
    sinr_linear,
)
from intent_ran.ransim.cqi import CqiTable, default_cqi_table
from intent_ran.ransim.energy import (
    bs_energy_w,
    compute_load,
    energy_from_load,
    max_power_w,
)
from intent_ran.ransim.exceptions import CapacityError, ConfigError, DomainError

CASES = 1000


@pytest.fixture
def rng():
    """Seeded generator for the randomized properties"""
    return np.random.default_rng(2024)


class TestPathLossAndGain:
    """Path loss and channel gain."""

    @pytest.mark.ransim
    def test_reference_values(self):
        """100 m at 3.5 GHz, and the unit case."""
        assert path_loss(100.0, 3.5) == pytest.approx(82.881, abs=1e-3)
        assert path_loss(1.0, 1.0) == pytest.approx(28.0, abs=1e-12)

    @pytest.mark.ransim
    def test_doubling_distance(self, rng):
        """Doubling the distance adds 22 log10(2) dB and always increases the loss."""
        for d in rng.uniform(1.0, 5000.0, CASES):
            delta = path_loss(2 * d, 3.5) - path_loss(d, 3.5)
            assert delta == pytest.approx(22 * math.log10(2), abs=1e-9)
            assert delta > 0
        assert 22 * math.log10(2) == pytest.approx(6.623, abs=1e-3)

    @pytest.mark.ransim
    def test_non_positive_distance(self):
        """The logarithm needs a positive distance."""
        with pytest.raises(DomainError):
            path_loss(0.0, 3.5)
        with pytest.raises(DomainError):
            path_loss(np.array([10.0, -1.0]), 3.5)

    @pytest.mark.ransim
    def test_gain_reference_values(self):
        """Untilted and 15 degree gain on a 100 m link without shadowing."""
        loss = path_loss(100.0, 3.5)
        assert channel_gain(0.0, loss, 0.0) == pytest.approx(-72.881, abs=1e-3)
        assert channel_gain(15.0, loss, 0.0) == pytest.approx(-72.580, abs=1e-3)

    @pytest.mark.ransim
    def test_gain_against_shadowing_and_tilt(self, rng):
        """Gain falls with shadowing; the tilt term grows with the angle."""
        for loss, alpha in zip(rng.uniform(60, 140, CASES), rng.uniform(-15, 15, CASES)):
            assert channel_gain(5.0, loss, alpha + 0.5) < channel_gain(5.0, loss, alpha)
        angles = np.linspace(0.0, 89.0, 200)
        assert np.all(np.diff(antenna_term_db(angles)) > 0)

    @pytest.mark.ransim
    def test_angle_domain(self):
        """The cosine must stay positive."""
        with pytest.raises(DomainError):
            antenna_term_db(90.0)
        with pytest.raises(DomainError):
            channel_gain(-1.0, 80.0, 0.0)

    @pytest.mark.ransim
    def test_link_distance_includes_altitude(self):
        """A UE under the mast is `altitude` away."""
        distance = link_distance([[0.0, 0.0], [30.0, 40.0]], [[0.0, 0.0]], 25.0)
        assert distance.shape == (2, 1)
        assert distance[0, 0] == pytest.approx(25.0)
        assert distance[1, 0] == pytest.approx(math.sqrt(25.0**2 + 50.0**2))


class TestSinrAndRate:
    """SINR and Shannon rate."""

    @pytest.mark.ransim
    def test_unit_conversions(self):
        """50 dBm is 100 W; 0 dBm is 1 mW."""
        assert dbm_to_watts(50.0) == pytest.approx(100.0)
        assert dbm_to_mw(0.0) == pytest.approx(1.0)

    @pytest.mark.ransim
    def test_noise_over_one_rb(self):
        """-174 dBm/Hz over 180 kHz."""
        expected = 10 ** ((-174 + 10 * math.log10(180e3)) / 10)
        assert noise_mw(-174.0, 180e3) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.ransim
    def test_no_rbs_no_rate(self):
        """Zero RBs carry nothing."""
        assert shannon_rate(0, 180e3, 100.0) == 0.0

    @pytest.mark.ransim
    def test_interference_lowers_the_rate(self, rng):
        """Doubling an interferer's power strictly lowers the rate."""
        for _ in range(CASES):
            signal, interferer, noise = rng.uniform(1e-9, 1e-3, 3)
            rbs = int(rng.integers(1, 223))
            before = shannon_rate(rbs, 180e3, sinr_linear(signal, interferer, noise))
            after = shannon_rate(rbs, 180e3, sinr_linear(signal, 2 * interferer, noise))
            assert after < before

    @pytest.mark.ransim
    def test_rate_against_straight_line_formula(self, rng):
        """The vectorized rate equals r B log2(1 + S / (I + N)) computed by hand."""
        signal = rng.uniform(1e-9, 1e-3, CASES)
        interference = rng.uniform(0.0, 1e-3, CASES)
        noise = rng.uniform(1e-12, 1e-9, CASES)
        rbs = rng.integers(1, 223, CASES)
        rates = shannon_rate(rbs, 180e3, sinr_linear(signal, interference, noise))
        for i in range(CASES):
            expected = rbs[i] * 180e3 * math.log2(
                1 + signal[i] / (interference[i] + noise[i])
            )
            assert rates[i] == pytest.approx(expected, rel=1e-9)


class TestEnergy:
    """Load and BS power consumption."""

    @pytest.mark.ransim
    def test_reference_energy(self):
        """50 dBm: p_max = 2499.44 W and E = 1874.58 W at half load, half mix."""
        p_max = max_power_w(50.0, 21.45, 354.44)
        assert p_max == pytest.approx(2499.44, abs=1e-6)
        assert energy_from_load(0.5, p_max, 0.5) == pytest.approx(1874.58, abs=1e-6)

    @pytest.mark.ransim
    def test_regimes(self):
        """Fully proportional and idle is zero; full load is p_max whatever the mix."""
        assert energy_from_load(0.0, 2000.0, 0.0) == 0.0
        for mix in (0.0, 0.3, 1.0):
            assert energy_from_load(1.0, 2000.0, mix) == pytest.approx(2000.0)

    @pytest.mark.ransim
    def test_affine_in_load(self, rng):
        """Slope (1 - eta) p_max, checked at loads 0, 0.5 and 1."""
        for p_max, mix in zip(rng.uniform(400, 5000, CASES), rng.uniform(0, 1, CASES)):
            e0, e_half, e1 = (energy_from_load(t, p_max, mix) for t in (0.0, 0.5, 1.0))
            assert e_half - e0 == pytest.approx(0.5 * (1 - mix) * p_max, rel=1e-9, abs=1e-9)
            assert e1 - e_half == pytest.approx(e_half - e0, rel=1e-9, abs=1e-9)

    @pytest.mark.ransim
    def test_sleeping_bs_draws_standby(self):
        """Sleep replaces the load model by the standby power."""
        energy = bs_energy_w(
            np.array([0.5, 0.5]), np.array([50.0, 50.0]), np.array([False, True]),
            21.45, 354.44, 0.5, 12.0,
        )
        assert energy[0] == pytest.approx(1874.58, abs=1e-6)
        assert energy[1] == 12.0

    @pytest.mark.ransim
    def test_load(self):
        """Allocated share of the RBs of a BS."""
        assert ScenarioConfig().num_rbs == 222
        assert compute_load(0, 222, []) == 0.0
        assert compute_load(0, 222, [222]) == 1.0
        assert compute_load(0, 222, [100, 11]) == 0.5

    @pytest.mark.ransim
    def test_over_allocation(self):
        """More RBs than the BS owns."""
        with pytest.raises(CapacityError) as excinfo:
            compute_load(3, 222, [200, 30])
        assert excinfo.value.bs_id == 3
        assert excinfo.value.allocated == 230


class TestCqiTable:
    """SINR to CQI mapping."""

    @pytest.mark.ransim
    def test_default_table(self):
        """15 monotone levels between -6.7 and 22.7 dB."""
        table = default_cqi_table()
        assert table.levels == 15
        assert table.sinr_thresholds_db[0] == -6.7
        assert table.top_sinr_db == 22.7
        assert table.coding_rates[-1] == 0.926
        assert table.rb_bits[0] == 12 * 14 * 2
        assert table.rb_bits[-1] == 12 * 14 * 6

    @pytest.mark.ransim
    def test_levels(self):
        """Below the first threshold is level 0, the top threshold is level 15."""
        table = default_cqi_table()
        assert table.level(-20.0) == 0
        assert table.level(-np.inf) == 0
        assert table.level(-6.7) == 1
        assert table.level(40.0) == 15
        assert list(table.level(np.array([-20.0, 22.7]))) == [0, 15]
        assert not table.schedulable(0)
        assert table.schedulable(15)
        assert list(table.schedulable_mask([0, 1, 15])) == [False, True, True]

    @pytest.mark.ransim
    def test_custom_table(self):
        """A configured table replaces the default, and must be monotone."""
        config = CqiTableConfig(
            sinr_thresholds_db=(0.0, 10.0),
            coding_rates=(0.5, 0.9),
            rb_bits=(320, 640),
            max_coding_rate=0.8,
        )
        table = CqiTable.from_config(config)
        assert table.tti_bits(1, 2) == pytest.approx(320.0)
        assert not table.schedulable(2)
        with pytest.raises(ConfigError):
            CqiTable((0.0, -1.0), (0.5, 0.9), (320, 640), 1.0)
