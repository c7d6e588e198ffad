"""Rate-loss accounting and the comparison tables, frozen cell by cell."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from womkit.core import CodeParams, wom_rate
from womkit.rates import (
    PRESETS,
    NdRate,
    counter_cells,
    emit_rate_table,
    preset_rows,
    rate_loss_basic,
    rate_loss_sync,
    rate_report,
)

# Expected CSV output per preset.  Rates carry 4 decimals, percents and
# reduction factors 2, all rounded half-up as in the published tables.
HEADER = (
    "q,target_n,t_nd,R_nd,basic_rate,gamma_basic_pct,"
    "sync_code,sync_rate,gamma_sync_pct,reduction_factor\n"
)

GOLDEN = {
    "tableV": HEADER
    + '2,64,4,1.8566,1.7696,4.69,"[3,4:1,3,1,1]",1.7943,3.35,1.40\n'
    + '2,64,4,1.8566,1.7696,4.69,"[5,4:1,5,3,6]",1.8130,2.35,2.00\n'
    + '2,64,5,1.9689,1.8458,6.25,"[4,5:1,4,3,1,1]",1.9019,3.41,1.84\n'
    + '2,64,6,2.1331,1.9665,7.81,"[5,6:1,5,3,2,1,1]",2.0431,4.22,1.85\n'
    + '2,64,7,2.1723,1.9686,9.38,"[6,7:1,6,5,3,1,1,1]",2.0701,4.71,1.99\n'
    + '2,64,7,2.1723,1.9686,9.38,"[8,7:1,8,4,6,3,4,2]",2.0909,3.75,2.50\n',
    "tableVI": HEADER
    + '2,256,4,1.8566,1.8348,1.17,"[3,4:1,3,1,1]",1.8410,0.84,1.40\n'
    + '2,256,4,1.8566,1.8348,1.17,"[5,4:1,5,3,6]",1.8457,0.59,2.00\n'
    + '2,256,5,1.9689,1.9381,1.56,"[4,5:1,4,3,1,1]",1.9521,0.85,1.84\n'
    + '2,256,6,2.1331,2.0914,1.95,"[5,6:1,5,3,2,1,1]",2.1106,1.05,1.85\n'
    + '2,256,7,2.1723,2.1214,2.34,"[6,7:1,6,5,3,1,1,1]",2.1467,1.18,1.99\n'
    + '2,256,7,2.1723,2.1214,2.34,"[8,7:1,8,4,6,3,4,2]",2.1520,0.94,2.50\n',
    "tableVII": HEADER
    + '4,64,5,3.9328,3.8099,3.13,"[2,5:1,2,2,3,3]_4",3.8907,1.07,2.92\n'
    + '4,64,6,4.2594,4.1263,3.13,"[2,6:1,2,2,3,2,1]_4",4.1979,1.44,2.17\n'
    + '4,64,7,4.3394,4.2038,3.13,"[2,7:1,2,2,2,1,1,1]_4",4.2507,2.04,1.53\n'
    + '4,64,8,4.5088,4.2975,4.69,"[3,8:1,3,3,3,2,1,1,3]_4",4.4121,2.14,2.19\n'
    + '4,64,9,4.5836,4.3687,4.69,"[3,9:1,3,3,3,2,1,1,1,2]_4",4.4743,2.38,1.97\n'
    + '4,64,10,4.6932,4.4732,4.69,"[3,10:1,3,3,3,2,1,1,1,1,1]_4",4.5631,2.77,1.69\n'
    + '4,64,11,4.7193,4.4243,6.25,"[4,11:1,4,2,4,2,6,3,4,2,2,1]_4",4.6457,1.56,4.01\n',
    "tableVIII": HEADER
    + '4,256,5,3.9328,3.9021,0.78,"[2,5:1,2,2,3,3]_4",3.9223,0.27,2.92\n'
    + '4,256,6,4.2594,4.2261,0.78,"[2,6:1,2,2,3,2,1]_4",4.2440,0.36,2.17\n'
    + '4,256,7,4.3394,4.3055,0.78,"[2,7:1,2,2,2,1,1,1]_4",4.3172,0.51,1.53\n'
    + '4,256,8,4.5088,4.4560,1.17,"[3,8:1,3,3,3,2,1,1,3]_4",4.4846,0.54,2.19\n'
    + '4,256,9,4.5836,4.5299,1.17,"[3,9:1,3,3,3,2,1,1,1,2]_4",4.5563,0.60,1.97\n'
    + '4,256,10,4.6932,4.6382,1.17,"[3,10:1,3,3,3,2,1,1,1,1,1]_4",4.6607,0.69,1.69\n'
    + '4,256,11,4.7193,4.6456,1.56,"[4,11:1,4,2,4,2,6,3,4,2,2,1]_4",4.7009,0.39,4.01\n',
    "ternary": HEADER
    + '3,64,4,2.9856,2.8923,3.13,"[2,4:1,2,2,2]_3",2.9392,1.55,2.01\n',
}


class TestCounterCells:
    def test_binary(self):
        assert counter_cells(4, 2) == 3
        assert counter_cells(7, 2) == 6
        assert counter_cells(2, 2) == 1

    def test_larger_alphabets(self):
        assert counter_cells(5, 4) == 2
        assert counter_cells(8, 4) == 3
        assert counter_cells(11, 4) == 4
        assert counter_cells(4, 3) == 2

    def test_single_write_needs_no_counter(self):
        assert counter_cells(1, 2) == 0


class TestRateLossBasic:
    def test_formula(self):
        loss = rate_loss_basic(2.0, 4, 2, 64)
        assert loss.rate == pytest.approx(2.0 * 61 / 64)
        assert loss.gamma == pytest.approx(3 / 64)

    def test_rejects_nonpositive_rate(self):
        with pytest.raises(ValueError, match="positive"):
            rate_loss_basic(0.0, 4, 2, 64)

    def test_rejects_too_short_target(self):
        with pytest.raises(ValueError, match="counter cells"):
            rate_loss_basic(2.0, 4, 2, 3)

    @given(
        rate=st.floats(0.1, 8.0),
        t=st.integers(2, 12),
        q=st.integers(2, 5),
        n=st.integers(16, 512),
    )
    def test_loss_is_the_counter_fraction(self, rate, t, q, n):
        loss = rate_loss_basic(rate, t, q, n)
        assert 0 < loss.gamma < 1
        assert loss.rate == pytest.approx(rate * (1 - loss.gamma))


class TestRateLossSync:
    SYNC = CodeParams(2, 5, 4, (1, 5, 3, 6))

    def test_formula(self):
        loss = rate_loss_sync(1.8566, 64, self.SYNC)
        r_sync = wom_rate(self.SYNC).total
        assert loss.rate == pytest.approx((1.8566 * 59 + r_sync * 5) / 64)
        assert loss.gamma == pytest.approx((5 / 64) * (1 - r_sync / 1.8566))

    def test_reduction_compares_against_counter(self):
        loss = rate_loss_sync(1.8566, 64, self.SYNC)
        basic = rate_loss_basic(1.8566, 4, 2, 64)
        assert loss.reduction == pytest.approx(basic.gamma / loss.gamma)
        assert loss.reduction > 1

    def test_rejects_too_short_target(self):
        with pytest.raises(ValueError, match="appended cells"):
            rate_loss_sync(1.8566, 5, self.SYNC)

    def test_larger_target_loses_less(self):
        gammas = [rate_loss_sync(1.8566, n, self.SYNC).gamma for n in (16, 64, 256)]
        assert gammas == sorted(gammas, reverse=True)


class TestRateReport:
    def test_counter_only_leaves_sync_fields_empty(self):
        report = rate_report(NdRate(2, 4, 1.8566), 64)
        assert report.basic_rate == pytest.approx(1.7696, abs=5e-5)
        assert report.sync_code is None
        assert report.sync_rate is None
        assert report.reduction_factor is None

    def test_write_count_mismatch(self):
        with pytest.raises(ValueError, match="writes"):
            rate_report(NdRate(2, 5, 1.9689), 64, CodeParams(2, 5, 4, (1, 5, 3, 6)))

    def test_half_boundary_rounds_up(self):
        # 4.5088 * 61/64 = 4.29745 exactly and 3/64 = 4.6875%; both print
        # rounded half-up.
        report = rate_report(NdRate(4, 8, 4.5088), 64)
        row = emit_rate_table([report]).splitlines()[1]
        assert row == "4,64,8,4.5088,4.2975,4.69,,,,"


class TestPresets:
    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_emitted_table_matches_publication(self, name):
        assert emit_rate_table(preset_rows(name)) == GOLDEN[name]

    def test_ternary_headline_numbers(self):
        (report,) = preset_rows("ternary")
        assert report.basic_rate == pytest.approx(2.8923, abs=5e-5)
        assert report.sync_rate == pytest.approx(2.9392, abs=5e-5)
        assert report.reduction_factor == pytest.approx(2.01, abs=5e-3)

    def test_ternary_nd_rate_provenance(self):
        # The 4-write ternary input is twice the best binary 2-write rate.
        assert 2 * 1.4928 == pytest.approx(2.9856)

    def test_unknown_preset(self):
        with pytest.raises(ValueError, match="unknown preset"):
            preset_rows("tableIX")

    def test_sync_components_beat_counters_everywhere(self):
        for name in PRESETS:
            for report in preset_rows(name):
                assert report.sync_rate > report.basic_rate
                assert report.gamma_sync < report.gamma_basic
                assert report.reduction_factor > 1
