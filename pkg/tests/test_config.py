import pytest

from fdrelay.config import ConfigError, ScenarioParams, parse_config, parse_params
from fdrelay.model import (
    CircuitAccounting,
    PaKind,
    Strategy,
    db_to_linear,
    noise_power,
    pathloss_gain,
    residual_self_gain,
)


class TestDefaults:
    def test_empty_text_gives_defaults(self):
        params = parse_params("")
        assert params == ScenarioParams()
        assert params.bandwidth_mhz == 10.0
        assert params.frame_t_ms == 10.0
        assert params.n0_dbm_per_hz == -174.0
        assert params.d_ar_m == params.d_rb_m == 50.0
        assert params.alpha_db == 60.0
        assert params.eta_max == 0.35
        assert params.epsilon_mw_per_gbps == 50.0
        assert (params.p_idle_a_mw, params.p_idle_r_mw,
                params.p_idle_b_mw) == (30.0, 15.0, 5.0)
        assert (params.p_base_a_mw, params.p_base_r_mw,
                params.p_base_b_mw) == (100.0, 50.0, 20.0)
        # calibrated link budget (see module docstring)
        assert params.ant_gain_db == 25.0
        assert (params.self_iso_a_db, params.self_iso_r_db,
                params.self_iso_b_db) == (55.0, 40.0, 55.0)
        assert (params.p_max_a_dbm, params.p_max_r_dbm,
                params.p_max_b_dbm) == (46.0, 46.0, 46.0)

    def test_default_build_units(self):
        s = ScenarioParams().build()
        assert s.bandwidth_w == 10e6
        assert s.frame_t == pytest.approx(0.01)
        assert s.r_fl == pytest.approx(32.5e6)
        assert s.channels.sigma2_r == pytest.approx(noise_power(-174.0, 10e6))
        assert s.channels.g_ar == pytest.approx(
            pathloss_gain(50.0) * db_to_linear(25.0))
        assert s.channels.g_ra == s.channels.g_ar  # reciprocity
        assert s.channels.gs_r == pytest.approx(
            residual_self_gain(0.05, 60.0) / db_to_linear(40.0))
        assert s.channels.gs_a == pytest.approx(
            residual_self_gain(0.05, 60.0) / db_to_linear(55.0))
        assert s.pa.a.p_max == pytest.approx(db_to_linear(16.0))  # 46 dBm in W
        assert s.pa.a.kappa == pytest.approx(db_to_linear(8.0))
        assert s.circuit.a.epsilon == pytest.approx(5e-11)
        assert s.strategy is Strategy.FD1TS
        assert s.circuit_accounting is CircuitAccounting.PRINTED


class TestParsing:
    def test_single_key_override(self):
        params = parse_params("alpha_db=40\n")
        assert params.alpha_db == 40.0
        assert params == ScenarioParams(alpha_db=40.0)

    def test_comments_and_blank_lines(self):
        text = "# comment\n\nalpha_db = 45  # trailing\n\n"
        assert parse_params(text).alpha_db == 45.0

    def test_enum_and_bool_keys(self):
        params = parse_params(
            "strategy=fd2ts\npa=tpa\naccounting=first-principles\n"
            "asymptotic_1ts=true\n")
        assert params.strategy is Strategy.FD2TS
        assert params.pa is PaKind.TPA
        assert params.accounting is CircuitAccounting.FIRST_PRINCIPLES
        assert params.asymptotic_1ts is True

    def test_frame_alias_in_seconds(self):
        assert parse_params("frame_t_s=0.02").frame_t_ms == pytest.approx(20.0)

    def test_zero_frame_rejected_with_invariant(self):
        with pytest.raises(ConfigError, match="frame_t"):
            parse_config("frame_t_s=0\n")

    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigError, match="line 3"):
            parse_params("alpha_db=40\n# ok\nbogus_key=1\n")

    def test_bad_value_reports_line(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_params("alpha_db=forty\n")

    def test_missing_equals_reports_line(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_params("alpha_db=40\njust-noise\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_params("alpha_db=40\nalpha_db=50\n")
        with pytest.raises(ConfigError, match="duplicate"):
            parse_params("frame_t_ms=10\nframe_t_s=0.01\n")

    def test_bad_enum_value(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_params("strategy=simplex\n")


class TestDerivedHelpers:
    def test_with_total_rate_preserves_ratio(self):
        p = ScenarioParams(r_fl_mbps=40.0, r_rl_mbps=10.0)
        q = p.with_total_rate(100.0)
        assert q.total_rate_mbps == pytest.approx(100.0)
        assert q.r_fl_mbps / q.r_rl_mbps == pytest.approx(4.0)

    def test_with_traffic_ratio_preserves_total(self):
        p = ScenarioParams(r_fl_mbps=30.0, r_rl_mbps=30.0)
        q = p.with_traffic_ratio(9.0)
        assert q.total_rate_mbps == pytest.approx(60.0)
        assert q.r_fl_mbps / q.r_rl_mbps == pytest.approx(9.0)

    def test_parse_config_returns_scenario(self):
        s = parse_config("r_fl_mbps=20\nr_rl_mbps=10\nstrategy=hd2ts\n")
        assert s.r_fl == pytest.approx(20e6)
        assert s.strategy is Strategy.HD2TS
