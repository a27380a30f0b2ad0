from dataclasses import replace

import numpy as np
import pytest

from fdrelay.config import ScenarioParams
from fdrelay.feasibility import tmin_for
from fdrelay.model import InfeasibleError, PaKind, Strategy
from fdrelay.oracle import (
    OracleReport,
    convexity_probe,
    grid_search,
    random_feasible_scenarios,
    random_params,
    verify,
    verify_necessary_conditions,
)
from fdrelay.solver import SolverConfig, solve
from fdrelay.strategies import (
    PowerAssignment1TS,
    PowerAssignment2TS,
    caps_1ts,
    caps_2ts,
    energy_1ts_at,
    energy_2ts_at,
    powers_1ts,
    powers_2ts,
)


class TestGridSearch:
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_solver_never_worse_than_grid(self, params, strategy):
        s = replace(params, strategy=strategy).build()
        sched = solve(s)
        best, point = grid_search(s, n_t=40, n_p=12)
        assert sched.e_total <= best * 1.01
        assert point["t1"] > 0

    def test_closed_form_dominates_grid_points(self, params, rng):
        """Equality-active powers beat every rate-feasible alternative."""
        s = replace(params, strategy=Strategy.FD2TS).build()
        t1, t2 = 0.004, 0.0045
        pw = powers_2ts(s, t1, t2)
        e_cf = energy_2ts_at(s, t1, t2, pw)
        for _ in range(50):
            candidate = PowerAssignment2TS(
                p_a=rng.uniform(pw.p_a, s.pa.a.p_max),
                p_b=rng.uniform(pw.p_b, s.pa.b.p_max),
                p_r_fwd=rng.uniform(pw.p_r_fwd, s.pa.r.p_max),
                p_r_rev=rng.uniform(pw.p_r_rev, s.pa.r.p_max))
            c_ar, c_rb, c_br, c_ra = caps_2ts(s, t1, t2, candidate)
            if (c_ar >= s.r_fl and c_rb >= s.r_fl and c_br >= s.r_rl
                    and c_ra >= s.r_rl):
                assert energy_2ts_at(s, t1, t2, candidate) >= e_cf

    def test_closed_form_dominates_grid_points_1ts(self, params, rng):
        s = replace(params, strategy=Strategy.FD1TS).build()
        t1 = 0.007
        pw = powers_1ts(s, t1)
        e_cf = energy_1ts_at(s, t1, pw)
        for _ in range(50):
            candidate = PowerAssignment1TS(
                p_a=rng.uniform(pw.p_a, s.pa.a.p_max),
                p_b=rng.uniform(pw.p_b, s.pa.b.p_max),
                p_r=rng.uniform(pw.p_r, s.pa.r.p_max),
                active_case=pw.active_case)
            c_ar, c_br, c_ra, c_rb = caps_1ts(s, t1, candidate.p_a,
                                              candidate.p_b, candidate.p_r)
            if (c_ar >= s.r_fl and c_br >= s.r_rl and c_ra >= s.r_rl
                    and c_rb >= s.r_fl):
                assert energy_1ts_at(s, t1, candidate) >= e_cf

    def test_infeasible_scenario_raises(self, params):
        s = replace(params, strategy=Strategy.FD1TS, alpha_db=20.0,
                    r_fl_mbps=100.0, r_rl_mbps=100.0).build()
        with pytest.raises(InfeasibleError):
            grid_search(s, n_t=20, n_p=5)

    def test_feasibility_agreement(self):
        """Grid emptiness agrees with the feasibility module on a corpus."""
        rng = np.random.default_rng(99)
        strategies = tuple(Strategy)
        checked = 0
        for _ in range(30):
            strategy = strategies[int(rng.integers(0, len(strategies)))]
            total = rng.uniform(20.0, 260.0)
            p = ScenarioParams(alpha_db=rng.uniform(25.0, 80.0),
                               strategy=strategy).with_total_rate(total)
            s = p.build()
            feasible = tmin_for(s).feasible
            try:
                grid_search(s, n_t=30, n_p=4)
                grid_feasible = True
            except InfeasibleError:
                grid_feasible = False
            assert grid_feasible == feasible
            checked += 1
        assert checked == 30

    def test_rejects_degenerate_grid(self, params):
        s = params.build()
        with pytest.raises(ValueError):
            grid_search(s, n_t=1, n_p=5)


class TestNecessaryConditions:
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_solver_optimum_passes(self, params, strategy):
        s = replace(params, strategy=strategy).build()
        sched = solve(s)
        slacks = verify_necessary_conditions(s, sched, tol=1e-9)
        assert set(slacks) == {"c_ar", "c_br", "c_ra", "c_rb"} or \
            set(slacks) == {"c_ar", "c_rb", "c_br", "c_ra"}

    def test_violation_names_constraint(self, params):
        s = replace(params, strategy=Strategy.FD2TS).build()
        sched = solve(s)
        bogus = replace(sched, p_a=sched.p_a * 1.5)
        with pytest.raises(ValueError, match="c_ar"):
            verify_necessary_conditions(s, bogus, tol=1e-9)

    def test_asymptotic_mode_slack_is_bounded_not_zero(self, params):
        p = replace(params, strategy=Strategy.FD1TS, asymptotic_1ts=True)
        s = p.build()
        sched = solve(s)
        with pytest.raises(ValueError):
            verify_necessary_conditions(s, sched, tol=1e-9)
        slacks = verify_necessary_conditions(s, sched, tol=0.05)
        assert all(v > -1e-12 for v in slacks.values())  # over-provisioned


class TestConvexityProbe:
    def test_convex_function_clean(self):
        assert convexity_probe(lambda t: t * t, (0.0, 10.0), n_samples=200) == 0

    def test_concave_negative_control(self):
        v = convexity_probe(lambda t: -t * t, (0.0, 10.0), n_samples=100)
        assert v == 100

    def test_two_dimensional(self):
        assert convexity_probe(lambda x, y: x * x + y * y,
                               ((0.0, 1.0), (0.0, 1.0)), n_samples=100) == 0
        assert convexity_probe(lambda x, y: -(x * x + y * y),
                               ((0.0, 1.0), (0.0, 1.0)), n_samples=100) == 100

    def test_sum_cap_respected(self):
        calls = []

        def f(x, y):
            calls.append((x, y))
            return x * x + y * y

        convexity_probe(f, ((0.0, 1.0), (0.0, 1.0)), n_samples=50,
                        sum_cap=1.0, h=0.01)
        assert all(x + y <= 1.0 for x, y in calls)


class TestVerify:
    def test_report_attached_by_solver(self, params):
        s = replace(params, strategy=Strategy.FD1TS).build()
        sched = solve(s, SolverConfig(oracle_check=True))
        report = sched.oracle_report
        assert isinstance(report, OracleReport)
        assert report.ok
        assert report.solver_energy == pytest.approx(sched.e_total)
        assert report.convexity_violations == 0
        # the grid can only tie or lose against the exact solver
        assert report.relative_gap <= 0.0 + 1e-12

    def test_random_corpus_verifies(self):
        for strategy in Strategy:
            scenarios = random_feasible_scenarios(7, strategy, PaKind.ETPA, 3)
            for s in scenarios:
                report = verify(s, solve(s), n_t=25, n_p=8, probe_samples=20)
                assert report.ok, report


class TestRandomGeneration:
    def test_deterministic(self):
        a = random_feasible_scenarios(5, Strategy.FD2TS, PaKind.TPA, 4)
        b = random_feasible_scenarios(5, Strategy.FD2TS, PaKind.TPA, 4)
        assert [s.r_fl for s in a] == [s.r_fl for s in b]

    def test_params_within_documented_ranges(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            p = random_params(rng, Strategy.FD1TS, PaKind.ETPA)
            assert 10.0 <= p.d_ar_m <= 200.0
            assert 30.0 <= p.alpha_db <= 80.0
            assert 5.0 <= p.total_rate_mbps <= 120.0
