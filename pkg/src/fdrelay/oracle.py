"""Independent brute-force validation of solver output and model structure.

The grid oracle never trusts the closed-form power expressions: at every
gridded duration it sweeps per-node power boxes from the closed-form point
up to each budget, keeps only assignments whose capacities actually meet
the demands, and takes the cheapest survivor.  A correct solver must never
be worse than the grid; the closed-form point must never be worse than any
rate-feasible grid point at the same durations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import ScenarioParams
from .feasibility import t_floor, tmin_1ts, tmin_2ts, tmin_for, tmin_hd
from .model import InfeasibleError, PaKind, Scenario, Schedule, Strategy, pa_consumption
from .strategies import (
    PowerAssignment1TS,
    PowerAssignment2TS,
    caps_1ts,
    caps_2ts,
    caps_hd,
    energy_1ts_at,
    energy_2ts_at,
    energy_hd_at,
    powers_1ts,
    powers_2ts,
    powers_hd,
)

__all__ = ["OracleReport", "grid_search", "verify_necessary_conditions",
           "convexity_probe", "verify", "random_params",
           "random_feasible_scenarios"]

# Relative slack when testing grid capacities against the demands; the
# closed-form anchor meets them with equality up to float rounding.
_RATE_SLACK = 1e-9


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one oracle pass over a solved scenario."""

    grid_best_energy: float
    solver_energy: float
    relative_gap: float
    active_constraints: dict[str, float] = field(default_factory=dict)
    convexity_violations: int = 0

    @property
    def ok(self) -> bool:
        return (self.relative_gap <= 0.01 and self.convexity_violations == 0)


def _power_box(anchor: float, cap: float, n_p: int) -> np.ndarray | None:
    """Grid from the closed-form anchor up to the budget; None if over it."""
    if not math.isfinite(anchor) or anchor > cap * (1.0 + 1e-9):
        return None
    return np.linspace(min(anchor, cap), cap, n_p)


def _duration_axis(lo: float, hi: float, n_t: int,
                   extras: tuple[float, ...] = ()) -> np.ndarray:
    """Regular duration grid plus any exact boundary points worth probing.

    The extras cover feasibility windows narrower than the grid spacing,
    which a plain lattice can straddle without touching.
    """
    pts = np.linspace(lo, hi, n_t)
    keep = [e for e in extras if math.isfinite(e) and lo <= e <= hi]
    if keep:
        pts = np.unique(np.concatenate([pts, np.asarray(keep)]))
    return pts


def _grid_2ts(s: Scenario, n_t: int, n_p: int):
    floor = t_floor(s)
    window = tmin_2ts(s)
    extras = ((window.t_min[0], window.t_min[1],
               s.frame_t - window.t_min[0], s.frame_t - window.t_min[1])
              if window.feasible else ())
    t_axis = _duration_axis(floor, s.frame_t - floor, n_t, extras)
    ref = s.frame_t

    def slot_best(slot: int):
        best_psum = np.full(t_axis.size, math.inf)
        best_pw = [None] * t_axis.size
        for i, t in enumerate(t_axis):
            pw_cf = powers_2ts(s, t, ref) if slot == 1 else powers_2ts(s, ref, t)
            if slot == 1:
                end_pa, relay_p = pw_cf.p_a, pw_cf.p_r_fwd
                end_model, demand = s.pa.a, s.r_fl
            else:
                end_pa, relay_p = pw_cf.p_b, pw_cf.p_r_rev
                end_model, demand = s.pa.b, s.r_rl
            box_end = _power_box(end_pa, end_model.p_max, n_p)
            box_rel = _power_box(relay_p, s.pa.r.p_max, n_p)
            if box_end is None or box_rel is None:
                continue
            pe = box_end[:, None]
            pr = box_rel[None, :]
            if slot == 1:
                pw = PowerAssignment2TS(p_a=pe, p_b=0.0, p_r_fwd=pr, p_r_rev=0.0)
                c_end, c_rel, _, _ = caps_2ts(s, t, ref, pw)
                psum = (pa_consumption(s.pa.a, pe)
                        + pa_consumption(s.pa.r, pr))
            else:
                pw = PowerAssignment2TS(p_a=0.0, p_b=pe, p_r_fwd=0.0, p_r_rev=pr)
                _, _, c_end, c_rel = caps_2ts(s, ref, t, pw)
                psum = (pa_consumption(s.pa.b, pe)
                        + pa_consumption(s.pa.r, pr))
            feas = ((c_end >= demand * (1.0 - _RATE_SLACK))
                    & (c_rel >= demand * (1.0 - _RATE_SLACK)))
            if not np.any(feas):
                continue
            psum = np.where(feas, psum, math.inf)
            k = int(np.argmin(psum))
            ke, kr = np.unravel_index(k, psum.shape)
            best_psum[i] = psum[ke, kr]
            best_pw[i] = (float(box_end[ke]), float(box_rel[kr]))
        return best_psum, best_pw

    sum1, pw1 = slot_best(1)
    sum2, pw2 = slot_best(2)
    best = (math.inf, None)
    for i, t1 in enumerate(t_axis):
        if not math.isfinite(sum1[i]):
            continue
        for j, t2 in enumerate(t_axis):
            if not math.isfinite(sum2[j]) or t1 + t2 > s.frame_t:
                continue
            pw = PowerAssignment2TS(p_a=pw1[i][0], p_b=pw2[j][0],
                                    p_r_fwd=pw1[i][1], p_r_rev=pw2[j][1])
            e = energy_2ts_at(s, t1, t2, pw)
            if e < best[0]:
                best = (e, {"t1": float(t1), "t2": float(t2),
                            "p_a": pw.p_a, "p_b": pw.p_b,
                            "p_r_fwd": pw.p_r_fwd, "p_r_rev": pw.p_r_rev})
    return best


def _grid_1ts(s: Scenario, n_t: int, n_p: int):
    floor = t_floor(s)
    window = tmin_1ts(s)
    extras = (window.t_min[0],) if window.feasible else ()
    t_axis = _duration_axis(floor, s.frame_t, n_t, extras)
    best = (math.inf, None)
    for t in t_axis:
        try:
            cf = powers_1ts(s, t)
        except InfeasibleError:
            continue
        box_a = _power_box(cf.p_a, s.pa.a.p_max, n_p)
        box_b = _power_box(cf.p_b, s.pa.b.p_max, n_p)
        box_r = _power_box(cf.p_r, s.pa.r.p_max, n_p)
        if box_a is None or box_b is None or box_r is None:
            continue
        pa = box_a[:, None, None]
        pb = box_b[None, :, None]
        pr = box_r[None, None, :]
        c_ar, c_br, c_ra, c_rb = caps_1ts(s, t, pa, pb, pr)
        feas = ((c_ar >= s.r_fl * (1.0 - _RATE_SLACK))
                & (c_br >= s.r_rl * (1.0 - _RATE_SLACK))
                & (c_ra >= s.r_rl * (1.0 - _RATE_SLACK))
                & (c_rb >= s.r_fl * (1.0 - _RATE_SLACK)))
        if not np.any(feas):
            continue
        psum = (pa_consumption(s.pa.a, pa) + pa_consumption(s.pa.b, pb)
                + pa_consumption(s.pa.r, pr))
        psum = np.where(feas, psum, math.inf)
        k = int(np.argmin(psum))
        ka, kb, kr = np.unravel_index(k, psum.shape)
        pw = PowerAssignment1TS(p_a=float(box_a[ka]), p_b=float(box_b[kb]),
                                p_r=float(box_r[kr]),
                                active_case=cf.active_case)
        e = energy_1ts_at(s, t, pw)
        if e < best[0]:
            best = (e, {"t1": float(t), "t2": 0.0, "p_a": pw.p_a,
                        "p_b": pw.p_b, "p_r": pw.p_r})
    return best


def _grid_hd(s: Scenario, n_t: int, n_p: int):
    floor = t_floor(s)
    window = tmin_hd(s)
    extras = ((window.t_min[0], window.t_min[1],
               s.frame_t - window.t_min[0], s.frame_t - window.t_min[1])
              if window.feasible else ())
    t_axis = _duration_axis(floor, s.frame_t - floor, n_t, extras)
    ref = s.frame_t

    sum1 = np.full(t_axis.size, math.inf)
    pw1 = [None] * t_axis.size
    for i, t in enumerate(t_axis):
        p_a_cf, p_b_cf, _ = powers_hd(s, t, ref)
        box_a = _power_box(p_a_cf, s.pa.a.p_max, n_p)
        box_b = _power_box(p_b_cf, s.pa.b.p_max, n_p)
        if box_a is None or box_b is None:
            continue
        pa = box_a[:, None]
        pb = box_b[None, :]
        c_ar, c_br, _, _ = caps_hd(s, t, ref, pa, pb, 0.0)
        feas = ((c_ar >= s.r_fl * (1.0 - _RATE_SLACK))
                & (c_br >= s.r_rl * (1.0 - _RATE_SLACK)))
        if not np.any(feas):
            continue
        psum = pa_consumption(s.pa.a, pa) + pa_consumption(s.pa.b, pb)
        psum = np.where(feas, psum, math.inf)
        k = int(np.argmin(psum))
        ka, kb = np.unravel_index(k, psum.shape)
        sum1[i] = psum[ka, kb]
        pw1[i] = (float(box_a[ka]), float(box_b[kb]))

    sum2 = np.full(t_axis.size, math.inf)
    pw2 = [None] * t_axis.size
    for j, t in enumerate(t_axis):
        _, _, p_r_cf = powers_hd(s, ref, t)
        box_r = _power_box(p_r_cf, s.pa.r.p_max, n_p)
        if box_r is None:
            continue
        pr = box_r
        # Dummy end-node powers: only the broadcast capacities are read.
        _, _, c_ra, c_rb = caps_hd(s, ref, t, 1.0, 1.0, pr)
        feas = ((c_ra >= s.r_rl * (1.0 - _RATE_SLACK))
                & (c_rb >= s.r_fl * (1.0 - _RATE_SLACK)))
        if not np.any(feas):
            continue
        psum = np.where(feas, pa_consumption(s.pa.r, pr), math.inf)
        k = int(np.argmin(psum))
        sum2[j] = psum[k]
        pw2[j] = float(box_r[k])

    best = (math.inf, None)
    for i, t1 in enumerate(t_axis):
        if not math.isfinite(sum1[i]):
            continue
        for j, t2 in enumerate(t_axis):
            if not math.isfinite(sum2[j]) or t1 + t2 > s.frame_t:
                continue
            e = energy_hd_at(s, t1, t2, pw1[i][0], pw1[i][1], pw2[j])
            if e < best[0]:
                best = (e, {"t1": float(t1), "t2": float(t2),
                            "p_a": pw1[i][0], "p_b": pw1[i][1],
                            "p_r": pw2[j]})
    return best


def grid_search(s: Scenario, n_t: int = 50, n_p: int = 20):
    """Exhaustive feasible minimum over duration and power grids.

    Power boxes are anchored at the closed-form point so the sweep can
    confirm, not assume, that equality-active powers dominate.  Raises
    :class:`InfeasibleError` when no grid point is feasible.

    Returns (best_energy, best_point) with best_point a plain dict.
    """
    if n_t < 2 or n_p < 2:
        raise ValueError("need at least two grid points per axis")
    if s.strategy is Strategy.FD2TS:
        best = _grid_2ts(s, n_t, n_p)
    elif s.strategy is Strategy.FD1TS:
        best = _grid_1ts(s, n_t, n_p)
    else:
        best = _grid_hd(s, n_t, n_p)
    if best[1] is None:
        raise InfeasibleError("no feasible point on the oracle grid")
    return best


def verify_necessary_conditions(s: Scenario, sched: Schedule,
                                tol: float = 1e-9) -> dict[str, float]:
    """Relative rate-constraint slacks at a solved schedule.

    For the two-slot FD strategy every one of the four constraints must be
    active; for the single-slot and HD strategies both uplinks must be
    active while the smaller broadcast slack vanishes.  Returns the named
    slacks; raises ``ValueError`` naming the first violated pattern.
    """
    if s.strategy is Strategy.FD2TS:
        pw = PowerAssignment2TS(sched.p_a, sched.p_b, sched.p_r_fwd,
                                sched.p_r_rev)
        c_ar, c_rb, c_br, c_ra = caps_2ts(s, sched.t1, sched.t2, pw)
        slacks = {
            "c_ar": (c_ar - s.r_fl) / s.r_fl,
            "c_rb": (c_rb - s.r_fl) / s.r_fl,
            "c_br": (c_br - s.r_rl) / s.r_rl,
            "c_ra": (c_ra - s.r_rl) / s.r_rl,
        }
        for name, slack in slacks.items():
            if abs(slack) > tol:
                raise ValueError(
                    f"constraint {name} not active: relative slack {slack:.3e}")
        return slacks
    if s.strategy is Strategy.FD1TS:
        c_ar, c_br, c_ra, c_rb = caps_1ts(s, sched.t1, sched.p_a, sched.p_b,
                                          sched.p_r_fwd)
    else:
        c_ar, c_br, c_ra, c_rb = caps_hd(s, sched.t1, sched.t2, sched.p_a,
                                         sched.p_b, sched.p_r_fwd)
    slacks = {
        "c_ar": (c_ar - s.r_fl) / s.r_fl,
        "c_br": (c_br - s.r_rl) / s.r_rl,
        "c_ra": (c_ra - s.r_rl) / s.r_rl,
        "c_rb": (c_rb - s.r_fl) / s.r_fl,
    }
    for name in ("c_ar", "c_br"):
        if abs(slacks[name]) > tol:
            raise ValueError(
                f"uplink {name} not active: relative slack {slacks[name]:.3e}")
    lo = min(slacks["c_ra"], slacks["c_rb"])
    if lo < -tol or lo > tol:
        raise ValueError(
            f"broadcast constraints not properly active: min slack {lo:.3e}")
    return slacks


def convexity_probe(f, domain, n_samples: int = 200, h: float | None = None,
                    rel_tol: float = 1e-6, seed: int = 0,
                    sum_cap: float | None = None) -> int:
    """Count negative central second differences of ``f`` over ``domain``.

    ``domain`` is (lo, hi) for a scalar function or a pair of such
    intervals for a two-variable one (probed along random directions).
    ``sum_cap`` optionally restricts 2-D sampling to x + y <= sum_cap.
    Returns the number of samples where (f(x+h) - 2 f(x) + f(x-h)) / h**2
    falls below ``-rel_tol * |f(x)|``.
    """
    rng = np.random.default_rng(seed)
    two_d = hasattr(domain[0], "__len__")
    if h is None:
        widths = ([domain[0][1] - domain[0][0], domain[1][1] - domain[1][0]]
                  if two_d else [domain[1] - domain[0]])
        h = 0.02 * min(widths)
    violations = 0
    count = 0
    while count < n_samples:
        if two_d:
            x = np.array([rng.uniform(domain[0][0] + h, domain[0][1] - h),
                          rng.uniform(domain[1][0] + h, domain[1][1] - h)])
            if sum_cap is not None and x[0] + x[1] + 2.0 * h > sum_cap:
                continue
            theta = rng.uniform(0.0, 2.0 * math.pi)
            e = np.array([math.cos(theta), math.sin(theta)])
            f0 = f(*x)
            fp = f(*(x + h * e))
            fm = f(*(x - h * e))
        else:
            x = rng.uniform(domain[0] + h, domain[1] - h)
            f0 = f(x)
            fp = f(x + h)
            fm = f(x - h)
        count += 1
        d2 = (fp - 2.0 * f0 + fm) / (h * h)
        if d2 < -rel_tol * abs(f0):
            violations += 1
    return violations


def verify(s: Scenario, sched: Schedule, n_t: int = 40, n_p: int = 12,
           probe_samples: int = 50, tol: float = 1e-6) -> OracleReport:
    """Full oracle pass: grid dominance, constraint slacks, convexity."""
    grid_best, _ = grid_search(s, n_t=n_t, n_p=n_p)
    slack_tol = 1e-9 if not (s.strategy is Strategy.FD1TS
                             and s.asymptotic_1ts) else math.inf
    try:
        slacks = verify_necessary_conditions(s, sched, tol=slack_tol)
    except ValueError:
        slacks = {}
    gap = (sched.e_total - grid_best) / grid_best
    violations = _probe_scenario_energy(s, probe_samples)
    return OracleReport(grid_best_energy=grid_best,
                        solver_energy=sched.e_total,
                        relative_gap=float(gap),
                        active_constraints={k: float(v) for k, v in slacks.items()},
                        convexity_violations=violations)


def _probe_scenario_energy(s: Scenario, n_samples: int) -> int:
    """Convexity/unimodality spot check of the scenario's own objective."""
    from .strategies import energy_1ts, energy_2ts, energy_hd

    if s.strategy is Strategy.FD1TS:
        window = tmin_1ts(s)
        if not window.feasible:
            return 0
        lo = window.t_min[0]
        return convexity_probe(lambda t: energy_1ts(s, t), (lo, s.frame_t),
                               n_samples=n_samples)
    if s.strategy is Strategy.FD2TS:
        window, energy = tmin_2ts(s), energy_2ts
    else:
        window, energy = tmin_hd(s), energy_hd
    if not window.feasible:
        return 0
    t1_min, t2_min = window.t_min
    dom = ((t1_min, s.frame_t - t2_min), (t2_min, s.frame_t - t1_min))
    if s.strategy is Strategy.HD2TS and s.pa.a.kind is PaKind.TPA:
        # The HD objective is only quasi-convex under TPA; second
        # differences are not a valid probe there.
        return 0
    return convexity_probe(lambda t1, t2: energy(s, t1, t2), dom,
                           n_samples=n_samples, sum_cap=s.frame_t)


def random_params(rng: np.random.Generator, strategy: Strategy,
                  pa_kind: PaKind) -> ScenarioParams:
    """Draw one random scenario's parameters for property testing.

    Distances, demands and cancellation are sampled over wide planning
    ranges; the draw is not guaranteed feasible.
    """
    total = rng.uniform(5.0, 120.0)
    share = rng.uniform(0.25, 0.75)
    return ScenarioParams(
        d_ar_m=rng.uniform(10.0, 200.0),
        d_rb_m=rng.uniform(10.0, 200.0),
        alpha_db=rng.uniform(30.0, 80.0),
        r_fl_mbps=total * share,
        r_rl_mbps=total * (1.0 - share),
        strategy=strategy,
        pa=pa_kind,
    )


def random_feasible_scenarios(seed: int, strategy: Strategy, pa_kind: PaKind,
                              n: int, max_attempts: int = 4000) -> list[Scenario]:
    """Seeded stream of feasible scenarios for a strategy/PA combination."""
    rng = np.random.default_rng(seed)
    out: list[Scenario] = []
    for _ in range(max_attempts):
        if len(out) == n:
            break
        s = random_params(rng, strategy, pa_kind).build()
        if tmin_for(s).feasible:
            out.append(s)
    if len(out) < n:
        raise RuntimeError(
            f"could not draw {n} feasible scenarios in {max_attempts} attempts")
    return out
