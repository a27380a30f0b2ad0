"""Duration optimization and schedule assembly.

The energy objectives are convex (or at worst unimodal) in the slot
durations once the powers are eliminated, so a derivative-free golden-section
search per scalar coordinate is exact for this problem family: one search
for the single-slot strategy, two independent searches plus an optional
frame-budget boundary re-solve for the two-slot strategies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from .feasibility import tmin_1ts, tmin_2ts, tmin_hd
from .model import (
    CircuitAccounting,
    InfeasibleError,
    Scenario,
    Schedule,
    Strategy,
    ee_from_energy,
    pa_consumption,
)
from .strategies import (
    energy_1ts,
    energy_2ts,
    energy_hd,
    powers_1ts,
    powers_2ts,
    powers_hd,
)

__all__ = ["SolverConfig", "minimize_unimodal_1d", "solve_2ts", "solve_1ts",
           "solve_hd", "solve"]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi**2


@dataclass(frozen=True)
class SolverConfig:
    """Termination control for the scalar searches.

    ``duration_tol`` is the absolute bracket width (seconds) at which the
    search stops; when None it defaults to 1e-7 of the frame length.
    """

    duration_tol: float | None = None
    max_iters: int = 300
    oracle_check: bool = False

    def __post_init__(self):
        if self.duration_tol is not None and not self.duration_tol > 0:
            raise ValueError("duration_tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")

    def tol_for(self, frame_t: float) -> float:
        return self.duration_tol if self.duration_tol is not None \
            else 1e-7 * frame_t


def minimize_unimodal_1d(f: Callable[[float], float], lo: float, hi: float,
                         cfg: SolverConfig | None = None,
                         frame_t: float | None = None) -> tuple[float, float]:
    """Golden-section minimum of a unimodal scalar function on [lo, hi].

    Works across kinks (e.g. a pointwise max of convex functions) because
    only function-value comparisons are used.  Returns (argmin, value).
    """
    cfg = cfg or SolverConfig()
    if not lo <= hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    tol = cfg.tol_for(frame_t if frame_t is not None else (hi - lo) or 1.0)
    span = hi - lo
    if span <= tol:
        mid = 0.5 * (lo + hi)
        return mid, f(mid)
    c = lo + _INV_PHI2 * span
    d = lo + _INV_PHI * span
    fc, fd = f(c), f(d)
    for _ in range(cfg.max_iters):
        if not (math.isfinite(fc) and math.isfinite(fd)):
            raise ValueError(
                "objective is not finite inside the feasibility window")
        if hi - lo <= tol:
            break
        if fc < fd:
            hi, d, fd = d, c, fc
            c = lo + _INV_PHI2 * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    x, fx = (c, fc) if fc <= fd else (d, fd)
    # The minimum may sit exactly on an endpoint the interior probes never
    # reach; keep the better of the probe and the nearest endpoint.
    for edge in (lo, hi):
        fe = f(edge)
        if fe < fx:
            x, fx = edge, fe
    return x, fx


def solve_2ts(s: Scenario, cfg: SolverConfig | None = None) -> Schedule:
    """Optimal FD2TS schedule."""
    cfg = cfg or SolverConfig()
    window = tmin_2ts(s)
    if not window.feasible:
        raise InfeasibleError(window.detail or "scenario infeasible",
                              binding_node=next(
                                  (b for b in window.binding_node if b), None))
    t1_min, t2_min = window.t_min
    t1, t2 = _solve_separable(
        lambda t: _slot_energy_2ts(s, t, slot=1),
        lambda t: _slot_energy_2ts(s, t, slot=2),
        t1_min, t2_min, s, cfg)
    pw = powers_2ts(s, t1, t2)
    e = energy_2ts(s, t1, t2)
    return Schedule(t1=t1, t2=t2, p_a=pw.p_a, p_b=pw.p_b,
                    p_r_fwd=pw.p_r_fwd, p_r_rev=pw.p_r_rev, e_total=e,
                    ee=ee_from_energy(s.r_fl, s.r_rl, s.frame_t, e))


def solve_1ts(s: Scenario, cfg: SolverConfig | None = None) -> Schedule:
    """Optimal FD1TS schedule (single duration, worse-case energy)."""
    cfg = cfg or SolverConfig()
    window = tmin_1ts(s)
    if not window.feasible:
        raise InfeasibleError(window.detail or "scenario infeasible",
                              binding_node=window.binding_node[0])
    t_min = window.t_min[0]
    t1, _ = minimize_unimodal_1d(lambda t: energy_1ts(s, t), t_min,
                                 s.frame_t, cfg, frame_t=s.frame_t)
    pw = powers_1ts(s, t1)
    e = energy_1ts(s, t1)
    return Schedule(t1=t1, t2=0.0, p_a=pw.p_a, p_b=pw.p_b, p_r_fwd=pw.p_r,
                    p_r_rev=0.0, e_total=e,
                    ee=ee_from_energy(s.r_fl, s.r_rl, s.frame_t, e),
                    active_case=pw.active_case)


def solve_hd(s: Scenario, cfg: SolverConfig | None = None) -> Schedule:
    """Optimal HD2TS schedule."""
    cfg = cfg or SolverConfig()
    window = tmin_hd(s)
    if not window.feasible:
        raise InfeasibleError(window.detail or "scenario infeasible",
                              binding_node=next(
                                  (b for b in window.binding_node if b), None))
    t1_min, t2_min = window.t_min
    t1, t2 = _solve_separable(
        lambda t: _slot_energy_hd(s, t, slot=1),
        lambda t: _slot_energy_hd(s, t, slot=2),
        t1_min, t2_min, s, cfg)
    p_a, p_b, p_r = powers_hd(s, t1, t2)
    e = energy_hd(s, t1, t2)
    return Schedule(t1=t1, t2=t2, p_a=p_a, p_b=p_b, p_r_fwd=p_r, p_r_rev=0.0,
                    e_total=e,
                    ee=ee_from_energy(s.r_fl, s.r_rl, s.frame_t, e))


def solve(s: Scenario, cfg: SolverConfig | None = None) -> Schedule:
    """Solve the scenario with its configured strategy.

    With ``cfg.oracle_check`` the brute-force oracle re-derives the result
    and its report is attached to the returned schedule.
    """
    cfg = cfg or SolverConfig()
    if s.strategy is Strategy.FD2TS:
        sched = solve_2ts(s, cfg)
    elif s.strategy is Strategy.FD1TS:
        sched = solve_1ts(s, cfg)
    else:
        sched = solve_hd(s, cfg)
    if cfg.oracle_check:
        from .oracle import verify
        sched = replace(sched, oracle_report=verify(s, sched))
    return sched


# ---------------------------------------------------------------------------
# Slot-cost helpers.  Both two-slot energies split as
# cost1(t1) + cost2(t2) + P_idle*T with cost_k(t) = (P_slot_k(t) - P_idle)*t,
# which is what makes the independent per-slot searches exact.
# ---------------------------------------------------------------------------

def _slot_energy_2ts(s: Scenario, t: float, slot: int) -> float:
    c = s.circuit
    statics = c.a.p_base + 2.0 * c.r.p_base + c.b.p_base
    eps4 = c.a.epsilon + 2.0 * c.r.epsilon + c.b.epsilon
    if slot == 1:
        pw = powers_2ts(s, t, s.frame_t)
        active = (pa_consumption(s.pa.a, pw.p_a)
                  + pa_consumption(s.pa.r, pw.p_r_fwd)
                  + statics + eps4 * s.r_fl)
    else:
        pw = powers_2ts(s, s.frame_t, t)
        active = (pa_consumption(s.pa.b, pw.p_b)
                  + pa_consumption(s.pa.r, pw.p_r_rev)
                  + statics + eps4 * s.r_rl)
    return (active - s.p_idle_total) * t


def _slot_energy_hd(s: Scenario, t: float, slot: int) -> float:
    c = s.circuit
    statics = s.p_base_total
    printed = s.circuit_accounting is CircuitAccounting.PRINTED
    if slot == 1:
        p_a, p_b, _ = powers_hd(s, t, s.frame_t)
        if printed:
            dyn = c.a.epsilon * (s.r_fl + s.r_rl)
        else:
            dyn = (c.a.epsilon * s.r_fl + c.b.epsilon * s.r_rl
                   + c.r.epsilon * (s.r_fl + s.r_rl))
        active = (pa_consumption(s.pa.a, p_a) + pa_consumption(s.pa.b, p_b)
                  + statics + dyn)
    else:
        _, _, p_r = powers_hd(s, s.frame_t, t)
        if printed:
            dyn = c.a.epsilon * max(s.r_fl, s.r_rl)
        else:
            dyn = (c.r.epsilon * max(s.r_fl, s.r_rl)
                   + c.a.epsilon * s.r_rl + c.b.epsilon * s.r_fl)
        active = pa_consumption(s.pa.r, p_r) + statics + dyn
    return (active - s.p_idle_total) * t


def _solve_separable(cost1: Callable[[float], float],
                     cost2: Callable[[float], float],
                     t1_min: float, t2_min: float, s: Scenario,
                     cfg: SolverConfig) -> tuple[float, float]:
    """Minimize cost1(t1) + cost2(t2) over the feasible duration triangle.

    Each slot is searched on its own interval first; the boundary re-solve
    along t1 + t2 = T runs only when the independent optima overrun the
    frame.
    """
    frame = s.frame_t
    hi1 = frame - t2_min
    hi2 = frame - t1_min
    t1, _ = minimize_unimodal_1d(cost1, t1_min, hi1, cfg, frame_t=frame)
    t2, _ = minimize_unimodal_1d(cost2, t2_min, hi2, cfg, frame_t=frame)
    if t1 + t2 <= frame:
        return t1, t2
    t1, _ = minimize_unimodal_1d(lambda t: cost1(t) + cost2(frame - t),
                                 t1_min, hi1, cfg, frame_t=frame)
    return t1, frame - t1
