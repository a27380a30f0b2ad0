"""Minimum admissible slot durations under per-node power budgets.

Every closed-form power is strictly decreasing in its own slot duration, so
"does duration t respect all the caps" is a monotone predicate and each
minimum duration is found by bisection.  Infeasibility is reported, never
clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .model import InfeasibleError, Scenario, Strategy
from .strategies import powers_1ts, powers_2ts, powers_hd

__all__ = ["FeasibleWindow", "tmin_2ts", "tmin_1ts", "tmin_hd", "t_floor"]

# Durations below this fraction of the frame make the spectral load
# overflow double precision at realistic rates; it is the lower end of
# every search window.
_FLOOR_FRACTION = 1e-6

# Bisection control (absolute tolerance is relative to the frame length).
_BISECT_TOL_FRACTION = 1e-9
_BISECT_MAX_ITERS = 200


@dataclass(frozen=True)
class FeasibleWindow:
    """Per-slot minimum durations, or the reason none exist.

    ``t_min`` has one entry per decision variable (one for the single-slot
    strategy, two otherwise).  ``binding_node`` names, per slot, the node
    whose power budget is active at the minimum (None when the numerical
    floor is the binder).
    """

    t_min: tuple[float, ...]
    feasible: bool
    binding_node: tuple[str | None, ...]
    detail: str = ""


def t_floor(s: Scenario) -> float:
    """Smallest duration the numerics admit for this scenario."""
    return _FLOOR_FRACTION * s.frame_t


def _bisect_monotone(pred: Callable[[float], bool], lo: float, hi: float,
                     tol: float, max_iters: int = _BISECT_MAX_ITERS) -> float:
    """Smallest t in [lo, hi] with pred(t) true, given pred monotone in t.

    Assumes pred(hi) is true and pred(lo) is false; returns a point on the
    feasible side of the boundary.
    """
    for _ in range(max_iters):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _slot_tmin(constraints: list[tuple[str, Callable[[float], float], float]],
               frame_t: float, floor: float,
               tol: float | None = None) -> tuple[float, str | None]:
    """Minimum duration so every (node, power(t), cap) constraint holds.

    Each power map is strictly decreasing in t, so the per-node minimum is a
    bisection and the slot minimum is the largest of them.
    """
    t_min = floor
    binder: str | None = None
    tol = tol if tol is not None else _BISECT_TOL_FRACTION * frame_t
    for node, power_of_t, cap in constraints:
        def ok(t: float, _p=power_of_t, _c=cap) -> bool:
            return _p(t) <= _c
        if ok(floor):
            continue
        if not ok(frame_t):
            raise InfeasibleError(
                f"node {node} exceeds its power budget even at the full "
                f"frame", binding_node=node)
        t_node = _bisect_monotone(ok, floor, frame_t, tol)
        if t_node > t_min:
            t_min, binder = t_node, node
    return t_min, binder


def tmin_2ts(s: Scenario, tol: float | None = None) -> FeasibleWindow:
    """Per-slot minimum durations for FD2TS, or an infeasible window.

    ``tol`` overrides the default bisection width of 1e-9 of the frame.
    """
    floor = t_floor(s)
    ref = s.frame_t  # fixed opposite-slot duration; powers split per slot
    try:
        t1_min, bind1 = _slot_tmin(
            [("a", lambda t: powers_2ts(s, t, ref).p_a, s.pa.a.p_max),
             ("r", lambda t: powers_2ts(s, t, ref).p_r_fwd, s.pa.r.p_max)],
            s.frame_t, floor, tol)
        t2_min, bind2 = _slot_tmin(
            [("b", lambda t: powers_2ts(s, ref, t).p_b, s.pa.b.p_max),
             ("r", lambda t: powers_2ts(s, ref, t).p_r_rev, s.pa.r.p_max)],
            s.frame_t, floor, tol)
    except InfeasibleError as err:
        return FeasibleWindow(t_min=(math.nan, math.nan), feasible=False,
                              binding_node=(err.binding_node, err.binding_node),
                              detail=str(err))
    if t1_min + t2_min > s.frame_t:
        return FeasibleWindow(
            t_min=(t1_min, t2_min), feasible=False,
            binding_node=(bind1, bind2),
            detail="minimum slot durations exceed the frame budget")
    return FeasibleWindow(t_min=(t1_min, t2_min), feasible=True,
                          binding_node=(bind1, bind2))


def tmin_1ts(s: Scenario, tol: float | None = None) -> FeasibleWindow:
    """Minimum duration for FD1TS via bisection on the joint predicate.

    The predicate bundles the cancellation condition (positive case
    denominators) with the three power caps; all of them relax as the slot
    grows, so it stays monotone.  ``tol`` overrides the default bisection
    width of 1e-9 of the frame.
    """
    floor = t_floor(s)

    def ok(t: float) -> bool:
        try:
            pw = powers_1ts(s, t)
        except InfeasibleError:
            return False
        return (pw.p_a <= s.pa.a.p_max and pw.p_b <= s.pa.b.p_max
                and pw.p_r <= s.pa.r.p_max)

    if ok(floor):
        return FeasibleWindow(t_min=(floor,), feasible=True,
                              binding_node=(None,))
    if not ok(s.frame_t):
        try:
            pw = powers_1ts(s, s.frame_t)
        except InfeasibleError as err:
            return FeasibleWindow(t_min=(math.nan,), feasible=False,
                                  binding_node=(err.binding_node,),
                                  detail=str(err))
        over = [(node, p, cap) for node, p, cap in
                (("a", pw.p_a, s.pa.a.p_max), ("b", pw.p_b, s.pa.b.p_max),
                 ("r", pw.p_r, s.pa.r.p_max)) if p > cap]
        node = max(over, key=lambda item: item[1] / item[2])[0]
        return FeasibleWindow(
            t_min=(math.nan,), feasible=False, binding_node=(node,),
            detail=f"node {node} exceeds its power budget even at the full frame")
    tol = tol if tol is not None else _BISECT_TOL_FRACTION * s.frame_t
    t_min = _bisect_monotone(ok, floor, s.frame_t, tol)
    pw = powers_1ts(s, t_min * (1.0 - 1e-7)) if t_min > floor else None
    binder = None
    if pw is not None:
        ratios = {"a": pw.p_a / s.pa.a.p_max, "b": pw.p_b / s.pa.b.p_max,
                  "r": pw.p_r / s.pa.r.p_max}
        binder = max(ratios, key=ratios.get)
    return FeasibleWindow(t_min=(t_min,), feasible=True, binding_node=(binder,))


def tmin_hd(s: Scenario, tol: float | None = None) -> FeasibleWindow:
    """Per-slot minimum durations for the HD baseline."""
    floor = t_floor(s)
    ref = s.frame_t
    try:
        t1_min, bind1 = _slot_tmin(
            [("a", lambda t: powers_hd(s, t, ref)[0], s.pa.a.p_max),
             ("b", lambda t: powers_hd(s, t, ref)[1], s.pa.b.p_max)],
            s.frame_t, floor, tol)
        t2_min, bind2 = _slot_tmin(
            [("r", lambda t: powers_hd(s, ref, t)[2], s.pa.r.p_max)],
            s.frame_t, floor, tol)
    except InfeasibleError as err:
        return FeasibleWindow(t_min=(math.nan, math.nan), feasible=False,
                              binding_node=(err.binding_node, err.binding_node),
                              detail=str(err))
    if t1_min + t2_min > s.frame_t:
        return FeasibleWindow(
            t_min=(t1_min, t2_min), feasible=False,
            binding_node=(bind1, bind2),
            detail="minimum slot durations exceed the frame budget")
    return FeasibleWindow(t_min=(t1_min, t2_min), feasible=True,
                          binding_node=(bind1, bind2))


def tmin_for(s: Scenario) -> FeasibleWindow:
    """Dispatch to the strategy's minimum-duration computation."""
    if s.strategy is Strategy.FD2TS:
        return tmin_2ts(s)
    if s.strategy is Strategy.FD1TS:
        return tmin_1ts(s)
    return tmin_hd(s)
