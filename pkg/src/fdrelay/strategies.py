"""Capacities, closed-form optimal powers and energy objectives per strategy.

For each strategy the rate constraints are active at the energy optimum, so
the transmit powers collapse to closed forms in the slot durations.  The
functions here come in pairs: ``powers_*`` (closed forms), ``caps_*``
(capacity maps, array-friendly so the brute-force oracle can reuse them) and
``energy_*`` / ``energy_*_at`` (total frame energy at closed-form or at
arbitrary powers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    CircuitAccounting,
    InfeasibleError,
    RelayCase,
    Scenario,
    pa_consumption,
)

__all__ = [
    "PowerAssignment2TS",
    "PowerAssignment1TS",
    "SpectralLoads",
    "spectral_loads_2ts",
    "spectral_loads_1ts",
    "caps_2ts",
    "powers_2ts",
    "energy_2ts",
    "energy_2ts_at",
    "caps_1ts",
    "powers_1ts",
    "energy_1ts",
    "energy_1ts_at",
    "caps_hd",
    "powers_hd",
    "energy_hd",
    "energy_hd_at",
]

# 2**x overflows double precision near x ~ 1024; anything past this is an
# unmeetable spectral load, reported as an infinite power demand.
_LOAD_LIMIT = 500.0


def _pow2(x: float) -> float:
    """2**x with overflow mapped to +inf (infeasible spectral load)."""
    if x > _LOAD_LIMIT:
        return math.inf
    return 2.0 ** x


@dataclass(frozen=True)
class PowerAssignment2TS:
    """Per-slot transmit powers of the two-slot full-duplex strategy."""

    p_a: float
    p_b: float
    p_r_fwd: float  # relay power toward b during slot 1
    p_r_rev: float  # relay power toward a during slot 2


@dataclass(frozen=True)
class PowerAssignment1TS:
    """Transmit powers of the single-slot strategy and the binding case."""

    p_a: float
    p_b: float
    p_r: float
    active_case: RelayCase


@dataclass(frozen=True)
class SpectralLoads:
    """Per-slot spectral loads in bit/s/Hz for each link direction."""

    lambda_fl: float
    lambda_rl: float


def spectral_loads_2ts(s: Scenario, t1: float, t2: float) -> SpectralLoads:
    return SpectralLoads(
        lambda_fl=s.r_fl * s.frame_t / (s.bandwidth_w * t1),
        lambda_rl=s.r_rl * s.frame_t / (s.bandwidth_w * t2),
    )


def spectral_loads_1ts(s: Scenario, t1: float) -> SpectralLoads:
    return SpectralLoads(
        lambda_fl=s.r_fl * s.frame_t / (s.bandwidth_w * t1),
        lambda_rl=s.r_rl * s.frame_t / (s.bandwidth_w * t1),
    )


# ---------------------------------------------------------------------------
# FD two-slot strategy: only the relay is full duplex; a->r->b in slot 1 and
# b->r->a in slot 2, the relay forwarding while it receives.
# ---------------------------------------------------------------------------

def caps_2ts(s: Scenario, t1: float, t2: float, pw: PowerAssignment2TS):
    """Link capacities (C_ar, C_rb, C_br, C_ra) in bit/s.

    The relay's own forwarding signal leaks into its receiver, so its
    receive SINR carries the residual self-interference term.  Power fields
    may be ndarrays; the outputs then broadcast.
    """
    ch = s.channels
    w1 = t1 / s.frame_t * s.bandwidth_w
    w2 = t2 / s.frame_t * s.bandwidth_w
    c_ar = w1 * np.log2(1.0 + pw.p_a * ch.g_ar / (pw.p_r_fwd * ch.gs_r + ch.sigma2_r))
    c_rb = w1 * np.log2(1.0 + pw.p_r_fwd * ch.g_rb / ch.sigma2_b)
    c_br = w2 * np.log2(1.0 + pw.p_b * ch.g_br / (pw.p_r_rev * ch.gs_r + ch.sigma2_r))
    c_ra = w2 * np.log2(1.0 + pw.p_r_rev * ch.g_ra / ch.sigma2_a)
    return c_ar, c_rb, c_br, c_ra


def powers_2ts(s: Scenario, t1: float, t2: float) -> PowerAssignment2TS:
    """Minimum powers meeting both rate demands with equality in every link.

    Inverting the slot-1 pair gives the relay power toward b from the
    direct r->b link, then the a power from the self-interference-loaded
    a->r link; slot 2 is the mirror image.  Each component is strictly
    decreasing in its own slot duration.
    """
    ch = s.channels
    loads = spectral_loads_2ts(s, t1, t2)
    x = _pow2(loads.lambda_fl) - 1.0
    y = _pow2(loads.lambda_rl) - 1.0
    if math.isfinite(x):
        p_r_fwd = ch.sigma2_b / ch.g_rb * x
        p_a = (ch.sigma2_r / ch.g_ar * x
               + ch.sigma2_b * ch.gs_r / (ch.g_ar * ch.g_rb) * x * x)
    else:
        p_r_fwd = p_a = math.inf
    if math.isfinite(y):
        p_r_rev = ch.sigma2_a / ch.g_ra * y
        p_b = (ch.sigma2_r / ch.g_br * y
               + ch.sigma2_a * ch.gs_r / (ch.g_br * ch.g_ra) * y * y)
    else:
        p_r_rev = p_b = math.inf
    return PowerAssignment2TS(p_a=p_a, p_b=p_b, p_r_fwd=p_r_fwd, p_r_rev=p_r_rev)


def energy_2ts_at(s: Scenario, t1: float, t2: float, pw: PowerAssignment2TS) -> float:
    """Frame energy of FD2TS at the given powers.

    Slot 1 runs a's transmitter, the relay's transmitter and receiver, and
    b's receiver, all at the forward rate; slot 2 mirrors at the reverse
    rate.  The dynamic circuit power is therefore four epsilon*rate terms
    per slot under either accounting mode.
    """
    c = s.circuit
    statics = c.a.p_base + 2.0 * c.r.p_base + c.b.p_base
    eps4 = c.a.epsilon + 2.0 * c.r.epsilon + c.b.epsilon
    slot1 = (pa_consumption(s.pa.a, pw.p_a) + pa_consumption(s.pa.r, pw.p_r_fwd)
             + statics + eps4 * s.r_fl)
    slot2 = (pa_consumption(s.pa.b, pw.p_b) + pa_consumption(s.pa.r, pw.p_r_rev)
             + statics + eps4 * s.r_rl)
    idle = s.p_idle_total * (s.frame_t - t1 - t2)
    return float(slot1 * t1 + slot2 * t2 + idle)


def energy_2ts(s: Scenario, t1: float, t2: float) -> float:
    """Frame energy of FD2TS at the closed-form optimal powers."""
    return energy_2ts_at(s, t1, t2, powers_2ts(s, t1, t2))


# ---------------------------------------------------------------------------
# FD single-slot strategy: all three nodes full duplex; the relay broadcasts
# a structured combination both end nodes can strip their own data from.
# ---------------------------------------------------------------------------

def caps_1ts(s: Scenario, t1: float, p_a, p_b, p_r):
    """Link capacities (C_ar, C_br, C_ra, C_rb) in bit/s.

    The two uplinks take the structured-binning multiple-access form (own
    share of the received sum plus own SINR inside the log); the downlinks
    are plain SINR links with each end node's residual self-interference
    added to its noise.  Accepts ndarray powers.
    """
    ch = s.channels
    w1 = t1 / s.frame_t * s.bandwidth_w
    sa = p_a * ch.g_ar
    sb = p_b * ch.g_br
    den_r = p_r * ch.gs_r + ch.sigma2_r
    c_ar = w1 * np.log2(sa / (sa + sb) + sa / den_r)
    c_br = w1 * np.log2(sb / (sa + sb) + sb / den_r)
    c_ra = w1 * np.log2(1.0 + p_r * ch.g_ra / (p_a * ch.gs_a + ch.sigma2_a))
    c_rb = w1 * np.log2(1.0 + p_r * ch.g_rb / (p_b * ch.gs_b + ch.sigma2_b))
    return c_ar, c_br, c_ra, c_rb


def _powers_1ts_cases(s: Scenario, t1: float):
    """Candidate power triples for both relay-power cases.

    Closing both uplink equalities expresses p_a and p_b as multiples of
    the relay's received interference-plus-noise level; closing one of the
    two broadcast equalities then pins p_r through a scalar linear solve.
    In asymptotic mode the shared factor (2^lfl + 2^lrl - 1)/(2^lfl + 2^lrl)
    is dropped and 2^l - 1 becomes 2^l, matching the high-load forms.
    """
    ch = s.channels
    loads = spectral_loads_1ts(s, t1)
    e_fl = _pow2(loads.lambda_fl)
    e_rl = _pow2(loads.lambda_rl)
    if not (math.isfinite(e_fl) and math.isfinite(e_rl)):
        raise InfeasibleError(
            "spectral load overflows any finite power", cause="power_budget")
    total = e_fl + e_rl
    if s.asymptotic_1ts:
        factor = 1.0
        down_a = e_rl  # reverse-link broadcast multiplier
        down_b = e_fl  # forward-link broadcast multiplier
    else:
        factor = (total - 1.0) / total
        down_a = e_rl - 1.0
        down_b = e_fl - 1.0

    def relay_power(down: float, up: float, gs_self: float, g_up: float,
                    g_down: float, sigma2_self: float, side: str) -> float:
        num = down * (factor * up * gs_self * ch.sigma2_r + g_up * sigma2_self)
        den = g_down * g_up - down * factor * up * gs_self * ch.gs_r
        if den <= 0:
            raise InfeasibleError(
                f"self-cancellation too weak to close the {side} broadcast "
                f"link at this spectral load",
                binding_node=side, cause="cancellation")
        return num / den

    # Case I: reverse-link broadcast (r -> a) holds with equality.
    p_r_rl = relay_power(down_a, e_fl, ch.gs_a, ch.g_ar, ch.g_ra,
                         ch.sigma2_a, "a")
    # Case II: forward-link broadcast (r -> b) holds with equality.
    p_r_fl = relay_power(down_b, e_rl, ch.gs_b, ch.g_br, ch.g_rb,
                         ch.sigma2_b, "b")

    def end_powers(p_r: float) -> tuple[float, float]:
        d = p_r * ch.gs_r + ch.sigma2_r
        return factor * e_fl * d / ch.g_ar, factor * e_rl * d / ch.g_br

    pa1, pb1 = end_powers(p_r_rl)
    pa2, pb2 = end_powers(p_r_fl)
    case1 = PowerAssignment1TS(pa1, pb1, p_r_rl, RelayCase.CASE_I)
    case2 = PowerAssignment1TS(pa2, pb2, p_r_fl, RelayCase.CASE_II)
    return case1, case2


def powers_1ts(s: Scenario, t1: float) -> PowerAssignment1TS:
    """Optimal powers: the larger of the two relay-power candidates wins."""
    case1, case2 = _powers_1ts_cases(s, t1)
    return case1 if case1.p_r >= case2.p_r else case2


def energy_1ts_at(s: Scenario, t1: float, pw: PowerAssignment1TS) -> float:
    """Frame energy of FD1TS at the given powers.

    All six chains (three tx, three rx) are live for the whole slot, so the
    static circuit cost is twice the per-node sum.  The printed accounting
    charges dynamic circuit power as eps*(r_fl + 2*r_rl); first-principles
    accounting charges every chain at its actual rate, with the relay
    forwarding at max(r_fl, r_rl).
    """
    c = s.circuit
    statics = 2.0 * s.p_base_total
    if s.circuit_accounting is CircuitAccounting.PRINTED:
        dynamic = c.a.epsilon * (s.r_fl + 2.0 * s.r_rl)
    else:
        both = s.r_fl + s.r_rl
        dynamic = (c.a.epsilon * both + c.b.epsilon * both
                   + c.r.epsilon * (both + max(s.r_fl, s.r_rl)))
    active = (pa_consumption(s.pa.a, pw.p_a) + pa_consumption(s.pa.b, pw.p_b)
              + pa_consumption(s.pa.r, pw.p_r) + statics + dynamic)
    return float(active * t1 + s.p_idle_total * (s.frame_t - t1))


def energy_1ts(s: Scenario, t1: float) -> float:
    """Frame energy of FD1TS: the worse of the two case energies.

    The binding broadcast constraint needs the larger relay power, which
    also inflates both end-node powers, so the pointwise max over the two
    case energies is the actual cost at duration ``t1``.
    """
    case1, case2 = _powers_1ts_cases(s, t1)
    return max(energy_1ts_at(s, t1, case1), energy_1ts_at(s, t1, case2))


# ---------------------------------------------------------------------------
# HD baseline: both end nodes transmit to the relay in slot 1 (multiple
# access with structured binning); the relay broadcasts in slot 2.
# ---------------------------------------------------------------------------

def caps_hd(s: Scenario, t1: float, t2: float, p_a, p_b, p_r):
    """Link capacities (C_ar, C_br, C_ra, C_rb) in bit/s; ndarray-friendly."""
    ch = s.channels
    w1 = t1 / s.frame_t * s.bandwidth_w
    w2 = t2 / s.frame_t * s.bandwidth_w
    sa = p_a * ch.g_ar
    sb = p_b * ch.g_br
    c_ar = w1 * np.log2(sa / (sa + sb) + sa / ch.sigma2_r)
    c_br = w1 * np.log2(sb / (sa + sb) + sb / ch.sigma2_r)
    c_ra = w2 * np.log2(1.0 + p_r * ch.g_ra / ch.sigma2_a)
    c_rb = w2 * np.log2(1.0 + p_r * ch.g_rb / ch.sigma2_b)
    return c_ar, c_br, c_ra, c_rb


def powers_hd(s: Scenario, t1: float, t2: float) -> tuple[float, float, float]:
    """Closed-form powers (p_a, p_b, p_r) activating the HD constraints."""
    ch = s.channels
    l1 = _pow2(s.r_fl * s.frame_t / (s.bandwidth_w * t1))
    l2 = _pow2(s.r_rl * s.frame_t / (s.bandwidth_w * t1))
    l3 = _pow2(s.r_fl * s.frame_t / (s.bandwidth_w * t2))
    l4 = _pow2(s.r_rl * s.frame_t / (s.bandwidth_w * t2))
    if math.isfinite(l1) and math.isfinite(l2):
        p_a = (l1 - l1 / (l1 + l2)) * ch.sigma2_r / ch.g_ar
        p_b = (l2 - l2 / (l1 + l2)) * ch.sigma2_r / ch.g_br
    else:
        p_a = p_b = math.inf
    if math.isfinite(l3) and math.isfinite(l4):
        p_r = max((l3 - 1.0) * ch.sigma2_b / ch.g_rb,
                  (l4 - 1.0) * ch.sigma2_a / ch.g_ra)
    else:
        p_r = math.inf
    return p_a, p_b, p_r


def energy_hd_at(s: Scenario, t1: float, t2: float, p_a: float, p_b: float,
                 p_r: float) -> float:
    """Frame energy of HD2TS at the given powers.

    Printed accounting charges dynamic circuit power eps*(r_fl + r_rl) in
    slot 1 and eps*max(r_fl, r_rl) in slot 2; first-principles accounting
    additionally charges the relay's slot-1 reception and the end nodes'
    slot-2 reception.
    """
    c = s.circuit
    statics = s.p_base_total
    if s.circuit_accounting is CircuitAccounting.PRINTED:
        dyn1 = c.a.epsilon * (s.r_fl + s.r_rl)
        dyn2 = c.a.epsilon * max(s.r_fl, s.r_rl)
    else:
        dyn1 = (c.a.epsilon * s.r_fl + c.b.epsilon * s.r_rl
                + c.r.epsilon * (s.r_fl + s.r_rl))
        dyn2 = (c.r.epsilon * max(s.r_fl, s.r_rl)
                + c.a.epsilon * s.r_rl + c.b.epsilon * s.r_fl)
    slot1 = (pa_consumption(s.pa.a, p_a) + pa_consumption(s.pa.b, p_b)
             + statics + dyn1)
    slot2 = pa_consumption(s.pa.r, p_r) + statics + dyn2
    idle = s.p_idle_total * (s.frame_t - t1 - t2)
    return float(slot1 * t1 + slot2 * t2 + idle)


def energy_hd(s: Scenario, t1: float, t2: float) -> float:
    """Frame energy of HD2TS at the closed-form optimal powers."""
    p_a, p_b, p_r = powers_hd(s, t1, t2)
    return energy_hd_at(s, t1, t2, p_a, p_b, p_r)
