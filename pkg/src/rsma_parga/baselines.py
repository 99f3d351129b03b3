"""Reference schemes: SDMA, single-cluster NOMA with rank-proportional
power, and the fixed 50/50 RSMA power split."""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChannelError
from .rates import PowerAllocation, RateReport, effective_gains, sum_rate


@dataclass(frozen=True)
class BaselineResult:
    method: str  # sdma | noma | fp_rsma
    report: RateReport
    alloc: PowerAllocation


def sdma_rates(channels, precoders, params):
    """SDMA as RSMA with zero common power: ZF private streams only, total
    power split uniformly across streams. Same rate code path as RSMA."""
    g_count = len(params.user_sets)
    pc = tuple(0.0 for _ in range(g_count))
    pp = tuple(
        tuple(params.total_power / (g_count * len(users)) for _ in users)
        for users in params.user_sets
    )
    alloc = PowerAllocation(p_common=pc, p_private=pp)
    gains = effective_gains(channels, precoders, params)
    report = sum_rate(alloc, gains, params.noise_power, params)
    return BaselineResult(method="sdma", report=report, alloc=alloc)


def noma_rates(channels, params):
    """Single-cluster downlink NOMA baseline.

    One MRT beam toward the strongest user per channel; users ordered by
    effective gain through that beam; power weights proportional to the
    SIC rank (the weakest user gets the most power). Each user cancels the
    weaker users' higher-power messages, so user i's interference is the
    residual from the stronger users j < i.
    """
    g_count = len(params.user_sets)
    n0 = params.noise_power
    p_ch = params.total_power / g_count
    rc = []
    rp = []
    pp_all = []
    total = 0.0
    for g, users in enumerate(params.user_sets):
        norms = [np.linalg.norm(channels.vec(k, g)) for k in users]
        if max(norms) == 0.0:
            raise DegenerateChannelError(f"all channels on channel {g} are zero")
        head = users[int(np.argmax(norms))]
        w = channels.vec(head, g) / np.linalg.norm(channels.vec(head, g))
        gains = np.array([abs(np.vdot(channels.vec(k, g), w)) ** 2 for k in users])

        kg = len(users)
        order = sorted(range(kg), key=lambda i: (-gains[i], users[i]))
        weight_sum = kg * (kg + 1) // 2
        powers = np.empty(kg)  # aligned with user_sets order
        rates = np.empty(kg)
        cancelled = 0.0  # power of stronger (earlier-rank) users
        for rank, i in enumerate(order, start=1):
            powers[i] = p_ch * rank / weight_sum
            rates[i] = np.log2(1.0 + powers[i] * gains[i] / (cancelled * gains[i] + n0))
            cancelled += powers[i]

        rc.append(0.0)
        rp.append(tuple(float(r) for r in rates))
        pp_all.append(tuple(float(p) for p in powers))
        total += float(rates.sum())

    alloc = PowerAllocation(p_common=tuple(0.0 for _ in range(g_count)), p_private=tuple(pp_all))
    report = RateReport(r_common=tuple(rc), r_private=tuple(rp), sum_rate=total)
    return BaselineResult(method="noma", report=report, alloc=alloc)


def fixed_rsma_alloc(params):
    """50% of the budget to the common stream, 50% split equally among the
    private streams, per channel."""
    g_count = len(params.user_sets)
    pc = tuple(0.5 * params.total_power / g_count for _ in range(g_count))
    pp = tuple(
        tuple(0.5 * params.total_power / (g_count * len(users)) for _ in users)
        for users in params.user_sets
    )
    return PowerAllocation(p_common=pc, p_private=pp)


def fp_rsma_rates(channels, precoders, params):
    """Fixed-power RSMA baseline evaluated through the RSMA rate core."""
    alloc = fixed_rsma_alloc(params)
    gains = effective_gains(channels, precoders, params)
    report = sum_rate(alloc, gains, params.noise_power, params)
    return BaselineResult(method="fp_rsma", report=report, alloc=alloc)
