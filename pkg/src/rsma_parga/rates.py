"""SINR and Shannon-rate core: effective gains, common/private SINRs,
per-channel rates, the sum-rate objective and the feasibility check.

All functions are pure; EffectiveGains and RateProblem are read-only after
construction, so the GA can evaluate many allocations against one shared
gains table from multiple threads.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ScenarioError

BUDGET_SLACK = 1e-9


@dataclass(frozen=True)
class PowerAllocation:
    """Nonnegative power coefficients: one common entry per channel, one
    private entry per (user, channel), private entries ordered like the
    channel's user set."""

    p_common: tuple  # length G
    p_private: tuple  # [g] -> tuple of length K_g

    def total(self):
        return float(sum(self.p_common) + sum(sum(pp) for pp in self.p_private))


@dataclass(frozen=True)
class EffectiveGains:
    """|h^H w|^2 tables. users[g] orders the rows/columns of each channel's
    arrays; g_private[g][i, m] is stream m seen through user i's channel."""

    users: tuple  # [g] -> tuple of user ids
    g_common: tuple  # [g] -> ndarray (K_g,)
    g_private: tuple  # [g] -> ndarray (K_g, K_g)


@dataclass(frozen=True)
class RateReport:
    r_common: tuple  # per channel, bits/s/Hz
    r_private: tuple  # [g] -> tuple per user, bits/s/Hz
    sum_rate: float


def effective_gains(channels, precoders, params):
    users_per_g = []
    gc = []
    gp = []
    for g, users in enumerate(params.user_sets):
        kg = len(users)
        gc_g = np.empty(kg)
        gp_g = np.empty((kg, kg))
        for i, k in enumerate(users):
            h = channels.vec(k, g)
            gc_g[i] = abs(np.vdot(h, precoders.w_common[g])) ** 2
            for m, km in enumerate(users):
                gp_g[i, m] = abs(np.vdot(h, precoders.w_private[(km, g)])) ** 2
        users_per_g.append(tuple(users))
        gc.append(gc_g)
        gp.append(gp_g)
    return EffectiveGains(users=tuple(users_per_g), g_common=tuple(gc), g_private=tuple(gp))


def _user_index(gains, k, g):
    try:
        return gains.users[g].index(k)
    except ValueError:
        raise ScenarioError(f"user {k} is not scheduled on channel {g}") from None


def _private_interference(i, g, alloc, gains):
    # total private power seen through user i's channel on g
    pp = np.asarray(alloc.p_private[g])
    return (pp * gains.g_private[g][i, :]).sum()


def sinr_common(k, g, alloc, gains, n0):
    """Common-stream SINR at user k on channel g; every private stream
    (including the receiver's own) counts as interference."""
    i = _user_index(gains, k, g)
    num = alloc.p_common[g] * gains.g_common[g][i]
    return float(num / (_private_interference(i, g, alloc, gains) + n0))


def sinr_private(k, g, alloc, gains, n0):
    """Private-stream SINR at user k after SIC removed the common stream."""
    i = _user_index(gains, k, g)
    pp = np.asarray(alloc.p_private[g])
    own = pp[i] * gains.g_private[g][i, i]
    interference = _private_interference(i, g, alloc, gains) - own
    return float(pp[i] * gains.g_private[g][i, i] / (interference + n0))


def common_rate(g, alloc, gains, n0, user_set=None):
    """log2(1 + min-over-users common SINR) on channel g."""
    users = gains.users[g] if user_set is None else tuple(user_set)
    if not users:
        raise ScenarioError(f"channel {g} has an empty user set")
    worst = min(sinr_common(k, g, alloc, gains, n0) for k in users)
    return float(np.log2(1.0 + worst))


def private_rate(k, g, alloc, gains, n0):
    return float(np.log2(1.0 + sinr_private(k, g, alloc, gains, n0)))


def sum_rate(alloc, gains, n0, params):
    """Full RateReport for an allocation: per-channel common rate, per-user
    private rates, and their total."""
    rc = []
    rp = []
    total = 0.0
    for g, users in enumerate(params.user_sets):
        rc_g = common_rate(g, alloc, gains, n0, users)
        rp_g = tuple(private_rate(k, g, alloc, gains, n0) for k in users)
        rc.append(rc_g)
        rp.append(rp_g)
        total += rc_g + sum(rp_g)
    return RateReport(r_common=tuple(rc), r_private=tuple(rp), sum_rate=total)


def check_feasible(alloc, params):
    """Constraint violations of the power-allocation problem; empty when
    all entries are nonnegative and the total respects the budget."""
    violations = []
    for g in range(params.n_channels):
        if alloc.p_common[g] < 0:
            violations.append(f"p_common[{g}] = {alloc.p_common[g]} < 0")
        for i, k in enumerate(params.user_sets[g]):
            if alloc.p_private[g][i] < 0:
                violations.append(f"p_private[user {k}, channel {g}] = {alloc.p_private[g][i]} < 0")
    total = alloc.total()
    if total > params.total_power + BUDGET_SLACK:
        violations.append(f"total power {total} exceeds budget {params.total_power}")
    return violations


class RateProblem:
    """Sum-rate objective over a flat gene vector
    [P_1^C, P_{k,1}..., P_2^C, ...], shared by the GA and the grid oracle.

    The batch evaluator uses only row-independent elementwise ops and
    fixed-length reductions, so results are bit-identical regardless of
    how a population is chunked across workers.
    """

    def __init__(self, gains, n0, total_power, user_sets):
        self.gains = gains
        self.n0 = float(n0)
        self.total_power = float(total_power)
        self.user_sets = tuple(tuple(u) for u in user_sets)
        self.offsets = []
        off = 0
        for users in self.user_sets:
            self.offsets.append(off)
            off += 1 + len(users)
        self.dims = off

    def alloc_from_genes(self, genes):
        genes = np.asarray(genes, dtype=float)
        pc = []
        pp = []
        for g, users in enumerate(self.user_sets):
            off = self.offsets[g]
            pc.append(float(genes[off]))
            pp.append(tuple(float(x) for x in genes[off + 1 : off + 1 + len(users)]))
        return PowerAllocation(p_common=tuple(pc), p_private=tuple(pp))

    def genes_from_alloc(self, alloc):
        genes = np.empty(self.dims)
        for g, users in enumerate(self.user_sets):
            off = self.offsets[g]
            genes[off] = alloc.p_common[g]
            genes[off + 1 : off + 1 + len(users)] = alloc.p_private[g]
        return genes

    def sum_rate_batch(self, genes_matrix):
        """Sum rate of each row of an (n, dims) gene matrix."""
        P = np.asarray(genes_matrix, dtype=float)
        if P.ndim != 2 or P.shape[1] != self.dims:
            raise ValueError(f"expected shape (n, {self.dims}), got {P.shape}")
        total = np.zeros(P.shape[0])
        for g, users in enumerate(self.user_sets):
            off = self.offsets[g]
            kg = len(users)
            pc = P[:, off]
            pp = P[:, off + 1 : off + 1 + kg]
            gc = self.gains.g_common[g]
            gp = self.gains.g_private[g]
            # (n, K): total private power seen through each user's channel
            seen = (pp[:, None, :] * gp[None, :, :]).sum(axis=2)
            sinr_c = pc[:, None] * gc[None, :] / (seen + self.n0)
            total += np.log2(1.0 + sinr_c.min(axis=1))
            own = pp * np.diag(gp)[None, :]
            total += np.log2(1.0 + own / (seen - own + self.n0)).sum(axis=1)
        return total

    def sum_rate_genes(self, genes):
        return float(self.sum_rate_batch(np.asarray(genes, dtype=float)[None, :])[0])

    def report(self, genes):
        """RateReport for a gene vector, via the scalar rate path."""
        alloc = self.alloc_from_genes(genes)
        params = _ProblemParams(self)
        return sum_rate(alloc, self.gains, self.n0, params)


class _ProblemParams:
    # minimal params view so sum_rate/check_feasible work on a RateProblem
    def __init__(self, problem):
        self.user_sets = problem.user_sets
        self.n_channels = len(problem.user_sets)
        self.total_power = problem.total_power
