"""Unit-norm common precoders and zero-forcing private precoders."""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChannelError, PrecodingError
from .linalg import null_space_basis, project_onto_subspace

COMMON_STRATEGIES = ("seeded_random", "matched_min_user")
_OWN_GAIN_TOL = 1e-12


@dataclass(frozen=True)
class PrecoderSet:
    w_common: dict  # g -> unit-norm ndarray
    w_private: dict  # (k, g) -> unit-norm ndarray


def zf_private_precoders(channels, params):
    """ZF precoder per (user, channel): the user's own channel projected
    onto the null space of the co-scheduled users' channels, normalized.
    Among all ZF-compliant directions this maximizes the own effective gain.
    """
    w = {}
    for g, users in enumerate(params.user_sets):
        for k in users:
            others = [channels.vec(kp, g) for kp in users if kp != k]
            basis = null_space_basis(others, dim=params.n_tx)
            if not basis:
                raise PrecodingError(
                    f"no ZF null space for user {k} on channel {g}: "
                    f"{len(others)} interferers span all {params.n_tx} dimensions"
                )
            h = channels.vec(k, g)
            proj = project_onto_subspace(h, basis)
            h_norm = np.linalg.norm(h)
            p_norm = np.linalg.norm(proj)
            if h_norm == 0.0 or p_norm < _OWN_GAIN_TOL * h_norm:
                raise DegenerateChannelError(
                    f"channel of user {k} on channel {g} lies in the interferers' span"
                )
            w[(k, g)] = proj / p_norm
    return w


def common_precoder(channels, params, strategy="seeded_random", seed=0):
    """Unit-norm common precoder per channel.

    seeded_random: circularly-symmetric standard complex normal draw,
    normalized; deterministic given the seed (one draw per channel, in
    channel order). matched_min_user: normalized channel of the user with
    the smallest channel norm (the common-rate bottleneck candidate).
    """
    if strategy not in COMMON_STRATEGIES:
        raise ValueError(f"unknown common precoder strategy {strategy!r}")
    rng = np.random.default_rng(seed)
    w = {}
    for g, users in enumerate(params.user_sets):
        if strategy == "seeded_random":
            v = (rng.standard_normal(params.n_tx) + 1j * rng.standard_normal(params.n_tx)) / np.sqrt(2)
            w[g] = v / np.linalg.norm(v)
        else:
            norms = [(np.linalg.norm(channels.vec(k, g)), k) for k in users]
            n_min, k_min = min(norms)
            if n_min == 0.0:
                raise DegenerateChannelError(
                    f"user {k_min} on channel {g} has a zero channel"
                )
            w[g] = channels.vec(k_min, g) / n_min
    return w


def build_precoders(channels, params, strategy="seeded_random", seed=0):
    return PrecoderSet(
        w_common=common_precoder(channels, params, strategy, seed),
        w_private=zf_private_precoders(channels, params),
    )
