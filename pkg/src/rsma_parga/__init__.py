"""Downlink RSMA link-level rate simulator with a GA power allocator."""

from .baselines import BaselineResult, fixed_rsma_alloc, fp_rsma_rates, noma_rates, sdma_rates
from .channel import (
    ChannelSet,
    Scenario,
    ScenarioParams,
    generate_three_user_channels,
    load_channels,
    load_scenario,
    save_scenario,
)
from .errors import (
    ConfigError,
    DegenerateChannelError,
    DimensionError,
    GridTooLargeError,
    InternalError,
    PrecodingError,
    RsmaError,
    ScenarioError,
)
from .ga import Chromosome, GAConfig, GAResult, run_parga
from .oracle import GridSpec, grid_search
from .precoding import PrecoderSet, build_precoders, common_precoder, zf_private_precoders
from .rates import (
    EffectiveGains,
    PowerAllocation,
    RateProblem,
    RateReport,
    check_feasible,
    common_rate,
    effective_gains,
    private_rate,
    sinr_common,
    sinr_private,
    sum_rate,
)

__version__ = "0.1.0"
