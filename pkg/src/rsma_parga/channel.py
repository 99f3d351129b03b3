"""Channel scenario definition, the parametric three-user channel generator,
and the line-oriented scenario file format.

Scenario files are flat `key = value` text. Complex vectors are written as
comma-separated `re+imj` entries in brackets. User and channel indices in
keys (`h.<k>.<g>`, `user_set.<g>`) are 1-based in files, 0-based in memory.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, ScenarioError
from .ga import GAConfig


@dataclass(frozen=True)
class ScenarioParams:
    n_tx: int = 4
    n_users: int = 3
    n_channels: int = 1
    user_sets: tuple = ((0, 1, 2),)
    gamma1: float = 1.0
    gamma2: float = 1.0
    theta1: float = math.pi / 9
    theta2: float = 2 * math.pi / 9
    noise_power: float = 1.0
    total_power: float = 100.0
    h3_literal: bool = False

    def __post_init__(self):
        if self.n_tx < 1 or self.n_users < 1 or self.n_channels < 1:
            raise ScenarioError("n_tx, n_users, n_channels must be positive")
        if len(self.user_sets) != self.n_channels:
            raise ScenarioError("user_sets must have one entry per channel")
        for g, users in enumerate(self.user_sets):
            for k in users:
                if not 0 <= k < self.n_users:
                    raise ScenarioError(f"user {k} in user_set.{g + 1} out of range")
        if self.noise_power <= 0:
            raise ScenarioError("noise_power must be > 0")
        if self.total_power <= 0:
            raise ScenarioError("total_power must be > 0")


@dataclass(frozen=True)
class ChannelSet:
    """Per-(user, channel) complex channel vectors, immutable after build."""

    h: dict  # (k, g) -> complex ndarray of length n_tx

    def vec(self, k, g):
        return self.h[(k, g)]


def generate_three_user_channels(params):
    """Three-user, four-antenna parametric channels.

    h1 is all-ones; h2 and h3 are uniform-phase-progression vectors with
    gains gamma1/gamma2 and phase steps theta1/theta2. With
    params.h3_literal the second entry of h3 uses theta1 instead of
    theta2 (breaking the progression); the default keeps the progression.
    """
    if params.n_tx != 4 or params.n_users != 3:
        raise ScenarioError(
            "three-user generator requires n_tx=4, n_users=3 "
            f"(got n_tx={params.n_tx}, n_users={params.n_users})"
        )
    n = np.arange(4)
    h1 = np.ones(4, dtype=complex)
    h2 = params.gamma1 * np.exp(1j * n * params.theta1)
    if params.h3_literal:
        phases = np.array([0.0, params.theta1, 2 * params.theta2, 3 * params.theta2])
        h3 = params.gamma2 * np.exp(1j * phases)
    else:
        h3 = params.gamma2 * np.exp(1j * n * params.theta2)
    base = {0: h1, 1: h2, 2: h3}
    h = {}
    for g, users in enumerate(params.user_sets):
        for k in users:
            h[(k, g)] = base[k].copy()
    return ChannelSet(h=h)


@dataclass(frozen=True)
class Scenario:
    """A fully-resolved experiment setup: params, channels, GA and precoder knobs."""

    params: ScenarioParams
    channels: ChannelSet
    ga: GAConfig = field(default_factory=GAConfig)
    common_precoder_strategy: str = "seeded_random"
    precoder_seed: int = 0

    def with_params(self, **changes):
        """New Scenario with updated params; channels regenerated."""
        params = replace(self.params, **changes)
        return replace(self, params=params, channels=generate_three_user_channels(params))


# --- scenario file format -------------------------------------------------

_PARAM_KEYS = {
    "n_tx": int,
    "n_users": int,
    "n_channels": int,
    "gamma1": float,
    "gamma2": float,
    "theta1": float,
    "theta2": float,
    "noise_power": float,
    "total_power": float,
    "h3_literal": None,  # bool, parsed specially
}

_GA_KEYS = {
    "population_size": int,
    "mutation_rate": float,
    "mutation_scale": float,
    "elite_rate": float,
    "crossover_rate": float,
    "max_generations": int,
    "stall_generations": int,
    "seed": int,
}


def _fmt_complex(z):
    # repr() on the components so floats round-trip bit-exactly
    sign = "+" if z.imag >= 0 or math.isnan(z.imag) else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}j"


def _fmt_vector(v):
    return "[" + ", ".join(_fmt_complex(complex(z)) for z in v) + "]"


def _parse_vector(text, lineno):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ConfigError(f"line {lineno}: vector must be bracketed: {text!r}")
    body = text[1:-1].strip()
    if not body:
        raise ConfigError(f"line {lineno}: empty vector")
    try:
        return np.array([complex(part.strip()) for part in body.split(",")], dtype=complex)
    except ValueError as exc:
        raise ConfigError(f"line {lineno}: bad complex entry ({exc})") from exc


def save_scenario(scenario, path):
    """Write a scenario file that load_scenario round-trips bit-exactly."""
    p = scenario.params
    lines = [
        f"n_tx = {p.n_tx}",
        f"n_users = {p.n_users}",
        f"n_channels = {p.n_channels}",
        f"gamma1 = {p.gamma1!r}",
        f"gamma2 = {p.gamma2!r}",
        f"theta1 = {p.theta1!r}",
        f"theta2 = {p.theta2!r}",
        f"noise_power = {p.noise_power!r}",
        f"total_power = {p.total_power!r}",
        f"h3_literal = {'true' if p.h3_literal else 'false'}",
        f"common_precoder_strategy = {scenario.common_precoder_strategy}",
        f"precoder_seed = {scenario.precoder_seed}",
    ]
    for g, users in enumerate(p.user_sets):
        lines.append(f"user_set.{g + 1} = " + ", ".join(str(k + 1) for k in users))
    for (k, g), vec in sorted(scenario.channels.h.items()):
        lines.append(f"h.{k + 1}.{g + 1} = {_fmt_vector(vec)}")
    ga = scenario.ga
    for key in _GA_KEYS:
        lines.append(f"ga.{key} = {getattr(ga, key)!r}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def load_scenario(path):
    """Parse a scenario file into a Scenario.

    If no h.<k>.<g> lines are present the three-user generator is used.
    Parse failures raise ConfigError with the offending line number;
    inconsistent dimensions raise ScenarioError.
    """
    raw = {}
    lineno_of = {}
    try:
        f = open(path)
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from exc
    with f:
        for lineno, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"line {lineno}: expected 'key = value': {stripped!r}")
            key, _, value = stripped.partition("=")
            key = key.strip()
            if key in raw:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            raw[key] = value.strip()
            lineno_of[key] = lineno
    if not raw:
        raise ConfigError(f"{path}: empty scenario file")

    def take(key, conv, default):
        if key not in raw:
            return default
        try:
            return conv(raw.pop(key))
        except ValueError as exc:
            raise ConfigError(f"line {lineno_of[key]}: bad value for {key} ({exc})") from exc

    def parse_bool(text):
        t = text.lower()
        if t in ("true", "1", "yes"):
            return True
        if t in ("false", "0", "no"):
            return False
        raise ValueError(f"not a boolean: {text!r}")

    defaults = ScenarioParams()
    kwargs = {}
    for key, conv in _PARAM_KEYS.items():
        conv = parse_bool if key == "h3_literal" else conv
        kwargs[key] = take(key, conv, getattr(defaults, key))

    n_channels = kwargs["n_channels"]
    user_sets = []
    for g in range(n_channels):
        key = f"user_set.{g + 1}"
        if key in raw:
            try:
                users = tuple(int(part) - 1 for part in raw.pop(key).split(","))
            except ValueError as exc:
                raise ConfigError(f"line {lineno_of[key]}: bad user list ({exc})") from exc
        else:
            users = tuple(range(kwargs["n_users"]))
        user_sets.append(users)
    kwargs["user_sets"] = tuple(user_sets)

    strategy = take("common_precoder_strategy", str, "seeded_random")
    precoder_seed = take("precoder_seed", int, 0)

    ga_defaults = GAConfig()
    ga_kwargs = {}
    for key, conv in _GA_KEYS.items():
        ga_kwargs[key] = take(f"ga.{key}", conv, getattr(ga_defaults, key))

    params = ScenarioParams(**kwargs)

    h_keys = [key for key in raw if key.startswith("h.")]
    if h_keys:
        h = {}
        for key in h_keys:
            parts = key.split(".")
            if len(parts) != 3:
                raise ConfigError(f"line {lineno_of[key]}: bad channel key {key!r}")
            try:
                k, g = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError as exc:
                raise ConfigError(f"line {lineno_of[key]}: bad channel key ({exc})") from exc
            vec = _parse_vector(raw.pop(key), lineno_of[key])
            if vec.shape[0] != params.n_tx:
                raise ScenarioError(
                    f"h.{k + 1}.{g + 1} has length {vec.shape[0]}, expected n_tx={params.n_tx}"
                )
            if not (0 <= g < params.n_channels and k in params.user_sets[g]):
                raise ScenarioError(f"h.{k + 1}.{g + 1} does not match any (user, channel)")
            h[(k, g)] = vec
        for g, users in enumerate(params.user_sets):
            for k in users:
                if (k, g) not in h:
                    raise ScenarioError(f"missing channel vector h.{k + 1}.{g + 1}")
        channels = ChannelSet(h=h)
    else:
        channels = generate_three_user_channels(params)

    if raw:
        key = next(iter(raw))
        raise ConfigError(f"line {lineno_of[key]}: unknown key {key!r}")

    return Scenario(
        params=params,
        channels=channels,
        ga=GAConfig(**ga_kwargs),
        common_precoder_strategy=strategy,
        precoder_seed=precoder_seed,
    )


def load_channels(path):
    """(params, channels) view of load_scenario, for callers that only need the channel set."""
    scenario = load_scenario(path)
    return scenario.params, scenario.channels
