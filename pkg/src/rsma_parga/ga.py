"""PARGA: real-coded genetic algorithm over power allocations.

The genome is the flat gene vector of a RateProblem; every chromosome is
kept on the budget-active surface (sum of genes == P_T) by the repair
operator, so the whole population is feasible at all times. Selection is
elitist plus binary tournaments, crossover is uniform, mutation is
per-gene Gaussian.

Reproducibility: one RNG substream per generation, spawned from the config
seed. All randomness for a generation is drawn before fitness evaluation,
so results are identical regardless of how evaluation is parallelized.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateChannelError, InternalError

STALL_EPS = 1e-9


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 100
    mutation_rate: float = 0.1
    mutation_scale: float = 0.1  # perturbation std as a fraction of P_T
    elite_rate: float = 0.1
    crossover_rate: float = 0.9
    max_generations: int = 200
    stall_generations: int = 30
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if not 0.0 < self.elite_rate <= 1.0:
            raise ValueError("elite_rate must be in (0, 1]")
        for name in ("mutation_rate", "crossover_rate"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.mutation_scale <= 0:
            raise ValueError("mutation_scale must be > 0")
        if self.max_generations < 0 or self.stall_generations < 1:
            raise ValueError("bad generation limits")

    @property
    def n_elite(self):
        return math.ceil(self.elite_rate * self.population_size)


@dataclass
class Chromosome:
    genes: np.ndarray
    fitness: float | None = None


@dataclass(frozen=True)
class GAResult:
    best_alloc: object  # PowerAllocation
    best_genes: np.ndarray
    best_fitness: float
    history_best: tuple
    history_mean: tuple
    generations_run: int


def repair(genes, total_power):
    """Clip negatives and rescale so the genes sum to the power budget.
    An all-zero (or all-negative) vector falls back to a uniform split."""
    genes = np.asarray(genes, dtype=float).clip(min=0.0)
    s = genes.sum()
    with np.errstate(over="ignore", divide="ignore"):
        scale = total_power / s if s > 0.0 else np.inf
    if not np.isfinite(scale):
        # all-zero input, or a sum so tiny the rescale would overflow
        return np.full(genes.shape, total_power / genes.shape[0])
    return genes * scale


def fitness(chromosome, problem):
    if chromosome.fitness is None:
        chromosome.fitness = problem.sum_rate_genes(chromosome.genes)
    return chromosome.fitness


def init_population(config, problem, seed_allocs=None, rng=None):
    """Random chromosomes uniform on the P_T-scaled simplex (normalized
    exponentials), with any seed allocations inserted verbatim (post-repair)
    at the front."""
    if rng is None:
        rng = np.random.default_rng(config.seed)
    pt = problem.total_power
    population = []
    for alloc in seed_allocs or []:
        genes = repair(problem.genes_from_alloc(alloc), pt)
        if genes.min() < 0 or abs(genes.sum() - pt) > 1e-9 * max(pt, 1.0):
            raise InternalError("repair produced an infeasible seed chromosome")
        population.append(Chromosome(genes=genes))
    while len(population) < config.population_size:
        raw = rng.exponential(size=problem.dims)
        population.append(Chromosome(genes=repair(raw, pt)))
    return population[: config.population_size]


def select_parents(population, config, rng):
    """Binary-tournament parent pairs for the non-elite offspring slots.
    Assumes the population is already evaluated."""
    n_offspring = config.population_size - config.n_elite
    n_pairs = (n_offspring + 1) // 2
    pairs = []
    for _ in range(n_pairs):
        picks = []
        for _ in range(2):
            i, j = rng.integers(len(population), size=2)
            a, b = population[i], population[j]
            picks.append(a if a.fitness >= b.fitness else b)
        pairs.append(tuple(picks))
    return pairs


def crossover(parent_a, parent_b, config, rng):
    """Uniform crossover with probability crossover_rate, else copies;
    children are repaired either way."""
    ga, gb = parent_a.genes, parent_b.genes
    if rng.random() < config.crossover_rate:
        mask = rng.random(ga.shape[0]) < 0.5
        ca = np.where(mask, ga, gb)
        cb = np.where(mask, gb, ga)
    else:
        ca, cb = ga.copy(), gb.copy()
    pt = ga.sum()  # parents live on the budget surface
    return Chromosome(repair(ca, pt)), Chromosome(repair(cb, pt))


def mutate(chromosome, config, rng, total_power):
    """Per-gene Gaussian perturbation with probability mutation_rate, then repair."""
    genes = chromosome.genes.copy()
    mask = rng.random(genes.shape[0]) < config.mutation_rate
    if mask.any():
        genes[mask] += rng.normal(scale=config.mutation_scale * total_power, size=int(mask.sum()))
    return Chromosome(repair(genes, total_power))


def _fixed_split_genes(problem):
    # 50% common / 50% private (equal across private streams), per channel
    pt, g_count = problem.total_power, len(problem.user_sets)
    genes = np.empty(problem.dims)
    for g, users in enumerate(problem.user_sets):
        off = problem.offsets[g]
        genes[off] = 0.5 * pt / g_count
        genes[off + 1 : off + 1 + len(users)] = 0.5 * pt / (g_count * len(users))
    return genes


def _evaluate(population, problem, n_workers):
    pending = [c for c in population if c.fitness is None]
    if not pending:
        return
    genes = np.stack([c.genes for c in pending])
    if n_workers <= 1 or len(pending) < 2 * n_workers:
        values = problem.sum_rate_batch(genes)
    else:
        chunks = np.array_split(genes, n_workers)
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            values = np.concatenate(list(pool.map(problem.sum_rate_batch, chunks)))
    for c, v in zip(pending, values):
        c.fitness = float(v)


def run_parga(problem, config, seed_allocs=None, n_workers=1):
    """Run the GA to (near-)maximize the sum rate on a RateProblem.

    Generation 0 always contains the fixed 50/50 allocation, so with
    elitism the result never falls below the fixed-power baseline.
    Early-stops once the best fitness has not improved by more than 1e-9
    for stall_generations consecutive generations.
    """
    if all(
        gc.max(initial=0.0) == 0.0 and gp.max(initial=0.0) == 0.0
        for gc, gp in zip(problem.gains.g_common, problem.gains.g_private)
    ):
        raise DegenerateChannelError("all effective gains are zero")

    streams = np.random.SeedSequence(config.seed).spawn(config.max_generations + 1)
    rng0 = np.random.default_rng(streams[0])
    population = init_population(config, problem, rng=rng0)
    seeds = [_fixed_split_genes(problem)]
    for alloc in seed_allocs or []:
        seeds.append(repair(problem.genes_from_alloc(alloc), problem.total_power))
    for i, genes in enumerate(seeds[: config.population_size]):
        population[i] = Chromosome(genes=genes)

    _evaluate(population, problem, n_workers)
    population.sort(key=lambda c: c.fitness, reverse=True)
    history_best = [population[0].fitness]
    history_mean = [float(np.mean([c.fitness for c in population]))]

    generations = 0
    stall = 0
    for t in range(1, config.max_generations + 1):
        rng = np.random.default_rng(streams[t])
        elites = population[: config.n_elite]
        offspring = []
        for pa, pb in select_parents(population, config, rng):
            for child in crossover(pa, pb, config, rng):
                offspring.append(mutate(child, config, rng, problem.total_power))
        population = elites + offspring[: config.population_size - config.n_elite]

        _evaluate(population, problem, n_workers)
        population.sort(key=lambda c: c.fitness, reverse=True)
        generations = t
        improvement = population[0].fitness - history_best[-1]
        history_best.append(population[0].fitness)
        history_mean.append(float(np.mean([c.fitness for c in population])))
        stall = 0 if improvement > STALL_EPS else stall + 1
        if stall >= config.stall_generations:
            break

    best = population[0]
    return GAResult(
        best_alloc=problem.alloc_from_genes(best.genes),
        best_genes=best.genes.copy(),
        best_fitness=best.fitness,
        history_best=tuple(history_best),
        history_mean=tuple(history_mean),
        generations_run=generations,
    )
