"""Brute-force grid search over the budget-active simplex surface.

Enumerates every composition of `steps` into `dims` parts (grid step
P_T/steps), evaluates the sum rate, and returns the argmax. Ties go to the
lexicographically smallest gene vector, which falls out of enumerating the
compositions in lexicographic order and keeping the first maximum.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridTooLargeError

DEFAULT_POINT_CAP = 5_000_000
_BATCH = 8192


@dataclass(frozen=True)
class GridSpec:
    steps: int
    point_cap: int = DEFAULT_POINT_CAP

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


def grid_point_count(steps, dims):
    """Number of compositions of `steps` into `dims` nonnegative parts."""
    return math.comb(steps + dims - 1, dims - 1)


def compositions(total, parts):
    """All tuples of `parts` nonnegative ints summing to `total`, in
    lexicographically ascending order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def grid_search(problem, spec):
    """(best PowerAllocation, best sum rate) over the discretized surface."""
    d = problem.dims
    count = grid_point_count(spec.steps, d)
    if count > spec.point_cap:
        raise GridTooLargeError(count, spec.point_cap)

    scale = problem.total_power / spec.steps
    best_fitness = -np.inf
    best_genes = None

    batch = np.empty((_BATCH, d))
    n = 0

    def flush():
        nonlocal best_fitness, best_genes, n
        if n == 0:
            return
        values = problem.sum_rate_batch(batch[:n])
        i = int(np.argmax(values))
        if values[i] > best_fitness:
            best_fitness = float(values[i])
            best_genes = batch[i].copy()
        n = 0

    for comp in compositions(spec.steps, d):
        batch[n] = comp
        batch[n] *= scale
        n += 1
        if n == _BATCH:
            flush()
    flush()

    return problem.alloc_from_genes(best_genes), best_fitness
