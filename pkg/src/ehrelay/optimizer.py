"""Minimize outage probability over the protocol tunables.

Two routes are provided on purpose: a real-coded elitist genetic algorithm
(the method of record) and an exhaustive grid search (the ground truth it
is regression-tested against).  Chromosomes are vectors in [0,1]^g with
g = 1 (rho) for the three-phase protocol and g = 2 (rho, theta) for the
four-phase one; fitness is the closed-form outage probability, so one GA
run costs a few thousand scalar Bessel evaluations.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .analytic import outage_tsfpr, outage_tsncr
from .errors import ParameterError
from .model import Protocol, SystemParams


class TerminationReason(Enum):
    PRECISION = "precision"
    MAX_GENERATIONS = "max-generations"


@dataclass(frozen=True)
class GaConfig:
    """GA hyperparameters.

    ``k_ini`` parents per generation, of which the best ``epsilon`` share
    survives unchanged (elitism); offspring are bred by roulette-wheel
    mate selection and crossover, then mutated gene-wise with probability
    ``mu``.  Evolution stops once the generation-to-generation improvement
    of the best objective drops below ``delta``, or at ``max_generations``.
    """

    k_ini: int = 100
    epsilon: float = 0.5
    mu: float = 0.05
    delta: float = 1e-5
    max_generations: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.k_ini < 4 or self.k_ini % 2:
            raise ParameterError("k_ini must be an even integer >= 4")
        if not 0 < self.epsilon < 1:
            raise ParameterError("epsilon must be in (0, 1)")
        if not 0 <= self.mu <= 1:
            raise ParameterError("mu must be in [0, 1]")
        if not self.delta > 0:
            raise ParameterError("delta must be > 0")
        if self.max_generations < 1:
            raise ParameterError("max_generations must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ParameterError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class Chromosome:
    """A candidate solution: genes in [0,1] (rho first) and its objective."""

    genes: tuple
    fitness: float


@dataclass(frozen=True)
class GaTrace:
    """Per-generation best objective and how the run ended.

    ``q_min[t]`` is the best objective after t evolution steps (t = 0 is
    the random initial population); ``generations = len(q_min) - 1``.
    Elitism makes ``q_min`` non-increasing.
    """

    q_min: tuple
    generations: int
    terminated_by: TerminationReason


def ga_minimize(objective: Callable[[Sequence[float]], float], n_genes: int,
                config: GaConfig) -> tuple:
    """Elitist real-coded GA over [0,1]^n_genes; returns (best, trace).

    One generation: (1) rank the population by objective; (2) record
    Q_min(t) and stop if the improvement over the previous generation is
    below ``delta`` (skipped at t = 0) or the generation cap is reached;
    (3) keep the best ``round(epsilon * k_ini)`` chromosomes; (4) draw two
    mates per offspring from the survivors with roulette weights
    ``(1 - objective) + 1e-9`` (independent draws, mates may coincide);
    (5) cross them over -- for two genes the child takes rho from the
    first mate and theta from the second, for one gene an arithmetic
    blend with a fresh uniform coefficient; (6) mutate each offspring
    gene with probability ``mu`` by redrawing it uniformly.  Survivors
    are never mutated, so the best chromosome can only improve.
    """
    if n_genes < 1:
        raise ParameterError("n_genes must be >= 1")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(config.seed)))
    k_ini = config.k_ini
    k_sel = max(1, int(round(config.epsilon * k_ini)))

    pop = rng.random((k_ini, n_genes))
    fit = np.array([objective(tuple(genes)) for genes in pop])

    q_trace = []
    reason = TerminationReason.MAX_GENERATIONS
    t = 0
    while True:
        order = np.argsort(fit, kind="stable")
        pop = pop[order]
        fit = fit[order]
        q_trace.append(float(fit[0]))
        if t >= 1 and q_trace[-2] - q_trace[-1] < config.delta:
            reason = TerminationReason.PRECISION
            break
        if t >= config.max_generations:
            reason = TerminationReason.MAX_GENERATIONS
            break

        survivors = pop[:k_sel]
        weights = np.clip(1.0 - fit[:k_sel], 0.0, None) + 1e-9
        cum = np.cumsum(weights)
        cum /= cum[-1]

        children = np.empty((k_ini - k_sel, n_genes))
        for row in range(children.shape[0]):
            p1 = survivors[int(np.searchsorted(cum, rng.random()))]
            p2 = survivors[int(np.searchsorted(cum, rng.random()))]
            if n_genes == 1:
                alpha = rng.random()
                children[row, 0] = alpha * p1[0] + (1.0 - alpha) * p2[0]
            else:
                children[row, 0] = p1[0]
                children[row, 1:] = p2[1:]
            flips = rng.random(n_genes)
            for g in range(n_genes):
                if flips[g] < config.mu:
                    children[row, g] = rng.random()

        child_fit = np.array([objective(tuple(genes)) for genes in children])
        pop = np.vstack([survivors, children])
        fit = np.concatenate([fit[:k_sel], child_fit])
        t += 1

    best = Chromosome(tuple(float(g) for g in pop[0]), float(fit[0]))
    trace = GaTrace(tuple(q_trace), len(q_trace) - 1, reason)
    return best, trace


def _objective(params: SystemParams, kind: Protocol):
    if kind is Protocol.TSNCR:
        return lambda genes: outage_tsncr(params, genes[0]).probability
    return lambda genes: outage_tsfpr(params, genes[0], genes[1]).probability


def ga_optimize(params: SystemParams, kind: Protocol,
                ga: GaConfig) -> tuple:
    """Run the GA on the closed-form outage of the given protocol.

    Returns (best Chromosome, GaTrace); genes are (rho,) for TSNCR and
    (rho, theta) for TSFPR.
    """
    n_genes = 1 if kind is Protocol.TSNCR else 2
    return ga_minimize(_objective(params, kind), n_genes, ga)


@dataclass(frozen=True)
class GridResult:
    """Best grid point: rho, theta (None for TSNCR), and its objective."""

    rho: float
    theta: Optional[float]
    objective: float


def grid_search(params: SystemParams, kind: Protocol,
                resolution: float) -> GridResult:
    """Exhaustive minimization on a uniform [0,1] grid.

    The grid includes both endpoints; TSFPR scans the full rho x theta
    product grid in lexicographic order and keeps the first strict
    improvement, so ties break toward smaller rho, then smaller theta.
    """
    if not 0 < resolution <= 0.1:
        raise ParameterError("resolution must be in (0, 0.1]")
    n = int(round(1.0 / resolution))
    points = [i / n for i in range(n + 1)]
    best = GridResult(0.0, None, float("inf"))
    if kind is Protocol.TSNCR:
        for rho in points:
            p = outage_tsncr(params, rho).probability
            if p < best.objective:
                best = GridResult(rho, None, p)
    else:
        for rho in points:
            for theta in points:
                p = outage_tsfpr(params, rho, theta).probability
                if p < best.objective:
                    best = GridResult(rho, theta, p)
    return best
