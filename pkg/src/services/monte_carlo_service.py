"""
Monte-Carlo Oracle

Samples sums of independent uniform or Bernoulli(1/2) variates and compares
the sample mean of Q_n^{(m)}(x0 + S_l) with the exact reference
Q_n^{(m-l)}(x0) for integer orders.
"""

import math
from typing import List, Mapping, Optional, Union

import numpy as np
from numpy.random import SeedSequence, default_rng

from ..core.config_manager import config
from ..core.constants import FamilyKind, MonteCarloConstants
from ..core.exceptions import VariableError
from ..models.monte_carlo import McConfig, McResult
from ..models.multipoly import MultiPoly, Variable
from ..utils.logger import logger, performance_timer
from .family_service import PolynomialFamilyService, default_service

FloatLike = Union[float, np.ndarray]


def float_eval(p: MultiPoly, bindings: Mapping[Union[Variable, str], FloatLike]) -> FloatLike:
    """
    Nested Horner evaluation in floating point; bindings may be numpy arrays.

    Raises:
        VariableError: If a variable of p is unbound
    """
    values = {Variable.parse(var): value for var, value in bindings.items()}
    missing = p.variables() - set(values)
    if missing:
        names = ", ".join(sorted(var.value for var in missing))
        raise VariableError(f"Unbound variables in float evaluation: {names}", variable=names)
    return _horner(p, values)


def _horner(p: MultiPoly, values: Mapping[Variable, FloatLike]) -> FloatLike:
    variables = [var for var in (Variable.M, Variable.L, Variable.X, Variable.Y) if var in p.variables()]
    if not variables:
        return float(p.constant_term())
    var = variables[0]
    result: FloatLike = 0.0
    for k in range(p.degree(var), -1, -1):
        result = result * values[var] + _horner(p.coefficient(var, k), values)
    return result


class MonteCarloService:
    """
    Seeded, chunked sampling with one PCG64 child stream per chunk.
    """

    def __init__(self, families: Optional[PolynomialFamilyService] = None,
                 chunk_size: Optional[int] = None):
        """
        Args:
            families: Family service providing the exact polynomials
            chunk_size: Samples per PRNG substream; MC_CHUNK_SIZE by default
        """
        self.families = families or default_service()
        self.chunk_size = chunk_size or config.mc_chunk_size

    def _chunk_sizes(self, samples: int) -> List[int]:
        full, rest = divmod(samples, self.chunk_size)
        return [self.chunk_size] * full + ([rest] if rest else [])

    def _draw(self, rng: np.random.Generator, size: int, shift_count: int, uniform: bool) -> np.ndarray:
        if uniform:
            return rng.random((size, shift_count)).sum(axis=1)
        return rng.integers(0, 2, size=(size, shift_count)).sum(axis=1).astype(np.float64)

    def check(self, cfg: McConfig, uniform: bool) -> McResult:
        """
        Estimate E[Q_n^{(m)}(x0 + S_l)] for S_l a sum of l uniform
        (or Bernoulli) variates.
        """
        kind = FamilyKind.GEN_BERNOULLI if uniform else FamilyKind.GEN_EULER
        family = self.families.family(kind)
        member = family.member(cfg.n)
        p = member.evaluate({Variable.M: cfg.m_int})
        exact = member.evaluate({Variable.M: cfg.m_int - cfg.shift_count, Variable.X: cfg.x0}).constant_value()
        x0 = float(cfg.x0)

        with performance_timer("mc_check", family=kind.value, samples=cfg.samples):
            if cfg.shift_count == 0:
                # No randomness: every sample equals p(x0)
                estimate, std_error = float(float_eval(p, {Variable.X: x0})), 0.0
            else:
                estimate, std_error = self._sample(p, cfg, x0, uniform)

        result = McResult(kind.value, cfg, estimate, std_error, exact,
                          _z_score(estimate, std_error, exact))
        logger.log_mc_result(kind.value, result.z_score, cfg.samples,
                             n=cfg.n, m=cfg.m_int, l=cfg.shift_count, seed=cfg.seed)
        return result

    def _sample(self, p: MultiPoly, cfg: McConfig, x0: float, uniform: bool):
        sizes = self._chunk_sizes(cfg.samples)
        streams = SeedSequence(cfg.seed).spawn(len(sizes))

        count, mean, m2 = 0, 0.0, 0.0
        for stream, size in zip(streams, sizes):
            rng = default_rng(stream)
            values = np.asarray(float_eval(p, {Variable.X: x0 + self._draw(rng, size, cfg.shift_count, uniform)}),
                                dtype=np.float64)
            chunk_mean = float(values.mean())
            chunk_m2 = float(((values - chunk_mean) ** 2).sum())
            # Pairwise merge of running moments
            total = count + size
            delta = chunk_mean - mean
            mean += delta * size / total
            m2 += chunk_m2 + delta * delta * count * size / total
            count = total

        if count < 2:
            return mean, 0.0
        return mean, math.sqrt(m2 / (count - 1)) / math.sqrt(count)


def _z_score(estimate: float, std_error: float, exact) -> float:
    reference = float(exact)
    if std_error > 0:
        return (estimate - reference) / std_error
    if math.isclose(estimate, reference, rel_tol=MonteCarloConstants.DEGENERATE_RTOL, abs_tol=1e-12):
        return 0.0
    return math.copysign(math.inf, estimate - reference)


# Factory function for creating the Monte-Carlo service
def create_monte_carlo_service(families: Optional[PolynomialFamilyService] = None,
                               chunk_size: Optional[int] = None) -> MonteCarloService:
    """
    Factory function to create a Monte-Carlo service.

    Returns:
        Monte-Carlo service instance
    """
    return MonteCarloService(families, chunk_size)


def mc_check_bernoulli(cfg: McConfig, service: Optional[MonteCarloService] = None) -> McResult:
    """E[B_n^{(m)}(x0 + theta_1 + ... + theta_l)] against B_n^{(m-l)}(x0)"""
    return (service or create_monte_carlo_service()).check(cfg, uniform=True)


def mc_check_euler(cfg: McConfig, service: Optional[MonteCarloService] = None) -> McResult:
    """E[E_n^{(m)}(x0 + eta_1 + ... + eta_l)] against E_n^{(m-l)}(x0)"""
    return (service or create_monte_carlo_service()).check(cfg, uniform=False)
