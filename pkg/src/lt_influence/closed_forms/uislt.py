"""
UISLT Closed Forms
------------------

On a complete graph with w_ij = alpha_i * beta_j the influence of a seed set
A_0 with non-seed nodes J = {j_1..j_k} is

    sigma = |A_0| + alpha(A_0) * sum_{m=0}^{k-1} h^m

where h^m sums, over every (m+1)-subset S of J and every endpoint t in S,
beta_t * prod_{l in S, l != t} (alpha_l beta_l), times m!. Writing
gamma_l = alpha_l beta_l, h^m / m! is the x^m coefficient of

    Q(x) = sum_t beta_t prod_{l != t} (1 + gamma_l x)

which is built one node at a time alongside P(x) = prod_l (1 + gamma_l x).
"""

import logging
import math
from typing import List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from lt_influence.config.settings import get_settings
from lt_influence.graph.models import SeedSet, UISLTParams


logger = logging.getLogger(__name__)

# Largest m for which float(m!) is finite
_MAX_FLOAT_FACTORIAL = 170


def _times_factorial(m: int, value: float) -> float:
    if value == 0.0:
        return 0.0
    if m <= _MAX_FLOAT_FACTORIAL:
        return float(math.factorial(m)) * value
    return math.copysign(math.exp(math.lgamma(m + 1) + math.log(abs(value))), value)


def elementary_symmetric(xs: Sequence[float]) -> np.ndarray:
    """e_0..e_t of ``xs`` by the recurrence e_m <- e_m + x * e_{m-1}."""
    e = np.zeros(len(xs) + 1)
    e[0] = 1.0
    for x in xs:
        e[1:] = e[1:] + x * e[:-1]
    return e


def f_m(xs: Sequence[float], m: int) -> float:
    """
    m! times the m-th elementary symmetric polynomial of ``xs``.

    ``f_m(xs, 0)`` is 1 and ``f_m(xs, m)`` is 0 for m > len(xs).
    """
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if m > len(xs):
        logger.debug(f"f_m with m={m} > {len(xs)} values is 0 (no m-subsets)")
        return 0.0
    return _times_factorial(m, float(elementary_symmetric(xs)[m]))


def h_terms(alphas: Sequence[float], betas: Sequence[float]) -> List[float]:
    """h^0..h^{k-1} over the non-seed nodes' (alpha, beta) pairs."""
    k = len(alphas)
    p = np.zeros(k + 1)
    q = np.zeros(k + 1)
    p[0] = 1.0
    for alpha, beta in zip(alphas, betas):
        gamma = alpha * beta
        # Q uses P before this node's factor is applied
        q[1:] = q[1:] + gamma * q[:-1]
        q = q + beta * p
        p[1:] = p[1:] + gamma * p[:-1]
    return [_times_factorial(m, float(q[m])) for m in range(k)]


class UISLTEvaluation(BaseModel):
    model_config = ConfigDict(frozen=True)

    sigma: float = Field(..., description="Closed-form influence of the seed set")
    terms: List[float] = Field(..., description="h^m for m = 0..k-1")
    alpha_a0: float = Field(..., description="Sum of the seeds' influence levels")
    seeds: List[int]
    k: int = Field(..., ge=0, description="Number of non-seed nodes")


def _split(params: UISLTParams, a0: SeedSet) -> List[int]:
    params.check_feasible(get_settings().TOLERANCE)
    a0.check_against(params.n)
    return [node for node in range(params.n) if node not in a0]


def sigma_uislt(params: UISLTParams, a0: SeedSet) -> UISLTEvaluation:
    """
    Closed-form influence of ``a0`` on the complete UISLT graph.

    Raises:
        InfeasibleParamsError: If some column of W would sum above 1
        SeedSetError: If ``a0`` is empty or out of range
    """
    others = _split(params, a0)
    alpha_a0 = math.fsum(params.alphas[i] for i in a0.sorted())
    if not others:
        return UISLTEvaluation(
            sigma=float(params.n), terms=[], alpha_a0=alpha_a0, seeds=a0.sorted(), k=0
        )
    terms = h_terms(
        [params.alphas[j] for j in others], [params.betas[j] for j in others]
    )
    sigma = len(a0) + alpha_a0 * math.fsum(terms)
    return UISLTEvaluation(
        sigma=sigma, terms=terms, alpha_a0=alpha_a0, seeds=a0.sorted(), k=len(others)
    )


def sigma_uslt(betas: Sequence[float], a0: SeedSet) -> float:
    """Uniform susceptance (every alpha = 1): |A_0| (1 + sum_m f^{m+1}(beta_J))."""
    params = UISLTParams.uniform_susceptance(list(betas))
    others = _split(params, a0)
    e = elementary_symmetric([params.betas[j] for j in others])
    spread = math.fsum(_times_factorial(m + 1, float(e[m + 1])) for m in range(len(others)))
    return len(a0) + len(a0) * spread


def sigma_uilt(alphas: Sequence[float], a0: SeedSet) -> float:
    """Uniform influence (every beta = 1): h^m = (k - m) f^m(alpha_J)."""
    params = UISLTParams.uniform_influence(list(alphas))
    others = _split(params, a0)
    k = len(others)
    e = elementary_symmetric([params.alphas[j] for j in others])
    alpha_a0 = math.fsum(params.alphas[i] for i in a0.sorted())
    spread = math.fsum((k - m) * _times_factorial(m, float(e[m])) for m in range(k))
    return len(a0) + alpha_a0 * spread


def uislt_stationary(params: UISLTParams) -> np.ndarray:
    """
    Stationary distribution of the reversed chain of a UISLT graph,
    pi_i proportional to alpha_i / beta_i.

    Raises:
        ValueError: If some beta is zero (the chain then has absorbing states)
    """
    betas = np.asarray(params.betas, dtype=float)
    if np.any(betas == 0.0):
        raise ValueError("stationary form needs every beta > 0")
    ratios = np.asarray(params.alphas, dtype=float) / betas
    return ratios / ratios.sum()
