"""
Hub selection.

A node is a hub when its degree reaches a threshold d_min. The threshold is
either given directly, derived from the n best-connected nodes, or derived
from a requested hub fraction h using the degree distribution:

    d_min = argmax_x D(x)  subject to  D(x) >= h,   D(x) = sum_{k >= x} P(k)

By default P is the empirical degree distribution; the fitted discrete power
law P(k) ~ k^-gamma over [k_min, n] is available as an alternative.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DegenerateTailError, HubPolicyError

logger = logging.getLogger(__name__)

FIXED_THRESHOLD = 'fixed_threshold'
TOP_N = 'top_n'
FRACTION = 'fraction'


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    k_min: int
    sample_size: int


def estimate_gamma(degrees: Iterable[int], k_min: int) -> PowerLawFit:
    """ Discrete power-law exponent by maximum likelihood (continuous approximation).

        gamma = 1 + n_tail / sum_{k_i >= k_min} ln(k_i / (k_min - 0.5))
    """
    if k_min < 1:
        raise HubPolicyError(f'k_min must be >= 1, got {k_min}')

    degrees = np.asarray(list(degrees), dtype=float)
    tail = degrees[degrees >= k_min]
    if tail.size == 0:
        raise DegenerateTailError(f'No degrees >= k_min={k_min}')
    if np.unique(tail).size < 2:
        raise DegenerateTailError(
            f'degenerate tail: fewer than 2 distinct degrees >= k_min={k_min}')

    log_sum = math.fsum(np.log(tail / (k_min - 0.5)))
    gamma = 1.0 + tail.size / log_sum
    if not 2.0 <= gamma <= 3.0:
        warnings.warn(f'Fitted gamma={gamma:.3f} lies outside the usual scale-free range [2, 3]',
                      RuntimeWarning)

    return PowerLawFit(gamma=float(gamma), k_min=int(k_min), sample_size=int(tail.size))


def dmin_from_fraction(degrees: Sequence[int], h: float, fit: Optional[PowerLawFit] = None,
                       use_fitted_pmf: bool = False) -> int:
    """ Largest degree threshold whose tail mass D(x) is still >= h.

    :param degrees: observed degree sequence (one entry per node)
    :param h: (float)  - requested hub fraction in (0, 1]
    :param fit: power-law fit, required when ``use_fitted_pmf`` is set
    :param use_fitted_pmf: (bool)  - sum the normalized fitted pmf over [x, n]
        instead of the empirical complementary CDF
    """
    if not 0 < h <= 1:
        raise HubPolicyError(f'Hub fraction must lie in (0, 1], got {h}')

    degrees = np.asarray(list(degrees), dtype=int)
    if degrees.size == 0:
        raise HubPolicyError('Cannot derive a hub threshold from an empty degree sequence')

    if not use_fitted_pmf:
        return _dmin_empirical(degrees, h)

    if fit is None:
        raise HubPolicyError('The fitted-pmf variant needs a PowerLawFit')
    return _dmin_fitted(degrees, h, fit)


def _dmin_empirical(degrees, h):
    values, counts = np.unique(degrees, return_counts=True)
    # ccdf[i] = fraction of nodes with degree >= values[i]
    ccdf = np.cumsum(counts[::-1])[::-1] / degrees.size
    feasible = values[ccdf >= h]
    return int(feasible.max())


def _dmin_fitted(degrees, h, fit):
    n = degrees.size
    k = np.arange(fit.k_min, max(n, fit.k_min) + 1, dtype=float)
    pmf = k ** -fit.gamma
    pmf /= pmf.sum()
    tail_fraction = np.count_nonzero(degrees >= fit.k_min) / n
    mass = tail_fraction * np.cumsum(pmf[::-1])[::-1]

    feasible = k[mass >= h]
    if feasible.size == 0:
        smallest = int(degrees.min())
        warnings.warn(f'Hub fraction {h} exceeds the fitted tail mass {tail_fraction:.4f}; '
                      f'every node becomes a hub (d_min={smallest})', RuntimeWarning)
        return smallest
    return int(feasible.max())


@dataclass(frozen=True)
class HubPolicy:
    """ Exactly one of the three hub selection modes.

    Build with :meth:`fixed_threshold`, :meth:`top_n` or :meth:`fraction`.
    """
    mode: str
    d_min: Optional[int] = None
    n: Optional[int] = None
    h: Optional[float] = None
    k_min: int = 1
    use_fitted_pmf: bool = False

    def __post_init__(self):
        if self.mode == FIXED_THRESHOLD:
            if self.d_min is None or self.d_min < 1:
                raise HubPolicyError(f'd_min must be >= 1, got {self.d_min}')
        elif self.mode == TOP_N:
            if self.n is None or self.n < 1:
                raise HubPolicyError(f'n must be >= 1, got {self.n}')
        elif self.mode == FRACTION:
            if self.h is None or not 0 < self.h <= 1:
                raise HubPolicyError(f'h must lie in (0, 1], got {self.h}')
            if self.k_min < 1:
                raise HubPolicyError(f'k_min must be >= 1, got {self.k_min}')
        else:
            raise HubPolicyError(f'Unknown hub policy mode {self.mode!r}')

    @classmethod
    def fixed_threshold(cls, d_min: int) -> 'HubPolicy':
        return cls(FIXED_THRESHOLD, d_min=int(d_min))

    @classmethod
    def top_n(cls, n: int) -> 'HubPolicy':
        return cls(TOP_N, n=int(n))

    @classmethod
    def fraction(cls, h: float, k_min: int = 1, use_fitted_pmf: bool = False) -> 'HubPolicy':
        return cls(FRACTION, h=float(h), k_min=int(k_min), use_fitted_pmf=use_fitted_pmf)

    @property
    def is_local(self) -> bool:
        """ Whether hub status is a pure function of a node's own degree. """
        return self.mode == FIXED_THRESHOLD

    def threshold(self, degrees: Optional[Sequence[int]] = None) -> float:
        if self.mode == FIXED_THRESHOLD:
            return self.d_min

        if degrees is None:
            raise HubPolicyError(f'Mode {self.mode!r} needs the degree sequence')
        degrees = list(degrees)
        if not degrees:
            return math.inf

        if self.mode == TOP_N:
            ranked = sorted(degrees, reverse=True)
            # ties at the n-th place are all included
            return ranked[min(self.n, len(ranked)) - 1]

        fit = estimate_gamma(degrees, self.k_min)
        d_min = dmin_from_fraction(degrees, self.h, fit, use_fitted_pmf=self.use_fitted_pmf)
        logger.info(f'Hub fraction {self.h}: gamma={fit.gamma:.3f} over {fit.sample_size} nodes, '
                    f'd_min={d_min}')
        return d_min

    def resolve(self, degrees: Optional[Sequence[int]] = None) -> 'HubPolicy':
        """ Freeze a fraction policy into the fixed threshold it currently implies. """
        if self.mode != FRACTION:
            return self
        d_min = self.threshold(degrees)
        if math.isinf(d_min):
            raise HubPolicyError('Cannot derive a hub threshold from an empty graph')
        return HubPolicy.fixed_threshold(max(1, int(d_min)))

    def is_hub(self, degree: int, degrees: Optional[Sequence[int]] = None) -> bool:
        return is_hub(degree, self, degrees)

    def hub_set(self, graph) -> set:
        degree_map = graph.degree_map()
        if not degree_map:
            return set()
        if self.mode == FRACTION:
            return self.resolve(list(degree_map.values())).hub_set(graph)
        d_min = self.threshold(None if self.is_local else list(degree_map.values()))
        return {u for u, d in degree_map.items() if d >= d_min}


def is_hub(degree: int, policy: HubPolicy, degrees: Optional[Sequence[int]] = None) -> bool:
    """ Hub test for one degree; ``degrees`` is the graph's degree sequence (not needed
    in fixed-threshold mode). """
    if degree < 0:
        raise HubPolicyError(f'Degree must be >= 0, got {degree}')
    return degree >= policy.threshold(degrees)
