"""Samplers for the random-graph models and the exact counting functions.

Models
------
- ``sample_gnp`` / ``sample_gnm``: the classical simple random graphs.
- ``sample_cnm``: the pseudograph model with all 2m edge endpoints i.i.d.
  uniform (loops and parallel edges allowed); ``sample_cnm_mindeg`` is its
  restriction to minimum degree >= k by rejection, which keeps the exact
  conditional law.
- ``sample_pairing``: the configuration (pairing) model for a fixed degree
  sequence, via a uniform perfect matching of the points.
- ``sample_kernel_degrees``: cell occupancies of 2m uniform throws into n
  cells conditioned on all cells >= 3, via i.i.d. truncated Poisson draws
  rejected until the sum matches exactly.

Counting
--------
``matchings_count`` and ``crossing_prob`` are exact (big-integer / rational)
up to 2m = 64 endpoints; beyond that ``crossing_prob`` switches to log-gamma
arithmetic.  ``giant_constants`` solves t*exp(-t) = c*exp(-c) on (0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from coremix.errors import RetryLimitError
from coremix.multigraph import Multigraph
from coremix.rng import substream

_EXACT_POINT_LIMIT = 64  # crossing_prob uses rationals up to 2m = 64 points


@dataclass
class DegreeSequence:
    """Positive integer degrees, one per vertex; the sum must be even."""

    d: np.ndarray

    def __post_init__(self):
        self.d = np.asarray(self.d, dtype=np.int64)
        if self.d.size and self.d.min() <= 0:
            raise ValueError("degrees must be positive")
        if int(self.d.sum()) % 2 != 0:
            raise ValueError("degree sum must be even")

    @property
    def point_count(self) -> int:
        return int(self.d.sum())


@dataclass
class GiantConstants:
    """Constants of the supercritical regime for average degree c > 1."""

    c: float
    t: float
    b: float
    b_core: float


def _pair_index_to_edge(idx: np.ndarray, n: int) -> np.ndarray:
    """Decode linear indices of pairs (i < j) in lexicographic order."""
    idx = idx.astype(np.int64)
    # row i starts at offset i*n - i*(i+1)/2 - i; invert with a float guess
    # then fix up exactly in integer arithmetic.
    i = np.floor((2 * n - 1 - np.sqrt((2 * n - 1) ** 2 - 8.0 * idx)) / 2).astype(np.int64)
    i = np.clip(i, 0, n - 2)
    start = i * (2 * n - i - 1) // 2
    too_big = start > idx
    while too_big.any():
        i[too_big] -= 1
        start = i * (2 * n - i - 1) // 2
        too_big = start > idx
    next_start = (i + 1) * (2 * n - i - 2) // 2
    too_small = next_start <= idx
    while too_small.any():
        i[too_small] += 1
        next_start = (i + 1) * (2 * n - i - 2) // 2
        too_small = next_start <= idx
    start = i * (2 * n - i - 1) // 2
    j = idx - start + i + 1
    return np.column_stack([i, j])


def _distinct_pairs(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random set of k distinct vertex pairs out of C(n, 2)."""
    total = n * (n - 1) // 2
    if k > total:
        raise ValueError(f"cannot pick {k} distinct pairs from {total}")
    if k == 0:
        return np.empty((0, 2), dtype=np.int64)
    if 2 * k >= total:
        # dense regime: rejection stalls, so permute the full index range
        picked = np.sort(rng.permutation(total)[:k])
        return _pair_index_to_edge(picked, n)
    picked = np.unique(rng.integers(0, total, size=min(total, int(k * 1.1) + 16)))
    while len(picked) < k:
        extra = rng.integers(0, total, size=k - len(picked) + 16)
        picked = np.unique(np.concatenate([picked, extra]))
    if len(picked) > k:
        picked = rng.permutation(picked)[:k]
        picked.sort()
    return _pair_index_to_edge(picked, n)


def sample_gnp(n: int, p: float, seed: int) -> Multigraph:
    """Simple graph with each of the C(n,2) pairs present with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = substream(seed)
    total = n * (n - 1) // 2
    k = int(rng.binomial(total, p)) if 0.0 < p < 1.0 else (0 if p == 0.0 else total)
    return Multigraph(n, _distinct_pairs(n, k, rng))


def sample_gnm(n: int, m: int, seed: int) -> Multigraph:
    """Uniform simple graph with exactly m edges."""
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError(f"m={m} exceeds C({n},2)={total}")
    rng = substream(seed)
    return Multigraph(n, _distinct_pairs(n, int(m), rng))


def sample_cnm(n: int, m: int, seed: int) -> Multigraph:
    """Pseudograph with all 2m edge endpoints i.i.d. uniform on [n]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = substream(seed)
    return Multigraph(n, rng.integers(0, n, size=(int(m), 2), dtype=np.int64))


def sample_cnm_mindeg(
    n: int, m: int, k: int, seed: int, max_tries: int = 10**7
) -> Multigraph:
    """The pseudograph model conditioned on minimum degree >= k, by rejection."""
    if 2 * m < k * n:
        raise ValueError("infeasible: 2m < kn")
    rng = substream(seed)
    for _ in range(max_tries):
        edges = rng.integers(0, n, size=(int(m), 2), dtype=np.int64)
        deg = np.bincount(edges.ravel(), minlength=n)
        if deg.min() >= k:
            return Multigraph(n, edges)
    raise RetryLimitError(f"no min-degree-{k} sample within {max_tries} tries")


def sample_pairing(d: DegreeSequence | np.ndarray, seed: int) -> Multigraph:
    """Pairing (configuration) model: uniform perfect matching of the points."""
    if not isinstance(d, DegreeSequence):
        d = DegreeSequence(np.asarray(d))
    total = d.point_count
    if total % 2 != 0:
        raise ValueError("degree sum must be even")
    rng = substream(seed)
    cells = np.repeat(np.arange(len(d.d), dtype=np.int64), d.d)
    perm = rng.permutation(total)
    return Multigraph(len(d.d), cells[perm].reshape(-1, 2))


def _trunc_poisson_pmf(lam: float, kmax: int) -> np.ndarray:
    ks = np.arange(3, kmax + 1)
    logp = ks * math.log(lam) - np.array([math.lgamma(k + 1) for k in ks])
    logp -= logp.max()
    p = np.exp(logp)
    return p / p.sum()


def _trunc_poisson_mean(lam: float) -> float:
    # E[X | X >= 3] for X ~ Poisson(lam), series-stable for small lam
    if lam < 1e-4:
        num = lam**3 / 2 * (1 + lam / 3 + lam**2 / 8)
        den = lam**3 / 6 * (1 + lam / 4 + lam**2 / 20)
        return num / den
    t = math.exp(lam) - 1 - lam - lam * lam / 2
    u = lam * (math.expm1(lam) - lam)
    return u / t


def sample_kernel_degrees(
    n_k: int, m_k: int, seed: int, max_tries: int = 10**5
) -> DegreeSequence:
    """Occupancies of 2*m_k uniform throws into n_k cells given all >= 3.

    Sampled as i.i.d. Poisson conditioned on >= 3 with the rate solved so the
    conditional mean is ``2*m_k/n_k``, rejecting whole vectors until the sum
    is exactly ``2*m_k`` (which reproduces the conditioned multinomial law).
    """
    if 2 * m_k < 3 * n_k:
        raise ValueError("infeasible: need 2*m_k >= 3*n_k")
    target = 2 * m_k / n_k
    if n_k == 1:
        return DegreeSequence(np.array([2 * m_k]))
    if target == 3.0:
        return DegreeSequence(np.full(n_k, 3, dtype=np.int64))
    lam = brentq(lambda x: _trunc_poisson_mean(x) - target, 1e-9, 700.0, xtol=1e-12)
    kmax = int(max(30, target + 40 * math.sqrt(target)))
    pmf = _trunc_poisson_pmf(lam, kmax)
    ks = np.arange(3, kmax + 1)
    rng = substream(seed)
    for _ in range(max_tries):
        draw = rng.choice(ks, size=n_k, p=pmf)
        if int(draw.sum()) == 2 * m_k:
            return DegreeSequence(draw)
    raise RetryLimitError(f"no degree sequence with exact sum within {max_tries} tries")


def random_ordered_assignment(num_edges: int, num_deg2: int, seed: int) -> list[list[int]]:
    """Assign items to edges with a position, all (assignment, orderings) equally likely.

    Realized by sequential uniform insertion: item k picks one of the
    ``num_edges + k`` current slots (an edge with j items offers j+1 slots).
    """
    if num_edges < 1:
        raise ValueError("need at least one edge")
    rng = substream(seed)
    lists: list[list[int]] = [[] for _ in range(num_edges)]
    slots = list(range(num_edges))  # one entry per (edge, extra slot)
    for item in range(num_deg2):
        e = slots[int(rng.integers(0, len(slots)))]
        pos = int(rng.integers(0, len(lists[e]) + 1))
        lists[e].insert(pos, item)
        slots.append(e)
    return lists


def matchings_count(k: int) -> int:
    """Number of perfect matchings of k labelled points (0 for odd k)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2 != 0:
        return 0
    return math.factorial(k) // (math.factorial(k // 2) * 2 ** (k // 2))


def crossing_prob(m: int, t: int, q: int):
    """P(random matching of 2m points has exactly t edges leaving q marked points).

    Exact ``Fraction`` for 2m <= 64; log-gamma float beyond.
    """
    if not (0 <= q <= 2 * m and 0 <= t <= q):
        raise ValueError("need 0 <= q <= 2m and 0 <= t <= q")
    if t > 2 * m - q or (q - t) % 2 != 0:
        return Fraction(0) if 2 * m <= _EXACT_POINT_LIMIT else 0.0
    if 2 * m <= _EXACT_POINT_LIMIT:
        num = (
            math.comb(2 * m - q, t)
            * math.comb(q, t)
            * math.factorial(t)
            * matchings_count(q - t)
            * matchings_count(2 * m - q - t)
        )
        return Fraction(num, matchings_count(2 * m))

    def log_matchings(k):
        return math.lgamma(k + 1) - math.lgamma(k / 2 + 1) - (k / 2) * math.log(2)

    logp = (
        _log_comb(2 * m - q, t)
        + _log_comb(q, t)
        + math.lgamma(t + 1)
        + log_matchings(q - t)
        + log_matchings(2 * m - q - t)
        - log_matchings(2 * m)
    )
    return math.exp(logp)


def _log_comb(n, k):
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def giant_constants(c: float) -> GiantConstants:
    """Solve t*exp(-t) = c*exp(-c) for t in (0,1); b = 1 - t/c, core b(1-t)."""
    if c <= 1.0:
        raise ValueError("giant constants require c > 1")
    rhs = c * math.exp(-c)
    t = brentq(lambda x: x * math.exp(-x) - rhs, 1e-15, 1.0 - 1e-15, xtol=1e-15, rtol=8.9e-16)
    b = 1.0 - t / c
    return GiantConstants(c=float(c), t=float(t), b=float(b), b_core=float(b * (1.0 - t)))
