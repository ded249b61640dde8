"""Achievable and converse bounds on the worst-case cosine of K prototypes.

The achievable side combines the Gilbert-Varshamov existence condition

    2^(n-k) > sum_{i=0}^{d-2} C(n-1, i)

with the antipodal map (cosine 1 - 2d/n).  Dividing both sides by 2^n gives
the numerically safe form ``2^(1-k) > F_bin(d-2; n-1, 1/2)``, which is what
:func:`gv_largest_dmin` evaluates, in log space.  The converse side is the
Rankin bound, max cosine >= -1/(K-1).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .block_codes import LinearCode, certified_dmin, message_bits
from .exceptions import InfeasibleError

LOG2 = math.log(2.0)
# log-space gaps below this are re-decided with exact integers
_TIE_WINDOW = 1e-9


def gv_condition_exact(n: int, k: int, d: int) -> bool:
    """Gilbert-Varshamov condition in exact integer arithmetic."""
    return 2 ** (n - k) > _binom_prefix_sum(n - 1, d - 2)


def _binom_prefix_sum(trials: int, upto: int) -> int:
    """sum_{i=0}^{upto} C(trials, i), summing whichever tail is shorter."""
    if upto < 0:
        return 0
    if upto >= trials:
        return 1 << trials
    if upto + 1 > trials - upto:
        return (1 << trials) - _binom_prefix_sum(trials, trials - upto - 1)
    total, term = 0, 1
    for i in range(upto + 1):
        total += term
        term = term * (trials - i) // (i + 1)
    return total


@lru_cache(maxsize=None)
def _binom_half_logcdf(trials: int) -> np.ndarray:
    """log F_bin(j; trials, 1/2) for j = 0..trials, from log-gamma pmf terms."""
    i = np.arange(trials + 1)
    logpmf = gammaln(trials + 1) - gammaln(i + 1) - gammaln(trials - i + 1) - trials * LOG2
    out = np.logaddexp.accumulate(logpmf)
    out.setflags(write=False)
    return out


def _gv_gap(n: int, k: int, d: int) -> float:
    return (1 - k) * LOG2 - float(_binom_half_logcdf(n - 1)[d - 2])


def gv_condition(n: int, k: int, d: int) -> bool:
    """Gilbert-Varshamov condition evaluated in log space (2^(1-k) > F_bin(d-2; n-1, 1/2))."""
    if d <= 1:
        return True
    gap = _gv_gap(n, k, d)
    if abs(gap) <= _TIE_WINDOW:
        return gv_condition_exact(n, k, d)
    return gap > 0


@lru_cache(maxsize=None)
def gv_largest_dmin(n: int, k: int) -> int:
    """Largest d in [1, n] satisfying the GV condition for an [n, k] code.

    The log-CDF is non-decreasing in d, so the feasible set is a prefix of
    [1, n]; the scan runs over the precomputed cumulative table.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    logcdf = _binom_half_logcdf(n - 1)
    gaps = (1 - k) * LOG2 - logcdf[: n - 1]  # entry j decides d = j + 2
    clear = np.nonzero(gaps < -_TIE_WINDOW)[0]
    d = n if clear.size == 0 else int(clear[0]) + 1
    # d + 1 is clearly infeasible (or out of range); settle any near-ties below it
    while d > 1 and not gv_condition(n, k, d):
        d -= 1
    return d


def achievable_max_cosine(n: int, K: int, tighten: bool = False) -> float:
    """Cosine guaranteed by the GV bound with k = ceil(log2 K).

    With ``tighten`` the one-hot value 0 caps the bound once n >= K.
    """
    k = message_bits(K)
    if k > n:
        raise InfeasibleError(f"dimension below message length: n={n} < ceil(log2 {K})={k}")
    bound = 1.0 - 2.0 * gv_largest_dmin(n, k) / n
    if tighten and n >= K:
        bound = min(bound, 0.0)
    return bound


def achievable_envelope(n: int, K: int) -> float:
    """Best achievable value over all dimensions n' <= n.

    A codebook in R^n' embeds isometrically in R^n by zero padding, so this
    running minimum is also achievable and is non-increasing in n.
    """
    k = message_bits(K)
    if k > n:
        raise InfeasibleError(f"dimension below message length: n={n} < ceil(log2 {K})={k}")
    return min(achievable_max_cosine(m, K) for m in range(k, n + 1))


def rankin_converse(K: int) -> float:
    """No K unit vectors have max pairwise cosine below -1/(K-1)."""
    if K < 2:
        raise ValueError("need K >= 2")
    return -1.0 / (K - 1)


def singleton_dmin_upper(n_q: int, k_q: int) -> int:
    if not 1 <= k_q <= n_q:
        raise ValueError(f"need 1 <= k_q <= n_q, got n_q={n_q}, k_q={k_q}")
    return n_q - k_q + 1


def prop1_cosine_bound(code: LinearCode) -> float:
    """Certified max cosine of the antipodal image of a binary code: 1 - 2 d_min/n."""
    if code.q != 2:
        raise ValueError("binary code required")
    # same rounding as the integer Gram path: (n - 2d)/n
    return (code.n - 2 * certified_dmin(code)) / code.n


def prop2_cosine_bound(d_h_min: int, n_q: int, d_e_min_component_sq: float) -> float:
    """Max cosine of a q-ary code mapped through a component constellation.

    ``d_e_min_component_sq`` is the squared minimum Euclidean distance of the
    per-symbol constellation (2q/(q-1) for a regular simplex, 4 for +-1).
    """
    if d_h_min <= 0 or n_q <= 0 or d_e_min_component_sq <= 0:
        raise ValueError("inputs must be positive")
    if d_e_min_component_sq > 4.0 + 1e-12:
        raise ValueError("squared distance between unit vectors cannot exceed 4")
    return 1.0 - (d_h_min / n_q) * (d_e_min_component_sq / 2.0)


def simplex_component_sq_distance(q: int) -> float:
    return 2.0 * q / (q - 1)


def rs_simplex_cosine_bound(q: int, k_q: int, n_q: int | None = None) -> float:
    """Distance-based cosine bound for an MDS code with regular-simplex components."""
    n_q = q if n_q is None else n_q
    return prop2_cosine_bound(singleton_dmin_upper(n_q, k_q), n_q, simplex_component_sq_distance(q))


@dataclass(frozen=True)
class BoundsReport:
    K: int
    n: int
    k: int
    gv_dmin: int
    achievable_max_cosine: float
    converse_min_of_max_cosine: float
    onehot_reference: float | None

    @property
    def tightened_achievable(self) -> float:
        if self.onehot_reference is None:
            return self.achievable_max_cosine
        return min(self.achievable_max_cosine, self.onehot_reference)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tightened_achievable"] = self.tightened_achievable
        return d


def bounds_report(K: int, n: int) -> BoundsReport:
    k = message_bits(K)
    achievable = achievable_max_cosine(n, K)
    return BoundsReport(
        K=K,
        n=n,
        k=k,
        gv_dmin=gv_largest_dmin(n, k),
        achievable_max_cosine=achievable,
        converse_min_of_max_cosine=rankin_converse(K),
        onehot_reference=0.0 if n >= K else None,
    )
