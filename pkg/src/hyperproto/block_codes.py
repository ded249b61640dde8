"""Linear block codes over GF(2^m) and exact distance metadata.

Codes are stored by generator matrix (``k x n`` integer array, symbols are
field elements in their integer packing).  Codeword enumeration follows
lexicographic message order: message ``i`` is the base-``q`` expansion of
``i`` with the first generator row as the most significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .exceptions import EnumerationLimitError, InfeasibleError
from .gf2m import FieldTable, Poly2, build_field, cyclotomic_coset, minimal_polynomial, poly_lcm

DEFAULT_ENUMERATION_CAP = 1 << 20


def _field_for(q: int) -> FieldTable:
    if q < 2 or q & (q - 1):
        raise ValueError(f"field order must be a power of two, got {q}")
    return build_field(q.bit_length() - 1)


def rank_gfq(matrix: np.ndarray, q: int = 2) -> int:
    """Rank of an integer matrix over GF(q), q = 2^m, by Gaussian elimination."""
    a = np.array(matrix, dtype=np.int64, copy=True)
    if a.size == 0:
        return 0
    if q == 2:
        # pack rows into ints; xor basis keyed by leading bit
        basis: dict[int, int] = {}
        for row in a & 1:
            v = int.from_bytes(np.packbits(row.astype(np.uint8)).tobytes(), "big")
            while v:
                lead = v.bit_length() - 1
                if lead not in basis:
                    basis[lead] = v
                    break
                v ^= basis[lead]
        return len(basis)
    fld = _field_for(q)
    mt = fld.mul_table
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        pivots = np.nonzero(a[rank:, c])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        a[[rank, p]] = a[[p, rank]]
        a[rank] = mt[fld.inv(int(a[rank, c])), a[rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= mt[int(a[r, c]), a[rank]]
        rank += 1
        if rank == rows:
            break
    return rank


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An [n, k] linear block code over GF(q) given by its generator matrix.

    ``dmin_lower_bound`` is a construction-level guarantee (design distance
    for BCH, the exact formula for RM/RS/repetition); ``d_min`` is the exact
    value from enumeration.
    """

    generator: np.ndarray
    q: int = 2
    family: str = "Generic"
    params: dict = field(default_factory=dict)
    dmin_lower_bound: int | None = None

    def __post_init__(self):
        g = np.array(self.generator, dtype=np.int64)
        if g.ndim != 2:
            raise ValueError("generator matrix must be two-dimensional")
        if g.shape[0] < 1:
            raise ValueError("code dimension k must be at least 1")
        if g.shape[0] > g.shape[1]:
            raise ValueError(f"k={g.shape[0]} exceeds n={g.shape[1]}")
        _field_for(self.q)
        if g.min() < 0 or g.max() >= self.q:
            raise ValueError(f"generator entries must lie in [0, {self.q})")
        if rank_gfq(g, self.q) != g.shape[0]:
            raise ValueError("generator matrix is not full rank")
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def size(self) -> int:
        """Number of codewords, q^k."""
        return self.q**self.k

    @property
    def name(self) -> str:
        p = self.params
        if self.family == "Repetition":
            return f"Repetition({self.n})"
        if self.family == "ReedMuller":
            return f"RM({p['r']},{p['m']})"
        if self.family == "BCH":
            return f"BCH(m={p['m']},delta={p['design_distance']})"
        if self.family == "ReedSolomon":
            return f"RS(q={self.q},k={self.k},n={self.n})"
        if self.family == "Punctured":
            return f"Punctured({p['inner']},{len(p['positions'])})"
        if self.family == "Extended":
            return f"Extended({p['inner']})"
        return f"[{self.n},{self.k}]_{self.q}"

    @cached_property
    def codewords(self) -> np.ndarray:
        return enumerate_codewords(self)

    @cached_property
    def spectrum(self) -> DistanceSpectrum:
        return distance_spectrum(self)

    @property
    def d_min(self) -> int:
        return self.spectrum.d_min

    def __repr__(self) -> str:
        return f"LinearCode({self.name}, n={self.n}, k={self.k}, q={self.q})"


@dataclass(frozen=True)
class DistanceSpectrum:
    """Weight distribution of a linear code; ``weight_counts[w]`` codewords have weight w."""

    weight_counts: dict[int, int]
    d_min: int
    n: int

    @property
    def total(self) -> int:
        return sum(self.weight_counts.values())


# --- constructions -----------------------------------------------------------


def repetition_code(n: int) -> LinearCode:
    if n < 1:
        raise ValueError("repetition code needs n >= 1")
    return LinearCode(np.ones((1, n), dtype=np.int64), 2, "Repetition", {"n": n}, n)


def reed_muller_dimension(r: int, m: int) -> int:
    return sum(comb(m, i) for i in range(r + 1))


def reed_muller_code(r: int, m: int) -> LinearCode:
    """RM(r, m): evaluations of all boolean monomials of degree <= r on F_2^m.

    Rows are ordered by degree, then lexicographically by variable set; the
    all-ones row comes first.  Point ``p`` assigns ``x_i = bit i of p``.
    """
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    if m > 14:
        raise ValueError("m > 14 is not supported")
    points = np.arange(1 << m)
    variables = [(points >> i) & 1 for i in range(m)]
    rows = []
    for deg in range(r + 1):
        for subset in combinations(range(m), deg):
            row = np.ones(1 << m, dtype=np.int64)
            for i in subset:
                row = row * variables[i]
            rows.append(row)
    return LinearCode(np.array(rows), 2, "ReedMuller", {"r": r, "m": m}, 1 << (m - r))


@lru_cache(maxsize=None)
def bch_generator_polynomial(m: int, design_distance: int) -> Poly2:
    """lcm of the minimal polynomials of alpha^1 .. alpha^(design_distance-1)."""
    n = (1 << m) - 1
    if m < 2:
        raise ValueError("BCH codes need m >= 2")
    if not 2 <= design_distance <= n:
        raise ValueError(f"design distance must be in [2, {n}], got {design_distance}")
    fld = build_field(m)
    g = Poly2(1)
    seen: set[int] = set()
    for s in range(1, design_distance):
        if s in seen:
            continue
        seen.update(cyclotomic_coset(s, m))
        g = poly_lcm(g, minimal_polynomial(s, fld))
    return g


def _cyclic_generator_matrix(g: Poly2, n: int) -> np.ndarray:
    coeffs = np.array(g.coefficients, dtype=np.int64)
    k = n - g.degree
    G = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        G[i, i : i + coeffs.size] = coeffs
    return G


def bch_code(m: int, design_distance: int) -> LinearCode:
    """Narrow-sense primitive binary BCH code of length 2^m - 1."""
    n = (1 << m) - 1
    g = bch_generator_polynomial(m, design_distance)
    if n - g.degree <= 0:
        raise InfeasibleError("design distance too large")
    return LinearCode(
        _cyclic_generator_matrix(g, n),
        2,
        "BCH",
        {"m": m, "design_distance": design_distance, "generator_poly": g.bits},
        design_distance,
    )


@lru_cache(maxsize=None)
def bch_dimensions(m: int) -> tuple[tuple[int, int], ...]:
    """All (design distance, k) pairs for length 2^m - 1.

    Distinct cyclotomic cosets have distinct irreducible minimal polynomials,
    so deg g is the total size of the cosets met by 1 .. delta-1.
    """
    n = (1 << m) - 1
    seen: set[int] = set()
    deg = 0
    out = []
    for d in range(2, n + 1):
        s = d - 1
        if s not in seen:
            coset = cyclotomic_coset(s, m)
            seen.update(coset)
            deg += len(coset)
        out.append((d, n - deg))
    return tuple(out)


def message_bits(K: int) -> int:
    """ceil(log2 K) for K >= 2."""
    if K < 2:
        raise ValueError("need at least two classes")
    return (K - 1).bit_length()


def bch_best_for_classes(m: int, num_classes: int) -> LinearCode:
    """Largest-design-distance BCH code of length 2^m - 1 with k >= ceil(log2 K)."""
    kmin = message_bits(num_classes)
    best = None
    for d, k in bch_dimensions(m):
        if k < kmin:
            continue
        if best is None or d > best[0] or (d == best[0] and k > best[1]):
            best = (d, k)
    if best is None:
        raise InfeasibleError(
            f"no BCH code of length {(1 << m) - 1} has k >= {kmin} for K={num_classes}"
        )
    return bch_code(m, best[0])


def reed_solomon_code(q: int, k_q: int, n_q: int | None = None) -> LinearCode:
    """Evaluation code of polynomials of degree < k_q over GF(q).

    Evaluation points are 0, 1, alpha, alpha^2, ... (the first ``n_q`` of
    them); by default all q field elements are used.
    """
    fld = _field_for(q)
    if n_q is None:
        n_q = q
    if not 1 <= n_q <= q:
        raise ValueError(f"n_q must be in [1, {q}]")
    if not 1 <= k_q:
        raise ValueError("k_q must be at least 1")
    if k_q > n_q:
        raise InfeasibleError(f"k_q={k_q} exceeds n_q={n_q}")
    points = [0] + [fld.alpha_pow(i) for i in range(q - 1)]
    points = points[:n_q]
    G = np.array([[fld.pow(x, j) for x in points] for j in range(k_q)], dtype=np.int64)
    return LinearCode(G, q, "ReedSolomon", {"q": q, "k_q": k_q, "n_q": n_q}, n_q - k_q + 1)


# --- transforms ----------------------------------------------------------------


def puncture(code: LinearCode, positions: Iterable[int]) -> LinearCode:
    """Delete the coordinates in ``positions`` from every codeword."""
    positions = sorted(set(int(p) for p in positions))
    if not positions:
        return code
    if positions[0] < 0 or positions[-1] >= code.n:
        raise ValueError(f"positions must lie in [0, {code.n})")
    if len(positions) >= code.n:
        raise ValueError("cannot puncture every coordinate")
    keep = np.setdiff1d(np.arange(code.n), positions)
    G = code.generator[:, keep]
    if rank_gfq(G, code.q) < code.k:
        raise InfeasibleError("puncturing collapses codewords")
    lb = code.dmin_lower_bound
    return LinearCode(
        G,
        code.q,
        "Punctured",
        {"inner": code.name, "positions": positions},
        None if lb is None else max(1, lb - len(positions)),
    )


def puncture_trailing(code: LinearCode, bits: int) -> LinearCode:
    return puncture(code, range(code.n - bits, code.n))


def extend_with_parity(code: LinearCode) -> LinearCode:
    """Append an overall parity bit to every codeword of a binary code."""
    if code.q != 2:
        raise ValueError("parity extension is defined for binary codes only")
    parity = code.generator.sum(axis=1, keepdims=True) % 2
    G = np.hstack([code.generator, parity])
    lb = code.dmin_lower_bound
    return LinearCode(
        G, 2, "Extended", {"inner": code.name}, None if lb is None else lb + (lb % 2)
    )


# --- enumeration -------------------------------------------------------------


def message_digits(indices: Sequence[int] | np.ndarray, q: int, k: int) -> np.ndarray:
    """Base-q digits of message indices, most significant digit first."""
    idx = np.asarray(indices, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def encode(code: LinearCode, messages: np.ndarray) -> np.ndarray:
    """Encode rows of q-ary message symbols (shape ``M x k``)."""
    msgs = np.asarray(messages, dtype=np.int64)
    if code.q == 2:
        return ((msgs @ code.generator) & 1).astype(np.uint8)
    mt = _field_for(code.q).mul_table
    out = np.zeros((msgs.shape[0], code.n), dtype=np.int64)
    for j in range(code.k):
        out ^= mt[msgs[:, j][:, None], code.generator[j][None, :]]
    return out.astype(np.uint8 if code.q <= 256 else np.int64)


def encode_indices(code: LinearCode, indices: Sequence[int] | np.ndarray) -> np.ndarray:
    return encode(code, message_digits(indices, code.q, code.k))


def enumerate_codewords(code: LinearCode, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """All q^k codewords in lexicographic message order, as a read-only array."""
    if code.size > cap:
        raise EnumerationLimitError(
            f"{code.name} has {code.q}^{code.k} codewords, above the cap of {cap}"
        )
    dtype = np.uint8 if code.q <= 256 else np.int64
    words = np.zeros((1, code.n), dtype=dtype)
    G = code.generator.astype(dtype)
    if code.q == 2:
        for j in range(code.k - 1, -1, -1):
            words = np.concatenate([words, words ^ G[j]])
    else:
        mt = _field_for(code.q).mul_table.astype(dtype)
        for j in range(code.k - 1, -1, -1):
            words = np.concatenate([words ^ mt[a][G[j]] for a in range(code.q)])
    words.setflags(write=False)
    return words


def distance_spectrum(code: LinearCode, cap: int = DEFAULT_ENUMERATION_CAP) -> DistanceSpectrum:
    """Exact weight distribution; for linear codes it fixes every pairwise distance."""
    words = code.codewords if code.size <= cap else enumerate_codewords(code, cap)
    weights = np.count_nonzero(words, axis=1)
    counts = np.bincount(weights, minlength=code.n + 1)
    weight_counts = {int(w): int(c) for w, c in enumerate(counts) if c}
    nonzero = [w for w in weight_counts if w > 0]
    return DistanceSpectrum(weight_counts, min(nonzero), code.n)


def certified_dmin(code: LinearCode, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Exact d_min when enumeration fits under ``cap``, else the construction bound."""
    if code.size <= cap:
        return code.d_min
    if code.dmin_lower_bound is None:
        raise EnumerationLimitError(f"{code.name} is too large to enumerate and has no known bound")
    return code.dmin_lower_bound
