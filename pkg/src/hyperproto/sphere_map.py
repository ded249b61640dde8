"""Place codebooks of unit vectors on the hypersphere.

Binary codewords go through the antipodal map ``b -> (2b - 1)/sqrt(n)``;
q-ary codewords are mapped symbol by symbol onto a regular simplex of q
points and the blocks concatenated.  Closed-form baselines (one-hot, regular
simplex, random) live here as well, together with the pairwise cosine
statistics used to compare every scheme.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .block_codes import LinearCode, encode_indices

NORM_TOL = 1e-12


class Scheme(str, enum.Enum):
    ONEHOT = "onehot"
    SIMPLEX = "simplex"
    RM = "rm"
    BCH = "bch"
    RS_SIMPLEX = "rs-simplex"
    RANDOM = "random"
    LSE = "lse"
    AVG = "avg"
    CODE = "code"


@dataclass(frozen=True, eq=False)
class Codebook:
    """K prototypes (rows of ``vectors``) on the unit sphere in R^n."""

    vectors: np.ndarray
    scheme: Scheme
    assignment_seed: int | None = None
    params: dict = field(default_factory=dict)
    certified_max_cosine: float | None = None

    def __post_init__(self):
        v = np.array(self.vectors, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("codebook vectors must form a K x n matrix")
        if v.shape[0] < 2 or v.shape[1] < 1:
            raise ValueError(f"need K >= 2 and n >= 1, got shape {v.shape}")
        norms = np.linalg.norm(v, axis=1)
        if np.max(np.abs(norms - 1.0)) > NORM_TOL:
            raise ValueError("codebook rows must have unit norm")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    @property
    def num_classes(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def gram(self) -> np.ndarray:
        return gram_matrix(self.vectors)


def gram_matrix(vectors: np.ndarray) -> np.ndarray:
    """Matrix of pairwise inner products.

    Antipodal-coordinate codebooks (every entry +-1/sqrt(n)) are evaluated in
    integer arithmetic as (sign agreements - disagreements)/n, so code-based
    cosines come out exactly as 1 - 2 d_H/n rather than carrying float
    accumulation error.
    """
    v = np.asarray(vectors, dtype=np.float64)
    n = v.shape[1]
    a = np.abs(v)
    if n > 0 and np.all(a == a.flat[0]) and a.flat[0] == 1.0 / np.sqrt(n):
        s = np.sign(v).astype(np.int64)
        return (s @ s.T) / n
    return v @ v.T


# --- binary map ----------------------------------------------------------------


def map_binary(b) -> np.ndarray:
    """Antipodal map of a binary vector (or rows of a binary matrix) onto the sphere."""
    b = np.asarray(b)
    n = b.shape[-1]
    if n < 1:
        raise ValueError("binary vectors must have length >= 1")
    return (2.0 * b.astype(np.float64) - 1.0) / np.sqrt(n)


def cosine_from_hamming(d_h: int, n: int) -> float:
    if not 0 <= d_h <= n:
        raise ValueError(f"Hamming distance {d_h} outside [0, {n}]")
    return (n - 2 * d_h) / n


def _select_messages(size: int, K: int, assignment_seed: int | None) -> np.ndarray:
    if assignment_seed is None:
        return np.arange(K)
    rng = np.random.default_rng(assignment_seed)
    return rng.choice(size, size=K, replace=False)


def _scheme_for(code: LinearCode) -> Scheme:
    fam = code.family
    inner = str(code.params.get("inner", ""))
    if fam == "ReedMuller" or inner.startswith("RM("):
        return Scheme.RM
    if fam == "BCH" or inner.startswith("BCH("):
        return Scheme.BCH
    return Scheme.CODE


def codebook_from_code(code: LinearCode, K: int, assignment_seed: int | None = None) -> Codebook:
    """Map K codewords of a binary code onto the sphere.

    Without a seed, classes take the first K codewords in message order; a
    seed draws a random K-subset in random order instead.  Either way the
    max cosine stays below 1 - 2 d_min/n.
    """
    if code.q != 2:
        raise ValueError("codebook_from_code expects a binary code; use qary_codebook")
    if code.size < K:
        raise ValueError(f"code too small for K classes: 2^{code.k} < {K}")
    words = encode_indices(code, _select_messages(code.size, K, assignment_seed))
    return Codebook(
        map_binary(words),
        _scheme_for(code),
        assignment_seed,
        {"code": code.name, "n": code.n, "k": code.k},
    )


# --- closed forms ----------------------------------------------------------------


def simplex_vectors(K: int) -> np.ndarray:
    """Regular simplex of K unit vectors in R^(K-1).

    Centres the canonical basis of R^K and rotates the hyperplane orthogonal
    to the all-ones vector onto the first K-1 coordinates with a Householder
    reflection.
    """
    if K < 2:
        raise ValueError("simplex needs K >= 2")
    x = np.eye(K) - 1.0 / K
    u = np.full(K, 1.0 / np.sqrt(K))
    v = u.copy()
    v[-1] -= 1.0
    h = np.eye(K) - 2.0 * np.outer(v, v) / (v @ v)
    y = (x @ h)[:, :-1]
    return y / np.linalg.norm(y, axis=1, keepdims=True)


def simplex_codebook(K: int) -> Codebook:
    return Codebook(simplex_vectors(K), Scheme.SIMPLEX, params={}, certified_max_cosine=-1.0 / (K - 1))


def onehot_codebook(K: int) -> Codebook:
    if K < 2:
        raise ValueError("one-hot needs K >= 2")
    return Codebook(np.eye(K), Scheme.ONEHOT, certified_max_cosine=0.0)


def random_vectors(K: int, n: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((K, n))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def random_codebook(K: int, n: int, seed: int) -> Codebook:
    """Rows i.i.d. uniform on the sphere (normalised isotropic Gaussians)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return Codebook(random_vectors(K, n, np.random.default_rng(seed)), Scheme.RANDOM, params={"seed": seed})


# --- q-ary composite map ----------------------------------------------------------------


def component_simplex(q: int) -> np.ndarray:
    """Symbol-to-point table for the q-ary map: q unit vectors in R^(q-1).

    For q = 2 symbol 1 maps to +1 and symbol 0 to -1, so the composite map
    collapses to the binary antipodal map.
    """
    if q == 2:
        return np.array([[-1.0], [1.0]])
    return simplex_vectors(q)


def qary_codebook(
    code: LinearCode,
    K: int,
    assignment_seed: int | None = None,
    component: np.ndarray | None = None,
) -> Codebook:
    """Map codewords of a q-ary code symbol-wise through ``component`` and concatenate.

    Output dimension is n_q * l where ``component`` is a q x l table of unit
    vectors (default: regular simplex, l = q - 1).
    """
    q = code.q
    comp = component_simplex(q) if component is None else np.asarray(component, dtype=np.float64)
    if comp.ndim != 2 or comp.shape[0] != q:
        raise ValueError(f"component mapping must have {q} rows, got shape {comp.shape}")
    if np.max(np.abs(np.linalg.norm(comp, axis=1) - 1.0)) > NORM_TOL:
        raise ValueError("component mapping points must be unit vectors")
    if code.size < K:
        raise ValueError(f"code too small for K classes: {q}^{code.k} < {K}")
    words = encode_indices(code, _select_messages(code.size, K, assignment_seed))
    vecs = comp[words.astype(np.int64)].reshape(K, -1) / np.sqrt(code.n)
    return Codebook(
        vecs,
        Scheme.RS_SIMPLEX if code.family == "ReedSolomon" else Scheme.CODE,
        assignment_seed,
        {"code": code.name, "q": q, "n_q": code.n, "k_q": code.k, "component_dim": comp.shape[1]},
    )


def component_min_sq_distance(component: np.ndarray) -> float:
    d = np.sum((component[:, None, :] - component[None, :, :]) ** 2, axis=-1)
    return float(np.min(d[~np.eye(len(component), dtype=bool)]))


# --- statistics ----------------------------------------------------------------


@dataclass(frozen=True)
class SeparationStats:
    """Pairwise cosine statistics over the K(K-1)/2 unordered pairs.

    ``atoms`` lists (value, count) for exactly repeated cosine values, which
    is how code-based schemes concentrate their mass.
    """

    max_cosine: float
    mean_cosine: float
    min_cosine: float
    num_pairs: int
    bin_edges: np.ndarray
    bin_counts: np.ndarray
    atoms: list[tuple[float, int]]

    @property
    def histogram(self) -> list[tuple[float, int]]:
        """(left bin edge, count) pairs."""
        return [(float(e), int(c)) for e, c in zip(self.bin_edges[:-1], self.bin_counts)]

    def to_dict(self) -> dict:
        return {
            "max_cosine": self.max_cosine,
            "mean_cosine": self.mean_cosine,
            "min_cosine": self.min_cosine,
            "num_pairs": self.num_pairs,
            "atoms": [{"value": v, "count": c} for v, c in self.atoms],
            "histogram": {
                "edges": [float(e) for e in self.bin_edges],
                "counts": [int(c) for c in self.bin_counts],
            },
        }


ATOM_DECIMALS = 12
MAX_LISTED_VALUES = 64


def pairwise_cosines(cb: Codebook | np.ndarray) -> np.ndarray:
    vecs = cb.vectors if isinstance(cb, Codebook) else np.asarray(cb)
    g = gram_matrix(vecs)
    iu = np.triu_indices(g.shape[0], k=1)
    return g[iu]


def find_atoms(values: np.ndarray, decimals: int = ATOM_DECIMALS) -> list[tuple[float, int]]:
    """Repeated values (after rounding to ``decimals``) with their multiplicities.

    When the distribution has at most ``MAX_LISTED_VALUES`` distinct values
    every one of them is an atom, singletons included.
    """
    r = np.round(values, decimals) + 0.0  # +0.0 folds -0.0 into 0.0
    uniq, counts = np.unique(r, return_counts=True)
    if uniq.size > MAX_LISTED_VALUES:
        keep = counts > 1
        uniq, counts = uniq[keep], counts[keep]
    return [(float(u), int(c)) for u, c in zip(uniq, counts)]


def separation_stats(cb: Codebook | np.ndarray, num_bins: int = 201) -> SeparationStats:
    cos = pairwise_cosines(cb)
    counts, edges = np.histogram(np.clip(cos, -1.0, 1.0), bins=num_bins, range=(-1.0, 1.0))
    return SeparationStats(
        max_cosine=float(cos.max()),
        mean_cosine=float(cos.mean()),
        min_cosine=float(cos.min()),
        num_pairs=int(cos.size),
        bin_edges=edges,
        bin_counts=counts,
        atoms=find_atoms(cos),
    )


def max_cosine(vectors: np.ndarray) -> float:
    g = gram_matrix(vectors)
    np.fill_diagonal(g, -np.inf)
    return float(g.max())
