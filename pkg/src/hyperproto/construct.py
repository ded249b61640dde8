"""Build a codebook for any scheme at a requested (K, n).

Code-based schemes only exist at particular lengths (RM at 2^m, BCH at
2^m - 1, RS with simplex components at q(q - 1)).  Requests at other lengths
fail with an :class:`InfeasibleError` whose hints list nearby realizable
dimensions; with ``allow_puncture`` RM/BCH are instead punctured down from
the next base length (or, for BCH at 2^m, extended by a parity bit).
"""

from __future__ import annotations

from dataclasses import replace

from .block_codes import (
    LinearCode,
    bch_best_for_classes,
    certified_dmin,
    extend_with_parity,
    message_bits,
    puncture_trailing,
    reed_muller_code,
    reed_muller_dimension,
    reed_solomon_code,
)
from .bounds import prop1_cosine_bound, prop2_cosine_bound, simplex_component_sq_distance
from .exceptions import InfeasibleError
from .gf2m import MAX_M
from .optimize import OptimizerConfig, optimize_prototypes
from .sphere_map import (
    Codebook,
    Scheme,
    codebook_from_code,
    onehot_codebook,
    qary_codebook,
    random_codebook,
    simplex_codebook,
)

SCHEMES = [s.value for s in Scheme if s is not Scheme.CODE]
MAX_RM_M = 14


def _nearest(candidates: list[int], n: int) -> list[int]:
    below = [c for c in candidates if c <= n]
    above = [c for c in candidates if c >= n]
    out = []
    if below:
        out.append(max(below))
    if above and min(above) not in out:
        out.append(min(above))
    return out


def rm_lengths(K: int) -> list[int]:
    kmin = message_bits(K)
    return [1 << m for m in range(1, MAX_RM_M + 1) if (1 << m) >= kmin]


def bch_lengths(K: int) -> list[int]:
    kmin = message_bits(K)
    return [(1 << m) - 1 for m in range(2, MAX_M + 1) if (1 << m) - 1 - m >= kmin]


def _rs_params(K: int, q: int) -> int | None:
    k_q = 1
    while q**k_q < K:
        k_q += 1
    return k_q if k_q <= q else None


def rs_lengths(K: int) -> list[int]:
    return [q * (q - 1) for q in (1 << m for m in range(1, 9)) if _rs_params(K, q) is not None]


def rm_for(K: int, m: int) -> LinearCode:
    """Lowest-order RM code of length 2^m with at least K codewords."""
    kmin = message_bits(K)
    for r in range(m + 1):
        if reed_muller_dimension(r, m) >= kmin:
            return reed_muller_code(r, m)
    raise InfeasibleError(f"RM codes of length {1 << m} cannot hold {K} classes")


def _hint_text(scheme: str, n: int, hints: list[int], punct: bool) -> str:
    msg = f"{scheme} is not realizable at n={n}"
    if hints:
        msg += f"; nearest realizable dimensions: {hints}"
    if punct:
        msg += " (or pass --allow-puncture)"
    return msg


def code_for(scheme: str, K: int, n: int, allow_puncture: bool = False) -> LinearCode:
    """The binary code used for an ``rm``/``bch`` request at length n."""
    if scheme == "rm":
        lengths = rm_lengths(K)
        if n in lengths:
            return rm_for(K, n.bit_length() - 1)
        if allow_puncture:
            bases = [b for b in lengths if b > n]
            if bases and n >= message_bits(K):
                base = rm_for(K, bases[0].bit_length() - 1)
                return puncture_trailing(base, base.n - n)
        raise InfeasibleError(_hint_text("rm", n, _nearest(lengths, n), True), _nearest(lengths, n))
    if scheme == "bch":
        lengths = bch_lengths(K)
        if n in lengths:
            return bch_best_for_classes((n + 1).bit_length() - 1, K)
        if allow_puncture:
            if n - 1 in lengths:
                return extend_with_parity(bch_best_for_classes(n.bit_length() - 1, K))
            bases = [b for b in lengths if b > n]
            if bases and n >= message_bits(K):
                base = bch_best_for_classes((bases[0] + 1).bit_length() - 1, K)
                return puncture_trailing(base, base.n - n)
        raise InfeasibleError(_hint_text("bch", n, _nearest(lengths, n), True), _nearest(lengths, n))
    raise ValueError(f"{scheme} is not a binary code scheme")


def build_codebook(
    scheme: str,
    K: int,
    n: int | None = None,
    *,
    seed: int = 0,
    assignment_seed: int | None = None,
    allow_puncture: bool = False,
    optimizer: OptimizerConfig | None = None,
) -> Codebook:
    """Construct a codebook for ``scheme``; code-based results carry a certificate."""
    scheme = Scheme(scheme).value
    if K < 2:
        raise ValueError("need K >= 2")

    if scheme == "onehot":
        if n not in (None, K):
            raise InfeasibleError(_hint_text("onehot", n, [K], False), [K])
        return onehot_codebook(K)
    if scheme == "simplex":
        if n not in (None, K - 1):
            raise InfeasibleError(_hint_text("simplex", n, [K - 1], False), [K - 1])
        return simplex_codebook(K)

    if n is None:
        raise ValueError(f"scheme {scheme} needs an explicit dimension")
    if n < 1:
        raise ValueError("dimension must be >= 1")

    if scheme == "random":
        return random_codebook(K, n, seed)
    if scheme in ("lse", "avg"):
        cfg = optimizer or OptimizerConfig()
        cfg = replace(cfg, loss=scheme, seed=seed)
        return optimize_prototypes(K, n, cfg)[0]
    if scheme in ("rm", "bch"):
        code = code_for(scheme, K, n, allow_puncture)
        cb = codebook_from_code(code, K, assignment_seed)
        return replace(
            cb,
            scheme=Scheme(scheme),
            params={**cb.params, "d_min": certified_dmin(code)},
            certified_max_cosine=prop1_cosine_bound(code),
        )
    if scheme == "rs-simplex":
        lengths = rs_lengths(K)
        q = next((q for q in (1 << m for m in range(1, 9)) if q * (q - 1) == n), None)
        if q is None or _rs_params(K, q) is None:
            raise InfeasibleError(_hint_text("rs-simplex", n, _nearest(lengths, n), False), _nearest(lengths, n))
        code = reed_solomon_code(q, _rs_params(K, q))
        cb = qary_codebook(code, K, assignment_seed)
        d = certified_dmin(code)
        return replace(
            cb,
            params={**cb.params, "d_min": d},
            certified_max_cosine=prop2_cosine_bound(d, code.n, simplex_component_sq_distance(q)),
        )
    raise ValueError(f"unknown scheme {scheme!r}")
