"""Gray map from R = F_q + uF_q + ... + u^k F_q to F_q^(k+1).

For an element with coordinates (beta_0, ..., beta_k) the image symbols are

    Phi_0 = beta_k
    Phi_i = beta_{k - floor(i/2)} + beta_{floor((i-1)/2)},   1 <= i <= k.

This is an F_q-linear bijection.  It extends to vectors blockwise: the image
of c in R^n lives in F_q^((k+1)n) with symbol i of position t stored at index
i*n + t, matching the block-major flattening used for the code's F-span.  The
map sends the Euclidean dual over R to the Euclidean dual of the image.
"""

from __future__ import annotations

import numpy as np

from .chainring import ChainRing, RingElement, RingVector
from .fqlinear import LinearCode, cyclic_code, min_distance, row_reduce


def component_terms(k: int) -> tuple[tuple[int, ...], ...]:
    """For each output symbol, the beta indices that are XORed together."""
    terms = [(k,)]
    for i in range(1, k + 1):
        a = k - i // 2
        b = (i - 1) // 2
        terms.append((a,) if a == b else (a, b))
    return tuple(terms)


def symbol_matrix(k: int) -> np.ndarray:
    """(k+1) x (k+1) 0/1 matrix A with Phi(beta) = A @ beta over F_2 sums."""
    a = np.zeros((k + 1, k + 1), dtype=np.int64)
    for i, idxs in enumerate(component_terms(k)):
        for j in idxs:
            a[i, j] ^= 1
    return a


def gray_symbol(ring: ChainRing, a: RingElement) -> tuple[int, ...]:
    """Image of a single ring element as k+1 field symbols."""
    out = []
    for idxs in component_terms(ring.k):
        s = 0
        for j in idxs:
            s ^= a[j]
        out.append(s)
    return tuple(out)


def gray_vector(ring: ChainRing, v: RingVector) -> np.ndarray:
    """Image of a vector over R, block-major: symbol i of position t at i*n + t."""
    n = len(v)
    flat = ring.flatten(v).reshape(ring.k + 1, n)
    return gray_flat(ring.k, flat.reshape(-1), n)


def gray_flat(k: int, flat: np.ndarray, n: int) -> np.ndarray:
    """Gray map on block-major flat coordinates (works on rows too)."""
    arr = np.asarray(flat, dtype=np.int64)
    blocks = arr.reshape(*arr.shape[:-1], k + 1, n)
    out = np.zeros_like(blocks)
    for i, idxs in enumerate(component_terms(k)):
        for j in idxs:
            out[..., i, :] ^= blocks[..., j, :]
    return out.reshape(arr.shape)


def gray_weight(ring: ChainRing, v: RingVector) -> int:
    """Hamming weight of the Gray image."""
    return int(np.count_nonzero(gray_vector(ring, v)))


def gray_distance(ring: ChainRing, v: RingVector, w: RingVector) -> int:
    diff = tuple(ring.add(a, b) for a, b in zip(v, w))
    return gray_weight(ring, diff)


def gray_image_code(code) -> LinearCode:
    """Gray image of a cyclic code over R as a linear code over F_q.

    The image of an R-linear code is F_q-linear because the map is F_q-linear
    on the F-span; it need not be cyclic.
    """
    ring = code.ring
    length = (ring.k + 1) * code.n
    basis = code.basis()
    if basis.shape[0] == 0:
        return LinearCode(code.gf, length, np.zeros((0, length), dtype=np.int64))
    mapped = gray_flat(ring.k, basis, code.n)
    reduced, _ = row_reduce(code.gf, mapped)
    assert reduced.shape[0] == basis.shape[0], "Gray map is a bijection"
    return LinearCode(code.gf, length, reduced)


def residue_torsion_distance(
    code, max_words: int = 2**26, bound_words: int = 2**16
) -> tuple[int, bool]:
    """Gray distance of a k = 1 code from its residue/torsion split.

    For k = 1 the symbols satisfy Phi_0 + Phi_1 = beta_0, so a word with
    nonzero residue has Gray weight at least d(Res), attained by lifting a
    minimal residue word; a pure-torsion word u*t has Gray weight exactly
    2 w(t).  Hence d_G = min(d(Res), 2 d(Tor)) with Res = <fhat_1 mod u> and
    Tor = <f_0 mod u>.  The component distances are themselves computed at
    the given budgets; the min of lower bounds is still a lower bound, and
    the result is exact when the winning branch is exact.
    """
    if code.k != 1:
        raise ValueError(f"residue/torsion split needs k = 1, got k = {code.k}")
    gf, n = code.gf, code.n
    res = cyclic_code(gf, n, code.fhat(1))
    tor = cyclic_code(gf, n, code.assignment.slot_product(0))
    if tor.dim == 0:
        raise ValueError("zero code has no minimum distance")
    d_tor, e_tor = min_distance(tor, max_words, bound_words)
    if res.dim == 0:
        return 2 * d_tor, e_tor
    d_res, e_res = min_distance(res, max_words, bound_words)
    a, b = d_res, 2 * d_tor
    return min(a, b), (a <= b and e_res) or (b <= a and e_tor)
