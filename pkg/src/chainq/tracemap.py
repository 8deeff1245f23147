"""Binary expansion of F_{2^m}-linear codes via a trace-orthonormal basis.

With basis a_1, ..., a_m satisfying Tr(a_i a_j) = delta_ij, a word
c in F_{2^m}^N expands to the binary word of length mN whose block j
(indices j*N .. j*N + N - 1) holds Tr(c_t * a_{j+1}) for t = 0..N-1.
Because the basis is trace-orthonormal this expansion commutes with
Euclidean duality, and cyclic shifts of c become blockwise cyclic shifts.
"""

from __future__ import annotations

import numpy as np

from .field import DualBasis, gf_cache
from .fqlinear import LinearCode, linear_code


def phi_expand(basis: DualBasis, v) -> np.ndarray:
    """Expand one word over GF(2^m) to its binary image, basis-major blocks."""
    gf = basis.gf
    arr = np.asarray(v, dtype=np.int64)
    out = np.empty(gf.m * arr.shape[-1], dtype=np.int64)
    n = arr.shape[-1]
    for j, a in enumerate(basis.vectors):
        out[j * n : (j + 1) * n] = gf.trace_vec(gf.mul_vec(a, arr))
    return out


def phi_expand_rows(basis: DualBasis, rows: np.ndarray) -> np.ndarray:
    """Expand each row of a matrix over GF(2^m); output has mN columns."""
    gf = basis.gf
    rows = np.asarray(rows, dtype=np.int64)
    nrows, n = rows.shape
    out = np.empty((nrows, gf.m * n), dtype=np.int64)
    for j, a in enumerate(basis.vectors):
        out[:, j * n : (j + 1) * n] = gf.trace_vec(gf.mul_vec(a, rows))
    return out


def sigma_shift(m: int, w: np.ndarray) -> np.ndarray:
    """Blockwise cyclic shift on an expanded word of length m*N."""
    arr = np.asarray(w, dtype=np.int64)
    n = arr.shape[-1] // m
    blocks = arr.reshape(m, n)
    return np.roll(blocks, 1, axis=1).reshape(-1)


def expand_code(c: LinearCode, basis: DualBasis) -> LinearCode:
    """Binary image of a code over GF(2^m): an [mN, m*dim] code over GF(2)."""
    gf = c.gf
    if basis.gf != gf:
        raise ValueError("basis and code are over different fields")
    gf2 = gf_cache(1)
    if c.dim == 0:
        return LinearCode(gf2, gf.m * c.n, np.zeros((0, gf.m * c.n), dtype=np.int64))
    # an F_2-basis of the code: each generator row times each power-of-two scalar
    rows = []
    for row in c.gen:
        for t in range(gf.m):
            rows.append(gf.mul_vec(1 << t, row))
    expanded = phi_expand_rows(basis, np.array(rows))
    out = linear_code(gf2, gf.m * c.n, expanded)
    assert out.dim == gf.m * c.dim, "expansion multiplies dimension by m"
    return out


def binary_image_code(code, basis: DualBasis) -> LinearCode:
    """Binary image of a cyclic code over R: trace expansion of the Gray image."""
    from .gray import gray_image_code

    return expand_code(gray_image_code(code), basis)
