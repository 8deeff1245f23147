"""Linear codes over GF(2^m): reduction, duals, weight enumeration, distance.

Generator matrices are numpy int64 arrays of field elements in reduced row
echelon form.  Weight enumeration packs codewords into m bit-planes of uint64
words and walks the message space with an XOR doubling table, so counting a
few hundred million codewords stays in vectorised numpy.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from .field import GF


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured word budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"{what} needs {required} words but the budget is {budget}; "
            f"raise the budget to proceed"
        )


class LinearCode:
    """An [n, dim] linear code over GF(2^m), held as an RREF generator matrix."""

    def __init__(self, gf: GF, n: int, gen: np.ndarray):
        gen = np.array(gen, dtype=np.int64).reshape(-1, n)
        if gen.shape[1] != n:
            raise ValueError(f"generator shape {gen.shape} does not match length {n}")
        self.gf = gf
        self.n = n
        self.gen = gen
        gen.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.gen.shape[0]

    @property
    def pivot_columns(self) -> list[int]:
        # rows are kept in echelon form, so each pivot is the first nonzero
        return [int(np.nonzero(row)[0][0]) for row in self.gen]

    def __repr__(self) -> str:
        return f"LinearCode(q={self.gf.q}, n={self.n}, dim={self.dim})"


def row_reduce(gf: GF, rows: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over gf; returns (matrix, pivot columns).

    Zero rows are dropped.  Deterministic: pivots are chosen top-down in
    column order, so equal row spaces yield identical matrices.
    """
    m = np.array(rows, dtype=np.int64, copy=True)
    if m.ndim != 2:
        m = m.reshape(1, -1)
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        hit = np.nonzero(m[r:, col])[0]
        if hit.size == 0:
            continue
        piv = r + int(hit[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        if m[r, col] != 1:
            m[r] = gf.mul_vec(gf.inv(int(m[r, col])), m[r])
        others = np.nonzero(m[:, col])[0]
        others = others[others != r]
        if others.size:
            m[others] ^= gf.mul_outer(m[others, col], m[r])
        pivots.append(col)
        r += 1
    return m[:r], pivots


def linear_code(gf: GF, n: int, rows) -> LinearCode:
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return LinearCode(gf, n, np.zeros((0, n), dtype=np.int64))
    red, _ = row_reduce(gf, rows.reshape(-1, n))
    return LinearCode(gf, n, red)


def dual_code(c: LinearCode) -> LinearCode:
    """Dual under the Euclidean inner product, via the RREF pivot structure."""
    gf, n = c.gf, c.n
    pivots = c.pivot_columns
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    rows = np.zeros((len(free), n), dtype=np.int64)
    for r, j in enumerate(free):
        rows[r, j] = 1
        for i, p in enumerate(pivots):
            rows[r, p] = c.gen[i, j]
    return linear_code(gf, n, rows)


def cyclic_code(gf: GF, n: int, gen_poly) -> LinearCode:
    """The cyclic code of length n generated by a divisor of x^n - 1."""
    g = tuple(gen_poly)
    if not g:
        return linear_code(gf, n, np.zeros((0, n), dtype=np.int64))
    rows = np.zeros((n, n), dtype=np.int64)
    for s in range(n):
        for i, coeff in enumerate(g):
            rows[s, (s + i) % n] ^= coeff
    return linear_code(gf, n, rows)


def same_row_space(a: LinearCode, b: LinearCode) -> bool:
    if a.n != b.n or a.gf != b.gf or a.dim != b.dim:
        return False
    stacked, _ = row_reduce(a.gf, np.vstack([a.gen, b.gen]))
    return stacked.shape[0] == a.dim


def in_row_space(c: LinearCode, vec: np.ndarray) -> bool:
    v = np.array(vec, dtype=np.int64, copy=True)
    for i, p in enumerate(c.pivot_columns):
        if v[p]:
            v ^= c.gf.mul_vec(int(v[p]), c.gen[i])
    return not v.any()


def is_cyclic(c: LinearCode) -> bool:
    """Whether the code is invariant under the single-coordinate shift."""
    return all(in_row_space(c, np.roll(row, 1)) for row in c.gen)


def _pack_bitplanes(gf: GF, rows: np.ndarray) -> np.ndarray:
    """Rows of field elements -> (nrows, m, W) uint64 bit-plane words."""
    nrows, n = rows.shape
    w = (n + 63) // 64
    out = np.zeros((nrows, gf.m, w), dtype=np.uint64)
    for r in range(nrows):
        for p in range(gf.m):
            acc = 0
            for t in range(n):
                if (int(rows[r, t]) >> p) & 1:
                    acc |= 1 << t
            for wi in range(w):
                out[r, p, wi] = (acc >> (64 * wi)) & 0xFFFFFFFFFFFFFFFF
    return out


_BLOCK_BITS = 18


def enumerate_weights(c: LinearCode, max_words: int = 2**28) -> list[int]:
    """Exact weight distribution [A_0, ..., A_n] by full enumeration."""
    gf, n, dim = c.gf, c.n, c.dim
    total = gf.q**dim
    if total > max_words:
        raise BudgetExceeded(total, max_words, "weight enumeration")
    counts = np.zeros(n + 1, dtype=np.int64)
    nbits = gf.m * dim
    if nbits == 0:
        counts[0] = 1
        return [int(x) for x in counts]
    basis_rows = np.zeros((nbits, n), dtype=np.int64)
    for i in range(dim):
        for j in range(gf.m):
            basis_rows[i * gf.m + j] = gf.mul_vec(1 << j, c.gen[i])
    packed = _pack_bitplanes(gf, basis_rows)
    lo = min(nbits, _BLOCK_BITS)
    hi = nbits - lo
    w = packed.shape[2]
    table = np.zeros((1 << lo, gf.m, w), dtype=np.uint64)
    for i in range(lo):
        half = 1 << i
        table[half : 2 * half] = table[:half] ^ packed[i]
    offset = np.zeros((gf.m, w), dtype=np.uint64)
    for g in range(1 << hi):
        if g:
            # Gray-code walk: flip exactly one high basis vector per step
            offset ^= packed[lo + (g & -g).bit_length() - 1]
        block = table ^ offset
        nz = block[:, 0, :]
        for p in range(1, gf.m):
            nz = nz | block[:, p, :]
        weights = np.bitwise_count(nz).sum(axis=1).astype(np.int64)
        counts += np.bincount(weights, minlength=n + 1)
    return [int(x) for x in counts]


@lru_cache(maxsize=32)
def _krawtchouk_table(n: int, q: int) -> list[list[int]]:
    """K[j][w] = sum_s (-1)^s (q-1)^(j-s) C(w,s) C(n-w,j-s)."""
    qm1 = [1]
    for _ in range(n):
        qm1.append(qm1[-1] * (q - 1))
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        for w in range(n + 1):
            acc = 0
            for s in range(max(0, j - (n - w)), min(j, w) + 1):
                term = qm1[j - s] * comb(w, s) * comb(n - w, j - s)
                acc += -term if s & 1 else term
            table[j][w] = acc
    return table


def macwilliams(counts: list[int], n: int, dim: int, q: int) -> list[int]:
    """Weight distribution of the dual code, exactly, via the transform."""
    if len(counts) != n + 1:
        raise ValueError(f"need n+1 = {n + 1} counts, got {len(counts)}")
    if sum(counts) != q**dim:
        raise ValueError("weight counts do not sum to q^dim")
    kraw = _krawtchouk_table(n, q)
    size = q**dim
    out = []
    for j in range(n + 1):
        acc = 0
        for w, a_w in enumerate(counts):
            if a_w:
                acc += a_w * kraw[j][w]
        val, rem = divmod(acc, size)
        if rem or val < 0:
            raise AssertionError("transform produced a non-integral or negative count")
        out.append(val)
    if sum(out) != q ** (n - dim):
        raise AssertionError("transformed counts do not sum to q^(n-dim)")
    return out


def min_distance(
    c: LinearCode, max_words: int = 2**26, bound_words: int = 2**16
) -> tuple[int, bool]:
    """Minimum distance and an exactness flag.

    Enumerates the smaller of the code and its dual when it fits max_words
    (the dual side is converted back with the MacWilliams transform).  When
    neither fits, the first r rows of the dual (q^r <= bound_words) define a
    supercode whose exact distance is a certified lower bound, returned with
    False.  The separate, smaller bound budget keeps sweeps over many
    infeasible codes cheap.
    """
    gf, n, dim = c.gf, c.n, c.dim
    if dim < 1:
        raise ValueError("minimum distance needs a nonzero code")
    codim = n - dim

    def first_positive(counts: list[int]) -> int:
        for wgt in range(1, len(counts)):
            if counts[wgt]:
                return wgt
        raise AssertionError("a nonzero code has a nonzero minimum weight")

    if gf.q**min(dim, codim) <= max_words:
        if dim <= codim:
            counts = enumerate_weights(c, max_words)
        else:
            counts = macwilliams(enumerate_weights(dual_code(c), max_words), n, codim, gf.q)
        return first_positive(counts), True
    r = 0
    while gf.q ** (r + 1) <= bound_words:
        r += 1
    r = min(r, codim)
    partial = dual_code(c).gen[:r]
    sub = LinearCode(gf, n, np.array(partial, dtype=np.int64))
    counts = macwilliams(enumerate_weights(sub, bound_words), n, r, gf.q)
    return first_positive(counts), False


def format_matrix(mat: np.ndarray) -> str:
    """Plain text: one row per line, symbols as hex."""
    lines = [" ".join(format(int(v), "x") for v in row) for row in np.atleast_2d(mat)]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    rows = [
        [int(tok, 16) for tok in line.split()]
        for line in text.strip().splitlines()
        if line.strip()
    ]
    return np.array(rows, dtype=np.int64)
