"""Arithmetic in GF(2^m) for 1 <= m <= 16.

Field elements are plain ints in ``range(2**m)``: bit ``i`` holds the
coefficient of ``x^i`` in the polynomial basis, so ``0`` and ``1`` are the
field's zero and one.  A :class:`GF` instance carries the reduction modulus
and the exp/log tables used for multiplication, plus numpy-friendly lookup
tables for vectorised work on int64 arrays.

The module also provides trace-orthogonal ("self-dual") bases, which turn
vectors over GF(2^m) into binary vectors coordinate by coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

MAX_DEGREE = 16


def gf2x_degree(p: int) -> int:
    """Degree of a GF(2)[x] polynomial packed into an int (-1 for zero)."""
    return p.bit_length() - 1


def gf2x_mul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2x_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = gf2x_degree(b)
    q = 0
    while a and gf2x_degree(a) >= db:
        shift = gf2x_degree(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def gf2x_mod(a: int, b: int) -> int:
    return gf2x_divmod(a, b)[1]


def gf2x_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2x_mod(a, b)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    d = gf2x_degree(poly)
    if d <= 0:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if gf2x_mod(poly, g) == 0:
            return False
    return True


_DEFAULT_MODULUS_CACHE: dict[int, int] = {}


def default_modulus(m: int) -> int:
    """Smallest irreducible of degree m, coefficients read as a binary int."""
    if m not in _DEFAULT_MODULUS_CACHE:
        if not 1 <= m <= MAX_DEGREE:
            raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {m}")
        cand = 1 << m
        while not is_irreducible(cand):
            cand += 1
        _DEFAULT_MODULUS_CACHE[m] = cand
    return _DEFAULT_MODULUS_CACHE[m]


def _smallest_prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """The field GF(2^m) with table-based arithmetic.

    Parameters
    ----------
    m:
        Extension degree, 1 <= m <= 16.
    modulus:
        Optional irreducible reduction polynomial of degree m (bit-packed).
        Defaults to the smallest irreducible of that degree.
    """

    def __init__(self, m: int, modulus: int | None = None):
        if not isinstance(m, int) or not 1 <= m <= MAX_DEGREE:
            raise ValueError(f"extension degree must be an int in 1..{MAX_DEGREE}, got {m!r}")
        if modulus is None:
            modulus = default_modulus(m)
        if gf2x_degree(modulus) != m:
            raise ValueError(f"modulus {modulus:#b} does not have degree {m}")
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#b} is reducible")
        self.m = m
        self.q = 1 << m
        self.modulus = modulus
        self._build_tables()

    def _raw_mul(self, a: int, b: int) -> int:
        return gf2x_mod(gf2x_mul(a, b), self.modulus)

    def _build_tables(self) -> None:
        q = self.q
        if q == 2:
            self.generator = 1
        else:
            order = q - 1
            primes = _smallest_prime_factors(order)
            gen = None
            for g in range(2, q):
                if all(self._raw_pow(g, order // p) != 1 for p in primes):
                    gen = g
                    break
            assert gen is not None, "multiplicative group of a finite field is cyclic"
            self.generator = gen
        # exp is laid out so that index sums never need a modular reduction:
        # [0, 2q-4] holds g^i, everything above is zero so that the log
        # sentinel for 0 maps any product involving zero back to zero.
        sentinel = 2 * (q - 1) if q > 2 else 2
        exp = np.zeros(4 * max(q - 1, 1) + 4, dtype=np.int64)
        log = np.full(q, sentinel, dtype=np.int64)
        acc = 1
        for i in range(max(q - 1, 1)):
            exp[i] = acc
            if q > 2 or i == 0:
                log[acc] = i
            acc = self._raw_mul(acc, self.generator)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log
        self._sentinel = sentinel
        tr = np.zeros(q, dtype=np.int64)
        for a in range(q):
            t, x = 0, a
            for _ in range(self.m):
                t ^= x
                x = self._raw_mul(x, x)
            tr[a] = t
        self._tr = tr

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def _check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element of GF(2^{self.m})")
        return int(a)

    def add(self, a: int, b: int) -> int:
        return self._check(a) ^ self._check(b)

    def mul(self, a: int, b: int) -> int:
        a, b = self._check(a), self._check(b)
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        a = self._check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self._exp[(self.q - 1 - self._log[a]) % max(self.q - 1, 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        a = self._check(a)
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 cannot be raised to a negative power")
            return 0
        if self.q == 2:
            return 1
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def trace(self, a: int) -> int:
        """Absolute trace down to GF(2): sum of a^(2^i) for i < m."""
        return int(self._tr[self._check(a)])

    def elements(self) -> range:
        return range(self.q)

    # vectorised helpers for int64 numpy arrays of field elements

    def mul_vec(self, s: int, arr: np.ndarray) -> np.ndarray:
        """Scalar times vector, elementwise over the field."""
        s = self._check(s)
        if s == 0:
            return np.zeros_like(arr)
        if s == 1:
            return arr.copy()
        return self._exp[self._log[arr] + self._log[s]]

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._exp[self._log[a] + self._log[b]]

    def mul_outer(self, col: np.ndarray, row: np.ndarray) -> np.ndarray:
        """Outer product table: out[i, j] = col[i] * row[j]."""
        return self._exp[self._log[col][:, None] + self._log[row][None, :]]

    def inv_vec(self, arr: np.ndarray) -> np.ndarray:
        if np.any(arr == 0):
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self._exp[(self.q - 1 - self._log[arr]) % max(self.q - 1, 1)]

    def trace_vec(self, arr: np.ndarray) -> np.ndarray:
        return self._tr[arr]

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF(2^{self.m}, modulus={self.modulus:#b})"


_GF_CACHE: dict[tuple[int, int | None], GF] = {}


def gf_cache(m: int, modulus: int | None = None) -> GF:
    """Shared GF instances so repeated table builds are avoided."""
    key = (m, modulus)
    if key not in _GF_CACHE:
        _GF_CACHE[key] = GF(m, modulus)
    return _GF_CACHE[key]


@dataclass(frozen=True)
class DualBasis:
    """A basis of GF(2^m) over GF(2) with Tr(a_i * a_j) = delta_ij."""

    gf: GF
    vectors: tuple[int, ...]

    def __post_init__(self):
        gf = self.gf
        if len(self.vectors) != gf.m:
            raise ValueError(f"need {gf.m} basis vectors, got {len(self.vectors)}")
        for i, a in enumerate(self.vectors):
            for j, b in enumerate(self.vectors):
                if gf.trace(gf.mul(a, b)) != (1 if i == j else 0):
                    raise ValueError("basis is not trace-orthonormal")

    def expand(self, a: int) -> tuple[int, ...]:
        """Coordinates of a: a = sum of coords[j] * vectors[j]."""
        return tuple(self.gf.trace(self.gf.mul(a, v)) for v in self.vectors)


def _gf2_nullspace(rows: list[int], width: int) -> list[int]:
    """Nullspace basis of a GF(2) matrix whose rows are bit-masks."""
    pivots: dict[int, int] = {}
    reduced: list[int] = []
    for r in rows:
        for c, rr in zip(list(pivots), reduced):
            if (r >> c) & 1:
                r ^= rr
        if r:
            c = gf2x_degree(r)
            # normalise earlier rows against the new pivot
            for i, rr in enumerate(reduced):
                if (rr >> c) & 1:
                    reduced[i] = rr ^ r
            pivots[c] = len(reduced)
            reduced.append(r)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        v = 1 << fc
        for c, idx in pivots.items():
            if (reduced[idx] >> fc) & 1:
                v |= 1 << c
        basis.append(v)
    return basis


def _trace_complement(gf: GF, fixed: list[int]) -> list[int]:
    """Basis of the trace-orthogonal complement of span(fixed)."""
    rows = []
    for w in fixed:
        mask = 0
        for i in range(gf.m):
            if gf.trace(gf.mul(1 << i, w)):
                mask |= 1 << i
        rows.append(mask)
    return _gf2_nullspace(rows, gf.m)


def _combos(vectors: list[int]):
    """Nonzero XOR combinations in increasing selector order."""
    for mask in range(1, 1 << len(vectors)):
        v = 0
        mm = mask
        idx = 0
        while mm:
            if mm & 1:
                v ^= vectors[idx]
            mm >>= 1
            idx += 1
        yield v


def _exhaustive_self_dual(gf: GF) -> tuple[int, ...] | None:
    """First trace-orthonormal basis in lexicographic order (small m only)."""
    import itertools

    for combo in itertools.combinations(range(1, gf.q), gf.m):
        ok = True
        for i, a in enumerate(combo):
            for j, b in enumerate(combo):
                if gf.trace(gf.mul(a, b)) != (1 if i == j else 0):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(combo)
    return None


def self_dual_basis(gf: GF) -> DualBasis:
    """Deterministic trace-orthonormal basis of GF(2^m) over GF(2).

    Greedy orthonormalisation against the trace form.  When the remaining
    complement is totally isotropic on its diagonal, a hyperbolic pair is
    banked and later repaired with one previously found orthonormal vector
    (replacing {a, e, f} by {a+e, a+f, a+e+f}).
    """
    chosen: list[int] = []
    pairs: list[tuple[int, int]] = []
    while len(chosen) + 2 * len(pairs) < gf.m:
        fixed = chosen + [v for pr in pairs for v in pr]
        comp = _trace_complement(gf, fixed)
        v1 = next((v for v in _combos(comp) if gf.trace(gf.mul(v, v)) == 1), None)
        if v1 is not None:
            chosen.append(v1)
            continue
        e = comp[0]
        f = next(v for v in _combos(comp) if gf.trace(gf.mul(e, v)) == 1)
        pairs.append((e, f))
    while pairs:
        if not chosen:
            fallback = _exhaustive_self_dual(gf) if gf.m <= 4 else None
            assert fallback is not None, "trace form of GF(2^m) always admits an orthonormal basis"
            return DualBasis(gf, fallback)
        a = chosen.pop()
        e, f = pairs.pop()
        chosen.extend([a ^ e, a ^ f, a ^ e ^ f])
    return DualBasis(gf, tuple(chosen))
