"""Polynomials over GF(2^m) and the factorisation of x^n - 1 for odd n.

A polynomial is a trimmed tuple of field elements in ascending degree order;
the empty tuple is zero.  Coefficient addition is XOR in every field we use
(characteristic two, polynomial basis), so sums never need a field object.

Factorisation of x^n - 1 works through the splitting field GF(q^s) with
s = ord_n(q): one irreducible factor per q-cyclotomic coset mod n, obtained
as the product of (x - zeta^j) over the coset and projected back to the base
field.  Splitting fields beyond the table limit use direct bit-packed
arithmetic.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from pathlib import Path

from .field import (
    GF,
    MAX_DEGREE,
    _smallest_prime_factors,
    default_modulus,
    gf2x_gcd,
    gf2x_mod,
    gf2x_mul,
    gf_cache,
)

Poly = tuple

SCHEMA_VERSION = 1

# splitting fields are handled with plain int arithmetic up to this degree
MAX_SPLITTING_DEGREE = 64


def trim(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    """Degree of a trimmed polynomial; zero has degree -1."""
    return len(p) - 1


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return trim(out)


def scale(gf, p: Poly, s: int) -> Poly:
    if s == 0:
        return ()
    return trim(gf.mul(c, s) for c in p)


def mul(gf, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] ^= gf.mul(ai, bj)
    return trim(out)


def divmod_poly(gf, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = degree(b)
    inv_lead = gf.inv(b[-1])
    q = [0] * max(len(a) - db, 1)
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        shift = len(r) - 1 - db
        factor = gf.mul(r[-1], inv_lead)
        q[shift] = factor
        for i, bc in enumerate(b):
            if bc:
                r[shift + i] ^= gf.mul(factor, bc)
    return trim(q), trim(r)


def mod_poly(gf, a: Poly, b: Poly) -> Poly:
    return divmod_poly(gf, a, b)[1]


def divides(gf, a: Poly, b: Poly) -> bool:
    """True when a divides b (units ignored)."""
    if not a:
        return not b
    return not mod_poly(gf, b, a)


def monic(gf, p: Poly) -> Poly:
    if not p:
        return ()
    if p[-1] == 1:
        return p
    return scale(gf, p, gf.inv(p[-1]))


def gcd_poly(gf, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, mod_poly(gf, a, b)
    return monic(gf, a)


def eval_poly(gf, p: Poly, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = gf.mul(acc, x) ^ c
    return acc


def xn_minus_one(n: int) -> Poly:
    """x^n - 1, which is x^n + 1 in characteristic two."""
    if n < 1:
        raise ValueError(f"length must be positive, got {n}")
    return (1,) + (0,) * (n - 1) + (1,)


def reciprocal(gf, p: Poly, make_monic: bool = False) -> Poly:
    """x^deg(p) * p(1/x): the coefficient list reversed."""
    if not p:
        raise ValueError("the zero polynomial has no reciprocal")
    r = trim(reversed(p))
    return monic(gf, r) if make_monic else r


def is_self_reciprocal(gf, p: Poly) -> tuple[bool, int | None]:
    """Whether p equals a unit multiple of its reciprocal; returns the unit."""
    r = reciprocal(gf, p)
    if degree(r) != degree(p):
        return False, None
    unit = gf.mul(p[-1], gf.inv(r[-1]))
    if scale(gf, r, unit) == p:
        return True, unit
    return False, None


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    a %= n
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible mod {n}")
    t, x = 1, a
    while x != 1:
        x = x * a % n
        t += 1
    return t


def cyclotomic_cosets(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    """q-cyclotomic cosets mod n, sorted by minimal representative."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"length must be odd and positive, got {n}")
    if gcd(n, q) != 1:
        raise ValueError(f"q={q} must be invertible mod n={n}")
    seen = [False] * n
    out = []
    for j in range(n):
        if seen[j]:
            continue
        orbit = []
        x = j
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = x * q % n
        out.append(tuple(sorted(orbit)))
    return tuple(out)


def _rabin_irreducible(f: int, d: int) -> bool:
    """x^(2^d) = x mod f plus coprimality at proper-divisor checkpoints."""
    checkpoints = {d // p for p in _smallest_prime_factors(d)}
    h = 2
    for e in range(1, d + 1):
        h = gf2x_mod(gf2x_mul(h, h), f)
        if e in checkpoints and gf2x_gcd(h ^ 2, f) != 1:
            return False
    return h == 2


def _irreducible_gf2(d: int) -> int:
    """Smallest irreducible of degree d over GF(2), any d."""
    if d <= MAX_DEGREE:
        return default_modulus(d)
    cand = (1 << d) | 1
    while not _rabin_irreducible(cand, d):
        cand += 2
    return cand


class _SplitField:
    """GF(2^d) in polynomial basis without lookup tables.

    Internal helper for splitting fields beyond the table limit; exposes just
    enough arithmetic to build and project cyclotomic factors.
    """

    def __init__(self, d: int):
        self.m = d
        self.q = 1 << d
        self.modulus = _irreducible_gf2(d)

    def mul(self, a: int, b: int) -> int:
        return gf2x_mod(gf2x_mul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.pow(a, self.q - 2)


_SPLIT_CACHE: dict[int, _SplitField] = {}


def _split_field(d: int) -> _SplitField:
    if d not in _SPLIT_CACHE:
        _SPLIT_CACHE[d] = _SplitField(d)
    return _SPLIT_CACHE[d]


def _poly_mul_over(arith, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] ^= arith.mul(ai, bj)
    return out


def _element_of_order(big, order: int, group_order: int) -> int:
    """Deterministic element of exact multiplicative order in a big field."""
    if order == 1:
        return 1
    primes = _smallest_prime_factors(order)
    a = 2
    while True:
        z = big.pow(a, group_order // order)
        if z != 1 and all(big.pow(z, order // p) != 1 for p in primes):
            return z
        a += 1


@dataclass(frozen=True)
class Factorization:
    """Monic irreducible factors of x^n - 1 over gf, one per cyclotomic coset."""

    gf: GF
    n: int
    factors: tuple[Poly, ...]
    cosets: tuple[tuple[int, ...], ...]

    @property
    def coset_reps(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cosets)

    @cached_property
    def _member_index(self) -> dict[int, int]:
        out = {}
        for i, coset in enumerate(self.cosets):
            for j in coset:
                out[j] = i
        return out

    def reciprocal_partner(self, i: int) -> int:
        """Index of the factor whose roots are the inverses of factor i's."""
        rep = self.cosets[i][0]
        return self._member_index[(self.n - rep) % self.n]

    def index_of_rep(self, rep: int) -> int:
        return self._member_index[rep % self.n]


@dataclass(frozen=True)
class ReciprocalClassification:
    """Partition of factor indices into self-reciprocal ones and partner pairs."""

    self_reciprocal: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]


def classify_reciprocals(fac: Factorization) -> ReciprocalClassification:
    selfs, pairs = [], []
    for i in range(len(fac.factors)):
        j = fac.reciprocal_partner(i)
        if j == i:
            selfs.append(i)
        elif i < j:
            pairs.append((i, j))
    return ReciprocalClassification(tuple(selfs), tuple(pairs))


def _verify_factorization(gf: GF, n: int, factors, cosets) -> None:
    prod: Poly = (1,)
    for f, coset in zip(factors, cosets):
        if degree(f) != len(coset) or f[-1] != 1:
            raise AssertionError("factor degree or normalisation mismatch")
        prod = mul(gf, prod, f)
    if prod != xn_minus_one(n):
        raise AssertionError("factor product does not reproduce x^n - 1")


class FactorCache:
    """JSON-backed store of factorisations keyed by (n, m, modulus bits)."""

    def __init__(self, path):
        self.path = Path(path)
        self._data: dict[str, dict] = {}
        if self.path.exists():
            try:
                raw = json.loads(self.path.read_text())
                if isinstance(raw, dict) and isinstance(raw.get("entries"), dict):
                    self._data = raw["entries"]
            except (OSError, json.JSONDecodeError):
                self._data = {}

    @staticmethod
    def _key(n: int, gf: GF) -> str:
        return f"{n}|{gf.m}|{gf.modulus:b}"

    def get(self, n: int, gf: GF) -> Factorization | None:
        entry = self._data.get(self._key(n, gf))
        if entry is None:
            return None
        try:
            factors = tuple(tuple(int(c) for c in f) for f in entry["factors"])
            cosets = tuple(tuple(int(j) for j in c) for c in entry["cosets"])
            _verify_factorization(gf, n, factors, cosets)
        except (KeyError, TypeError, AssertionError, ValueError):
            return None
        return Factorization(gf, n, factors, cosets)

    def put(self, fac: Factorization) -> None:
        self._data[self._key(fac.n, fac.gf)] = {
            "n": fac.n,
            "m": fac.gf.m,
            "modulus": format(fac.gf.modulus, "b"),
            "cosets": [list(c) for c in fac.cosets],
            "factors": [list(f) for f in fac.factors],
        }
        payload = {"schema_version": SCHEMA_VERSION, "entries": self._data}
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp.write_text(json.dumps(payload, indent=1, sort_keys=True))
        os.replace(tmp, self.path)


_MEMO: dict[tuple[int, int, int], Factorization] = {}


def _splitting_context(gf: GF, n: int):
    """Arithmetic, zeta of order n, and a projection big -> base field."""
    s = multiplicative_order(gf.q, n)
    d = gf.m * s
    if d > MAX_SPLITTING_DEGREE:
        raise ValueError(
            f"splitting field GF(2^{d}) for n={n}, m={gf.m} exceeds the supported degree "
            f"{MAX_SPLITTING_DEGREE}"
        )
    if s == 1:
        zeta = gf.pow(gf.generator, (gf.q - 1) // n)
        proj = {a: a for a in range(gf.q)}
        return gf, zeta, proj
    big = gf_cache(d) if d <= MAX_DEGREE else _split_field(d)
    if isinstance(big, GF):
        zeta = big.pow(big.generator, (big.q - 1) // n)
        delta = big.pow(big.generator, (big.q - 1) // (gf.q - 1)) if gf.q > 2 else 1
    else:
        zeta = _element_of_order(big, n, big.q - 1)
        delta = _element_of_order(big, gf.q - 1, big.q - 1)
    # locate the base field inside the big one: the smallest root of the base
    # modulus among subfield elements defines the canonical embedding
    subfield = [0, 1]
    acc = delta
    while acc != 1:
        subfield.append(acc)
        acc = big.mul(acc, delta)
    mod_bits = [(gf.modulus >> i) & 1 for i in range(gf.m + 1)]
    roots = []
    for cand in subfield:
        val = 0
        for bit in reversed(mod_bits):
            val = big.mul(val, cand) ^ bit
        if val == 0:
            roots.append(cand)
    assert len(roots) == gf.m, "base modulus must split in the splitting field"
    r = min(roots)
    r_pow = [1]
    for _ in range(gf.m - 1):
        r_pow.append(big.mul(r_pow[-1], r))
    proj: dict[int, int] = {}
    for a in range(gf.q):
        img = 0
        for i in range(gf.m):
            if (a >> i) & 1:
                img ^= r_pow[i]
        proj[img] = a
    assert len(proj) == gf.q, "embedding must be injective"
    return big, zeta, proj


def factor_xn_minus_1(n: int, gf: GF, cache: FactorCache | None = None) -> Factorization:
    """Factor x^n - 1 over gf into monic irreducibles, one per coset."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"length must be odd and positive, got {n}")
    memo_key = (n, gf.m, gf.modulus)
    if memo_key in _MEMO:
        return _MEMO[memo_key]
    if cache is not None:
        hit = cache.get(n, gf)
        if hit is not None:
            _MEMO[memo_key] = hit
            return hit
    cosets = cyclotomic_cosets(n, gf.q)
    if n == 1:
        fac = Factorization(gf, 1, ((1, 1),), cosets)
    else:
        big, zeta, proj = _splitting_context(gf, n)
        zpow = [1]
        for _ in range(n - 1):
            zpow.append(big.mul(zpow[-1], zeta))
        factors = []
        for coset in cosets:
            poly = [1]
            for j in coset:
                poly = _poly_mul_over(big, poly, [zpow[j], 1])
            try:
                factors.append(tuple(proj[c] for c in poly))
            except KeyError:
                raise AssertionError("factor coefficients left the base field") from None
        fac = Factorization(gf, n, tuple(factors), cosets)
    _verify_factorization(gf, n, fac.factors, fac.cosets)
    for i, f in enumerate(fac.factors):
        if reciprocal(gf, f, make_monic=True) != fac.factors[fac.reciprocal_partner(i)]:
            raise AssertionError("reciprocal factors must pair up by opposite cosets")
    _MEMO[memo_key] = fac
    if cache is not None:
        cache.put(fac)
    return fac
