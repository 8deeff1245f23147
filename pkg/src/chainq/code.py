"""Cyclic codes over R = F_{2^m}[u]/(u^(k+1)) of odd length n.

A code is specified by a slot assignment: every monic irreducible factor of
x^n - 1 goes to exactly one slot in 0..k+1.  With f_j the product of slot-j
factors (so f_0 f_1 ... f_{k+1} = x^n - 1) the code is

    C = < fhat_1, u fhat_2, ..., u^k fhat_{k+1} >,   fhat_j = (x^n - 1)/f_j,

with |C| = 2^(m * sum_{i=0}^{k} (k+1-i) deg f_{i+1}) and dual

    C^perp = < fhat_0^*, u fhat_{k+1}^*, u^2 fhat_k^*, ..., u^k fhat_2^* >.

Two dual-containment checks are provided.  ``is_dual_containing`` evaluates
the published divisibility certificate: with r_i the product of the
non-self-reciprocal factors of f_i whose reciprocal does not also divide f_i,
the certificate holds iff f_0 r_2 ... r_{k+1} divides f_1^*.  This agrees
with true containment whenever k <= 1.  ``contains_dual`` checks membership
of every dual generator directly and is exact for all k; reports should
surface a divergence between the two rather than hide it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polyring as pr
from .chainring import ChainRing, RingVector
from .fqlinear import BudgetExceeded, row_reduce
from .polyring import Factorization, Poly


def dual_slot(slot: int, k: int) -> int:
    """Slot of a factor's reciprocal partner in the dual code."""
    if slot == 0:
        return 1
    if slot == 1:
        return 0
    return k + 3 - slot


@dataclass(frozen=True)
class SlotAssignment:
    """One slot in 0..k+1 for every irreducible factor of x^n - 1."""

    fac: Factorization
    k: int
    slots: tuple[int, ...]

    def __post_init__(self):
        if len(self.slots) != len(self.fac.factors):
            raise ValueError(
                f"need one slot per factor: {len(self.fac.factors)} factors, "
                f"{len(self.slots)} slots"
            )
        for s in self.slots:
            if not 0 <= s <= self.k + 1:
                raise ValueError(f"slot {s} out of range 0..{self.k + 1}")

    def slot_product(self, j: int) -> Poly:
        """f_j: product of the factors assigned to slot j."""
        out: Poly = (1,)
        for f, s in zip(self.fac.factors, self.slots):
            if s == j:
                out = pr.mul(self.fac.gf, out, f)
        return out

    def slot_map(self) -> dict[int, int]:
        return {rep: s for rep, s in zip(self.fac.coset_reps, self.slots)}

    @staticmethod
    def from_slot_map(fac: Factorization, k: int, mapping: dict[int, int]) -> "SlotAssignment":
        reps = fac.coset_reps
        missing = set(reps) - set(mapping)
        extra = set(mapping) - set(reps)
        if missing or extra:
            raise ValueError(
                f"slot map must cover the coset representatives exactly; "
                f"missing {sorted(missing)}, unknown {sorted(extra)}"
            )
        return SlotAssignment(fac, k, tuple(mapping[rep] for rep in reps))


class CyclicCodeR:
    """A cyclic code over the chain ring, realised as an F-span for linear algebra."""

    def __init__(self, ring: ChainRing, assignment: SlotAssignment):
        if ring.gf != assignment.fac.gf:
            raise ValueError("ring and factorisation are over different fields")
        if ring.k != assignment.k:
            raise ValueError(f"assignment is for k={assignment.k}, ring has k={ring.k}")
        self.ring = ring
        self.assignment = assignment
        self.n = assignment.fac.n
        self._basis: np.ndarray | None = None

    @property
    def gf(self):
        return self.ring.gf

    @property
    def k(self) -> int:
        return self.ring.k

    def f(self, j: int) -> Poly:
        if not 0 <= j <= self.k + 1:
            raise ValueError(f"slot index {j} out of range 0..{self.k + 1}")
        return self.assignment.slot_product(j)

    def fhat(self, j: int) -> Poly:
        quo, rem = pr.divmod_poly(self.gf, pr.xn_minus_one(self.n), self.f(j))
        assert not rem, "slot products always divide x^n - 1"
        return quo

    @property
    def type_vector(self) -> tuple[int, ...]:
        return tuple(max(pr.degree(self.f(i + 1)), 0) for i in range(self.k + 1))

    @property
    def log2_size(self) -> int:
        m, k = self.gf.m, self.k
        return m * sum((k + 1 - i) * l for i, l in enumerate(self.type_vector))

    @property
    def log2_dual_size(self) -> int:
        return self.gf.m * (self.k + 1) * self.n - self.log2_size

    def _poly_vector(self, p: Poly, level: int) -> RingVector:
        """p(x) * u^level reduced mod x^n - 1, as a vector over R."""
        betas = [[0] * (self.k + 1) for _ in range(self.n)]
        for i, c in enumerate(p):
            betas[i % self.n][level] ^= c
        return tuple(tuple(e) for e in betas)

    def generators(self) -> list[RingVector]:
        """u^(j-1) fhat_j for j = 1..k+1, reduced mod x^n - 1."""
        return [self._poly_vector(self.fhat(j), j - 1) for j in range(1, self.k + 2)]

    def basis(self) -> np.ndarray:
        """RREF basis of the code as an F-subspace in block-major coordinates."""
        if self._basis is None:
            n, k, gf = self.n, self.k, self.gf
            rows = []
            for j in range(1, k + 2):
                fh = self.fhat(j)
                vec = np.zeros(n, dtype=np.int64)
                for i, c in enumerate(fh):
                    vec[i % n] ^= c
                if not vec.any():
                    continue
                for b in range(j - 1, k + 1):
                    for s in range(n):
                        row = np.zeros((k + 1) * n, dtype=np.int64)
                        row[b * n : (b + 1) * n] = np.roll(vec, s)
                        rows.append(row)
            if rows:
                reduced, _ = row_reduce(gf, np.array(rows))
            else:
                reduced = np.zeros((0, (k + 1) * n), dtype=np.int64)
            assert reduced.shape[0] * gf.m == self.log2_size, (
                "F-rank must match the size formula"
            )
            reduced.flags.writeable = False
            self._basis = reduced
        return self._basis

    def contains(self, v) -> bool:
        """Membership of a vector over R (or its flat block-major form)."""
        if isinstance(v, tuple):
            flat = self.ring.flatten(v)
        else:
            flat = np.array(v, dtype=np.int64, copy=True)
        basis = self.basis()
        for row in basis:
            p = int(np.nonzero(row)[0][0])
            if flat[p]:
                flat ^= self.gf.mul_vec(int(flat[p]), row)
        return not flat.any()

    def enumerate_words(self, max_words: int = 2**24):
        """Yield every codeword as a vector over R, in message order."""
        basis = self.basis()
        rank = basis.shape[0]
        total = self.gf.q**rank
        if total > max_words:
            raise BudgetExceeded(total, max_words, "codeword enumeration")
        import itertools

        for msg in itertools.product(range(self.gf.q), repeat=rank):
            flat = np.zeros((self.k + 1) * self.n, dtype=np.int64)
            for coeff, row in zip(msg, basis):
                if coeff:
                    flat ^= self.gf.mul_vec(coeff, row)
            yield self.ring.unflatten(flat, self.n)

    def dual(self) -> "CyclicCodeR":
        """The Euclidean dual, as a slot assignment on the same factor list.

        Generator orthogonality against the original code is verified.
        """
        fac = self.assignment.fac
        new_slots = [0] * len(fac.factors)
        for i, s in enumerate(self.assignment.slots):
            new_slots[fac.reciprocal_partner(i)] = dual_slot(s, self.k)
        out = CyclicCodeR(self.ring, SlotAssignment(fac, self.k, tuple(new_slots)))
        ring = self.ring
        for g in self.generators():
            for h in out.generators():
                acc = ring.zero()
                for a, b in zip(g, h):
                    acc = ring.add(acc, ring.mul(a, b))
                assert acc == ring.zero(), "dual generators must be orthogonal"
        return out

    def r_polynomials(self) -> tuple[Poly, ...]:
        """r_i for i = 2..k+1: non-self-reciprocal factors of f_i not paired in f_i."""
        fac = self.assignment.fac
        slots = self.assignment.slots
        out = []
        for i in range(2, self.k + 2):
            r: Poly = (1,)
            for idx, (f, s) in enumerate(zip(fac.factors, slots)):
                if s != i:
                    continue
                partner = fac.reciprocal_partner(idx)
                if partner != idx and slots[partner] != i:
                    r = pr.mul(self.gf, r, f)
            out.append(r)
        return tuple(out)

    def is_dual_containing(self) -> tuple[bool, Poly]:
        """The divisibility certificate: f_0 r_2 ... r_{k+1} | f_1^*.

        Returns (True, quotient) or (False, remainder).  Exact for k <= 1;
        for k >= 2 compare with :meth:`contains_dual`.
        """
        gf = self.gf
        lhs = self.f(0)
        for r in self.r_polynomials():
            lhs = pr.mul(gf, lhs, r)
        lhs = pr.monic(gf, lhs)
        rhs = pr.reciprocal(gf, self.f(1), make_monic=True)
        if pr.degree(lhs) > pr.degree(rhs):
            return False, rhs
        quo, rem = pr.divmod_poly(gf, rhs, lhs)
        if rem:
            return False, rem
        return True, quo

    def contains_dual(self) -> bool:
        """Exact check: every generator of the dual lies in the code."""
        return all(self.contains(g) for g in self.dual().generators())


def build_code(ring: ChainRing, assignment: SlotAssignment) -> CyclicCodeR:
    return CyclicCodeR(ring, assignment)


DESCRIPTOR_SCHEMA_VERSION = 1


def descriptor(code: CyclicCodeR) -> dict:
    """JSON-ready description of a code: ring, length, and slot map."""
    fac = code.assignment.fac
    return {
        "schema_version": DESCRIPTOR_SCHEMA_VERSION,
        "n": code.n,
        "m": code.gf.m,
        "k": code.k,
        "modulus": code.gf.modulus,
        "slots": [
            {"coset_rep": rep, "slot_index": s}
            for rep, s in zip(fac.coset_reps, code.assignment.slots)
        ],
    }


def code_from_descriptor(desc: dict, cache=None) -> CyclicCodeR:
    """Rebuild a code from its descriptor; validates every field."""
    from .field import gf_cache
    from .polyring import factor_xn_minus_1

    try:
        version = desc["schema_version"]
        n, m, k = int(desc["n"]), int(desc["m"]), int(desc["k"])
        modulus = int(desc["modulus"])
        slot_entries = desc["slots"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed descriptor: {exc}") from exc
    if version != DESCRIPTOR_SCHEMA_VERSION:
        raise ValueError(f"unsupported descriptor schema_version {version}")
    gf = gf_cache(m, modulus)
    fac = factor_xn_minus_1(n, gf, cache)
    mapping = {}
    for entry in slot_entries:
        rep, s = int(entry["coset_rep"]), int(entry["slot_index"])
        if rep in mapping:
            raise ValueError(f"duplicate coset representative {rep} in descriptor")
        mapping[rep] = s
    assignment = SlotAssignment.from_slot_map(fac, k, mapping)
    return CyclicCodeR(ChainRing(gf, k), assignment)
