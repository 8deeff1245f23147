"""The finite chain ring R = F_{2^m} + u F_{2^m} + ... + u^k F_{2^m}, u^(k+1) = 0.

A ring element is a tuple of k+1 field elements, its beta coordinates:
c = b_0 + u b_1 + ... + u^k b_k.  Vectors over R are tuples of elements.
Flattened coordinates for linear algebra are block-major: all beta_0
coordinates of a vector first, then all beta_1, and so on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import GF

RingElement = tuple
RingVector = tuple

MAX_NILPOTENCY = 8


@dataclass(frozen=True)
class ChainRing:
    """Parameters (field, k) of the chain ring; carries its arithmetic."""

    gf: GF
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or not 0 <= self.k <= MAX_NILPOTENCY:
            raise ValueError(f"k must be an int in 0..{MAX_NILPOTENCY}, got {self.k!r}")

    @property
    def num_levels(self) -> int:
        return self.k + 1

    @property
    def log2_size(self) -> int:
        return self.gf.m * (self.k + 1)

    def element(self, betas) -> RingElement:
        betas = tuple(betas)
        if len(betas) != self.k + 1:
            raise ValueError(f"element needs {self.k + 1} beta coordinates, got {len(betas)}")
        for b in betas:
            self.gf._check(b)
        return betas

    def zero(self) -> RingElement:
        return (0,) * (self.k + 1)

    def one(self) -> RingElement:
        return (1,) + (0,) * self.k

    def u(self) -> RingElement:
        if self.k == 0:
            return self.zero()
        return (0, 1) + (0,) * (self.k - 1)

    def beta(self, a: RingElement, i: int) -> int:
        if not 0 <= i <= self.k:
            raise ValueError(f"beta index must be in 0..{self.k}, got {i}")
        return self.element(a)[i]

    def add(self, a: RingElement, b: RingElement) -> RingElement:
        a, b = self.element(a), self.element(b)
        return tuple(x ^ y for x, y in zip(a, b))

    def mul(self, a: RingElement, b: RingElement) -> RingElement:
        a, b = self.element(a), self.element(b)
        out = [0] * (self.k + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j in range(self.k + 1 - i):
                if b[j]:
                    out[i + j] ^= self.gf.mul(ai, b[j])
        return tuple(out)

    def is_unit(self, a: RingElement) -> bool:
        """Units are exactly the elements with a nonzero beta_0."""
        return self.element(a)[0] != 0

    def elements(self):
        import itertools

        return itertools.product(self.gf.elements(), repeat=self.k + 1)

    def zero_vector(self, n: int) -> RingVector:
        return tuple(self.zero() for _ in range(n))

    def flatten(self, v: RingVector) -> np.ndarray:
        """Block-major field coordinates of a vector over R."""
        n = len(v)
        out = np.zeros((self.k + 1) * n, dtype=np.int64)
        for pos, el in enumerate(v):
            el = self.element(el)
            for b in range(self.k + 1):
                out[b * n + pos] = el[b]
        return out

    def unflatten(self, flat, n: int) -> RingVector:
        flat = np.asarray(flat)
        if flat.shape != ((self.k + 1) * n,):
            raise ValueError(f"expected {(self.k + 1) * n} coordinates, got {flat.shape}")
        return tuple(
            tuple(int(flat[b * n + pos]) for b in range(self.k + 1)) for pos in range(n)
        )

    def format_element(self, a: RingElement) -> str:
        return ",".join(format(b, "x") for b in self.element(a))

    def parse_element(self, text: str) -> RingElement:
        try:
            betas = tuple(int(tok, 16) for tok in text.strip().split(","))
        except ValueError:
            raise ValueError(f"cannot parse ring element from {text!r}") from None
        return self.element(betas)

    def format_vector(self, v: RingVector) -> str:
        return ";".join(self.format_element(a) for a in v)

    def parse_vector(self, text: str) -> RingVector:
        return tuple(self.parse_element(tok) for tok in text.strip().split(";"))
