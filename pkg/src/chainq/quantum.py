"""CSS quantum codes from dual-containing classical codes.

A classical [n, t, d]_q code containing its Euclidean dual yields a quantum
[[n, 2t - n, d]]_q code whose X and Z stabilizers are both read off the dual.
Two constructions start from a cyclic code C over the chain ring:

  I.  the Gray image of C, a q-ary code of length (k+1)n;
  II. the binary expansion of the Gray image through a trace-orthonormal
      basis, of length (k+1)mn, whose distance is at least the Gray distance.

Both constructions gate on the divisibility certificate for dual containment.
The certificate is exact for k <= 1 but can overclaim when k >= 2, so the
stabilizer assembly re-verifies commutation directly and refuses to emit
matrices that do not commute; report code paths should compare the
certificate with exact membership and surface any divergence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import DualBasis
from .fqlinear import LinearCode, dual_code, in_row_space, min_distance
from .gray import gray_image_code
from .tracemap import expand_code


class NotDualContaining(ValueError):
    """The classical code does not contain its dual; no CSS code exists."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class QuantumParams:
    """Parameters [[n, l, d]]_q with a Singleton-bound summary.

    d_exact False means d is a certified lower bound on the true distance.
    """

    q: int
    n: int
    l: int
    d: int
    d_exact: bool
    singleton_slack: int
    mds: bool

    def __post_init__(self):
        if self.singleton_slack != self.n - 2 * self.d + 2 - self.l:
            raise ValueError("singleton_slack is inconsistent with n, l, d")
        if self.mds != (self.singleton_slack == 0):
            raise ValueError("mds must hold exactly when the slack is zero")

    def __str__(self) -> str:
        rel = "" if self.d_exact else ">="
        return f"[[{self.n}, {self.l}, {rel}{self.d}]]_{self.q}"


def quantum_params(q: int, n: int, l: int, d: int, d_exact: bool) -> QuantumParams:
    slack = n - 2 * d + 2 - l
    return QuantumParams(q, n, l, d, d_exact, slack, slack == 0)


def css(c: LinearCode, d: int, d_exact: bool, certified: bool = False) -> QuantumParams:
    """CSS parameters from a dual-containing [n, t] code with distance d.

    With certified=False the containment C^perp <= C is checked directly on
    the generator matrices before the parameters are emitted.
    """
    if not certified:
        dual = dual_code(c)
        for row in dual.gen:
            if not in_row_space(c, row):
                raise NotDualContaining(
                    "dual generator outside the code; CSS needs C^perp <= C",
                    witness=row.copy(),
                )
    l = 2 * c.dim - c.n
    if l < 0:
        raise NotDualContaining(
            f"dimension {c.dim} is below n/2 = {c.n / 2}; the dual cannot fit inside"
        )
    return quantum_params(c.gf.q, c.n, l, d, d_exact)


def stabilizer_matrices(c: LinearCode) -> tuple[np.ndarray, np.ndarray]:
    """X and Z stabilizer generator matrices (both equal to a dual basis).

    Raises NotDualContaining when the rows fail to commute, which happens
    exactly when an upstream containment certificate was wrong.
    """
    gf = c.gf
    h = dual_code(c).gen
    prod = np.zeros((h.shape[0], h.shape[0]), dtype=np.int64)
    for i in range(h.shape[0]):
        for j in range(h.shape[0]):
            acc = 0
            for t in range(h.shape[1]):
                acc ^= gf.mul(int(h[i, t]), int(h[j, t]))
            prod[i, j] = acc
    if prod.any():
        raise NotDualContaining(
            "stabilizers do not commute: H H^T != 0, so C^perp is not inside C",
            witness=prod,
        )
    return h.copy(), h.copy()


def construction_i(
    code, max_words: int = 2**26, bound_words: int = 2**16
) -> tuple[QuantumParams, LinearCode]:
    """Quantum code over F_q from the Gray image of a chain-ring cyclic code.

    Gates on the divisibility certificate, which the published construction
    treats as proof of dual containment.  The certificate is exact for
    k <= 1 but can overclaim for k >= 2; callers that need a hard guarantee
    should also check code.contains_dual() or build stabilizer_matrices,
    which re-verifies commutation.
    """
    ok, witness = code.is_dual_containing()
    if not ok:
        raise NotDualContaining(
            "divisibility certificate fails; remainder is the witness",
            witness=witness,
        )
    image = gray_image_code(code)
    d, exact = min_distance(image, max_words, bound_words)
    params = css(image, d, exact, certified=True)
    return params, image


def construction_ii(
    code,
    basis: DualBasis,
    max_words: int = 2**26,
    bound_words: int = 2**16,
    gray_distance: int | None = None,
) -> tuple[QuantumParams, LinearCode]:
    """Binary quantum code from the trace expansion of the Gray image.

    The binary distance is at least the Gray-image distance, so any certified
    lower bound on the latter (its exact value included) is also a certified
    lower bound on the former.  Pass one as ``gray_distance`` to avoid
    recomputing; it is computed here if omitted and needed.
    """
    ok, witness = code.is_dual_containing()
    if not ok:
        raise NotDualContaining(
            "divisibility certificate fails; remainder is the witness",
            witness=witness,
        )
    image = gray_image_code(code)
    binary = expand_code(image, basis)
    d, exact = min_distance(binary, max_words, bound_words)
    if not exact:
        if gray_distance is None:
            gray_distance, _ = min_distance(image, max_words, bound_words)
        if gray_distance > d:
            d = gray_distance
    params = css(binary, d, exact, certified=True)
    return params, binary
