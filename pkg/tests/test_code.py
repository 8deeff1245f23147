"""Cyclic codes over the chain ring, audited against a full-space oracle.

For small (n, m, k) the annihilator of the code under the Euclidean form is
computed from first principles by scanning every vector in R^n.  That gives
ground truth for the dual code and for dual containment, independent of the
library's span and membership machinery.
"""

import itertools

import numpy as np
import pytest

from chainq.chainring import ChainRing
from chainq.code import (
    CyclicCodeR,
    SlotAssignment,
    code_from_descriptor,
    descriptor,
    dual_slot,
)
from chainq.field import gf_cache
from chainq.fqlinear import BudgetExceeded
from chainq.polyring import factor_xn_minus_1
from chainq.polyring import degree as poly_degree
from chainq.polyring import mul as poly_mul
from chainq.polyring import xn_minus_one
from chainq.search import assignment_count, index_to_slots


def make_code(n, m, k, slots):
    gf = gf_cache(m)
    ring = ChainRing(gf, k)
    fac = factor_xn_minus_1(n, gf)
    return CyclicCodeR(ring, SlotAssignment(fac, k, tuple(slots)))


def all_codes(n, m, k):
    gf = gf_cache(m)
    ring = ChainRing(gf, k)
    fac = factor_xn_minus_1(n, gf)
    for index in range(assignment_count(len(fac.factors), k)):
        slots = index_to_slots(index, len(fac.factors), k)
        yield CyclicCodeR(ring, SlotAssignment(fac, k, slots))


def inner(ring, v, w):
    acc = ring.zero()
    for a, b in zip(v, w):
        acc = ring.add(acc, ring.mul(a, b))
    return acc


def annihilator(code):
    """Every vector of R^n orthogonal to the code, by exhaustive scan.

    The code is an ideal, so its R-module generators are the polynomial
    generators together with all their cyclic shifts.
    """
    ring, n = code.ring, code.n
    gens = [g[-s:] + g[:-s] for g in code.generators() for s in range(n)]
    out = set()
    for betas in itertools.product(ring.elements(), repeat=n):
        if all(inner(ring, betas, g) == ring.zero() for g in gens):
            out.add(betas)
    return out


# ---------------------------------------------------------------------------
# ground truth: dual code and dual containment on exhaustively scanned spaces


@pytest.mark.parametrize("n,m,k", [(3, 1, 1), (5, 1, 1), (3, 2, 1), (3, 1, 2)])
def test_dual_is_the_annihilator(n, m, k):
    for code in all_codes(n, m, k):
        ann = annihilator(code)
        dual_words = set(code.dual().enumerate_words())
        assert dual_words == ann
        assert len(ann) == 2**code.log2_dual_size


@pytest.mark.parametrize("n,m,k", [(3, 1, 1), (5, 1, 1), (3, 2, 1)])
def test_certificate_exact_for_k_le_1(n, m, k):
    for code in all_codes(n, m, k):
        truth = annihilator(code) <= set(code.enumerate_words())
        assert code.is_dual_containing()[0] == truth
        assert code.contains_dual() == truth


def test_certificate_overclaims_for_k_2():
    mismatches = []
    for code in all_codes(3, 1, 2):
        truth = annihilator(code) <= set(code.enumerate_words())
        assert code.contains_dual() == truth
        cert = code.is_dual_containing()[0]
        if cert != truth:
            assert cert and not truth, "the certificate only ever overclaims"
            mismatches.append(code.assignment.slots)
    assert len(mismatches) == 5


def test_certificate_agrees_on_larger_k_1_length():
    for code in all_codes(7, 1, 1):
        assert code.is_dual_containing()[0] == code.contains_dual()


# ---------------------------------------------------------------------------
# structure


def test_dual_slot_transform():
    assert dual_slot(0, 2) == 1
    assert dual_slot(1, 2) == 0
    assert dual_slot(2, 2) == 3
    assert dual_slot(3, 2) == 2
    for k in range(4):
        for s in range(k + 2):
            assert 0 <= dual_slot(s, k) <= k + 1
            assert dual_slot(dual_slot(s, k), k) == s


def test_dual_of_dual_is_identity():
    for code in all_codes(7, 1, 1):
        back = code.dual().dual()
        assert back.assignment.slots == code.assignment.slots
    for code in all_codes(3, 1, 2):
        assert code.dual().dual().assignment.slots == code.assignment.slots


def test_size_formula_and_dual_size():
    for code in all_codes(7, 1, 1):
        m, k, n = code.gf.m, code.k, code.n
        assert code.log2_size + code.log2_dual_size == m * (k + 1) * n
        assert code.dual().log2_size == code.log2_dual_size
        want = m * sum(
            (k + 1 - i) * max(poly_degree(code.f(i + 1)), 0) for i in range(k + 1)
        )
        assert code.log2_size == want


def test_slot_products_multiply_to_xn_minus_one():
    code = make_code(7, 1, 1, (0, 1, 2))
    prod = (1,)
    for j in range(code.k + 2):
        prod = poly_mul(code.gf, prod, code.f(j))
    assert prod == xn_minus_one(7)
    for j in range(1, code.k + 2):
        assert poly_mul(code.gf, code.fhat(j), code.f(j)) == xn_minus_one(7)


def test_type_vector():
    # n=7 over GF(2): factors x+1, and two cubics
    code = make_code(7, 1, 1, (2, 1, 1))
    assert code.type_vector == (6, 1)
    assert code.log2_size == 2 * 6 + 1


def test_generators_and_membership():
    code = make_code(7, 1, 1, (0, 1, 2))
    words = set(code.enumerate_words())
    assert len(words) == 2**code.log2_size
    for g in code.generators():
        assert g in words
        assert code.contains(g)
        shifted = (g[-1],) + g[:-1]
        assert code.contains(shifted)
    not_member = code.ring.zero_vector(7)
    not_member = (code.ring.one(),) + not_member[1:]
    if not_member not in words:
        assert not code.contains(not_member)


def test_enumerate_words_budget():
    code = make_code(7, 1, 1, (1, 1, 1))
    with pytest.raises(BudgetExceeded):
        list(code.enumerate_words(max_words=4))


# ---------------------------------------------------------------------------
# slot assignment validation and descriptors


def test_slot_assignment_validation():
    gf = gf_cache(1)
    fac = factor_xn_minus_1(7, gf)
    with pytest.raises(ValueError):
        SlotAssignment(fac, 1, (0, 1))
    with pytest.raises(ValueError):
        SlotAssignment(fac, 1, (0, 1, 3))
    with pytest.raises(ValueError):
        SlotAssignment.from_slot_map(fac, 1, {0: 0, 1: 1})
    with pytest.raises(ValueError):
        SlotAssignment.from_slot_map(fac, 1, {0: 0, 1: 1, 3: 1, 5: 1})


def test_ring_and_assignment_must_agree():
    gf = gf_cache(1)
    fac = factor_xn_minus_1(7, gf)
    with pytest.raises(ValueError):
        CyclicCodeR(ChainRing(gf, 2), SlotAssignment(fac, 1, (0, 1, 2)))
    with pytest.raises(ValueError):
        CyclicCodeR(ChainRing(gf_cache(2), 1), SlotAssignment(fac, 1, (0, 1, 2)))


def test_descriptor_round_trip():
    code = make_code(7, 1, 1, (2, 1, 0))
    desc = descriptor(code)
    back = code_from_descriptor(desc)
    assert back.assignment.slots == code.assignment.slots
    assert back.n == 7 and back.gf.m == 1 and back.k == 1


def test_descriptor_validation():
    code = make_code(7, 1, 1, (2, 1, 0))
    desc = descriptor(code)
    broken = dict(desc)
    del broken["modulus"]
    with pytest.raises(ValueError):
        code_from_descriptor(broken)
    broken = dict(desc, schema_version=99)
    with pytest.raises(ValueError):
        code_from_descriptor(broken)
    broken = dict(desc, slots=desc["slots"] + [desc["slots"][0]])
    with pytest.raises(ValueError):
        code_from_descriptor(broken)
    broken = dict(desc, slots=[{"coset_rep": "x", "slot_index": 0}])
    with pytest.raises(ValueError):
        code_from_descriptor(broken)


def test_basis_is_frozen():
    code = make_code(7, 1, 1, (0, 1, 2))
    basis = code.basis()
    with pytest.raises(ValueError):
        basis[0, 0] = 5
