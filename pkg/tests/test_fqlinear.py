"""Linear code machinery checked against brute-force codeword enumeration."""

import random

import numpy as np
import pytest

from chainq.field import gf_cache
from chainq.fqlinear import (
    BudgetExceeded,
    LinearCode,
    cyclic_code,
    dual_code,
    enumerate_weights,
    format_matrix,
    in_row_space,
    is_cyclic,
    linear_code,
    macwilliams,
    min_distance,
    parse_matrix,
    row_reduce,
    same_row_space,
)


def random_code(gf, n, max_dim, rng):
    rows = [[rng.randrange(gf.q) for _ in range(n)] for _ in range(max_dim)]
    return linear_code(gf, n, np.array(rows, dtype=np.int64))


def brute_words(c):
    """Every codeword as a numpy row, by walking all message tuples."""
    gf, dim = c.gf, c.dim
    words = np.zeros((gf.q**dim, c.n), dtype=np.int64)
    for idx in range(gf.q**dim):
        acc = np.zeros(c.n, dtype=np.int64)
        t = idx
        for i in range(dim):
            coeff = t % gf.q
            t //= gf.q
            if coeff:
                acc ^= gf.mul_vec(coeff, c.gen[i])
        words[idx] = acc
    return words


def brute_weights(c):
    counts = [0] * (c.n + 1)
    for word in brute_words(c):
        counts[int(np.count_nonzero(word))] += 1
    return counts


# ---------------------------------------------------------------------------
# reduction and duals


@pytest.mark.parametrize("m", [1, 2, 3])
def test_row_reduce_properties(m):
    gf = gf_cache(m)
    rng = random.Random(10 + m)
    for _ in range(40):
        n = rng.randrange(1, 9)
        rows = np.array(
            [[rng.randrange(gf.q) for _ in range(n)] for _ in range(rng.randrange(1, 6))],
            dtype=np.int64,
        )
        red, pivots = row_reduce(gf, rows)
        assert pivots == sorted(pivots)
        assert len(pivots) == red.shape[0]
        for i, p in enumerate(pivots):
            assert red[i, p] == 1
            assert not red[:, p][np.arange(red.shape[0]) != i].any()
            assert not red[i, :p].any()
        again, pivots2 = row_reduce(gf, red)
        assert pivots2 == pivots
        assert np.array_equal(again, red)
        # the reduced rows span the same space as the input rows
        code = LinearCode(gf, n, red)
        for row in rows:
            assert in_row_space(code, row)


def test_row_reduce_drops_zero_rows():
    gf = gf_cache(2)
    red, pivots = row_reduce(gf, np.array([[0, 0, 0], [1, 2, 3], [1, 2, 3]]))
    assert red.shape == (1, 3)
    assert pivots == [0]


@pytest.mark.parametrize("m", [1, 2])
def test_dual_code_orthogonal_and_involutive(m):
    gf = gf_cache(m)
    rng = random.Random(20 + m)
    for _ in range(30):
        n = rng.randrange(2, 10)
        c = random_code(gf, n, rng.randrange(1, n), rng)
        d = dual_code(c)
        assert c.dim + d.dim == n
        for u in c.gen:
            for v in d.gen:
                acc = 0
                for a, b in zip(u, v):
                    acc ^= gf.mul(int(a), int(b))
                assert acc == 0
        assert same_row_space(dual_code(d), c)


def test_linear_code_redundant_rows():
    gf = gf_cache(2)
    c = linear_code(gf, 4, np.array([[1, 0, 2, 3], [1, 0, 2, 3], [0, 1, 1, 1]]))
    assert c.dim == 2


def test_generator_rows_frozen():
    gf = gf_cache(1)
    c = linear_code(gf, 3, np.array([[1, 0, 1]]))
    with pytest.raises(ValueError):
        c.gen[0, 0] = 0


# ---------------------------------------------------------------------------
# weight enumeration


@pytest.mark.parametrize("m", [1, 2, 3])
def test_enumerate_weights_matches_brute(m):
    gf = gf_cache(m)
    rng = random.Random(30 + m)
    for _ in range(25):
        n = rng.randrange(2, 11)
        c = random_code(gf, n, rng.randrange(1, 6), rng)
        assert enumerate_weights(c) == brute_weights(c)


def test_enumerate_weights_zero_code():
    gf = gf_cache(2)
    c = linear_code(gf, 5, np.zeros((0, 5), dtype=np.int64))
    assert enumerate_weights(c) == [1, 0, 0, 0, 0, 0]


def test_enumerate_weights_long_block():
    # n > 64 exercises the multi-word bit-plane packing
    gf = gf_cache(1)
    n = 70
    rows = np.zeros((3, n), dtype=np.int64)
    rows[0, :] = 1
    rows[1, 0] = 1
    rows[2, 69] = 1
    counts = enumerate_weights(linear_code(gf, n, rows))
    assert counts[0] == 1 and counts[1] == 2 and counts[2] == 1
    assert counts[n] == 1 and counts[n - 1] == 2 and counts[n - 2] == 1
    assert sum(counts) == 8


def test_enumerate_weights_budget():
    gf = gf_cache(2)
    c = random_code(gf, 8, 5, random.Random(0))
    with pytest.raises(BudgetExceeded) as err:
        enumerate_weights(c, max_words=100)
    assert err.value.required == gf.q**c.dim
    assert err.value.budget == 100


def test_hamming_weight_distribution():
    gf = gf_cache(1)
    ham = cyclic_code(gf, 7, (1, 1, 0, 1))
    assert ham.dim == 4
    assert enumerate_weights(ham) == [1, 0, 0, 7, 7, 0, 0, 1]


# ---------------------------------------------------------------------------
# the MacWilliams transform: q in {2, 4}, n <= 14, dim <= 7, 200 random codes


def test_macwilliams_matches_direct_dual_enumeration():
    rng = random.Random(2026)
    checked = 0
    for trial in range(200):
        gf = gf_cache(1 if trial % 2 == 0 else 2)
        n = rng.randrange(2, 15)
        c = random_code(gf, n, rng.randrange(1, min(n, 8)), rng)
        if c.dim > 7:
            c = LinearCode(gf, n, c.gen[:7])
        got = macwilliams(enumerate_weights(c), n, c.dim, gf.q)
        want = enumerate_weights(dual_code(c))
        assert got == want, (gf.q, n, c.dim)
        checked += 1
    assert checked == 200


def test_macwilliams_hamming_to_simplex():
    gf = gf_cache(1)
    ham = cyclic_code(gf, 7, (1, 1, 0, 1))
    simplex = macwilliams(enumerate_weights(ham), 7, 4, 2)
    assert simplex == [1, 0, 0, 0, 7, 0, 0, 0]


def test_macwilliams_validation():
    with pytest.raises(ValueError):
        macwilliams([1, 0, 0], 3, 1, 2)
    with pytest.raises(ValueError):
        macwilliams([1, 0, 0, 2], 3, 1, 2)


# ---------------------------------------------------------------------------
# minimum distance


def brute_distance(c):
    counts = brute_weights(c)
    return next(w for w in range(1, c.n + 1) if counts[w])


@pytest.mark.parametrize("m", [1, 2])
def test_min_distance_exact(m):
    gf = gf_cache(m)
    rng = random.Random(40 + m)
    for _ in range(30):
        n = rng.randrange(2, 11)
        c = random_code(gf, n, rng.randrange(1, n + 1), rng)
        if c.dim == 0:
            continue
        d, exact = min_distance(c)
        assert exact
        assert d == brute_distance(c)


def test_min_distance_uses_dual_side():
    # dim > codim with a budget that only fits the dual-side enumeration
    gf = gf_cache(2)
    c = random_code(gf, 14, 10, random.Random(7))
    codim = c.n - c.dim
    assert c.dim > codim
    counts = enumerate_weights(c, max_words=4**c.dim)
    ref = next(w for w in range(1, c.n + 1) if counts[w])
    d, exact = min_distance(c, max_words=4**codim)
    assert exact
    assert d == ref


def test_min_distance_partial_is_lower_bound():
    gf = gf_cache(2)
    rng = random.Random(50)
    for _ in range(15):
        c = random_code(gf, 14, 7, rng)
        if min(c.dim, c.n - c.dim) < 4:
            continue
        true_d, _ = min_distance(c)
        d, exact = min_distance(c, max_words=1000, bound_words=256)
        assert not exact
        assert 1 <= d <= true_d


def test_min_distance_zero_code():
    gf = gf_cache(1)
    c = linear_code(gf, 4, np.zeros((0, 4), dtype=np.int64))
    with pytest.raises(ValueError):
        min_distance(c)


# ---------------------------------------------------------------------------
# cyclic codes


def test_cyclic_code_dim_and_shift():
    gf = gf_cache(2)
    # x^3 - 1 = (x + 1)(x + w)(x + w^2) over GF(4)
    c = cyclic_code(gf, 3, (1, 1))
    assert c.dim == 2
    assert is_cyclic(c)
    full = cyclic_code(gf, 5, (1,))
    assert full.dim == 5


def test_is_cyclic_false():
    gf = gf_cache(1)
    c = linear_code(gf, 4, np.array([[1, 1, 0, 0]]))
    assert not is_cyclic(c)


# ---------------------------------------------------------------------------
# matrix text round-trip


def test_format_parse_round_trip():
    mat = np.array([[0, 1, 15], [7, 2, 10]], dtype=np.int64)
    assert np.array_equal(parse_matrix(format_matrix(mat)), mat)
