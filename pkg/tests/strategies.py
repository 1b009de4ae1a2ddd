"""Random codes for property tests (numpy RNG helpers + hypothesis strategies)."""

import numpy as np
from hypothesis import strategies as st

from lcdforge.code import LinearCode, is_even, is_hermitian_lcd, is_lcd
from lcdforge.matrix import MatrixGF, rank


def random_full_rank(rng, q, k, n):
    while True:
        g = rng.integers(0, q, size=(k, n), dtype=np.uint8)
        if rank(MatrixGF(q, g)) == k:
            return g


def random_code(rng, q, k, n):
    return LinearCode(MatrixGF(q, random_full_rank(rng, q, k, n)))


def random_lcd(rng, q, k, n, hermitian=None, tries=10_000):
    """Random ``[I_k | A]`` code that is LCD (Hermitian LCD over GF(4) by default)."""
    herm = (q == 4) if hermitian is None else hermitian
    for _ in range(tries):
        a = rng.integers(0, q, size=(k, n - k), dtype=np.uint8)
        c = LinearCode(MatrixGF(q, np.hstack([np.eye(k, dtype=np.uint8), a])))
        if (is_hermitian_lcd(c) if herm else is_lcd(c)):
            return c
    raise RuntimeError(f"no LCD [{n},{k}] code over GF({q}) found")


def random_even_lcd(rng, k, n, tries=10_000):
    """Binary even LCD ``[I_k | A]``: every row of A has odd weight (k must be even)."""
    for _ in range(tries):
        a = rng.integers(0, 2, size=(k, n - k), dtype=np.uint8)
        odd = a.sum(axis=1) % 2 == 0
        a[odd, 0] ^= 1
        c = LinearCode(MatrixGF(2, np.hstack([np.eye(k, dtype=np.uint8), a])))
        if is_lcd(c):
            assert is_even(c)
            return c
    raise RuntimeError("no even LCD code found")


def random_admissible_x(rng, q, n, a=(1, 0, 0)):
    while True:
        x = rng.integers(0, q, size=n, dtype=np.uint8)
        w = int(np.count_nonzero(x))
        if q == 3:
            if (a == (1, 0, 0) and w % 3 != 2) or (a == (1, 1, 2) and w % 3 != 0):
                return x
        elif w % 2 == 0:
            return x


fields = st.sampled_from([2, 3, 4])


@st.composite
def codes(draw, q=None, max_n=12, max_k=6):
    q = draw(fields) if q is None else q
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, min(max_k, n)))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_code(np.random.default_rng(seed), q, k, n)
