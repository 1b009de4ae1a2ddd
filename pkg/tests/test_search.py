import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcdforge import artifacts, gf
from lcdforge.code import LinearCode, is_hermitian_lcd, is_lcd, min_weight
from lcdforge.matrix import MatrixGF
from lcdforge.search import (
    SearchError,
    SearchSpec,
    enumerate_candidates,
    replay_hit,
    run_search,
)
from strategies import random_even_lcd, random_lcd


def tails(spec, code, width):
    return [gf.format_vector(code.q, v[-width:]) for _, v in enumerate_candidates(spec, code)]


def test_binary_parity_enumeration():
    code = LinearCode.from_rows(2, [[1, 1, 1, 0]])
    spec = SearchSpec("toy", "extend-binary", 2, mode="exhaustive")
    assert tails(spec, code, 3) == ["000", "011", "101", "110"]
    assert all(v[0] == 0 for _, v in enumerate_candidates(spec, code))


def test_ternary_branch_enumeration():
    code = LinearCode.from_rows(3, [[1, 1, 0]])
    spec = SearchSpec("toy", "extend-ternary", 2, mode="exhaustive", a=(1, 0, 0))
    assert tails(spec, code, 2) == ["00", "01", "02", "10", "20"]
    spec = SearchSpec("toy", "extend-ternary", 2, mode="exhaustive", a=(1, 1, 2))
    assert tails(spec, code, 2) == ["01", "02", "10", "11", "12", "20", "21", "22"]


def test_unnormalized_space_covers_all_coordinates():
    code = LinearCode.from_rows(2, [[1, 1, 1]])
    spec = SearchSpec("toy", "extend-binary", 1, mode="exhaustive", normalize=False)
    assert len(list(enumerate_candidates(spec, code))) == 4


def test_printed_vector_lies_in_normalized_space():
    x = artifacts.printed_vector("C_2_29")
    seed = artifacts.load_instance("C_2_27")
    assert len(x) == seed.n and not x[: seed.k].any()
    assert x[seed.k :].any()


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_count_law_binary(r, seed):
    rng = np.random.default_rng(seed)
    code = random_lcd(rng, 2, 3, 3 + r)
    rep = run_search(SearchSpec("toy", "extend-binary", 1, mode="exhaustive"), code)
    assert rep.examined == 2**r and rep.admissible == 2 ** (r - 1)
    assert len(rep.hits) == rep.admissible  # target 1: everything hits


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_count_law_even_transform(half_m, seed):
    rng = np.random.default_rng(seed)
    m = 2 * half_m
    code = random_even_lcd(rng, 2, 2 + m)
    rep = run_search(SearchSpec("toy", "even-transform", 1, mode="exhaustive"), code)
    assert rep.examined == 2**m and rep.admissible == 2 ** (m - 1)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_hits_are_sound_and_partition(q):
    rng = np.random.default_rng(q)
    code = random_lcd(rng, q, 3, 6)
    op = {2: "extend-binary", 3: "extend-ternary", 4: "extend-quaternary"}[q]
    d0 = min_weight(code).d
    spec = SearchSpec("toy", op, d0 + 1, mode="exhaustive")
    rep = run_search(spec, code)
    assert len(rep.hits) + len(rep.undecided) + rep.misses == rep.admissible
    for h in rep.hits:
        out = replay_hit(spec, h, code)
        assert (is_hermitian_lcd(out) if q == 4 else is_lcd(out))
        assert min_weight(out).d == h.d >= spec.target_d


def test_budget_marks_undecided():
    rng = np.random.default_rng(11)
    code = random_lcd(rng, 2, 3, 7)
    rep = run_search(SearchSpec("toy", "extend-binary", 3, mode="exhaustive", budget=1), code)
    assert rep.undecided and not rep.hits
    assert len(rep.undecided) + rep.misses == rep.admissible


def test_reports_do_not_depend_on_workers(monkeypatch):
    import lcdforge.search as search

    monkeypatch.setattr(search, "SHARD", 64)
    rng = np.random.default_rng(2)
    code = random_lcd(rng, 4, 3, 8)
    texts = set()
    for workers in (1, 3):
        rep = run_search(SearchSpec("toy", "extend-quaternary", 4, mode="exhaustive", workers=workers), code)
        texts.add(rep.to_text() + rep.to_json())
    assert len(texts) == 1


def test_random_mode_is_reproducible():
    rng = np.random.default_rng(4)
    code = random_lcd(rng, 3, 3, 9)
    spec = SearchSpec("toy", "extend-ternary", 3, mode="random", count=300, rng_seed=42)
    a, b = run_search(spec, code), run_search(spec, code)
    assert a.to_text() == b.to_text() and a.examined == 300
    other = run_search(SearchSpec("toy", "extend-ternary", 3, mode="random", count=300, rng_seed=43), code)
    assert other.to_json() != a.to_json() or not a.hits
    assert '"rng_seed": 42' in a.to_json()


def test_stop_first():
    rng = np.random.default_rng(8)
    code = random_lcd(rng, 2, 3, 9)
    full = run_search(SearchSpec("toy", "extend-binary", 1, mode="exhaustive"), code)
    first = run_search(SearchSpec("toy", "extend-binary", 1, mode="exhaustive", stop="first"), code)
    assert [h.x for h in first.hits] == [full.hits[0].x]
    assert first.admissible == 1


def test_spec_validation():
    with pytest.raises(SearchError, match="rng_seed"):
        SearchSpec("s", "extend-binary", 2, mode="random", count=5)
    with pytest.raises(SearchError):
        SearchSpec("s", "rotate", 2)
    with pytest.raises(SearchError):
        SearchSpec("s", "extend-ternary", 2, a=(1, 2, 2))
    with pytest.raises(SearchError):
        SearchSpec("s", "extend-binary", 0)


def test_exhaustive_cap_and_preconditions():
    big = LinearCode(MatrixGF(4, np.eye(1, 18, dtype=np.uint8)))
    with pytest.raises(SearchError, match="random mode"):
        run_search(SearchSpec("big", "extend-quaternary", 2, mode="exhaustive"), big)
    with pytest.raises(SearchError, match="GF\\(2\\)"):
        run_search(SearchSpec("big", "extend-binary", 2), big)
    not_lcd = LinearCode.from_rows(2, [[1, 1, 0, 0]])
    with pytest.raises(SearchError, match="not LCD"):
        run_search(SearchSpec("x", "extend-binary", 2), not_lcd)
    not_std = LinearCode.from_rows(2, [[0, 1, 1, 1]])
    with pytest.raises(SearchError, match="I_k"):
        run_search(SearchSpec("x", "extend-binary", 2), not_std)
