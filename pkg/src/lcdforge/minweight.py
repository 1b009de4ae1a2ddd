"""Exact minimum-weight engines.

Three independent engines compute the same number:

``EXHAUSTIVE``
    Walks all ``q**k`` codewords. The low message coordinates are expanded
    into a packed table once; the high coordinates follow a q-ary modular
    Gray code, so each outer step adds one pre-scaled generator row to the
    whole table.
``SUPPORT``
    Works on a parity-check matrix ``H``: the minimum weight is the least
    ``w`` such that some ``w`` columns of ``H`` are dependent (at most
    ``n - k + 1``). Per weight it either grows supports one column at a time
    with the first coefficient fixed to 1 and closes them by a sorted lookup
    of the negated partial syndrome, or rank-tests every ``w``-subset of
    columns in batches, whichever is cheaper.
``BZ``
    Brouwer-Zimmermann style: enumerate low-weight messages over a sequence
    of (possibly overlapping) information sets and stop once the coverage
    lower bound reaches the best weight seen.

Every engine charges elementary steps against a :class:`Budget` and raises
:class:`Undecided` when it runs out.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from lcdforge import packed
from lcdforge.gf import ADD, INV, MUL, NEG
from lcdforge.matrix import kernel, MatrixGF, rref_codes

DEFAULT_BUDGET = 10**8

EXHAUSTIVE_LIMIT = 2**26
SUPPORT_LIMIT = 2**28
_TABLE_BITS = 15


class WeightMethod(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    SUPPORT = "support"
    BZ = "bz"
    AUTO = "auto"


class Undecided(RuntimeError):
    """The work budget ran out before the answer was certain."""

    def __init__(self, method, work, limit):
        super().__init__(f"{method.value}: budget of {limit} steps exhausted after {work}")
        self.method = method
        self.work = work
        self.limit = limit


@dataclass
class Budget:
    limit: int | None = DEFAULT_BUDGET
    used: int = 0
    method: WeightMethod = WeightMethod.AUTO

    def charge(self, steps: int):
        self.used += int(steps)
        if self.limit is not None and self.used > self.limit:
            raise Undecided(self.method, self.used, self.limit)


@dataclass(frozen=True)
class MinWeightResult:
    d: int
    witness: np.ndarray = field(repr=False)
    method: WeightMethod
    work: int


@dataclass
class _Outcome:
    best: int
    witness: np.ndarray | None
    lower: float  # proven: no nonzero codeword of weight < lower was missed


def _track(q, n, batch, weights, best):
    """Return (weight, dense vector) of the lightest nonzero entry if it beats *best*."""
    w = np.where(weights > 0, weights, n + 1)
    i = int(np.argmin(w))
    if w[i] < best[0]:
        best[0] = int(w[i])
        best[1] = packed.unpack(q, batch[i], n)
    return best


# -- exhaustive ---------------------------------------------------------------


def _exhaustive(q, gen, budget, target):
    k, n = gen.shape
    rows = packed.scaled_rows(q, gen)
    k1 = min(k, max(1, int(_TABLE_BITS / math.log2(q))))
    planes, words = packed.n_planes(q), packed.n_words(n)
    table = np.zeros((1, planes, words), dtype=np.uint64)
    for i in range(k1):
        table = np.concatenate([packed.add(q, table, rows[i, c][None]) for c in range(q)])
    best = [n + 1, None]
    m = k - k1
    # delta[i][a]: change when digit i moves from element code a to a + 1 (mod q)
    deltas = []
    for i in range(k1, k):
        per = []
        for a in range(q):
            b = (a + 1) % q
            step = ADD[q][b, NEG[q][a]]
            per.append(rows[i, step])
        deltas.append(per)
    digits = [0] * m
    offset = np.zeros((planes, words), dtype=np.uint64)
    for step in range(q**m):
        if step:
            j, s = 0, step
            while s % q == 0:
                s //= q
                j += 1
            offset = packed.add(q, offset[None], deltas[j][digits[j]][None])[0]
            digits[j] = (digits[j] + 1) % q
        budget.charge(len(table))
        batch = packed.add(q, table, offset[None])
        _track(q, n, batch, packed.weight(q, batch), best)
        if target is not None and best[0] < target:
            return _Outcome(best[0], best[1], 0)
    return _Outcome(best[0], best[1], best[0])


# -- support enumeration --------------------------------------------------------


def _syndrome_keys(q, cols):
    """Encode column vectors (shape (N, r)) as int64 keys with additive structure."""
    r = cols.shape[1]
    pw = 1 << np.arange(r, dtype=np.int64)
    if q == 2:
        return (cols.astype(np.int64) * pw).sum(axis=1)
    if q == 4:
        lo = (cols & 1).astype(np.int64)
        hi = (cols >> 1).astype(np.int64)
        return (lo * pw).sum(axis=1) | ((hi * pw).sum(axis=1) << r)
    ones = (cols == 1).astype(np.int64)
    twos = (cols == 2).astype(np.int64)
    return (ones * pw).sum(axis=1) | ((twos * pw).sum(axis=1) << r)


def _key_add(q, r, a, b):
    if q != 3:
        return a ^ b
    mask = (1 << r) - 1
    a1, a2 = a & mask, (a >> r) & mask
    b1, b2 = b & mask, (b >> r) & mask
    a0 = ~(a1 | a2) & mask
    b0 = ~(b1 | b2) & mask
    s1 = (a1 & b0) | (a0 & b1) | (a2 & b2)
    s2 = (a2 & b0) | (a0 & b2) | (a1 & b1)
    return s1 | (s2 << r)


def _key_neg(q, r, a):
    if q != 3:
        return a
    mask = (1 << r) - 1
    return ((a & mask) << r) | ((a >> r) & mask)


def support_supported(q, n, k):
    """Whether syndromes fit the int64 keys of the lookup path."""
    r = n - k
    return (r if q == 2 else 2 * r) <= 62


def _combinations(n, w, chunk=1 << 16):
    it = itertools.combinations(range(n), w)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.intp).reshape(len(block), w)


def _batch_rank(q, m):
    """Ranks of a stack of ``(B, r, w)`` matrices by simultaneous elimination."""
    m = m.copy()
    bsz, r, w = m.shape
    rank = np.zeros(bsz, dtype=np.intp)
    rows = np.arange(r)[None, :]
    everyone = np.arange(bsz)
    for col in range(w):
        cand = (m[:, :, col] != 0) & (rows >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = everyone[has]
        piv = cand[b].argmax(axis=1)
        dst = rank[b]
        top = m[b, piv].copy()
        m[b, piv] = m[b, dst]
        top = MUL[q][INV[q][top[:, col]][:, None], top]
        m[b, dst] = top
        factor = m[b, :, col].copy()
        factor[np.arange(len(b)), dst] = 0
        m[b] = ADD[q][m[b], NEG[q][MUL[q][factor[:, :, None], top[:, None, :]]]]
        rank[b] += 1
    return rank


def _dependency(q, h, cols):
    """Coefficients of a full-support dependency among columns *cols* of *h*."""
    v = kernel(MatrixGF(q, h[:, cols])).data[0]
    out = np.zeros(h.shape[1], dtype=np.uint8)
    out[cols] = v
    return out


def _rank_level(q, h, w, budget):
    for combos in _combinations(h.shape[1], w):
        budget.charge(len(combos) * w)
        sub = np.transpose(h[:, combos], (1, 0, 2))  # B x r x w
        low = np.flatnonzero(_batch_rank(q, sub) < w)
        if len(low):
            return _dependency(q, h, combos[low[0]])
    return None


def _support(q, gen, budget, target):
    k, n = gen.shape
    r = n - k
    if r == 0:
        v = np.zeros(n, dtype=np.uint8)
        v[0] = 1
        return _Outcome(1, v, 1)
    h = kernel(MatrixGF(q, gen)).data  # r x n
    lookup = _SyndromeLookup(q, h) if support_supported(q, n, k) else None
    # any r + 1 columns of H are dependent, so d <= r + 1
    limit = r + 1 if target is None else min(r + 1, target - 1)
    for w in range(1, limit + 1):
        by_lookup = math.comb(n, w - 1) * (q - 1) ** max(w - 2, 0)
        by_rank = math.comb(n, w) * w
        if lookup is not None and by_lookup <= by_rank:
            v = lookup.level(w, budget)
        else:
            v = _rank_level(q, h, w, budget)
        if v is not None:
            return _Outcome(w, v, w)
    return _Outcome(n + 1, None, target)


class _SyndromeLookup:
    """Grow supports one column at a time, close them by a sorted key lookup."""

    def __init__(self, q, h):
        self.q = q
        self.r, self.n = h.shape
        scaled = MUL[q][np.arange(q)[:, None, None], h.T[None, :, :]]  # q x n x r
        self.col_keys = np.stack([_syndrome_keys(q, scaled[c]) for c in range(q)], axis=1)
        keys = self.col_keys[:, 1:].reshape(-1)
        idx = np.repeat(np.arange(self.n), q - 1)
        coef = np.tile(np.arange(1, q), self.n)
        order = np.lexsort((idx, keys))
        keys, idx, coef = keys[order], idx[order], coef[order]
        # per distinct key keep the entry with the largest column index
        last = np.r_[keys[1:] != keys[:-1], True]
        self.ukeys, self.umax, self.ucoef = keys[last], idx[last], coef[last]

    def _probe(self, S, L):
        neg = _key_neg(self.q, self.r, S)
        pos = np.searchsorted(self.ukeys, neg)
        pos_c = np.minimum(pos, len(self.ukeys) - 1)
        ok = (pos < len(self.ukeys)) & (self.ukeys[pos_c] == neg) & (self.umax[pos_c] > L)
        return ok, pos_c

    def level(self, w, budget):
        q, r, n, col_keys = self.q, self.r, self.n, self.col_keys
        if w == 1:
            starts = [(np.zeros(1, np.int64), np.full(1, -1), np.zeros((1, 0), np.int16), np.zeros((1, 0), np.uint8))]
        else:
            starts = (
                (np.array([col_keys[i, 1]]), np.array([i]), np.array([[i]], np.int16), np.array([[1]], np.uint8))
                for i in range(n)
            )
        for S, L, I, C in starts:
            for _ in range(max(0, w - 2)):
                parts = []
                for j in range(n):
                    m = L < j
                    if not m.any():
                        continue
                    cnt = int(m.sum())
                    for c in range(1, q):
                        parts.append((
                            _key_add(q, r, S[m], col_keys[j, c]),
                            np.full(cnt, j),
                            np.hstack([I[m], np.full((cnt, 1), j, np.int16)]),
                            np.hstack([C[m], np.full((cnt, 1), c, np.uint8)]),
                        ))
                if not parts:
                    S = np.zeros(0, np.int64)
                    break
                S, L, I, C = (np.concatenate(z) for z in zip(*parts))
                budget.charge(len(S))
            if len(S) == 0:
                continue
            budget.charge(len(S))
            ok, pos = self._probe(S, L)
            if ok.any():
                t = int(np.flatnonzero(ok)[0])
                v = np.zeros(n, dtype=np.uint8)
                v[I[t].astype(int)] = C[t]
                v[self.umax[pos[t]]] = self.ucoef[pos[t]]
                return v
        return None


# -- Brouwer-Zimmermann -------------------------------------------------------------


def information_sets(q, gen):
    """Systematic generators over information sets chosen to spread coverage.

    Columns are offered to elimination least-covered first, so consecutive
    sets are as disjoint as the matroid allows. Generation stops once every
    column has been covered and excluded at least once, or when a new set
    adds nothing.
    """
    k, n = gen.shape
    mult = np.zeros(n, dtype=np.int64)
    excluded = np.zeros(n, dtype=bool)
    sets = []
    while len(sets) < n:
        order = np.lexsort((np.arange(n), mult))
        red, piv = rref_codes(q, gen[:, order])
        pivots = order[piv]
        inv = np.empty(n, dtype=np.int64)
        inv[order] = np.arange(n)
        sys_gen = red[:, inv]
        before = ((mult > 0).sum(), excluded.sum())
        mult[pivots] += 1
        ex = np.ones(n, dtype=bool)
        ex[pivots] = False
        excluded |= ex
        sets.append((np.array(pivots), sys_gen))
        if (mult > 0).all() and excluded.all():
            break
        if ((mult > 0).sum(), excluded.sum()) == before:
            break
    return sets, mult


def _coverage_bound(mult, done, k):
    """Least weight a codeword can have if it was missed by every enumeration so far."""
    if any(w >= k for w in done):
        return math.inf
    need = sum(w + 1 for w in done)
    cum = np.cumsum(np.sort(mult)[::-1])
    if need > cum[-1]:
        return math.inf
    return max(int(np.searchsorted(cum, need)) + 1, max(w + 1 for w in done))


def _bz(q, gen, budget, target):
    k, n = gen.shape
    sets, mult = information_sets(q, gen)
    rows = [packed.scaled_rows(q, sg) for _, sg in sets]
    done = [0] * len(sets)
    best = [n + 1, None]
    lower = _coverage_bound(mult, done, k)
    for w in range(1, k + 1):
        for j, (piv, sg) in enumerate(sets):
            R = rows[j]
            for first in range(k):
                batch = R[first, 1][None]
                last = np.array([first])
                for _ in range(w - 1):
                    parts, lasts = [], []
                    for t in range(first + 1, k):
                        m = last < t
                        if not m.any():
                            continue
                        for c in range(1, q):
                            parts.append(packed.add(q, batch[m], R[t, c][None]))
                            lasts.append(np.full(int(m.sum()), t))
                    if not parts:
                        batch = batch[:0]
                        break
                    batch = np.concatenate(parts)
                    last = np.concatenate(lasts)
                if len(batch) == 0:
                    continue
                budget.charge(len(batch))
                _track(q, n, batch, packed.weight(q, batch), best)
                if target is not None and best[0] < target:
                    return _Outcome(best[0], best[1], 0)
            done[j] = w
            lower = _coverage_bound(mult, done, k)
            if best[0] <= lower:
                return _Outcome(best[0], best[1], lower)
            if target is not None and lower >= target:
                return _Outcome(best[0], best[1], lower)
    return _Outcome(best[0], best[1], math.inf)


# -- selection ----------------------------------------------------------------------------


def support_cost(q, n, dmax):
    return sum(math.comb(n, w) * (q - 1) ** (w - 1) for w in range(1, dmax + 1))


def sample_upper_bound(q, gen, samples=None, seed=0):
    """Lightest weight among the generator rows and ``10 k`` random codewords."""
    k, n = gen.shape
    samples = 10 * k if samples is None else samples
    rng = np.random.default_rng(seed)
    msgs = rng.integers(0, q, size=(samples, k), dtype=np.uint8)
    from lcdforge.matrix import matmul_codes

    words = np.vstack([gen, matmul_codes(q, msgs, gen)])
    wts = np.count_nonzero(words, axis=1)
    wts = np.where(wts > 0, wts, n + 1)
    i = int(np.argmin(wts))
    return int(wts[i]), words[i]


def choose_method(q, gen, target=None):
    k, n = gen.shape
    if q**k <= EXHAUSTIVE_LIMIT:
        return WeightMethod.EXHAUSTIVE
    ub, _ = sample_upper_bound(q, gen)
    dmax = ub if target is None else min(ub, target - 1)
    if support_supported(q, n, k) and support_cost(q, n, dmax) <= SUPPORT_LIMIT:
        return WeightMethod.SUPPORT
    return WeightMethod.BZ


_ENGINES = {
    WeightMethod.EXHAUSTIVE: _exhaustive,
    WeightMethod.SUPPORT: _support,
    WeightMethod.BZ: _bz,
}


def _resolve(q, gen, method, target):
    method = WeightMethod(method)
    if method is WeightMethod.AUTO:
        method = choose_method(q, gen, target)
    return method


def min_weight_gen(q, gen, method=WeightMethod.AUTO, budget=DEFAULT_BUDGET) -> MinWeightResult:
    """Exact minimum weight of the row space of *gen* (full-rank ``uint8`` codes)."""
    gen = np.asarray(gen, dtype=np.uint8)
    method = _resolve(q, gen, method, None)
    b = Budget(budget, method=method)
    out = _ENGINES[method](q, gen, b, None)
    return MinWeightResult(out.best, out.witness, method, b.used)


def min_weight_at_least_gen(q, gen, d, method=WeightMethod.AUTO, budget=DEFAULT_BUDGET):
    """``(verdict, MinWeightResult | None)``; the result carries a violating witness when false."""
    if d < 1:
        raise ValueError("bound must be >= 1")
    gen = np.asarray(gen, dtype=np.uint8)
    if d == 1:
        return True, None
    method = WeightMethod(method)
    if method is WeightMethod.AUTO:
        ub, word = sample_upper_bound(q, gen)
        if ub < d:
            return False, MinWeightResult(ub, word.astype(np.uint8), WeightMethod.AUTO, 0)
    method = _resolve(q, gen, method, d)
    b = Budget(budget, method=method)
    out = _ENGINES[method](q, gen, b, d)
    if out.best < d:
        return False, MinWeightResult(out.best, out.witness, method, b.used)
    return True, None
