"""Sweeps over extension / transform vectors.

Candidates are indexed; exhaustive mode walks the (optionally zero-prefixed)
vector space in lexicographic order, random mode draws ``count`` vectors from
a seeded generator. Work is split into contiguous index shards and results
are merged back in index order, so a report does not depend on the number of
workers.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from lcdforge import gf
from lcdforge.code import LinearCode, is_even, is_hermitian_lcd, is_lcd, min_weight
from lcdforge.construct import (
    TERNARY_HEADERS,
    ConstructionError,
    ConstructionRecord,
    even_transform,
    extend_binary,
    extend_quaternary,
    extend_ternary,
)
from lcdforge.matrix import MatrixGF, is_standard_form
from lcdforge.minweight import DEFAULT_BUDGET, Undecided, min_weight_at_least_gen

OPERATIONS = ("extend-binary", "extend-ternary", "extend-quaternary", "even-transform")
MODES = ("exhaustive", "random", "auto")
EXHAUSTIVE_CAP = 2**32
AUTO_EXHAUSTIVE_LIMIT = 2**24
AUTO_RANDOM_COUNT = 2**16
SHARD = 2048


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    seed: str
    operation: str
    target_d: int
    mode: str = "auto"
    a: tuple = (1, 0, 0)
    count: int | None = None
    rng_seed: int | None = None
    normalize: bool = True
    stop: str = "all"
    budget: int = DEFAULT_BUDGET
    workers: int = 1

    def __post_init__(self):
        if self.operation not in OPERATIONS:
            raise SearchError(f"unknown operation {self.operation!r}; choose from {', '.join(OPERATIONS)}")
        if self.mode not in MODES:
            raise SearchError(f"unknown mode {self.mode!r}")
        if self.stop not in ("first", "all"):
            raise SearchError("stop must be 'first' or 'all'")
        if self.mode == "random" and (self.rng_seed is None or self.count is None):
            raise SearchError("random mode needs both count and rng_seed")
        if self.target_d < 1:
            raise SearchError("target_d must be >= 1")
        if self.operation == "extend-ternary" and tuple(self.a) not in TERNARY_HEADERS:
            raise SearchError(f"a must be one of {TERNARY_HEADERS}")
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))


_FIELD = {"extend-binary": 2, "extend-ternary": 3, "extend-quaternary": 4, "even-transform": 2}


@dataclass(frozen=True)
class Space:
    """Where candidate vectors live: ``free`` digits after ``prefix`` fixed zeros."""

    q: int
    prefix: int
    free: int

    @property
    def length(self):
        return self.prefix + self.free

    @property
    def size(self):
        return self.q**self.free

    def vectors(self, start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.zeros((len(idx), self.length), dtype=np.uint8)
        for j in range(self.free - 1, -1, -1):
            out[:, self.prefix + j] = idx % self.q
            idx //= self.q
        return out


def candidate_space(spec: SearchSpec, code: LinearCode) -> Space:
    q = _FIELD[spec.operation]
    if code.q != q:
        raise SearchError(f"{spec.operation} needs a GF({q}) seed, got GF({code.q})")
    if spec.operation == "even-transform":
        return Space(q, 0, code.n - code.k)
    if spec.normalize:
        if not is_standard_form(code.gen):
            raise SearchError("zero-prefix normalization needs a seed of the form [I_k | A]")
        return Space(q, code.k, code.n - code.k)
    return Space(q, 0, code.n)


def admissible(spec: SearchSpec, vectors: np.ndarray) -> np.ndarray:
    wt = np.count_nonzero(vectors, axis=1)
    if spec.operation == "extend-ternary":
        bad = 2 if spec.a == (1, 0, 0) else 0
        return wt % 3 != bad
    return wt % 2 == 0


def check_seed(spec: SearchSpec, code: LinearCode):
    op = spec.operation
    if op == "extend-quaternary":
        if not is_hermitian_lcd(code):
            raise SearchError("seed is not Hermitian LCD")
    elif not is_lcd(code):
        raise SearchError("seed is not LCD")
    if op == "even-transform":
        if not is_standard_form(code.gen):
            raise SearchError("even-transform needs a seed of the form [I_k | A]")
        if (code.n - code.k) % 2:
            raise SearchError(f"n - k = {code.n - code.k} is odd")
        if not is_even(code):
            raise SearchError("seed is not even")


class _Planned:
    """Materialized candidate list (random mode) or implicit range (exhaustive)."""

    def __init__(self, space: Space, mode: str, total: int, drawn: np.ndarray | None = None):
        self.space = space
        self.mode = mode
        self.total = total
        self.drawn = drawn

    def vectors(self, start, stop):
        if self.drawn is not None:
            return self.drawn[start:stop]
        return self.space.vectors(start, stop)


def plan(spec: SearchSpec, code: LinearCode) -> _Planned:
    space = candidate_space(spec, code)
    mode = spec.mode
    if mode == "auto":
        mode = "exhaustive" if space.size <= AUTO_EXHAUSTIVE_LIMIT else "random"
    if mode == "exhaustive":
        if space.size > EXHAUSTIVE_CAP:
            raise SearchError(
                f"exhaustive search over {space.q}^{space.free} vectors exceeds 2^32; use random mode"
            )
        return _Planned(space, mode, space.size)
    count = spec.count if spec.count is not None else AUTO_RANDOM_COUNT
    rng = np.random.default_rng(spec.rng_seed if spec.rng_seed is not None else 0)
    tail = rng.integers(0, space.q, size=(count, space.free), dtype=np.uint8)
    drawn = np.zeros((count, space.length), dtype=np.uint8)
    drawn[:, space.prefix :] = tail
    return _Planned(space, mode, count, drawn)


def enumerate_candidates(spec: SearchSpec, code: LinearCode | None = None):
    """Yield ``(index, vector)`` for admissible candidates in order."""
    code = resolve_seed(spec.seed) if code is None else code
    p = plan(spec, code)
    for start in range(0, p.total, SHARD):
        block = p.vectors(start, min(start + SHARD, p.total))
        ok = admissible(spec, block)
        for off in np.flatnonzero(ok):
            yield start + int(off), block[off]


def build(spec: SearchSpec, code: LinearCode, x) -> LinearCode:
    op = spec.operation
    if op == "extend-binary":
        return extend_binary(code, x)
    if op == "extend-ternary":
        return extend_ternary(code, x, spec.a)
    if op == "extend-quaternary":
        return extend_quaternary(code, x)
    return even_transform(code, x)


def record_for(spec: SearchSpec, x) -> ConstructionRecord:
    params = {"x": np.asarray(x, dtype=np.uint8)}
    if spec.operation == "extend-ternary":
        params["a"] = spec.a
    return ConstructionRecord(spec.operation, spec.seed, params)


def resolve_seed(seed) -> LinearCode:
    if isinstance(seed, LinearCode):
        return seed
    from lcdforge import artifacts

    if os.path.exists(str(seed)):
        return LinearCode.read(seed, os.path.basename(str(seed)))
    return artifacts.load_instance(seed)


# -- workers ----------------------------------------------------------------------------


def _shard(args):
    spec, q, gen, start, block = args
    stop = start + len(block)
    code = LinearCode(MatrixGF(q, gen), spec.seed)
    ok = admissible(spec, block)
    out = []
    for off in np.flatnonzero(ok):
        x = block[off]
        try:
            new = build(spec, code, x)
            verdict, _ = min_weight_at_least_gen(new.q, new.gen.data, spec.target_d, budget=spec.budget)
        except Undecided:
            out.append((start + int(off), "undecided", None))
            continue
        if verdict:
            try:
                d = min_weight(new, budget=spec.budget).d
            except Undecided:
                d = None
            out.append((start + int(off), "hit", (new.n, new.k, d)))
    return start, stop, int(ok.sum()), out


@dataclass
class Hit:
    index: int
    x: str
    n: int
    k: int
    d: int | None


@dataclass
class SearchReport:
    spec: SearchSpec
    mode: str
    space: Space
    examined: int
    admissible: int
    hits: list[Hit] = field(default_factory=list)
    undecided: list[tuple[int, str]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def misses(self) -> int:
        return self.admissible - len(self.hits) - len(self.undecided)

    def to_text(self) -> str:
        """Field-per-line document; excludes wall-clock so equal specs give equal bytes."""
        s = self.spec
        rows = [
            ("seed", s.seed),
            ("operation", s.operation),
            ("a", ",".join(map(str, s.a)) if s.operation == "extend-ternary" else "-"),
            ("target_d", s.target_d),
            ("mode", self.mode),
            ("normalize", str(s.normalize).lower()),
            ("space", f"{self.space.q}^{self.space.free} (prefix {self.space.prefix})"),
            ("count", "-" if self.mode == "exhaustive" else self.examined),
            ("rng_seed", "-" if self.mode == "exhaustive" else (s.rng_seed if s.rng_seed is not None else 0)),
            ("stop", s.stop),
            ("budget", s.budget),
            ("examined", self.examined),
            ("admissible", self.admissible),
            ("hits", len(self.hits)),
            ("undecided", len(self.undecided)),
            ("misses", self.misses),
        ]
        lines = [f"{k}: {v}" for k, v in rows]
        for h in self.hits:
            d = "?" if h.d is None else h.d
            lines.append(f"hit: index={h.index} x={h.x} n={h.n} k={h.k} d={d}")
        for i, x in self.undecided:
            lines.append(f"undecided: index={i} x={x}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rng = None if self.mode == "exhaustive" else (self.spec.rng_seed if self.spec.rng_seed is not None else 0)
        doc = {
            "examined": self.examined,
            "admissible": self.admissible,
            "hits": [{"x": h.x, "n": h.n, "k": h.k, "d": h.d} for h in self.hits],
            "rng_seed": rng,
        }
        return json.dumps(doc, indent=2) + "\n"


def run_search(spec: SearchSpec, code: LinearCode | None = None) -> SearchReport:
    t0 = time.perf_counter()
    code = resolve_seed(spec.seed) if code is None else code
    check_seed(spec, code)
    planned = plan(spec, code)
    q = planned.space.q
    jobs = [
        (spec, code.q, code.gen.data, start, planned.vectors(start, min(start + SHARD, planned.total)))
        for start in range(0, planned.total, SHARD)
    ]
    report = SearchReport(spec, planned.mode, planned.space, 0, 0)

    def absorb(result):
        start, stop, n_ok, out = result
        first = next((i for i, status, _ in out if status == "hit"), None)
        if spec.stop == "first" and first is not None:
            # truncate at the first hit so counts do not depend on shard timing
            block = planned.vectors(start, first + 1)
            report.examined += first + 1 - start
            report.admissible += int(admissible(spec, block).sum())
            out = [o for o in out if o[0] <= first]
        else:
            report.examined += stop - start
            report.admissible += n_ok
        for i, status, params in out:
            x = gf.format_vector(q, planned.vectors(i, i + 1)[0])
            if status == "hit":
                report.hits.append(Hit(i, x, *params))
            else:
                report.undecided.append((i, x))
        return first is not None and spec.stop == "first"

    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            for result in pool.map(_shard, jobs):
                if absorb(result):
                    pool.shutdown(cancel_futures=True)
                    break
    else:
        for job in jobs:
            if absorb(_shard(job)):
                break
    report.elapsed = time.perf_counter() - t0
    return report


def replay_hit(spec: SearchSpec, hit: Hit, code: LinearCode | None = None) -> LinearCode:
    code = resolve_seed(spec.seed) if code is None else code
    try:
        return build(spec, code, gf.parse_vector(_FIELD[spec.operation], hit.x))
    except ConstructionError as e:
        raise SearchError(f"hit {hit.x} does not replay: {e}") from None
