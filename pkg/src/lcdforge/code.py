"""Linear codes: duals, hulls, LCD and evenness tests, minimum weight."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from lcdforge import gf
from lcdforge.matrix import (
    MatrixGF,
    gram,
    is_nonsingular,
    kernel,
    rank,
    read_matrix,
    row_basis,
    vstack,
)
from lcdforge.minweight import (
    DEFAULT_BUDGET,
    MinWeightResult,
    WeightMethod,
    min_weight_at_least_gen,
    min_weight_gen,
)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An ``[n, k]`` code given by a full-rank ``k x n`` generator matrix."""

    gen: MatrixGF
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.gen.rows < 1 or self.gen.rows > self.gen.cols:
            raise ValueError(f"need 1 <= k <= n, got k={self.gen.rows}, n={self.gen.cols}")
        if rank(self.gen) != self.gen.rows:
            raise ValueError(f"generator rows are dependent (rank {rank(self.gen)} < {self.gen.rows})")

    @classmethod
    def from_rows(cls, q: int, rows, name: str = "") -> "LinearCode":
        return cls(MatrixGF(q, np.asarray(rows, dtype=np.uint8)), name)

    @classmethod
    def read(cls, path, name: str = "") -> "LinearCode":
        return cls(read_matrix(path), name)

    @property
    def q(self) -> int:
        return self.gen.q

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<{label}[{self.n},{self.k}] code over GF({self.q})>"

    def same_space(self, other: "LinearCode") -> bool:
        return (
            self.q == other.q
            and self.n == other.n
            and self.k == other.k
            and row_basis(self.gen) == row_basis(other.gen)
        )

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.uint8)[None, :]
        return rank(vstack(self.gen, MatrixGF(self.q, v))) == self.k

    def min_weight(self, method=WeightMethod.AUTO, budget=DEFAULT_BUDGET) -> MinWeightResult:
        return min_weight(self, method, budget)


def _check_hermitian(c: LinearCode, hermitian: bool):
    if hermitian and c.q != 4:
        raise ValueError(f"Hermitian inner product needs GF(4), code is over GF({c.q})")


def dual(c: LinearCode, hermitian: bool = False) -> LinearCode:
    _check_hermitian(c, hermitian)
    h = kernel(c.gen)
    if h.rows == 0:
        raise ValueError("the dual of a full [n, n] code is zero-dimensional")
    if hermitian:
        # x in C^perp_H  iff  conj(x) in C^perp
        h = h.conj()
    return LinearCode(h)


def hull_dimension(c: LinearCode, hermitian: bool = False) -> int:
    """``dim(C ∩ C^perp)`` by intersecting row spaces; no Gram matrix involved."""
    _check_hermitian(c, hermitian)
    h = kernel(c.gen)
    if hermitian:
        h = h.conj()
    if h.rows == 0:
        return 0
    return c.k + h.rows - rank(vstack(c.gen, h))


def is_lcd(c: LinearCode) -> bool:
    return is_nonsingular(gram(c.gen, False))


def is_hermitian_lcd(c: LinearCode) -> bool:
    _check_hermitian(c, True)
    return is_nonsingular(gram(c.gen, True))


def is_even(c: LinearCode) -> bool:
    if c.q != 2:
        raise ValueError("evenness is defined for binary codes only")
    return bool((np.count_nonzero(c.gen.data, axis=1) % 2 == 0).all())


def min_weight(c: LinearCode, method=WeightMethod.AUTO, budget=DEFAULT_BUDGET) -> MinWeightResult:
    key = ("min_weight", WeightMethod(method))
    if key not in c._cache:
        c._cache[key] = min_weight_gen(c.q, c.gen.data, method, budget)
    return c._cache[key]


def min_weight_at_least(c: LinearCode, d: int, method=WeightMethod.AUTO, budget=DEFAULT_BUDGET) -> bool:
    for key, res in c._cache.items():
        if key[0] == "min_weight":
            return res.d >= d
    ok, _ = min_weight_at_least_gen(c.q, c.gen.data, d, method, budget)
    return ok


def describe(c: LinearCode, hermitian: bool | None = None) -> dict:
    """Cheap structural facts (no minimum weight)."""
    herm = (c.q == 4) if hermitian is None else hermitian
    out = {"q": c.q, "n": c.n, "k": c.k}
    if herm:
        out["hermitian_lcd"] = is_hermitian_lcd(c)
        out["hull_dim"] = hull_dimension(c, True)
    else:
        out["lcd"] = is_lcd(c)
        out["hull_dim"] = hull_dimension(c, False)
    if c.q == 2:
        out["even"] = is_even(c)
    return out


def weight(v) -> int:
    return gf.weight(v)
