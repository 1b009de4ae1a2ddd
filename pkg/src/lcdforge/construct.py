"""Constructions that turn one LCD code into another.

``extend_*``
    Border a generator matrix ``G`` with one new top row ``(prefix, x)`` and
    a prefix column block built from the inner products ``<x, r_i>``. The
    result is ``[n+2, k+1]`` (``[n+3, k+1]`` over GF(3)) and its Gram matrix
    is ``diag(sigma, gram(G))`` with ``sigma != 0``, so LCD-ness carries over.
``even_transform``
    For an even LCD ``[I_k | A]``, replace each row ``r`` of ``A`` by
    ``r + x + <r, x> 1``; the Gram matrix is unchanged.
``puncture_zero_coordinate`` and ``simplex_extend``
    Weight-preserving (resp. weight-shifting) length changes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from lcdforge import gf
from lcdforge.code import LinearCode, is_even, is_hermitian_lcd, is_lcd, min_weight
from lcdforge.gf import CONJ, MUL
from lcdforge.matrix import MatrixGF, delete_column, gram, is_standard_form, matmul_codes

SIMPLEX_COLUMN_CAP = 2**20

TERNARY_HEADERS = ((1, 0, 0), (1, 1, 2))


class ConstructionError(ValueError):
    """A construction's precondition does not hold."""


class TooLarge(ConstructionError):
    def __init__(self, message, params):
        super().__init__(message)
        self.params = params


def _vec(q, x, n, what="x"):
    if isinstance(x, str):
        x = gf.parse_vector(q, x)
    x = np.asarray(x, dtype=np.uint8)
    if x.shape != (n,):
        raise ConstructionError(f"{what} must have length {n}, got {x.shape[0] if x.ndim else 0}")
    if x.size and x.max() >= q:
        raise ConstructionError(f"{what} has symbols outside GF({q})")
    return x


def _inner(q, rows, x, hermitian=False):
    """``<x, r_i>`` for every row r_i (Hermitian: ``sum x_j conj(r_ij)``)."""
    other = CONJ[q][rows] if hermitian else rows
    return matmul_codes(q, other, x[:, None])[:, 0]


def extend_binary(c: LinearCode, x) -> LinearCode:
    if c.q != 2:
        raise ConstructionError("extend_binary needs a binary seed")
    x = _vec(2, x, c.n)
    if gf.weight(x) % 2:
        raise ConstructionError(f"wt(x) = {gf.weight(x)} is odd; the binary extension needs even weight")
    if not is_lcd(c):
        raise ConstructionError("seed code is not LCD")
    g = c.gen.data
    s = _inner(2, g, x)
    top = np.concatenate([[1, 0], x])
    body = np.hstack([s[:, None], s[:, None], g])
    return LinearCode(MatrixGF(2, np.vstack([top, body])))


def ternary_sigma(x, a) -> int:
    """Top-left Gram entry ``<a, a> + wt(x) mod 3`` of the ternary extension."""
    a = np.asarray(a, dtype=np.int64)
    return int((a @ a + gf.weight(x)) % 3)


def ternary_branch_ok(x, a) -> bool:
    w = gf.weight(x) % 3
    a = tuple(int(v) for v in a)
    if a == (1, 0, 0):
        return w != 2
    if a == (1, 1, 2):
        return w != 0
    return False


def extend_ternary(c: LinearCode, x, a=(1, 0, 0), *, check: bool = True) -> LinearCode:
    """Ternary extension with header *a* in ``{(1,0,0), (1,1,2)}``.

    ``check=False`` skips the weight/header admissibility test (and the seed
    LCD test) so callers can study the inadmissible branch; the result is
    then built without the LCD guarantee.
    """
    if c.q != 3:
        raise ConstructionError("extend_ternary needs a ternary seed")
    x = _vec(3, x, c.n)
    a = tuple(int(v) for v in a)
    if a not in TERNARY_HEADERS:
        raise ConstructionError(f"header a={a} is not one of {TERNARY_HEADERS}")
    if check:
        w = gf.weight(x)
        if a == (1, 0, 0) and w % 3 == 2:
            raise ConstructionError(
                f"wt(x) = {w} = 2 (mod 3) violates the a=(1,0,0) branch (needs wt(x) != 2 mod 3)"
            )
        if a == (1, 1, 2) and w % 3 == 0:
            raise ConstructionError(
                f"wt(x) = {w} = 0 (mod 3) violates the a=(1,1,2) branch (needs wt(x) != 0 mod 3)"
            )
        if not is_lcd(c):
            raise ConstructionError("seed code is not LCD")
    g = c.gen.data
    s = MUL[3][2, _inner(3, g, x)]
    top = np.concatenate([a, x])
    body = np.hstack([s[:, None], s[:, None], s[:, None], g])
    return LinearCode(MatrixGF(3, np.vstack([top, body]).astype(np.uint8)))


def extend_quaternary(c: LinearCode, x) -> LinearCode:
    if c.q != 4:
        raise ConstructionError("extend_quaternary needs a quaternary seed")
    x = _vec(4, x, c.n)
    if gf.weight(x) % 2:
        raise ConstructionError(f"wt(x) = {gf.weight(x)} is odd; the quaternary extension needs even weight")
    if not is_hermitian_lcd(c):
        raise ConstructionError("seed code is not Hermitian LCD")
    g = c.gen.data
    s = CONJ[4][_inner(4, g, x, hermitian=True)]
    top = np.concatenate([[1, 0], x])
    body = np.hstack([s[:, None], s[:, None], g])
    return LinearCode(MatrixGF(4, np.vstack([top, body]).astype(np.uint8)))


def extend(c: LinearCode, x, a=(1, 0, 0)) -> LinearCode:
    if c.q == 2:
        return extend_binary(c, x)
    if c.q == 3:
        return extend_ternary(c, x, a)
    return extend_quaternary(c, x)


def even_transform(c: LinearCode, x) -> LinearCode:
    if c.q != 2:
        raise ConstructionError("even_transform needs a binary seed")
    n, k = c.n, c.k
    if not is_standard_form(c.gen):
        raise ConstructionError("generator is not of the form [I_k | A]; run standard_form first")
    x = _vec(2, x, n - k)
    if gf.weight(x) % 2:
        raise ConstructionError(f"wt(x) = {gf.weight(x)} is odd")
    if (n - k) % 2:
        raise ConstructionError(f"n - k = {n - k} is odd")
    if not is_even(c):
        raise ConstructionError("seed code is not even")
    if not is_lcd(c):
        raise ConstructionError("seed code is not LCD")
    A = c.gen.data[:, k:]
    s = _inner(2, A, x)
    new_a = A ^ x[None, :] ^ s[:, None]
    return LinearCode(MatrixGF(2, np.hstack([np.eye(k, dtype=np.uint8), new_a])))


def puncture_zero_coordinate(c: LinearCode, index: int) -> LinearCode:
    """Delete coordinate *index* (1-based), which must be zero in every codeword."""
    if not 1 <= index <= c.n:
        raise ConstructionError(f"coordinate {index} outside 1..{c.n}")
    if c.gen.data[:, index - 1].any():
        raise ConstructionError(f"column {index} is not identically zero")
    return LinearCode(delete_column(c.gen, index))


def simplex_columns(q: int, k: int) -> np.ndarray:
    """One column per projective point of GF(q)^k, first nonzero entry 1, lexicographic."""
    cols = []
    for lead in reversed(range(k)):
        for tail in itertools.product(range(q), repeat=k - lead - 1):
            cols.append((0,) * lead + (1,) + tail)
    return np.array(cols, dtype=np.uint8).T.reshape(k, len(cols))


class CodeParams(NamedTuple):
    n: int
    k: int
    d: int


def simplex_params(q: int, n: int, k: int, d: int, s: int) -> CodeParams:
    """``[n + s (q^k - 1)/(q - 1), k, d + s q^(k-1)]``."""
    return CodeParams(n + s * (q**k - 1) // (q - 1), k, d + s * q ** (k - 1))


def _simplex_min_k(q):
    return 3 if q == 2 else 2


def simplex_extend(
    c: LinearCode, s: int, max_columns: int = SIMPLEX_COLUMN_CAP, d: int | None = None
) -> LinearCode:
    """Append *s* copies of the k-dimensional simplex generator.

    Above *max_columns* the matrix is not built; :class:`TooLarge` carries
    the parameters instead (``d`` in them is ``None`` unless given).
    """
    if s < 0:
        raise ConstructionError("s must be non-negative")
    if c.k < _simplex_min_k(c.q):
        raise ConstructionError(f"GF({c.q}) simplex juxtaposition needs k >= {_simplex_min_k(c.q)}, got k={c.k}")
    if s == 0:
        return c
    width = s * (c.q**c.k - 1) // (c.q - 1)
    if c.n + width > max_columns:
        params = simplex_params(c.q, c.n, c.k, d if d is not None else 0, s)
        if d is None:
            params = params._replace(d=None)
        raise TooLarge(f"refusing to materialize {c.n + width} columns (cap {max_columns})", params)
    S = simplex_columns(c.q, c.k)
    return LinearCode(MatrixGF(c.q, np.hstack([c.gen.data] + [S] * s)))


class EAQECCParams(NamedTuple):
    n: int
    k: int
    d: int
    c: int

    def __str__(self):
        return f"[[{self.n},{self.k},{self.d};{self.c}]]"


def eaqecc_from_params(n: int, k: int, d: int) -> EAQECCParams:
    return EAQECCParams(n, k, d, n - k)


def eaqecc_params(code: LinearCode, d: int | None = None) -> EAQECCParams:
    """``[[n, k, d; n - k]]`` from a verified Hermitian LCD ``[n, k, d]`` code."""
    if code.q != 4:
        raise ConstructionError("entanglement-assisted parameters need a quaternary code")
    if not is_hermitian_lcd(code):
        raise ConstructionError("code is not Hermitian LCD")
    actual = min_weight(code).d
    if d is not None and d != actual:
        raise ConstructionError(f"claimed minimum weight {d} but the code has {actual}")
    return eaqecc_from_params(code.n, code.k, actual)


# -- reproducibility records -------------------------------------------------------

KINDS = ("extend-binary", "extend-ternary", "extend-quaternary", "even-transform", "puncture-zero", "simplex-extend")


@dataclass(frozen=True)
class ConstructionRecord:
    """How a code was derived from a named seed; replays bit-exactly."""

    kind: str
    seed: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown construction kind {self.kind!r}")

    def replay(self, seed: LinearCode) -> LinearCode:
        p = self.params
        if self.kind == "extend-binary":
            return extend_binary(seed, p["x"])
        if self.kind == "extend-ternary":
            return extend_ternary(seed, p["x"], p.get("a", (1, 0, 0)))
        if self.kind == "extend-quaternary":
            return extend_quaternary(seed, p["x"])
        if self.kind == "even-transform":
            return even_transform(seed, p["x"])
        if self.kind == "puncture-zero":
            return puncture_zero_coordinate(seed, int(p["column"]))
        return simplex_extend(seed, int(p["s"]))

    def to_line(self, q: int) -> str:
        parts = [self.kind, self.seed]
        for key in sorted(self.params):
            val = self.params[key]
            if key == "x":
                val = gf.format_vector(q, gf.parse_vector(q, val) if isinstance(val, str) else val)
            elif key == "a":
                val = ",".join(str(int(v)) for v in val)
            parts.append(f"{key}={val}")
        return " ".join(parts)

    @classmethod
    def from_line(cls, line: str, q: int) -> "ConstructionRecord":
        toks = line.split()
        if len(toks) < 2:
            raise ValueError(f"malformed record {line!r}")
        params = {}
        for tok in toks[2:]:
            key, _, val = tok.partition("=")
            if key == "x":
                params[key] = gf.parse_vector(q, val)
            elif key == "a":
                params[key] = tuple(int(v) for v in val.split(","))
            else:
                params[key] = int(val)
        return cls(toks[0], toks[1], params)


def kind_for(q: int) -> str:
    return {2: "extend-binary", 3: "extend-ternary", 4: "extend-quaternary"}[q]


def gram_block_ok(seed: LinearCode, out: LinearCode, hermitian: bool) -> tuple[bool, int]:
    """Check ``gram(out) == diag(sigma, gram(seed))``; return (ok, sigma)."""
    g_out = gram(out.gen, hermitian).data
    g_in = gram(seed.gen, hermitian).data
    sigma = int(g_out[0, 0])
    ok = not g_out[0, 1:].any() and not g_out[1:, 0].any() and np.array_equal(g_out[1:, 1:], g_in)
    return ok, sigma


def pad_vector(q: int, tail, n: int) -> np.ndarray:
    """``(0, ..., 0, tail)`` of total length *n*."""
    tail = gf.parse_vector(q, tail) if isinstance(tail, str) else np.asarray(tail, dtype=np.uint8)
    if len(tail) > n:
        raise ValueError(f"tail of length {len(tail)} does not fit in {n}")
    out = np.zeros(n, dtype=np.uint8)
    out[n - len(tail):] = tail
    return out

