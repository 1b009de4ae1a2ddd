"""Dense matrices over GF(2), GF(3) and GF(4).

A :class:`MatrixGF` wraps a read-only ``uint8`` array of element codes (see
:mod:`lcdforge.gf`). All routines are exact; elimination pivots on the first
nonzero entry in column order, which makes every result deterministic.

Text format::

    q n k
    <k lines of n whitespace-separated symbols>
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from lcdforge import gf
from lcdforge.gf import ADD, CONJ, INV, MUL, NEG


class MatrixFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MatrixGF:
    q: int
    data: np.ndarray

    def __post_init__(self):
        gf.check_field(self.q)
        arr = np.array(self.data, dtype=np.uint8, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional")
        if arr.size and arr.max() >= self.q:
            raise ValueError(f"entry out of range for GF({self.q})")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF(self.q, self.data.T)

    def conj(self) -> "MatrixGF":
        return MatrixGF(self.q, CONJ[self.q][self.data])

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        return mat_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.q, self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"MatrixGF(q={self.q}, {self.rows}x{self.cols})"

    def to_text(self) -> str:
        lines = [f"{self.q} {self.cols} {self.rows}"]
        lines += [" ".join(gf.ALPHABET[self.q][v] for v in row) for row in self.data]
        return "\n".join(lines) + "\n"


def identity(q: int, k: int) -> MatrixGF:
    return MatrixGF(q, np.eye(k, dtype=np.uint8))


def zeros(q: int, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(q, np.zeros((rows, cols), dtype=np.uint8))


def hstack(*mats: MatrixGF) -> MatrixGF:
    q = _common_field(mats)
    return MatrixGF(q, np.hstack([m.data for m in mats]))


def vstack(*mats: MatrixGF) -> MatrixGF:
    q = _common_field(mats)
    return MatrixGF(q, np.vstack([m.data for m in mats]))


def _common_field(mats):
    qs = {m.q for m in mats}
    if len(qs) != 1:
        raise gf.FieldMismatch(f"mixed fields {sorted(qs)}")
    return qs.pop()


def matmul_codes(q: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of raw code arrays over GF(q)."""
    if q in (2, 3):
        return ((a.astype(np.int64) @ b.astype(np.int64)) % q).astype(np.uint8)
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    prod = MUL[4][a[:, :, None], b[None, :, :]]
    return np.bitwise_xor.reduce(prod, axis=1).astype(np.uint8)


def mat_mul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    if a.q != b.q:
        raise gf.FieldMismatch(f"GF({a.q}) @ GF({b.q})")
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    return MatrixGF(a.q, matmul_codes(a.q, a.data, b.data))


def gram(g: MatrixGF, hermitian: bool = False) -> MatrixGF:
    """``G G^T``, or ``G conj(G)^T`` when *hermitian* (same thing for q < 4)."""
    other = g.conj() if hermitian else g
    return mat_mul(g, other.T)


def rref_codes(q: int, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.uint8, copy=True)
    nrows, ncols = a.shape
    add, mul, neg, inv = ADD[q], MUL[q], NEG[q], INV[q]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        if a[r, c] != 1:
            a[r] = mul[inv[a[r, c]], a[r]]
        f = a[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] = add[a[hit], neg[mul[f[hit, None], a[r][None, :]]]]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(a: MatrixGF) -> tuple[MatrixGF, list[int]]:
    """Reduced row-echelon form and the pivot columns (0-based)."""
    r, piv = rref_codes(a.q, a.data)
    return MatrixGF(a.q, r), piv


def rank(a: MatrixGF) -> int:
    return len(rref_codes(a.q, a.data)[1])


def row_basis(a: MatrixGF) -> MatrixGF:
    r, piv = rref(a)
    return MatrixGF(a.q, r.data[: len(piv)])


def is_nonsingular(a: MatrixGF) -> bool:
    if a.rows != a.cols:
        raise ValueError(f"nonsingularity needs a square matrix, got {a.shape}")
    return rank(a) == a.rows


def kernel(a: MatrixGF) -> MatrixGF:
    """Basis of ``{x : a x^T = 0}`` as rows (the Euclidean dual of the row space)."""
    q = a.q
    r, piv = rref_codes(q, a.data)
    n = a.cols
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(piv):
            basis[i, p] = NEG[q][r[row, f]]
    return MatrixGF(q, basis.reshape(len(free), n))


def standard_form(g: MatrixGF) -> tuple[MatrixGF, list[int]]:
    """Row-reduce and move pivot columns to the front.

    Returns ``(S, perm)`` with ``S = [I_k | A]`` and ``S[:, j]`` taken from
    column ``perm[j]`` of the reduced matrix. Pivot and non-pivot columns
    each keep their relative order.
    """
    r, piv = rref_codes(g.q, g.data)
    if len(piv) != g.rows:
        raise ValueError(f"generator has rank {len(piv)} < {g.rows} rows")
    pivset = set(piv)
    perm = list(piv) + [c for c in range(g.cols) if c not in pivset]
    return MatrixGF(g.q, r[:, perm]), perm


def is_standard_form(g: MatrixGF) -> bool:
    k = g.rows
    return g.cols >= k and np.array_equal(g.data[:, :k], np.eye(k, dtype=np.uint8))


def delete_column(g: MatrixGF, index: int) -> MatrixGF:
    """Remove column *index* (1-based)."""
    if not 1 <= index <= g.cols:
        raise IndexError(f"column {index} outside 1..{g.cols}")
    return MatrixGF(g.q, np.delete(g.data, index - 1, axis=1))


def parse_matrix(text: str) -> MatrixGF:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix text")
    head = lines[0].split()
    if len(head) != 3:
        raise MatrixFormatError(f"header must be 'q n k', got {lines[0]!r}")
    try:
        q, n, k = (int(t) for t in head)
    except ValueError:
        raise MatrixFormatError(f"non-integer header {lines[0]!r}") from None
    if q not in gf.FIELDS:
        raise MatrixFormatError(f"unsupported field q={q}")
    body = lines[1:]
    if len(body) != k:
        raise MatrixFormatError(f"expected {k} rows, found {len(body)}")
    data = np.zeros((k, n), dtype=np.uint8)
    for i, ln in enumerate(body):
        toks = ln.split()
        if len(toks) != n:
            raise MatrixFormatError(f"row {i + 1}: expected {n} symbols, found {len(toks)}")
        for j, t in enumerate(toks):
            try:
                data[i, j] = gf.parse_symbol(q, t)
            except ValueError as e:
                raise MatrixFormatError(f"row {i + 1}, column {j + 1}: {e}") from None
    return MatrixGF(q, data)


def read_matrix(path) -> MatrixGF:
    return parse_matrix(Path(path).read_text())


def write_matrix(m: MatrixGF, path) -> None:
    Path(path).write_text(m.to_text())
