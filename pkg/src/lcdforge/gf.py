"""Arithmetic in GF(2), GF(3) and GF(4).

Elements are stored as small integers. GF(2) and GF(3) use residues; GF(4)
uses the 2-bit codes 0 -> 0, 1 -> 1, 2 -> w, 3 -> W (``W = w + 1``), so that
addition in GF(4) is XOR of the codes.

The scalar :class:`FieldElement` is for readable code and tests; bulk work
goes through the numpy lookup tables (``ADD[q]``, ``MUL[q]`` ...), which
index with element codes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FIELDS = (2, 3, 4)

ALPHABET = {2: "01", 3: "012", 4: "01wW"}


class FieldMismatch(ValueError):
    pass


def check_field(q: int) -> int:
    if q not in FIELDS:
        raise ValueError(f"unsupported field GF({q}); expected one of {FIELDS}")
    return q


def _tables(q):
    if q == 4:
        add = np.array([[a ^ b for b in range(4)] for a in range(4)], dtype=np.uint8)
        # w^2 = w + 1 = W, w * W = 1, W^2 = w
        mul = np.array(
            [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]], dtype=np.uint8
        )
    else:
        add = np.array([[(a + b) % q for b in range(q)] for a in range(q)], dtype=np.uint8)
        mul = np.array([[(a * b) % q for b in range(q)] for a in range(q)], dtype=np.uint8)
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        inv[a] = np.flatnonzero(mul[a] == 1)[0]
    if q == 4:
        conj = np.array([mul[a, a] for a in range(4)], dtype=np.uint8)
    else:
        conj = np.arange(q, dtype=np.uint8)
    return add, mul, neg, inv, conj


ADD, MUL, NEG, INV, CONJ = {}, {}, {}, {}, {}
for _q in FIELDS:
    ADD[_q], MUL[_q], NEG[_q], INV[_q], CONJ[_q] = _tables(_q)
    for _t in (ADD[_q], MUL[_q], NEG[_q], INV[_q], CONJ[_q]):
        _t.flags.writeable = False
del _q, _t


@dataclass(frozen=True)
class FieldElement:
    """A single element of GF(q), q in {2, 3, 4}."""

    q: int
    value: int

    def __post_init__(self):
        check_field(self.q)
        if not 0 <= self.value < self.q:
            raise ValueError(f"{self.value} is not an element code of GF({self.q})")

    @classmethod
    def parse(cls, q: int, symbol: str) -> "FieldElement":
        return cls(q, parse_symbol(q, symbol))

    def _same(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.q != self.q:
            raise FieldMismatch(f"GF({self.q}) and GF({other.q}) operands")
        return other

    def __add__(self, other):
        other = self._same(other)
        return FieldElement(self.q, int(ADD[self.q][self.value, other.value]))

    def __sub__(self, other):
        other = self._same(other)
        return self + (-other)

    def __neg__(self):
        return FieldElement(self.q, int(NEG[self.q][self.value]))

    def __mul__(self, other):
        other = self._same(other)
        return FieldElement(self.q, int(MUL[self.q][self.value, other.value]))

    def __truediv__(self, other):
        other = self._same(other)
        return self * other.inv()

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return FieldElement(self.q, int(INV[self.q][self.value]))

    def conj(self) -> "FieldElement":
        return FieldElement(self.q, int(CONJ[self.q][self.value]))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return ALPHABET[self.q][self.value]


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def conj(a: FieldElement) -> FieldElement:
    """Frobenius conjugation ``a -> a**2`` on GF(4); the identity on GF(2), GF(3)."""
    return a.conj()


def elements(q: int) -> list[FieldElement]:
    return [FieldElement(q, v) for v in range(check_field(q))]


def parse_symbol(q: int, symbol: str) -> int:
    try:
        return ALPHABET[check_field(q)].index(symbol)
    except ValueError:
        raise ValueError(f"symbol {symbol!r} not in the GF({q}) alphabet {ALPHABET[q]!r}") from None


def parse_vector(q: int, text: str) -> np.ndarray:
    """Parse ``"0,1,w,W"`` or ``"01wW"`` into element codes.

    Mixed forms (commas together with whitespace-free runs of several
    symbols, e.g. ``"01,1"``) are ambiguous and rejected.
    """
    text = text.strip()
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
        if any(len(p) != 1 for p in parts):
            raise ValueError(f"ambiguous vector {text!r}: comma form needs one symbol per field")
    elif any(ch.isspace() for ch in text):
        parts = text.split()
        if any(len(p) != 1 for p in parts):
            raise ValueError(f"ambiguous vector {text!r}")
    else:
        parts = list(text)
    return np.array([parse_symbol(q, p) for p in parts], dtype=np.uint8)


def format_vector(q: int, v, sep: str = "") -> str:
    return sep.join(ALPHABET[q][int(a)] for a in v)


def weight(v) -> int:
    return int(np.count_nonzero(v))
