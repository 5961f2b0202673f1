"""Dense linear algebra over GF(2) on int-packed bit vectors."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class BitVector:
    """Element of Z2^length; ``bits`` holds component ``i`` at bit ``i``."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, i: int) -> BitVector:
        return cls(length, 1 << i)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVector:
        bits = 0
        for i in indices:
            bits ^= 1 << i
        return cls(length, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return self.bits >> i & 1

    def __xor__(self, other: BitVector) -> BitVector:
        return multiply_accumulate(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        out, b = [], self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[BitVector, ...]
    ncols: int

    def __init__(self, rows: Iterable[BitVector], ncols: Optional[int] = None):
        rows = tuple(rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = rows[0].length
        if any(r.length != ncols for r in rows):
            raise ValueError("rows of unequal length")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls([BitVector.unit(n, i) for i in range(n)], n)

    def combine(self, coeffs: BitVector) -> BitVector:
        """Row combination ``coeffs . self``."""
        if coeffs.length != self.nrows:
            raise ValueError("coefficient length does not match row count")
        acc = 0
        for i in coeffs.support():
            acc ^= self.rows[i].bits
        return BitVector(self.ncols, acc)


def multiply_accumulate(acc: BitVector, v: BitVector) -> BitVector:
    if acc.length != v.length:
        raise ValueError(f"length mismatch: {acc.length} != {v.length}")
    return BitVector(acc.length, acc.bits ^ v.bits)


class EchelonBasis:
    """Incremental reduced basis; each row is keyed by its lowest set bit.

    Rows remember which input rows they sum, so membership queries can return
    a certificate.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, tuple[int, int]] = {}
        self._order: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, bits: int, combo: int = 0) -> tuple[int, int]:
        # xor with a row keyed by p only touches bits >= p, so one ascending pass suffices
        for p in self._order:
            if bits >> p & 1:
                row, c = self._rows[p]
                bits ^= row
                combo ^= c
        return bits, combo

    def add(self, bits: int, combo: int) -> bool:
        bits, combo = self.reduce(bits, combo)
        if not bits:
            return False
        p = (bits & -bits).bit_length() - 1
        self._rows[p] = (bits, combo)
        bisect.insort(self._order, p)
        return True


def rank(m: BitMatrix) -> int:
    basis = EchelonBasis(m.ncols)
    for r in m.rows:
        basis.add(r.bits, 0)
    return basis.rank


def in_span(m: BitMatrix, b: BitVector) -> Optional[BitVector]:
    """Coefficients ``c`` with ``c . m == b``, or None if ``b`` is not in the row span."""
    if b.length != m.ncols:
        raise ValueError(f"length mismatch: {b.length} != {m.ncols}")
    basis = EchelonBasis(m.ncols)
    for i, r in enumerate(m.rows):
        basis.add(r.bits, 1 << i)
    residue, combo = basis.reduce(b.bits)
    if residue:
        return None
    return BitVector(m.nrows, combo)
