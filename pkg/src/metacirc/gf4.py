"""Arithmetic over GF(4) with bit-packed vectors.

GF(4) = {0, 1, w, W} where w is a root of x^2 + x + 1 and W = w^2 = w + 1.
A symbol is encoded in two bits as (a, b) meaning a*w + b:

    0 -> (0,0)    1 -> (0,1)    w -> (1,0)    W -> (1,1)

Addition is then XOR of the bit pairs.  A length-n vector packs into two
n-bit planes (plane a holds the w-coefficients, plane b the 1-coefficients),
so vector addition is two XORs, the weight is one popcount of (a | b), and
the trace inner product reduces to two ANDs, one XOR and a popcount parity.
Planes are plain Python integers, so any length works; the hot enumeration
kernels unpack them into machine words separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

ZERO = 0b00
ONE = 0b01
OMEGA = 0b10  # w
OMEGA_BAR = 0b11  # W = w^2 = w + 1

SYMBOLS = "01wW"
_SYMBOL_TO_VALUE = {s: v for v, s in enumerate(SYMBOLS)}


def add_scalar(x: int, y: int) -> int:
    """GF(4) sum of two symbols; characteristic 2, so XOR of the encodings."""
    return x ^ y


def conjugate(x: int) -> int:
    """Frobenius square x -> x^2: fixes 0 and 1, swaps w and W."""
    return (x & 0b10) | (((x >> 1) ^ x) & 0b01)


def trace_inner_scalar(x: int, y: int) -> int:
    """Trace inner product x*y^2 + x^2*y of two symbols, a bit in {0, 1}.

    In the (a, b) encoding this collapses to a_x*b_y XOR a_y*b_x.
    """
    return (((x >> 1) & y) ^ ((y >> 1) & x)) & 1


def symbol(x: int) -> str:
    return SYMBOLS[x]


def parse_symbol(s: str) -> int:
    try:
        return _SYMBOL_TO_VALUE[s]
    except KeyError:
        raise ValueError(f"not a GF(4) symbol (expected one of '{SYMBOLS}'): {s!r}") from None


@dataclass(frozen=True)
class GF4Vector:
    """Immutable length-n vector over GF(4) stored as two bit-planes.

    Bit j of ``a`` / ``b`` carries coordinate j.  Bits at positions >= n must
    be zero; the constructor enforces this so that popcount-based weights
    are exact.
    """

    n: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError(f"vector length must be positive, got {self.n}")
        mask = (1 << self.n) - 1
        if self.a & ~mask or self.b & ~mask:
            raise ValueError(f"plane bits beyond position {self.n - 1} must be zero")

    @classmethod
    def zero(cls, n: int) -> "GF4Vector":
        return cls(n, 0, 0)

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> "GF4Vector":
        a = b = 0
        n = 0
        for j, e in enumerate(entries):
            if not 0 <= e <= 3:
                raise ValueError(f"entry {e} at position {j} is not a GF(4) encoding")
            a |= ((e >> 1) & 1) << j
            b |= (e & 1) << j
            n = j + 1
        if n == 0:
            raise ValueError("cannot build a vector from no entries")
        return cls(n, a, b)

    @classmethod
    def from_symbols(cls, text: str) -> "GF4Vector":
        return cls.from_entries(parse_symbol(ch) for ch in text)

    def entry(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(f"coordinate {j} out of range for length {self.n}")
        return (((self.a >> j) & 1) << 1) | ((self.b >> j) & 1)

    def entries(self) -> Iterator[int]:
        for j in range(self.n):
            yield (((self.a >> j) & 1) << 1) | ((self.b >> j) & 1)

    def to_symbols(self) -> str:
        return "".join(SYMBOLS[e] for e in self.entries())

    def __len__(self) -> int:
        return self.n

    def __add__(self, other: "GF4Vector") -> "GF4Vector":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} != {other.n}")
        return GF4Vector(self.n, self.a ^ other.a, self.b ^ other.b)

    def weight(self) -> int:
        """Number of nonzero coordinates."""
        return (self.a | self.b).bit_count()

    def distance(self, other: "GF4Vector") -> int:
        """Number of coordinates where the two vectors differ."""
        return (self + other).weight()

    def trace_inner(self, other: "GF4Vector") -> int:
        """Trace inner product sum_j (u_j v_j^2 + u_j^2 v_j), a bit in {0, 1}."""
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} != {other.n}")
        return ((self.a & other.b) ^ (self.b & other.a)).bit_count() & 1

    def __str__(self) -> str:
        return self.to_symbols()
