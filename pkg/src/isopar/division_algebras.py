"""The four normed division algebras R, C, H, O.

Multiplication is built by Cayley-Dickson doubling,

    (a, b) (c, d) = (a c - conj(d) b,  d a + b conj(c)),

starting from R, so the quaternion and octonion tables are deterministic
and self-testable.  ``cayley_dickson_mul`` is generic over the coefficient
ring: it only needs ``+``, ``-`` and ``*``, so the same recursion that
multiplies exact rational elements also multiplies vectors of polynomials
when the Cartan cubic factory expands re(x y z) symbolically.

Conjugation negates every coordinate except the first, the real part is
the first coordinate, and norm2 is the coordinate sum of squares; these
agree with re(a conj(a)) by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import StructureError


class AlgebraTag(Enum):
    R = 1
    C = 2
    H = 4
    O = 8

    @property
    def dim(self) -> int:
        return self.value


def conj_vec(coeffs: Sequence) -> list:
    """Conjugation on coefficient vectors: negate everything past e0."""
    return [coeffs[0]] + [-c for c in coeffs[1:]]


def cayley_dickson_mul(x: Sequence, y: Sequence) -> list:
    """Cayley-Dickson product of two coefficient vectors of equal 2^k length.

    Entries may be any ring elements supporting +, - and *.
    """
    n = len(x)
    if n != len(y):
        raise StructureError("cayley_dickson_mul needs equal-length vectors")
    if n == 1:
        return [x[0] * y[0]]
    h = n // 2
    a, b = list(x[:h]), list(x[h:])
    c, d = list(y[:h]), list(y[h:])
    ac = cayley_dickson_mul(a, c)
    db = cayley_dickson_mul(conj_vec(d), b)
    da = cayley_dickson_mul(d, a)
    bc = cayley_dickson_mul(b, conj_vec(c))
    return [p - q for p, q in zip(ac, db)] + [p + q for p, q in zip(da, bc)]


@dataclass(frozen=True)
class AlgElem:
    """An element of R, C, H or O with exact rational coordinates."""

    tag: AlgebraTag
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.tag.dim:
            raise StructureError(
                f"{self.tag.name} element needs {self.tag.dim} coordinates"
            )
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "AlgElem":
        return cls(tag, (0,) * tag.dim)

    @classmethod
    def one(cls, tag: AlgebraTag) -> "AlgElem":
        return cls.basis(tag, 0)

    @classmethod
    def basis(cls, tag: AlgebraTag, index: int) -> "AlgElem":
        if not 0 <= index < tag.dim:
            raise StructureError(f"basis index {index} out of range for {tag.name}")
        coeffs = [0] * tag.dim
        coeffs[index] = 1
        return cls(tag, tuple(coeffs))

    def _check(self, other: "AlgElem") -> None:
        if self.tag is not other.tag:
            raise StructureError(f"algebra mismatch: {self.tag.name} vs {other.tag.name}")

    def __add__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.tag, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.tag, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.tag, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.tag, tuple(cayley_dickson_mul(self.coeffs, other.coeffs)))

    def scale(self, value) -> "AlgElem":
        v = Fraction(value)
        return AlgElem(self.tag, tuple(c * v for c in self.coeffs))

    def conj(self) -> "AlgElem":
        return AlgElem(self.tag, tuple(conj_vec(self.coeffs)))

    @property
    def re(self) -> Fraction:
        return self.coeffs[0]

    def norm2(self) -> Fraction:
        return sum(c * c for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def mul(a: AlgElem, b: AlgElem) -> AlgElem:
    return a * b


def conj(a: AlgElem) -> AlgElem:
    return a.conj()


def re(a: AlgElem) -> Fraction:
    return a.re


def norm2(a: AlgElem) -> Fraction:
    return a.norm2()


@dataclass(frozen=True)
class StructureConstants:
    """e_i e_j = sum_k c[i][j][k] e_k with entries in {-1, 0, 1}."""

    tag: AlgebraTag
    c: tuple  # c[i][j][k]


def structure_constants(tag: AlgebraTag) -> StructureConstants:
    d = tag.dim
    table = []
    for i in range(d):
        row = []
        ei = AlgElem.basis(tag, i)
        for j in range(d):
            prod = ei * AlgElem.basis(tag, j)
            row.append(tuple(int(c) for c in prod.coeffs))
        table.append(tuple(row))
    return StructureConstants(tag, tuple(table))


def left_multiplication_matrix(tag: AlgebraTag, index: int) -> list[list[int]]:
    """Matrix of x -> e_index * x in the standard basis (column b is e_i e_b)."""
    sc = structure_constants(tag).c
    d = tag.dim
    return [[sc[index][b][a] for b in range(d)] for a in range(d)]
