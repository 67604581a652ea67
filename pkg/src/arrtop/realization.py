"""Exact arithmetic in Q(zeta_5) and the four cyclotomic realizations.

Elements are stored in the power basis ``1, z, z^2, z^3`` modulo
``z^4 + z^3 + z^2 + z + 1``.  Complex conjugation is the Galois automorphism
``z -> z^4``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .combinatorics import LineCombinatorics


class BadExponent(ValueError):
    pass


class DuplicateLine(ValueError):
    pass


def _reduce(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a polynomial in z modulo z^5 = 1 and 1 + z + ... + z^4 = 0."""
    c = [Fraction(0)] * 5
    for k, a in enumerate(coeffs):
        c[k % 5] += a
    top = c[4]
    return tuple(c[k] - top for k in range(4))


class Cyc5:
    """An element ``c0 + c1 z + c2 z^2 + c3 z^3`` of Q(zeta_5)."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = (0,)):
        self.c = _reduce([Fraction(x) for x in coeffs])

    @classmethod
    def zeta(cls, power: int = 1) -> "Cyc5":
        coeffs = [0] * 5
        coeffs[power % 5] = 1
        return cls(coeffs)

    @staticmethod
    def _lift(x) -> "Cyc5":
        return x if isinstance(x, Cyc5) else Cyc5((x,))

    def __add__(self, other) -> "Cyc5":
        o = self._lift(other)
        return Cyc5(a + b for a, b in zip(self.c, o.c))

    __radd__ = __add__

    def __neg__(self) -> "Cyc5":
        return Cyc5(-a for a in self.c)

    def __sub__(self, other) -> "Cyc5":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Cyc5":
        return self._lift(other) - self

    def __mul__(self, other) -> "Cyc5":
        o = self._lift(other)
        prod = [Fraction(0)] * 7
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    prod[i + j] += a * b
        return Cyc5(prod)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def conjugates(self) -> list["Cyc5"]:
        return [galois(self, i) for i in (2, 3, 4)]

    def norm(self) -> Fraction:
        n = self
        for g in self.conjugates():
            n = n * g
        assert all(x == 0 for x in n.c[1:])
        return n.c[0]

    def inverse(self) -> "Cyc5":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in Q(zeta_5)")
        # x^-1 = (product of the other conjugates) / norm
        others = Cyc5((1,))
        for g in self.conjugates():
            others = others * g
        n = self.norm()
        return Cyc5(a / n for a in others.c)

    def __truediv__(self, other) -> "Cyc5":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "Cyc5":
        return self._lift(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyc5((other,))
        return isinstance(other, Cyc5) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if k == 0 else f"{a}*z^{k}")
        return " + ".join(terms) or "0"

    def to_json(self) -> list[str]:
        return [str(a) for a in self.c]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Cyc5":
        return cls(Fraction(x) for x in data)


def galois(e: Cyc5, i: int) -> Cyc5:
    """The automorphism z -> z^i."""
    if i % 5 == 0:
        raise BadExponent(f"exponent {i} is not prime to 5")
    coeffs = [Fraction(0)] * 5
    for k, a in enumerate(e.c):
        coeffs[(k * i) % 5] += a
    return Cyc5(coeffs)


def conj(e: Cyc5) -> Cyc5:
    return galois(e, 4)


ProjLine = tuple[Cyc5, Cyc5, Cyc5]
ProjPoint = tuple[Cyc5, Cyc5, Cyc5]


def normalize(v: Sequence[Cyc5]) -> tuple[Cyc5, ...]:
    """Divide a projective triple by its first nonzero coordinate."""
    lead = next((x for x in v if not x.is_zero()), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    inv = lead.inverse()
    return tuple(x * inv for x in v)


def cross(u: Sequence[Cyc5], v: Sequence[Cyc5]) -> tuple[Cyc5, Cyc5, Cyc5]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(a: Sequence[Cyc5], b: Sequence[Cyc5], c: Sequence[Cyc5]) -> Cyc5:
    x = cross(b, c)
    return a[0] * x[0] + a[1] * x[1] + a[2] * x[2]


def on_line(point: Sequence, line: Sequence) -> bool:
    return sum((Cyc5._lift(a) * Cyc5._lift(b) for a, b in zip(line, point)), Cyc5()).is_zero()


def builtin_a91(i: int) -> list[ProjLine]:
    """The twelve lines with xi = z^i, as coefficient triples (a, b, c) of
    ``a x + b y + c z = 0``."""
    if i not in (1, 2, 3, 4):
        raise BadExponent(f"exponent {i} not in 1..4")
    one, zero = Cyc5((1,)), Cyc5()
    xi = Cyc5.zeta(i)
    xb = conj(xi)
    s = xi * xi + xi  # xi^2 + xi
    lines = [
        (one, zero, -one),  # L1
        (one, one, zero),  # L2
        (one, zero, one),  # L3
        (one, -one, zero),  # L4
        (zero, one, -one),  # L5
        (zero, one, one),  # L6
        (one, -conj(s), -s),  # L7
        (one, xb + xi * xi, -(xb * xb + xi)),  # L8
        (one, s, conj(s)),  # L9
        (one, -(xb * xb + xi), xb + xi * xi),  # L10
        (
            Cyc5((5,)),
            1 + 2 * xi + 3 * xi * xi - xb * xb,
            -(2 + 4 * xi + xi * xi + 3 * xb * xb),
        ),  # L11
        (one, -(1 + xb), xb),  # L12
    ]
    return lines


def galois_lines(lines: Sequence[ProjLine], i: int) -> list[ProjLine]:
    return [tuple(galois(a, i) for a in line) for line in lines]


def incidence_combinatorics(lines: Sequence[ProjLine]) -> LineCombinatorics:
    """Group the pairwise intersections of the lines by projective point."""
    for (a, u), (b, v) in combinations(enumerate(lines, start=1), 2):
        if all(x.is_zero() for x in cross(u, v)):
            raise DuplicateLine(f"lines {a} and {b} coincide")
    points: dict[tuple[Cyc5, ...], set[int]] = {}
    for (a, u), (b, v) in combinations(enumerate(lines, start=1), 2):
        p = normalize(cross(u, v))
        points.setdefault(p, set()).update((a, b))
    return LineCombinatorics.from_points(len(lines), [sorted(s) for s in points.values()])


def lines_to_json(lines: Sequence[ProjLine]) -> list[list[list[str]]]:
    return [[c.to_json() for c in line] for line in lines]


def lines_from_json(data) -> list[ProjLine]:
    return [tuple(Cyc5.from_json(c) for c in line) for line in data]
