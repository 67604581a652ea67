"""Truncated Alexander invariants M_1 and M_2 of a presented arrangement group.

Everything is computed directly in ``Lambda / m^2``: a Laurent monomial
``t_k`` becomes ``1 + s_k`` and products drop every term of degree two in the
``s`` variables.  Coefficients of the truncated series are either Python
integers or :class:`LinForm` (affine-linear forms in the unknowns of the
isomorphism test).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import words
from .exactalg import IntMatrix, SmithDecomposition, hermite_form, smith_normal_form
from .wiring import Presentation, Relation, WiringDiagram, relations


class EqualIndices(ValueError):
    pass


class NonUnitPivot(ArithmeticError):
    pass


class RankMismatch(ArithmeticError):
    pass


class LinForm:
    """``const + sum coeffs[v] * y_v`` with integer coefficients."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const: int = 0, coeffs: dict[int, int] | None = None):
        self.const = const
        self.coeffs = {v: c for v, c in (coeffs or {}).items() if c}

    @classmethod
    def var(cls, index: int, coeff: int = 1) -> "LinForm":
        return cls(0, {index: coeff})

    @staticmethod
    def _lift(x) -> "LinForm":
        return x if isinstance(x, LinForm) else LinForm(int(x))

    def is_constant(self) -> bool:
        return not self.coeffs

    def __add__(self, other) -> "LinForm":
        o = self._lift(other)
        out = dict(self.coeffs)
        for v, c in o.coeffs.items():
            s = out.get(v, 0) + c
            if s:
                out[v] = s
            else:
                out.pop(v, None)
        res = LinForm(self.const + o.const)
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "LinForm":
        res = LinForm(-self.const)
        res.coeffs = {v: -c for v, c in self.coeffs.items()}
        return res

    def __sub__(self, other) -> "LinForm":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LinForm":
        return self._lift(other) - self

    def __mul__(self, other) -> "LinForm":
        if isinstance(other, LinForm):
            if other.is_constant():
                other = other.const
            elif self.is_constant():
                return other * self.const
            else:
                raise ArithmeticError("product of two non-constant linear forms")
        k = int(other)
        if k == 0:
            return LinForm()
        res = LinForm(self.const * k)
        res.coeffs = {v: c * k for v, c in self.coeffs.items()}
        return res

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.const) or bool(self.coeffs)

    def __eq__(self, other) -> bool:
        o = self._lift(other) if isinstance(other, (int, LinForm)) else None
        return o is not None and self.const == o.const and self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.const, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        parts = [str(self.const)] if self.const or not self.coeffs else []
        parts += [f"{c}*y{v}" for v, c in sorted(self.coeffs.items())]
        return " + ".join(parts)

    def dense(self, n_vars: int) -> list[int]:
        """Coefficients of the unknowns followed by the constant."""
        row = [0] * (n_vars + 1)
        for v, c in self.coeffs.items():
            row[v] = c
        row[n_vars] = self.const
        return row


class TruncSeries:
    """``c0 + sum_k lin[k] * s_{k+1}`` modulo the square of the augmentation ideal."""

    __slots__ = ("c0", "lin")

    def __init__(self, c0=0, lin: Sequence | None = None, n: int | None = None):
        self.c0 = c0
        if lin is None:
            lin = [0] * (n or 0)
        self.lin = list(lin)

    @classmethod
    def t(cls, k: int, n: int, power: int = 1) -> "TruncSeries":
        """``t_k^power`` truncated: ``1 + power * s_k``."""
        lin = [0] * n
        lin[k - 1] = power
        return cls(1, lin)

    @classmethod
    def sigma(cls, k: int, n: int) -> "TruncSeries":
        lin = [0] * n
        lin[k - 1] = 1
        return cls(0, lin)

    @classmethod
    def const(cls, c, n: int) -> "TruncSeries":
        return cls(c, [0] * n)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        return TruncSeries(self.c0 + other.c0, [a + b for a, b in zip(self.lin, other.lin)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return TruncSeries(self.c0 - other.c0, [a - b for a, b in zip(self.lin, other.lin)])

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(-self.c0, [-a for a in self.lin])

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return TruncSeries(self.c0 * other, [a * other for a in self.lin])
        a0, b0 = self.c0, other.c0
        lin = []
        for a, b in zip(self.lin, other.lin):
            term = 0
            if b and a0:
                term = a0 * b
            if a and b0:
                term = term + a * b0 if term else a * b0
            lin.append(term)
        return TruncSeries(a0 * b0 if a0 and b0 else 0, lin)

    __rmul__ = __mul__

    def unit_inverse(self) -> "TruncSeries":
        if self.c0 not in (1, -1):
            raise NonUnitPivot(f"constant term {self.c0} is not a unit")
        c = self.c0
        return TruncSeries(c, [-a for a in self.lin])

    def is_zero(self) -> bool:
        return not self.c0 and not any(self.lin)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncSeries) and self.c0 == other.c0 and self.lin == other.lin

    def __repr__(self) -> str:
        terms = [f"{self.c0}"] + [f"({a})s{k+1}" for k, a in enumerate(self.lin) if a]
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# Module vectors over Lambda/m^2, indexed by pairs i < j


def pair_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


class ModuleVector:
    """Sparse ``sum p_{ij} x_{ij}`` over ``Lambda/m^2``; keys are pairs i < j."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict[tuple[int, int], TruncSeries] | None = None):
        self.n = n
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return ModuleVector(self.n, out)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(self.n, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, p: TruncSeries) -> "ModuleVector":
        return ModuleVector(self.n, {k: p * v for k, v in self.entries.items()})

    def __getitem__(self, pair: tuple[int, int]) -> TruncSeries:
        return self.entries.get(pair) or TruncSeries.const(0, self.n)

    def is_zero(self) -> bool:
        return not self.entries

    def dense(self) -> list[TruncSeries]:
        return [self[p] for p in pair_list(self.n)]

    def constant_part(self) -> dict[tuple[int, int], int]:
        return {k: v.c0 for k, v in self.entries.items() if v.c0}

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleVector) and self.entries == other.entries


def signed_pair(i: int, j: int, n: int) -> ModuleVector:
    """The class of ``[x_i^{±1}, x_j^{±1}]`` for signed letters ``i``, ``j``."""
    if abs(i) == abs(j):
        raise EqualIndices(f"letters {i} and {j} have the same generator")
    a, b = abs(i), abs(j)
    coeff = TruncSeries.const(1, n)
    # [x_a^-1, y] = -t_a^-1 [x_a, y] and likewise in the second slot
    if i < 0:
        coeff = -(coeff * TruncSeries.t(a, n, -1))
    if j < 0:
        coeff = -(coeff * TruncSeries.t(b, n, -1))
    if a > b:
        a, b = b, a
        coeff = -coeff
    return ModuleVector(n, {(a, b): coeff})


def _pair_term(a: int, letter: int, n: int) -> ModuleVector:
    if abs(letter) == abs(a):
        return ModuleVector(n)
    return signed_pair(a, letter, n)


def comm_expand(a: int, w: Sequence[int], n: int) -> ModuleVector:
    """The class of ``[x_a, w]`` in M_2, via ``[x_a, l*rest] = x_{a,l} + t_l [x_a, rest]``."""
    w = words.reduce_word(w)
    total = ModuleVector(n)
    prefix = TruncSeries.const(1, n)
    for letter in w:
        term = _pair_term(a, letter, n)
        if not term.is_zero():
            total = total + term.scale(prefix)
        prefix = prefix * TruncSeries.t(abs(letter), n, 1 if letter > 0 else -1)
    return total


def point_relations(rel: Relation, n: int) -> list[ModuleVector]:
    """Module relations of one crossing.

    The relation is rotated so that its smallest line comes first.  For each
    later factor ``m_j = x_{i_j}^{w_j}`` this emits ``[x_{i_j}, u P u^-1]`` where
    ``P`` is the left-to-right product of the other factors in cyclic order
    starting after ``j`` and ``u = w_j``.
    """
    lines = list(rel.lines)
    conj = list(rel.conjugators)
    r = len(lines)
    mn = lines.index(min(lines))
    lines = lines[mn:] + lines[:mn]
    conj = conj[mn:] + conj[:mn]
    factors = [words.conjugate((lines[k],), conj[k]) for k in range(r)]
    out = []
    for j in range(1, r):
        u = conj[j]
        others = factors[j + 1 :] + factors[:j]
        w = words.multiply(u, *others, words.inverse(u))
        out.append(comm_expand(lines[j], w, n))
    return out


def presentation_vectors(p: Presentation) -> list[ModuleVector]:
    out = []
    for rel in p.relations:
        out.extend(point_relations(rel, p.n_generators))
    return out


# ---------------------------------------------------------------------------
# Reduction to a basis of M_1


@dataclass
class ReductionMatrix:
    n: int
    pairs: list[tuple[int, int]]
    pivot_pairs: list[tuple[int, int]]
    basis_pairs: list[tuple[int, int]]
    # subst[b][q]: coefficient of basis pair b in the expression of pair q
    subst: list[list[TruncSeries]]

    def reduce(self, v: ModuleVector) -> list:
        """Coordinates of ``v`` on the basis pairs, as truncated series."""
        col = {p: k for k, p in enumerate(self.pairs)}
        out = []
        for row in self.subst:
            acc = TruncSeries.const(0, self.n)
            for q, s in v.entries.items():
                e = row[col[q]]
                if not e.is_zero():
                    acc = acc + s * e
            out.append(acc)
        return out


def combinatorial_basis(p: Presentation) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` with no crossing having ``i`` as its smallest line and
    ``j`` among its other lines."""
    used = set()
    for rel in p.relations:
        v = sorted(rel.lines)
        for j in v[1:]:
            used.add((v[0], j))
    return [q for q in pair_list(p.n_generators) if q not in used]


def reduction_matrix(point_vectors: Sequence[ModuleVector], n: int) -> ReductionMatrix:
    pairs = pair_list(n)
    u_full = [v.dense() for v in point_vectors]
    u0 = [[s.c0 for s in row] for row in u_full]
    h, trans, pivots = hermite_form(u0)
    if len(pivots) != len(point_vectors):
        raise RankMismatch(f"{len(pivots)} pivots for {len(point_vectors)} point relations")
    for i, c in enumerate(pivots):
        if h[i][c] not in (1, -1):
            raise NonUnitPivot(f"pivot {h[i][c]} at pair {pairs[c]}: torsion in M_1")
    zero = TruncSeries.const(0, n)
    rows = []
    for trow in trans:
        acc = [zero] * len(pairs)
        for f, urow in zip(trow, u_full):
            if f:
                acc = [a + s * f for a, s in zip(acc, urow)]
        rows.append(acc)
    for i, c in enumerate(pivots):
        inv = rows[i][c].unit_inverse()
        rows[i] = [s * inv for s in rows[i]]
        for k in range(len(rows)):
            if k != i and not rows[k][c].is_zero():
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[i])]
    pivot_set = set(pivots)
    basis_cols = [c for c in range(len(pairs)) if c not in pivot_set]
    subst = []
    for b in basis_cols:
        row = []
        for q in range(len(pairs)):
            if q == b:
                row.append(TruncSeries.const(1, n))
            elif q in pivot_set:
                i = pivots.index(q)
                row.append(-rows[i][b])
            else:
                row.append(zero)
        subst.append(row)
    return ReductionMatrix(
        n=n,
        pairs=pairs,
        pivot_pairs=[pairs[c] for c in pivots],
        basis_pairs=[pairs[c] for c in basis_cols],
        subst=subst,
    )


def is_lattice_basis(point_vectors: Sequence[ModuleVector], basis: Sequence[tuple[int, int]], n: int) -> bool:
    """Whether the classes of ``x_b`` (b in basis) form a Z-basis of M_1."""
    pairs = pair_list(n)
    keep = set(basis)
    others = [k for k, p in enumerate(pairs) if p not in keep]
    u0 = [[v[pairs[k]].c0 for k in others] for v in point_vectors]
    if len(u0) != len(others):
        return False
    snf = smith_normal_form(u0, transforms=False)
    return snf.rank == len(others) and all(d == 1 for d in snf.invariant_factors)


# ---------------------------------------------------------------------------
# Jacobi relations and gr^1 M_2


def sigma_coefficients(coords: Sequence[TruncSeries]) -> list:
    """Flatten the degree-one parts: basis coordinate major, s index minor."""
    return [a for s in coords for a in s.lin]


def jacobi_matrix(n: int, reduction: ReductionMatrix) -> IntMatrix:
    rows = []
    for i, j, k in combinations(range(1, n + 1), 3):
        v = (
            signed_pair(j, k, n).scale(TruncSeries.sigma(i, n))
            + signed_pair(k, i, n).scale(TruncSeries.sigma(j, n))
            + signed_pair(i, j, n).scale(TruncSeries.sigma(k, n))
        )
        rows.append([int(x) for x in sigma_coefficients(reduction.reduce(v))])
    return rows


@dataclass
class AlexanderData:
    presentation: Presentation
    point_vectors: list[ModuleVector]
    reduction: ReductionMatrix
    combinatorial_basis: list[tuple[int, int]]
    jacobi: IntMatrix
    jacobi_snf: SmithDecomposition

    @property
    def n(self) -> int:
        return self.presentation.n_generators

    @property
    def m1_rank(self) -> int:
        return len(self.reduction.pairs) - len(self.reduction.pivot_pairs)

    @property
    def jacobi_rank(self) -> int:
        return self.jacobi_snf.rank

    @property
    def gr1_rank(self) -> int:
        return len(self.jacobi[0]) - self.jacobi_snf.rank if self.jacobi else 0

    @property
    def torsion_free(self) -> bool:
        return all(d == 1 for d in self.jacobi_snf.invariant_factors)


def alexander_invariant(source: WiringDiagram | Presentation) -> AlexanderData:
    pres = relations(source) if isinstance(source, WiringDiagram) else source
    n = pres.n_generators
    vectors = presentation_vectors(pres)
    red = reduction_matrix(vectors, n)
    comb = combinatorial_basis(pres)
    if len(comb) != len(red.basis_pairs) or not is_lattice_basis(vectors, comb, n):
        raise RankMismatch("the combinatorial pair set is not a basis of M_1")
    jac = jacobi_matrix(n, red)
    return AlexanderData(pres, vectors, red, comb, jac, smith_normal_form(jac))


def m1_rank(w: WiringDiagram) -> int:
    return alexander_invariant(w).m1_rank


def gr1_rank(w: WiringDiagram) -> int:
    return alexander_invariant(w).gr1_rank


def combinatorial_m1_rank(points: Iterable[Iterable[int]], n_lines: int, infinity: int) -> int:
    """``C(n_lines - 1, 2) - sum (m_P - 1)`` over points avoiding the line at infinity."""
    affine = n_lines - 1
    total = affine * (affine - 1) // 2
    for p in points:
        p = set(p)
        if infinity not in p:
            total -= len(p) - 1
    return total
