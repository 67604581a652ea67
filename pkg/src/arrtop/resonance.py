"""Resonance components of combinatorial pencils, triangles, and rigidity.

Cohomology classes are written in the coordinates ``y_1..y_n`` dual to the
line meridians.  The component of a pencil with fibers ``F_1..F_k`` is
spanned by ``u_{F_j} - u_{F_1}`` where ``u_F`` is the sum of ``y_L`` over F.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .combinatorics import LineCombinatorics, automorphisms, points_of_multiplicity
from .exactalg import nullspace_q, rank_q


class PencilKind(str, Enum):
    MULTIPLE_POINT = "multiple-point"
    CEVA = "ceva"


@dataclass(frozen=True)
class Pencil:
    kind: PencilKind
    fibers: tuple[frozenset[int], ...]

    @property
    def lines(self) -> tuple[int, ...]:
        return tuple(sorted(set().union(*self.fibers)))

    def sort_key(self):
        order = 0 if self.kind is PencilKind.MULTIPLE_POINT else 1
        return (order, len(self.lines) if order == 0 else 0, self.lines)


@dataclass(frozen=True)
class ResonanceComponent:
    pencil: Pencil
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class TriangleRow:
    pencil: Pencil
    dim: int
    triangles: int
    triangles_through_quintuple: int

    def to_json(self) -> dict:
        return {
            "lines": list(self.pencil.lines),
            "kind": self.pencil.kind.value,
            "dim": self.dim,
            "triangles": self.triangles,
            "triangles_through_quintuple": self.triangles_through_quintuple,
        }


@dataclass
class TriangleTable:
    rows: list[TriangleRow]
    triangles: list[tuple[int, int, int]]
    # index of the pencil whose triangles define the last column
    anchor: int | None

    def row_for(self, lines: Sequence[int]) -> TriangleRow:
        key = tuple(sorted(lines))
        for r in self.rows:
            if r.pencil.lines == key:
                return r
        raise KeyError(f"no pencil on lines {list(key)}")


class FingerprintCollision(ArithmeticError):
    def __init__(self, a: Pencil, b: Pencil, fingerprint):
        super().__init__(
            f"pencils {list(a.lines)} and {list(b.lines)} share the fingerprint {fingerprint}"
        )
        self.pencils = (a, b)


class NonDiagonalSolution(ArithmeticError):
    def __init__(self, witness: list[list[Fraction]]):
        super().__init__("a lift with non-constant off-diagonal column entries survives")
        self.witness = witness


def multiple_point_pencil(point) -> Pencil:
    return Pencil(PencilKind.MULTIPLE_POINT, tuple(frozenset({x}) for x in sorted(point)))


def ceva_pencils(c: LineCombinatorics) -> list[Pencil]:
    """Six lines split into three pairs with four base points, each base point
    meeting every pair once, and no other point meeting two pairs."""
    found = set()
    for six in combinations(c.lines, 6):
        traces = [(p, p & set(six)) for p in c.points]
        traces = [(p, t) for p, t in traces if len(t) >= 2]
        first = six[0]
        for mate in six[1:]:
            rest = [x for x in six if x not in (first, mate)]
            for mate2 in rest[1:]:
                pairs = (
                    frozenset({first, mate}),
                    frozenset({rest[0], mate2}),
                    frozenset(x for x in rest[1:] if x != mate2),
                )
                if _is_ceva(traces, pairs):
                    found.add(Pencil(PencilKind.CEVA, tuple(sorted(pairs, key=sorted))))
    return sorted(found, key=Pencil.sort_key)


def _is_ceva(traces, pairs) -> bool:
    base = 0
    for _, t in traces:
        hit = [len(t & f) for f in pairs]
        if sum(1 for h in hit if h) < 2:
            continue
        if len(t) == 3 and hit == [1, 1, 1]:
            base += 1
        else:
            return False
    return base == 4


def all_pencils(c: LineCombinatorics) -> list[Pencil]:
    mult = [multiple_point_pencil(p) for p in points_of_multiplicity(c, 3)]
    return sorted(mult, key=Pencil.sort_key) + ceva_pencils(c)


def component_of(p: Pencil, n_lines: int) -> ResonanceComponent:
    def u(f):
        v = [0] * n_lines
        for x in f:
            v[x - 1] = 1
        return v

    first = u(p.fibers[0])
    basis = tuple(tuple(a - b for a, b in zip(u(f), first)) for f in p.fibers[1:])
    return ResonanceComponent(p, basis)


def is_triangle(a: ResonanceComponent, b: ResonanceComponent, c: ResonanceComponent) -> bool:
    """The sum of the three components is one dimension short of direct."""
    return rank_q(list(a.basis + b.basis + c.basis)) == a.dim + b.dim + c.dim - 1


def _triangles_chunk(args):
    comps, triples = args
    return [t for t in triples if is_triangle(*(comps[i] for i in t))]


def triangle_table(c: LineCombinatorics, jobs: int = 1) -> TriangleTable:
    pencils = all_pencils(c)
    comps = [component_of(p, c.n_lines) for p in pencils]
    triples = list(combinations(range(len(comps)), 3))
    if jobs > 1:
        chunks = [triples[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(jobs) as ex:
            parts = ex.map(_triangles_chunk, [(comps, ch) for ch in chunks])
        tri = sorted(t for part in parts for t in part)
    else:
        tri = _triangles_chunk((comps, triples))
    # the pencil of largest dimension, if unique, anchors the last column
    top = max((cp.dim for cp in comps), default=0)
    tops = [k for k, cp in enumerate(comps) if cp.dim == top]
    anchor = tops[0] if len(tops) == 1 else None
    rows = []
    for k, cp in enumerate(comps):
        mine = [t for t in tri if k in t]
        through = sum(1 for t in mine if anchor in t) if anchor is not None else 0
        rows.append(TriangleRow(cp.pencil, cp.dim, len(mine), through))
    return TriangleTable(rows, tri, anchor)


@dataclass
class RigidityReport:
    rigid: bool
    fingerprints: dict[tuple[int, ...], tuple[int, int]]
    solution_dim: int
    automorphisms: list[tuple[int, ...]]
    admissible: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rigid": self.rigid,
            "fingerprints": {
                ",".join(map(str, k)): [str(x) for x in fp] for k, fp in self.fingerprints.items()
            },
            "solution_dim": str(self.solution_dim),
            "automorphisms": [[str(x) for x in p] for p in self.automorphisms],
            "admissible": self.admissible,
        }


def rigidity_check(c: LineCombinatorics, table: TriangleTable | None = None) -> RigidityReport:
    """Decide homological rigidity from multiple-point components.

    Each multiple-point component must be fixed by every admissible map; this
    is guaranteed when the fingerprints ``(triangles, triangles through the
    anchor)`` are distinct within each dimension.  A fixed component of the
    point ``i_1..i_r`` forces rows ``i_1..i_r`` of a lift ``A`` to agree off
    the columns ``i_1..i_r``.  Rigid means every such ``A`` is diagonal up to
    adding multiples of ``(1,...,1)`` to columns.
    """
    if table is None:
        table = triangle_table(c)
    fingerprints = {}
    seen: dict[tuple, Pencil] = {}
    for r in table.rows:
        if r.pencil.kind is not PencilKind.MULTIPLE_POINT:
            continue
        fp = (r.triangles, r.triangles_through_quintuple)
        fingerprints[r.pencil.lines] = fp
        key = (r.dim, fp)
        if key in seen:
            raise FingerprintCollision(seen[key], r.pencil, fp)
        seen[key] = r.pencil

    n = c.n_lines

    def var(i, j):  # entry A[i][j], 1-based
        return (i - 1) * n + (j - 1)

    eqs = []
    for p in points_of_multiplicity(c, 3):
        pts = sorted(p)
        for col in c.lines:
            if col in p:
                continue
            for i in pts[1:]:
                row = [0] * (n * n)
                row[var(i, col)] = 1
                row[var(pts[0], col)] = -1
                eqs.append(row)
    solutions = nullspace_q(eqs, n * n) if eqs else [
        [Fraction(int(k == m)) for k in range(n * n)] for m in range(n * n)
    ]
    allowed = []
    for i in c.lines:
        row = [0] * (n * n)
        row[var(i, i)] = 1
        allowed.append(row)
    for col in c.lines:
        row = [0] * (n * n)
        for i in c.lines:
            row[var(i, col)] = 1
        allowed.append(row)
    base = rank_q(allowed)
    for s in solutions:
        if rank_q(allowed + [s]) > base:
            raise NonDiagonalSolution([list(s[k * n : (k + 1) * n]) for k in range(n)])
    auts = automorphisms(c)
    # diagonal entries are +-1 and must agree since the sum of meridians is 0
    admissible = ["+1", "-1"] if len(auts) == 1 else [f"+-1 x Aut (order {len(auts)})"]
    return RigidityReport(True, fingerprints, len(solutions), auts, admissible)
