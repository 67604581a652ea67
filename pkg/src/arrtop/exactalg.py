"""Exact linear algebra over the integers and the rationals.

Matrices are plain row-major ``list[list[int]]`` (or ``Fraction``) values;
nothing here ever touches floating point.  The heavy routines work on numpy
object arrays so that row operations run in C loops while the entries stay
arbitrary-precision Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np
from sympy import factorint

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


class DimensionMismatch(ValueError):
    pass


@dataclass
class SmithDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    D: IntMatrix
    U: IntMatrix | None
    V: IntMatrix | None
    rank: int

    @property
    def invariant_factors(self) -> list[int]:
        return [self.D[k][k] for k in range(self.rank)]


@dataclass
class SolveReport:
    consistent_over_Q: bool
    particular_solution: list[Fraction] | None
    nullspace_basis: list[list[int]]
    nullspace_dim: int
    integer_solvable: bool
    denominator_primes: set[int] = field(default_factory=set)
    rank: int = 0
    augmented_rank: int = 0
    invariant_factors: list[int] = field(default_factory=list)


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    return rows, (len(m[0]) if rows else 0)


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    rows, inner = shape(a)
    inner_b, cols = shape(b)
    if inner != inner_b:
        raise DimensionMismatch(f"cannot multiply {rows}x{inner} by {inner_b}x{cols}")
    bt = list(zip(*b)) if cols else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def _obj(m: Sequence[Sequence], cols: int | None = None) -> np.ndarray:
    rows = len(m)
    if cols is None:
        cols = len(m[0]) if rows else 0
    arr = np.empty((rows, cols), dtype=object)
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            arr[i, j] = int(x)
    return arr


def _tolist(arr: np.ndarray) -> IntMatrix:
    return [[int(x) for x in row] for row in arr]


def _eye(n: int) -> np.ndarray:
    arr = np.zeros((n, n), dtype=object)
    for i in range(n):
        arr[i, i] = 1
    return arr


# ---------------------------------------------------------------------------
# Echelon forms


def echelon_division_free(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, list[int]]:
    """Fraction-free (Bareiss) row echelon form.

    Returns ``(echelon, transform, pivot_cols)`` with ``transform @ m == echelon``.
    Every division performed is exact, so all intermediate values stay integral;
    the pivot in row ``k`` is the leading ``(k+1)``-minor of the permuted matrix.
    """
    rows, cols = shape(m)
    a = [[int(x) for x in row] for row in m]
    t = identity(rows)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            t[r], t[piv] = t[piv], t[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            a[i] = [(p * x - f * y) // prev for x, y in zip(a[i], a[r])]
            t[i] = [(p * x - f * y) // prev for x, y in zip(t[i], t[r])]
        # rows above the current pivot row are not touched; rows below that were
        # already zero in this column are still rescaled, keeping divisions exact
        prev = p
        pivots.append(c)
        r += 1
    return a, t, pivots


def hermite_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, list[int]]:
    """Row Hermite normal form with a unimodular transform.

    Returns ``(H, U, pivot_cols)`` with ``U @ m == H``, ``det U = ±1``, positive
    pivots, and entries above each pivot reduced into ``[0, pivot)``.
    """
    rows, cols = shape(m)
    a = [[int(x) for x in row] for row in m]
    u = identity(rows)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        live = [i for i in range(r, rows) if a[i][c] != 0]
        if not live:
            continue
        while True:
            live = [i for i in range(r, rows) if a[i][c] != 0]
            best = min(live, key=lambda i: (abs(a[i][c]), i))
            if best != r:
                a[r], a[best] = a[best], a[r]
                u[r], u[best] = u[best], u[r]
            p = a[r][c]
            clean = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
    return a, u, pivots


# ---------------------------------------------------------------------------
# Smith normal form


def _nearest_quotient(a: int, p: int) -> int:
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1 if (r > 0) == (p > 0) else -1
    return q


_nearest = np.frompyfunc(_nearest_quotient, 2, 1)


def _smith(a: np.ndarray, u: np.ndarray | None, v: np.ndarray | None, rhs: np.ndarray | None) -> int:
    """In-place Smith reduction; row operations are mirrored on ``u`` and ``rhs``,
    column operations on ``v``.  Returns the rank."""
    rows, cols = a.shape

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        a[[i, j]] = a[[j, i]]
        if u is not None:
            u[[i, j]] = u[[j, i]]
        if rhs is not None:
            rhs[[i, j]] = rhs[[j, i]]

    def swap_cols(i: int, j: int) -> None:
        if i == j:
            return
        a[:, [i, j]] = a[:, [j, i]]
        if v is not None:
            v[:, [i, j]] = v[:, [j, i]]

    t = 0
    while t < min(rows, cols):
        sub = a[t:, t:]
        nz_r, nz_c = np.nonzero(sub)
        if len(nz_r) == 0:
            break
        mags = np.abs(sub[nz_r, nz_c])
        k = int(np.argmin(mags))  # first minimum == lowest (row, col)
        swap_rows(t, t + int(nz_r[k]))
        swap_cols(t, t + int(nz_c[k]))
        while True:
            p = a[t, t]
            # clear column t below the pivot
            below = np.nonzero(a[t + 1 :, t])[0] + t + 1
            if len(below):
                q = _nearest(a[below, t], p)
                a[below] -= np.outer(q, a[t])
                if u is not None:
                    u[below] -= np.outer(q, u[t])
                if rhs is not None:
                    rhs[below] -= q * rhs[t]
                left = np.nonzero(a[t + 1 :, t])[0]
                if len(left):
                    cand = left + t + 1
                    i = int(cand[np.argmin(np.abs(a[cand, t]))])
                    swap_rows(t, i)
                    continue
            # clear row t right of the pivot
            right = np.nonzero(a[t, t + 1 :])[0] + t + 1
            if len(right):
                q = _nearest(a[t, right], p)
                a[:, right] -= np.outer(a[:, t], q)
                if v is not None:
                    v[:, right] -= np.outer(v[:, t], q)
                left = np.nonzero(a[t, t + 1 :])[0]
                if len(left):
                    cand = left + t + 1
                    j = int(cand[np.argmin(np.abs(a[t, cand]))])
                    swap_cols(t, j)
                    continue
            if abs(p) != 1 and t + 1 < rows and t + 1 < cols:
                rest = a[t + 1 :, t + 1 :]
                bad_r, _ = np.nonzero(rest % p)
                if len(bad_r):
                    i = int(bad_r[0]) + t + 1
                    a[t] += a[i]
                    if u is not None:
                        u[t] += u[i]
                    if rhs is not None:
                        rhs[t] += rhs[i]
                    continue
            break
        if a[t, t] < 0:
            a[t] = -a[t]
            if u is not None:
                u[t] = -u[t]
            if rhs is not None:
                rhs[t] = -rhs[t]
        t += 1
    return t


def smith_normal_form(m: Sequence[Sequence[int]], transforms: bool = True) -> SmithDecomposition:
    """Smith normal form ``U @ m @ V == D``.

    Pivot rule: the nonzero entry of least absolute value in the remaining
    block, ties broken by lowest (row, col).  The result is deterministic.
    """
    rows, cols = shape(m)
    a = _obj(m, cols)
    u = _eye(rows) if transforms else None
    v = _eye(cols) if transforms else None
    rank = _smith(a, u, v, None)
    return SmithDecomposition(
        D=_tolist(a),
        U=_tolist(u) if u is not None else None,
        V=_tolist(v) if v is not None else None,
        rank=rank,
    )


def prime_factors(n: int) -> set[int]:
    return set(factorint(abs(n))) if abs(n) > 1 else set()


def solve_integer_system(a: Sequence[Sequence[int]], b: Sequence[int]) -> SolveReport:
    """Solve ``a @ x = b`` over Q and decide solvability over Z.

    The particular solution is ``V @ D^+ @ U @ b``.  Every rational solution
    differs from it by a Z-combination of kernel columns of ``V`` in the
    coordinates ``y = V^-1 x``, so the primes dividing the denominators of
    ``y = D^+ U b`` are exactly those that must be inverted to solve.
    """
    rows, cols = shape(a)
    if len(b) != rows:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {rows}")
    arr = _obj(a, cols)
    v = _eye(cols)
    rhs = np.empty(rows, dtype=object)
    rhs[:] = [int(x) for x in b]
    rank = _smith(arr, None, v, rhs)
    diag = [int(arr[k, k]) for k in range(rank)]
    consistent = all(int(x) == 0 for x in rhs[rank:])
    basis = [[int(v[i, j]) for i in range(cols)] for j in range(rank, cols)]
    report = SolveReport(
        consistent_over_Q=consistent,
        particular_solution=None,
        nullspace_basis=basis,
        nullspace_dim=cols - rank,
        integer_solvable=False,
        rank=rank,
        augmented_rank=rank if consistent else rank + 1,
        invariant_factors=diag,
    )
    if not consistent:
        return report
    y = [Fraction(int(rhs[k]), diag[k]) for k in range(rank)]
    x = [sum((int(v[i, k]) * y[k] for k in range(rank)), Fraction(0)) for i in range(cols)]
    primes: set[int] = set()
    for q in y:
        primes |= prime_factors(q.denominator)
    report.particular_solution = x
    report.denominator_primes = primes
    report.integer_solvable = not primes
    return report


# ---------------------------------------------------------------------------
# Rational elimination


def rref(m: Sequence[Sequence]) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form over Q; zero rows are dropped."""
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = shape(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def rank_q(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def nullspace_q(m: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
    """Basis of ``{x : m @ x = 0}`` over Q, one vector per free column."""
    if cols is None:
        cols = shape(m)[1]
    r, pivots = rref(m) if len(m) else ([], [])
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for row, p in zip(r, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def primitive(v: Sequence[Fraction | int]) -> list[int]:
    """Scale a rational vector to a primitive integer vector, leading sign kept."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def canonical_form(v: Sequence[int]) -> tuple[int, ...]:
    """Divide by the gcd and make the leading nonzero entry positive."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    lead = next(x for x in v if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in v)
