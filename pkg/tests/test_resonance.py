from itertools import combinations

import pytest
import sympy

from arrtop.combinatorics import LineCombinatorics
from arrtop.resonance import (
    FingerprintCollision,
    NonDiagonalSolution,
    PencilKind,
    all_pencils,
    ceva_pencils,
    component_of,
    is_triangle,
    multiple_point_pencil,
    rigidity_check,
    triangle_table,
)

from test_combinatorics import COMPLETE_QUADRILATERAL, rational_combinatorics

# lines, dim, triangles, triangles through the quintuple point
TABLE = [
    ((1, 7, 11), 2, 18, 7),
    ((3, 9, 11), 2, 22, 8),
    ((4, 10, 11), 2, 21, 7),
    ((5, 8, 10), 2, 24, 7),
    ((6, 7, 9), 2, 16, 6),
    ((1, 2, 6, 10), 3, 53, 12),
    ((2, 3, 5, 7), 3, 49, 13),
    ((2, 8, 11, 12), 3, 57, 15),
    ((3, 4, 6, 8), 3, 50, 12),
    ((1, 4, 5, 9, 12), 4, 91, 91),
    ((1, 2, 3, 4, 5, 6), 2, 24, 8),
    ((1, 2, 4, 6, 8, 12), 2, 24, 8),
    ((1, 2, 4, 10, 11, 12), 2, 20, 7),
    ((1, 2, 5, 6, 7, 9), 2, 14, 7),
    ((1, 2, 5, 7, 11, 12), 2, 14, 7),
    ((1, 2, 5, 8, 10, 12), 2, 20, 8),
    ((1, 3, 5, 7, 9, 11), 2, 14, 7),
    ((1, 4, 5, 6, 8, 10), 2, 19, 6),
    ((2, 3, 4, 5, 8, 12), 2, 20, 8),
    ((2, 3, 5, 6, 8, 10), 2, 14, 0),
    ((2, 3, 5, 9, 11, 12), 2, 18, 9),
    ((2, 4, 6, 8, 10, 11), 2, 15, 0),
    ((3, 4, 5, 6, 7, 9), 2, 12, 6),
    ((3, 4, 8, 9, 11, 12), 2, 13, 7),
    ((4, 5, 8, 10, 11, 12), 2, 15, 7),
]


def net_oracle(c, six):
    """3-nets on six lines: partitions into three pairs where any two lines
    from different pairs meet at a point containing one line of each pair."""
    through = {}
    for p in c.points:
        for a, b in combinations(sorted(p), 2):
            through[a, b] = through[b, a] = p
    found = set()
    for pairing in _pairings(list(six)):
        ok = True
        for f, g in combinations(pairing, 2):
            for a in f:
                for b in g:
                    trace = through[a, b] & set(six)
                    if sorted(len(trace & set(h)) for h in pairing) != [1, 1, 1]:
                        ok = False
        if ok:
            found.add(frozenset(frozenset(f) for f in pairing))
    return found


def _pairings(xs):
    if not xs:
        yield []
        return
    a = xs[0]
    for k in range(1, len(xs)):
        rest = xs[1:k] + xs[k + 1 :]
        for tail in _pairings(rest):
            yield [(a, xs[k])] + tail


def test_table_reproduced(g91_table):
    got = [
        (r.pencil.lines, r.dim, r.triangles, r.triangles_through_quintuple) for r in g91_table.rows
    ]
    assert got == TABLE


def test_pencil_inventory(g91):
    pencils = all_pencils(g91)
    assert sum(p.kind is PencilKind.MULTIPLE_POINT for p in pencils) == 10
    assert sum(p.kind is PencilKind.CEVA for p in pencils) == 15
    assert sum(len(p.fibers) == 5 for p in pencils) == 1


def test_ceva_matches_net_oracle(g91):
    ours = {frozenset(p.fibers) for p in ceva_pencils(g91)}
    oracle = set()
    for six in combinations(g91.lines, 6):
        oracle |= net_oracle(g91, six)
    assert ours == oracle
    assert len(ours) == 15


def test_ceva_complete_quadrilateral():
    quad = rational_combinatorics(COMPLETE_QUADRILATERAL)
    pencils = ceva_pencils(quad)
    assert len(pencils) == 1
    assert {frozenset(p.fibers) for p in pencils} == net_oracle(quad, tuple(quad.lines))


def test_ceva_generic_lines():
    generic = LineCombinatorics.from_points(6, [list(p) for p in combinations(range(1, 7), 2)])
    assert ceva_pencils(generic) == []


def test_component_dimensions(g91):
    for p in all_pencils(g91):
        comp = component_of(p, 12)
        assert comp.dim == len(p.fibers) - 1
        assert sympy.Matrix(list(comp.basis)).rank() == comp.dim
        assert all(sum(v) == 0 for v in comp.basis)


def test_quintuple_component_basis():
    comp = component_of(multiple_point_pencil({1, 4, 5, 9, 12}), 12)
    assert comp.dim == 4
    e = lambda k: [int(i == k) for i in range(1, 13)]  # noqa: E731
    expected = [tuple(a - b for a, b in zip(e(k), e(1))) for k in (4, 5, 9, 12)]
    assert list(comp.basis) == expected


def test_triangles_match_sympy_rank(g91):
    comps = [component_of(p, 12) for p in all_pencils(g91)]
    table = triangle_table(g91)
    oracle = []
    for t in combinations(range(len(comps)), 3):
        m = sympy.Matrix([list(v) for k in t for v in comps[k].basis])
        if m.rank() == sum(comps[k].dim for k in t) - 1:
            oracle.append(t)
    assert table.triangles == oracle


def test_triangle_symmetric(g91):
    comps = [component_of(p, 12) for p in all_pencils(g91)[:8]]
    for a, b, c in combinations(comps, 3):
        assert is_triangle(a, b, c) == is_triangle(c, a, b) == is_triangle(b, c, a)


def test_quintuple_row_counts_only_its_triangles(g91_table):
    quint = g91_table.row_for((1, 4, 5, 9, 12))
    assert quint.triangles == quint.triangles_through_quintuple == 91
    for r in g91_table.rows:
        assert r.triangles_through_quintuple <= r.triangles


def test_parallel_table_matches(g91, g91_table):
    assert triangle_table(g91, jobs=2).rows == g91_table.rows


def test_rigidity_g91(g91, g91_table):
    rep = rigidity_check(g91, g91_table)
    assert rep.rigid
    assert rep.admissible == ["+1", "-1"]
    quads = [rep.fingerprints[k] for k in [(1, 2, 6, 10), (2, 3, 5, 7), (2, 8, 11, 12), (3, 4, 6, 8)]]
    assert quads == [(53, 12), (49, 13), (57, 15), (50, 12)]
    assert len(set(quads)) == 4


def test_rigidity_generic_five_lines():
    generic = LineCombinatorics.from_points(5, [list(p) for p in combinations(range(1, 6), 2)])
    with pytest.raises(NonDiagonalSolution) as exc:
        rigidity_check(generic)
    w = exc.value.witness
    assert len(w) == 5 and all(len(row) == 5 for row in w)


def test_rigidity_symmetric_configuration_collides():
    quad = rational_combinatorics(COMPLETE_QUADRILATERAL)
    with pytest.raises(FingerprintCollision):
        rigidity_check(quad)


def test_table_json(g91_table):
    row = g91_table.rows[0].to_json()
    assert row == {
        "lines": [1, 7, 11],
        "kind": "multiple-point",
        "dim": 2,
        "triangles": 18,
        "triangles_through_quintuple": 7,
    }
