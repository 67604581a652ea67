from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrtop.combinatorics import (
    LineCombinatorics,
    PairInNoPoint,
    PairInTwoPoints,
    UndersizedPoint,
    apply_perm,
    automorphisms,
    builtin_g91,
    cycles_of,
    multiplicity_census,
    points_of_multiplicity,
    validate,
)


def rational_combinatorics(lines):
    """Incidence data of lines ``a x + b y + c z = 0`` with rational coefficients."""
    def cross(u, v):
        return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])

    def norm(p):
        lead = next(x for x in p if x)
        return tuple(Fraction(x, 1) / lead for x in p)

    pts = {}
    for (a, u), (b, v) in combinations(enumerate(lines, start=1), 2):
        pts.setdefault(norm(cross(u, v)), set()).update((a, b))
    return LineCombinatorics.from_points(len(lines), [sorted(s) for s in pts.values()])


def brute_automorphisms(c):
    target = Counter(c.points)
    return sorted(p for p in permutations(c.lines) if apply_perm(p, c.points) == target)


def test_g91_validates_and_census(g91):
    validate(g91)
    assert len(g91.points) == 27
    assert multiplicity_census(g91) == {5: 1, 4: 4, 3: 5, 2: 17}
    assert len(points_of_multiplicity(g91, 3)) == 10


def test_g91_has_trivial_automorphism_group(g91):
    assert automorphisms(g91) == [tuple(range(1, 13))]


def test_g91_minus_line_12():
    c = builtin_g91().remove_line(12)
    validate(c)
    auts = automorphisms(c)
    assert len(auts) == 4
    gen = (2, 3, 4, 1, 6, 5, 8, 9, 10, 7, 11)
    assert gen in auts
    assert cycles_of(gen) == [(1, 2, 3, 4), (5, 6), (7, 8, 9, 10)]
    # the group is cyclic, generated by gen
    powers, p = set(), tuple(range(1, 12))
    for _ in range(4):
        p = tuple(gen[x - 1] for x in p)
        powers.add(p)
    assert powers == set(auts)


def test_validate_errors():
    with pytest.raises(PairInNoPoint):
        validate(LineCombinatorics.from_points(3, [[1, 2], [2, 3]]))
    with pytest.raises(PairInTwoPoints):
        validate(LineCombinatorics.from_points(3, [[1, 2, 3], [1, 2]]))
    with pytest.raises(UndersizedPoint):
        validate(LineCombinatorics.from_points(2, [[1, 2], [1]]))


def test_json_roundtrip(g91):
    again = LineCombinatorics.from_json(g91.to_json())
    assert again.point_sets() == g91.point_sets()


COMPLETE_QUADRILATERAL = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, -1), (1, 0, -1), (1, -1, 0)]


def test_complete_quadrilateral_symmetry():
    quad = rational_combinatorics(COMPLETE_QUADRILATERAL)
    validate(quad)
    assert multiplicity_census(quad) == {3: 4, 2: 3}
    # S_4 acting on the four triple points
    assert len(automorphisms(quad)) == 24


def test_generic_lines_symmetry():
    assert len(automorphisms(rational_combinatorics([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]))) == 24


small_lines = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(any),
    min_size=3,
    max_size=6,
)


def _distinct(lines):
    for u, v in combinations(lines, 2):
        if all(u[i] * v[j] == u[j] * v[i] for i in range(3) for j in range(3)):
            return False
    return True


@settings(max_examples=200, deadline=None)
@given(small_lines.filter(_distinct))
def test_automorphisms_match_brute_force(lines):
    c = rational_combinatorics(lines)
    validate(c)
    assert automorphisms(c) == brute_automorphisms(c)


@settings(max_examples=20, deadline=None)
@given(st.permutations(range(1, 12)))
def test_relabelling_preserves_group_order(perm):
    c = builtin_g91().remove_line(12)
    relabelled = LineCombinatorics.from_points(11, [[perm[x - 1] for x in p] for p in c.points])
    assert len(automorphisms(relabelled)) == 4


def test_restrict_and_points_through(g91):
    assert sorted(map(sorted, g91.points_through(12))) == [
        [1, 4, 5, 9, 12], [2, 8, 11, 12], [3, 12], [6, 12], [7, 12], [10, 12]
    ]
    traces = g91.restrict([1, 4, 5])
    assert frozenset({1, 4, 5}) in traces
