"""Line combinatorics: lines, their incidence points, and automorphisms."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence


class CombinatoricsError(ValueError):
    pass


class PairInNoPoint(CombinatoricsError):
    def __init__(self, l1: int, l2: int):
        super().__init__(f"lines {l1} and {l2} share no point")
        self.pair = (l1, l2)


class PairInTwoPoints(CombinatoricsError):
    def __init__(self, l1: int, l2: int, p: frozenset, q: frozenset):
        super().__init__(f"lines {l1} and {l2} both lie on {sorted(p)} and {sorted(q)}")
        self.pair = (l1, l2)
        self.points = (p, q)


class UndersizedPoint(CombinatoricsError):
    def __init__(self, p: frozenset):
        super().__init__(f"point {sorted(p)} has fewer than two lines")
        self.point = p


@dataclass(frozen=True)
class LineCombinatorics:
    n_lines: int
    points: tuple[frozenset[int], ...]

    @classmethod
    def from_points(cls, n_lines: int, points: Sequence[Sequence[int]]) -> "LineCombinatorics":
        return cls(n_lines, tuple(frozenset(p) for p in points))

    @property
    def lines(self) -> range:
        return range(1, self.n_lines + 1)

    def point_sets(self) -> set[frozenset[int]]:
        return set(self.points)

    def points_through(self, line: int) -> list[frozenset[int]]:
        return [p for p in self.points if line in p]

    def restrict(self, lines: Sequence[int]) -> list[frozenset[int]]:
        """Traces of the points on a subset of lines (traces of size >= 2)."""
        keep = set(lines)
        out = []
        for p in self.points:
            t = p & keep
            if len(t) >= 2:
                out.append(frozenset(t))
        return out

    def remove_line(self, line: int) -> "LineCombinatorics":
        """Delete a line and renumber the ones above it down by one."""
        pts = []
        for p in self.points:
            q = p - {line}
            if len(q) >= 2:
                pts.append(frozenset(x - (x > line) for x in q))
        return LineCombinatorics(self.n_lines - 1, tuple(pts))

    def to_json(self) -> dict:
        return {"n_lines": self.n_lines, "points": [sorted(p) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict | str) -> "LineCombinatorics":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_points(int(data["n_lines"]), data["points"])


_G91_POINTS = [
    [1, 4, 5, 9, 12], [1, 2, 6, 10], [2, 3, 5, 7], [3, 4, 6, 8], [2, 8, 11, 12],
    [1, 7, 11], [3, 9, 11], [4, 10, 11], [5, 8, 10], [6, 7, 9],
    [5, 6], [5, 11], [6, 11], [1, 3], [2, 4],
    [1, 8], [2, 9], [3, 10], [4, 7],
    [7, 8], [7, 10], [8, 9], [9, 10],
    [3, 12], [6, 12], [7, 12], [10, 12],
]


def builtin_g91() -> LineCombinatorics:
    return LineCombinatorics.from_points(12, _G91_POINTS)


def validate(c: LineCombinatorics) -> None:
    """Raise unless every point has two lines and every pair of lines lies on
    exactly one point."""
    owner: dict[tuple[int, int], frozenset[int]] = {}
    for p in c.points:
        if len(p) < 2:
            raise UndersizedPoint(p)
        for x in p:
            if not 1 <= x <= c.n_lines:
                raise CombinatoricsError(f"line {x} out of range 1..{c.n_lines}")
        for pair in combinations(sorted(p), 2):
            if pair in owner:
                raise PairInTwoPoints(*pair, owner[pair], p)
            owner[pair] = p
    for pair in combinations(c.lines, 2):
        if pair not in owner:
            raise PairInNoPoint(*pair)


def points_of_multiplicity(c: LineCombinatorics, m_min: int) -> list[frozenset[int]]:
    return [p for p in c.points if len(p) >= m_min]


def multiplicity_census(c: LineCombinatorics) -> dict[int, int]:
    return dict(sorted(Counter(len(p) for p in c.points).items(), reverse=True))


def apply_perm(perm: Sequence[int], points) -> Counter:
    """Image of a point multiset under ``L -> perm[L-1]``."""
    return Counter(frozenset(perm[x - 1] for x in p) for p in points)


def _fingerprint(c: LineCombinatorics, line: int) -> tuple[int, ...]:
    return tuple(sorted(len(p) for p in c.points_through(line)))


def automorphisms(c: LineCombinatorics) -> list[tuple[int, ...]]:
    """All line permutations preserving the point multiset, sorted.

    Backtracking assigns images line by line; a candidate image must carry the
    same multiplicity fingerprint and must keep every point spanned by already
    assigned lines mapped onto a point of the same multiplicity.
    """
    n = c.n_lines
    fp = {L: _fingerprint(c, L) for L in c.lines}
    # the point through each pair of lines
    through: dict[tuple[int, int], frozenset[int]] = {}
    for p in c.points:
        for a, b in combinations(sorted(p), 2):
            through[a, b] = through[b, a] = p
    target = Counter(c.points)
    found: list[tuple[int, ...]] = []
    image = [0] * (n + 1)
    used = [False] * (n + 1)

    def consistent(line: int) -> bool:
        img = image[line]
        for other in range(1, line):
            p = through[line, other]
            q = through[img, image[other]]
            if len(p) != len(q):
                return False
            # assigned members of p must land in q
            for x in p:
                if x < line and image[x] not in q:
                    return False
        return True

    def extend(line: int) -> None:
        if line > n:
            perm = tuple(image[1:])
            if apply_perm(perm, c.points) == target:
                found.append(perm)
            return
        for cand in c.lines:
            if used[cand] or fp[cand] != fp[line]:
                continue
            image[line] = cand
            if consistent(line):
                used[cand] = True
                extend(line + 1)
                used[cand] = False
        image[line] = 0

    extend(1)
    return sorted(found)


def cycles_of(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Nontrivial cycles of a 1-based permutation, each starting at its minimum."""
    seen = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start - 1]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x - 1]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out
