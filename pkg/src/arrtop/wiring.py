"""Braided wiring diagrams and their compilation into group presentations.

A diagram lists, for each crossing, the braid travelled since the previous
crossing and the labels of the lines meeting there.  Compiling it tracks the
running braid from the base fibre; each crossing yields a relation saying the
product of the conjugated meridians of its lines is central among them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from . import words
from .words import FreeWord


class MalformedWiring(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    braid: tuple[int, ...]
    lines: tuple[int, ...]


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    initial_order: tuple[int, ...]  # strand position -> line label
    crossings: tuple[Crossing, ...]

    @classmethod
    def from_lists(cls, order: Sequence[int], crossings: Sequence) -> "WiringDiagram":
        return cls(
            len(order),
            tuple(order),
            tuple(Crossing(tuple(b), tuple(v)) for b, v in crossings),
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "initial_order": list(self.initial_order),
            "crossings": [{"braid": list(c.braid), "lines": list(c.lines)} for c in self.crossings],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "WiringDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        w = cls(
            int(data["n"]),
            tuple(data["initial_order"]),
            tuple(Crossing(tuple(c["braid"]), tuple(c["lines"])) for c in data["crossings"]),
        )
        if len(w.initial_order) != w.n or sorted(w.initial_order) != list(range(1, w.n + 1)):
            raise MalformedWiring("initial_order must be a permutation of 1..n")
        return w


@dataclass(frozen=True)
class Relation:
    """``x_{i1}^{w1} ... x_{ir}^{wr}`` commutes with each of its factors,
    where ``x^w`` means ``w^-1 x w``."""

    lines: tuple[int, ...]
    conjugators: tuple[FreeWord, ...]

    def meridians(self) -> list[FreeWord]:
        return [words.conjugate((i,), w) for i, w in zip(self.lines, self.conjugators)]


@dataclass
class Presentation:
    n_generators: int
    relations: list[Relation] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n_generators": self.n_generators,
            "relations": [
                {"lines": list(r.lines), "conjugators": [list(w) for w in r.conjugators]}
                for r in self.relations
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        return cls(
            int(data["n_generators"]),
            [
                Relation(tuple(r["lines"]), tuple(tuple(w) for w in r["conjugators"]))
                for r in data["relations"]
            ],
        )

    def relator_words(self) -> list[FreeWord]:
        """Commutators ``[m_j, m_1 ... m_r]`` for j = 1..r-1, one set per relation."""
        out = []
        for rel in self.relations:
            ms = rel.meridians()
            total = words.multiply(*ms)
            for m in ms[:-1]:
                out.append(words.multiply(m, total, words.inverse(m), words.inverse(total)))
        return out


# Meridian label -> line of the 12-line combinatorics; the line L5 carries no
# meridian and plays the role of the line at infinity.
MERIDIAN_TO_LINE = {10: 7, 9: 8, 5: 12, 8: 10, 11: 11, 4: 2, 6: 6, 2: 3, 7: 9, 3: 4, 1: 1}
LINE_AT_INFINITY = 5

_XI1_ORDER = [1, 3, 7, 5, 8, 11, 4, 10, 9, 6, 2]
_XI1 = [
    [(), [10, 9]], [(), [5, 8]], [(), [5, 11, 4, 9]], [(), [5, 10]],
    [(), [5, 6]], [(), [5, 2]], [(-7, -8), [7, 8]], [(), [7, 9]], [(), [7, 4]],
    [(), [7, 10, 6]], [(), [7, 11, 2]], [(-8, -4, 7), [6, 11]],
    [(-7, -5, -6, -4, 8), [3, 8, 11]], [(), [3, 4]], [(), [3, 10]],
    [(), [3, 9, 2, 6]], [(3,), [8, 10]], [(4, 5, 2, 3, 4, -2), [1, 8, 4, 6]],
    [(), [1, 11, 10]], [(), [1, 2]], [(), [1, 9]], [(-3, -4), [8, 2]],
]

_XI2_ORDER = [1, 7, 5, 3, 4, 10, 11, 8, 2, 6, 9]
_XI2 = [
    [(), [3, 4]], [(), [3, 10]], [(), [3, 11, 8]], [(), [3, 2, 6, 9]],
    [(-5, -6, -7, -4, -5), [5, 8]], [(), [5, 11, 4, 9]], [(), [5, 10]],
    [(), [5, 6]], [(), [5, 2]], [(-4, 3, 6), [11, 6]], [(-6, -5), [9, 10]],
    [(4, 5, 4, 8, -7, 6), [2, 8]], [(7,), [7, 4]], [(), [7, 10, 6]],
    [(), [7, 8]], [(), [7, 9]], [(), [7, 2, 11]], [(-4, 5, -6, -3), [1, 4, 8, 6]],
    [(), [1, 9]], [(), [1, 11, 10]], [(), [1, 2]], [(-2, -4), [8, 10]],
]


def builtin_wiring(which: str) -> WiringDiagram:
    """``xi1`` and ``xi2``: the diagrams of the realizations for z and z^2;
    ``xi1-mirror`` is the complex-conjugate diagram of ``xi1``."""
    if which == "xi1":
        return WiringDiagram.from_lists(_XI1_ORDER, _XI1)
    if which == "xi2":
        return WiringDiagram.from_lists(_XI2_ORDER, _XI2)
    if which == "xi1-mirror":
        return mirror(builtin_wiring("xi1"))
    raise KeyError(f"unknown wiring diagram {which!r}")


def mirror(w: WiringDiagram) -> WiringDiagram:
    """Complex conjugation: every braid letter between crossings changes sign."""
    return WiringDiagram(
        w.n,
        w.initial_order,
        tuple(Crossing(tuple(-a for a in c.braid), c.lines) for c in w.crossings),
    )


def crossing_combinatorics(w: WiringDiagram) -> list[tuple[int, ...]]:
    return sorted(tuple(sorted(c.lines)) for c in w.crossings)


def relations(w: WiringDiagram) -> Presentation:
    """Compile a wiring diagram into a presentation of the fundamental group.

    Generators are the meridians of the base fibre, numbered by line label.
    The meridian at strand position ``p`` near a crossing is ``x_p`` acted on by
    the inverse of the running braid, then relabelled through the initial order.
    """
    n = w.n
    order = tuple(w.initial_order)
    running: tuple[int, ...] = ()
    snapshots = []
    for idx, c in enumerate(w.crossings):
        try:
            words.check_braid(c.braid, n)
        except words.RankMismatch as exc:
            raise MalformedWiring(f"crossing {idx}: {exc}") from None
        order = words.permute_order(order, c.braid)
        running = running + c.braid
        try:
            positions = [order.index(label) + 1 for label in c.lines]
        except ValueError:
            raise MalformedWiring(f"crossing {idx}: unknown line in {list(c.lines)}") from None
        if len(set(c.lines)) != len(c.lines) or len(c.lines) < 2:
            raise MalformedWiring(f"crossing {idx}: needs at least two distinct lines")
        if positions != list(range(positions[0], positions[0] + len(positions))):
            raise MalformedWiring(
                f"crossing {idx}: lines {list(c.lines)} sit at strand positions {positions}, "
                "not consecutive and increasing"
            )
        snapshots.append((running, c.lines, positions))
        twist = words.half_twist(positions[0], positions[-1], n)
        running = running + twist
        order = words.permute_order(order, twist)

    pres = Presentation(n)
    relabel = w.initial_order
    for idx, (braid, lines, positions) in enumerate(snapshots):
        back = words.inverse(braid)
        labels, conjugators = [], []
        for p in positions:
            image = words.braid_act(back, (p,))
            image = tuple((1 if a > 0 else -1) * relabel[abs(a) - 1] for a in image)
            try:
                gen, conj = words.conjugate_normal_form(image)
            except words.NotConjugateToGenerator as exc:
                raise MalformedWiring(f"crossing {idx}: {exc}") from None
            labels.append(gen)
            conjugators.append(conj)
        if tuple(labels) != tuple(lines):
            raise MalformedWiring(
                f"crossing {idx}: meridians belong to lines {labels}, expected {list(lines)}"
            )
        pres.relations.append(Relation(tuple(labels), tuple(conjugators)))
    return pres


def abelianization_rank(p: Presentation) -> int:
    """Rank of the free part of the abelianized group."""
    from .exactalg import smith_normal_form

    rows = []
    for word in p.relator_words():
        row = [0] * p.n_generators
        for a in word:
            row[abs(a) - 1] += 1 if a > 0 else -1
        rows.append(row)
    if not rows:
        return p.n_generators
    snf = smith_normal_form(rows, transforms=False)
    return p.n_generators - snf.rank


def relabelled_crossings(w: WiringDiagram) -> list[frozenset[int]]:
    """Crossing line sets translated to the 12-line numbering; these are the
    points off the line at infinity."""
    return [frozenset(MERIDIAN_TO_LINE[x] for x in c) for c in crossing_combinatorics(w)]
