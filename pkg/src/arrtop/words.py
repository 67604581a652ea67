"""Free-group words and the Artin action of braids on them.

Words are tuples of nonzero integers in Tietze form: ``k`` is the generator
``x_k`` and ``-k`` its inverse.  Braid words use the same encoding for the
Artin generators ``sigma_k``.  Stored free words are always freely reduced.

The braid group acts on the right: ``sigma_k`` sends ``x_k`` to
``x_k x_{k+1} x_k^-1`` and ``x_{k+1}`` to ``x_k``, fixing the other
generators, and a braid word acts letter by letter from left to right.
"""

from __future__ import annotations

from typing import Iterable, Sequence

FreeWord = tuple[int, ...]
BraidWord = tuple[int, ...]
Perm = tuple[int, ...]


class RangeError(ValueError):
    pass


class RankMismatch(ValueError):
    pass


class NotConjugateToGenerator(ValueError):
    pass


def reduce_word(letters: Iterable[int]) -> FreeWord:
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a Tietze letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inverse(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(-a for a in reversed(w))


def multiply(*words: Sequence[int]) -> FreeWord:
    return reduce_word(a for w in words for a in w)


def conjugate(w: Sequence[int], by: Sequence[int]) -> FreeWord:
    """``by^-1 * w * by`` (exponent notation ``w^by``)."""
    return multiply(inverse(by), w, by)


def check_word(w: Sequence[int], n: int) -> None:
    for a in w:
        if not 1 <= abs(a) <= n:
            raise RankMismatch(f"letter {a} outside a free group of rank {n}")


def check_braid(b: Sequence[int], n: int) -> None:
    for a in b:
        if not 1 <= abs(a) <= n - 1:
            raise RankMismatch(f"braid letter {a} outside B_{n}")


def _generator_images(k: int) -> dict[int, FreeWord]:
    """Images of ``x_k``, ``x_{k+1}`` under ``sigma_k`` (k > 0) or its inverse."""
    if k > 0:
        return {k: (k, k + 1, -k), k + 1: (k,)}
    k = -k
    return {k: (k + 1,), k + 1: (-(k + 1), k, k + 1)}


def _act_letter(k: int, w: FreeWord) -> FreeWord:
    images = _generator_images(k)
    out: list[int] = []
    for a in w:
        img = images.get(abs(a))
        if img is None:
            seg: Sequence[int] = (a,)
        elif a > 0:
            seg = img
        else:
            seg = inverse(img)
        for c in seg:
            if out and out[-1] == -c:
                out.pop()
            else:
                out.append(c)
    return tuple(out)


def braid_act(b: Sequence[int], w: Sequence[int], n: int | None = None) -> FreeWord:
    """Right action ``w * b`` of a braid word on a free word."""
    if n is not None:
        check_braid(b, n)
        check_word(w, n)
    out = reduce_word(w)
    for k in b:
        out = _act_letter(k, out)
    return out


def half_twist(first: int, last: int, n: int) -> BraidWord:
    """Positive half-twist on the consecutive strands ``first..last``.

    Built as ``(s_f..s_{l-1})(s_f..s_{l-2})...(s_f)``; its permutation reverses
    the block.
    """
    if not 1 <= first <= last <= n:
        raise RangeError(f"bad strand block {first}..{last} for {n} strands")
    word: list[int] = []
    for k in range(last - 1, first - 1, -1):
        word.extend(range(first, k + 1))
    return tuple(word)


def braid_permutation(b: Sequence[int], n: int) -> Perm:
    """Strand permutation of a braid: the strand starting at position ``i``
    ends at position ``perm[i-1]``.

    Products compose left to right: the permutation of ``b1 b2`` is that of
    ``b1`` followed by that of ``b2``.
    """
    check_braid(b, n)
    pos = list(range(1, n + 1))  # pos[i-1] = current position of strand i
    where = list(range(n + 1))  # where[p] = strand currently at position p
    for a in b:
        k = abs(a)
        s, t = where[k], where[k + 1]
        where[k], where[k + 1] = t, s
        pos[s - 1], pos[t - 1] = k + 1, k
    return tuple(pos)


def compose(p: Perm, q: Perm) -> Perm:
    """First ``p``, then ``q``."""
    return tuple(q[i - 1] for i in p)


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p, start=1):
        out[x - 1] = i
    return tuple(out)


def permute_order(order: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Carry the labels sitting at each strand position through the braid."""
    p = braid_permutation(b, len(order))
    out = [0] * len(order)
    for i, label in enumerate(order):
        out[p[i] - 1] = label
    return tuple(out)


def conjugate_normal_form(w: Sequence[int]) -> tuple[int, FreeWord]:
    """Write ``w`` as ``x_gen`` conjugated by a word: ``w = c^-1 x_gen c``.

    Returns ``(gen, c)``; ``gen`` is a signed letter.
    """
    w = reduce_word(w)
    if len(w) % 2 == 0:
        raise NotConjugateToGenerator(f"{list(w)} has even length")
    m = (len(w) - 1) // 2
    head, gen, tail = w[:m], w[m], w[m + 1 :]
    if inverse(tail) != head:
        raise NotConjugateToGenerator(f"{list(w)} has non-inverse flanks")
    return gen, tail
