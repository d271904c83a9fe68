"""Braid words as presentations of oriented links.

A braid word on ``n`` strands is a sequence of non-zero integers: ``a > 0``
stands for the generator ``sigma_a`` and ``a < 0`` for its inverse.  Strands
are numbered by their starting position ``1..n`` at the bottom of the braid,
letters are read bottom-up, and the closure joins the top of each position to
the bottom of the same position.

Crossing picture (fixed once for the whole package): at ``sigma_i`` the
strand entering at position ``i`` passes over the one entering at ``i+1``;
at ``sigma_i^-1`` the strand entering at ``i+1`` is on top.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "BraidWord",
    "ComponentStructure",
    "parse_braid",
    "components",
    "exponent_sum",
    "crossing_components",
    "crossing_layers",
    "extract_sublink",
    "modify",
    "switch",
    "smooth",
    "mirror",
    "cycle",
    "conjugate",
    "stabilize",
    "compose",
    "random_braid",
]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.strands, int) or self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0:
                raise ValueError("letter 0 is not a generator")
            if abs(a) >= self.strands:
                raise ValueError(f"letter {a} needs more than {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def to_text(self) -> str:
        return "{" + ",".join(str(a) for a in self.letters) + "}"

    def canonical(self) -> str:
        """Text form that also pins the strand count."""
        return f"{self.strands}:{self.to_text()}"

    def __str__(self) -> str:
        return self.to_text()

    def permutation(self) -> tuple[int, ...]:
        """``perm[p]`` is the top position (0-based) of the strand starting at ``p``."""
        where = list(range(self.strands))  # where[strand] = current position
        at = list(range(self.strands))  # at[position] = strand
        for a in self.letters:
            i = abs(a) - 1
            left, right = at[i], at[i + 1]
            at[i], at[i + 1] = right, left
            where[left], where[right] = i + 1, i
        return tuple(where)


_BRACED = re.compile(r"^\{(.*)\}$", re.S)


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``{1,-2,...}`` or whitespace/comma separated integers."""
    body = text.strip()
    m = _BRACED.match(body)
    if m:
        body = m.group(1)
    pieces = [p for p in re.split(r"[\s,]+", body) if p]
    letters = []
    for piece in pieces:
        if not re.fullmatch(r"[+-]?\d+", piece):
            raise ValueError(f"malformed braid letter {piece!r}")
        letters.append(int(piece))
    if any(a == 0 for a in letters):
        raise ValueError("letter 0 is not a generator")
    needed = max((abs(a) for a in letters), default=0) + 1
    if strands is None:
        strands = needed
    elif strands < needed:
        raise ValueError(f"{strands} strands is too few for letter index {needed - 1}")
    return BraidWord(strands, tuple(letters))


@dataclass(frozen=True)
class ComponentStructure:
    component_of: tuple[int, ...]  # indexed by starting position 0..n-1, ids 1..c
    count: int
    linking: tuple[tuple[Fraction, ...], ...]  # (c x c), indexed by id - 1

    def lk(self, i: int, j: int) -> int:
        return int(self.linking[i - 1][j - 1])

    def strands_of(self, cid: int) -> list[int]:
        return [p for p, c in enumerate(self.component_of) if c == cid]

    def total_linking(self) -> int:
        return sum(self.lk(i, j) for i in range(1, self.count + 1) for j in range(i + 1, self.count + 1))


def _strand_components(w: BraidWord) -> tuple[tuple[int, ...], int]:
    perm = w.permutation()
    comp = [0] * w.strands
    count = 0
    for start in range(w.strands):
        if comp[start]:
            continue
        count += 1
        p = start
        while not comp[p]:
            comp[p] = count
            p = perm[p]
    return tuple(comp), count


def _walk(w: BraidWord):
    """Yield ``(position, letter, strand_left, strand_right)`` for each crossing."""
    at = list(range(w.strands))
    for pos, a in enumerate(w.letters):
        i = abs(a) - 1
        yield pos, a, at[i], at[i + 1]
        at[i], at[i + 1] = at[i + 1], at[i]


def components(w: BraidWord) -> ComponentStructure:
    comp, count = _strand_components(w)
    twice = [[0] * count for _ in range(count)]
    for _, a, left, right in _walk(w):
        ci, cj = comp[left] - 1, comp[right] - 1
        if ci != cj:
            sign = 1 if a > 0 else -1
            twice[ci][cj] += sign
            twice[cj][ci] += sign
    linking = []
    for row in twice:
        values = tuple(Fraction(v, 2) for v in row)
        assert all(v.denominator == 1 for v in values), "non-integral linking number"
        linking.append(values)
    return ComponentStructure(comp, count, tuple(linking))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if a > 0 else -1 for a in w.letters)


def _check_position(w: BraidWord, position: int) -> None:
    if not 0 <= position < len(w.letters):
        raise IndexError(f"crossing position {position} out of range")


def crossing_components(w: BraidWord, position: int) -> tuple[int, int, int]:
    """Components meeting at a crossing (lower id first) and its sign."""
    _check_position(w, position)
    comp, _ = _strand_components(w)
    for pos, a, left, right in _walk(w):
        if pos == position:
            low, high = sorted((comp[left], comp[right]))
            return low, high, (1 if a > 0 else -1)
    raise AssertionError("unreachable")


def crossing_layers(w: BraidWord) -> list[tuple[int, int, int]]:
    """For every crossing, ``(over component, under component, sign)``."""
    comp, _ = _strand_components(w)
    out = []
    for _, a, left, right in _walk(w):
        if a > 0:
            out.append((comp[left], comp[right], 1))
        else:
            out.append((comp[right], comp[left], -1))
    return out


def extract_sublink(w: BraidWord, keep: Iterable[int]) -> BraidWord:
    """Braid whose closure is the sublink made of the components in ``keep``."""
    keep = set(keep)
    if not keep:
        raise ValueError("cannot extract an empty sublink")
    comp, count = _strand_components(w)
    if not keep <= set(range(1, count + 1)):
        raise ValueError(f"unknown component ids {sorted(keep - set(range(1, count + 1)))}")
    kept = [comp[p] in keep for p in range(w.strands)]
    at = list(range(w.strands))
    letters = []
    for a in w.letters:
        i = abs(a) - 1
        left, right = at[i], at[i + 1]
        if kept[left] and kept[right]:
            rank = sum(1 for p in range(i) if kept[at[p]]) + 1
            letters.append(rank if a > 0 else -rank)
        at[i], at[i + 1] = right, left
    return BraidWord(sum(kept), tuple(letters))


def switch(w: BraidWord, position: int) -> BraidWord:
    _check_position(w, position)
    letters = list(w.letters)
    letters[position] = -letters[position]
    return BraidWord(w.strands, tuple(letters))


def smooth(w: BraidWord, position: int) -> BraidWord:
    _check_position(w, position)
    return BraidWord(w.strands, w.letters[:position] + w.letters[position + 1 :])


def mirror(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-a for a in w.letters))


def cycle(w: BraidWord) -> BraidWord:
    if not w.letters:
        return w
    return BraidWord(w.strands, w.letters[1:] + w.letters[:1])


def conjugate(w: BraidWord, letter: int) -> BraidWord:
    if letter == 0 or abs(letter) >= w.strands:
        raise ValueError(f"letter {letter} is not a generator on {w.strands} strands")
    return BraidWord(w.strands, (letter,) + w.letters + (-letter,))


def stabilize(w: BraidWord, sign: int) -> BraidWord:
    if sign not in (1, -1):
        raise ValueError("stabilization sign must be +1 or -1")
    return BraidWord(w.strands + 1, w.letters + (sign * w.strands,))


def modify(w: BraidWord, action: str, arg: int | None = None) -> BraidWord:
    """Dispatch by name: switch, smooth, mirror, cycle, conjugate, stabilize."""
    if action == "switch":
        return switch(w, arg)
    if action == "smooth":
        return smooth(w, arg)
    if action == "mirror":
        return mirror(w)
    if action == "cycle":
        return cycle(w)
    if action == "conjugate":
        return conjugate(w, arg)
    if action == "stabilize":
        return stabilize(w, arg)
    raise ValueError(f"unknown braid action {action!r}")


def _shift(letters: Sequence[int], by: int) -> tuple[int, ...]:
    return tuple(a + by if a > 0 else a - by for a in letters)


def compose(w1: BraidWord, w2: BraidWord, mode: str = "disjoint") -> BraidWord:
    if mode == "disjoint":
        return BraidWord(w1.strands + w2.strands, w1.letters + _shift(w2.letters, w1.strands))
    if mode == "connected_sum":
        if components(w1).count != 1 or components(w2).count != 1:
            raise ValueError("connected sum needs two knot closures")
        return BraidWord(
            w1.strands + w2.strands - 1, w1.letters + _shift(w2.letters, w1.strands - 1)
        )
    raise ValueError(f"unknown composition mode {mode!r}")


def random_braid(rng: random.Random, max_strands: int = 4, max_length: int = 10,
                 min_strands: int = 1) -> BraidWord:
    n = rng.randint(min_strands, max_strands)
    if n == 1:
        return BraidWord(1, ())
    length = rng.randint(0, max_length)
    letters = tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length))
    return BraidWord(n, letters)
