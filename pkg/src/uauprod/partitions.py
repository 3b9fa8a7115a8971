"""Labelled partitions into internally ordered blocks (the sets M(X), M_d(n), OM_d(n)).

A labelled partition of a finite set ``X`` of letter indices is a multiset of
blocks ``(B, k)`` where ``B`` is a tuple of distinct indices (a word in which
every letter occurs once), the blocks are disjoint and cover ``X``, and
``k`` is a label in ``[d]``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

__all__ = [
    "EnumerationTooLarge",
    "LabelledPartition",
    "enumerate_M",
    "enumerate_Md",
    "enumerate_OMd",
    "is_ordered",
    "parse_partition",
    "set_partitions",
]

MAX_LETTERS = 8
MAX_LABELS = 4


class EnumerationTooLarge(ValueError):
    pass


Block = Tuple[Tuple[int, ...], int]


@dataclass(frozen=True, order=True)
class LabelledPartition:
    """Blocks ``((i_1, ..., i_s), label)`` sorted by smallest letter index."""

    blocks: Tuple[Block, ...]

    def __post_init__(self):
        seen = set()
        for word, label in self.blocks:
            if not word:
                raise ValueError("empty block")
            if label < 1:
                raise ValueError("labels start at 1")
            for i in word:
                if i in seen:
                    raise ValueError(f"letter x{i} occurs twice")
                seen.add(i)
        canon = tuple(sorted(self.blocks, key=lambda b: min(b[0])))
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def of(cls, *blocks: Tuple[Sequence[int], int]) -> "LabelledPartition":
        return cls(tuple((tuple(w), k) for w, k in blocks))

    @property
    def letters(self) -> frozenset:
        return frozenset(i for w, _ in self.blocks for i in w)

    def __len__(self) -> int:
        return len(self.blocks)

    def restrict(self, letters: Iterable[int]) -> "LabelledPartition":
        keep = set(letters)
        return LabelledPartition(tuple(b for b in self.blocks if set(b[0]) <= keep))

    def format(self, labelled: bool = True) -> str:
        parts = []
        for word, label in self.blocks:
            s = "(" + " ".join(f"x{i}" for i in word) + ")"
            if labelled:
                s += f"#{label}"
            parts.append(s)
        return " * ".join(parts)

    def __str__(self) -> str:
        return self.format()


_BLOCK_RE = re.compile(r"^\(([^)]*)\)(?:#(\d+))?$")


def parse_partition(s: str) -> LabelledPartition:
    blocks = []
    for tok in s.split("*"):
        m = _BLOCK_RE.match(tok.strip())
        if not m:
            raise ValueError(f"bad block {tok!r}")
        letters = tuple(int(x.strip()[1:]) for x in m.group(1).split())
        blocks.append((letters, int(m.group(2) or 1)))
    return LabelledPartition(tuple(blocks))


def set_partitions(xs: Sequence[int]) -> Iterator[List[List[int]]]:
    """Set partitions of ``xs``; each element is inserted into an existing
    block or opens a new one."""
    xs = list(xs)
    if not xs:
        yield []
        return
    first, rest = xs[0], xs[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def _check_size(n: int, d: int = 1) -> None:
    if n > MAX_LETTERS:
        raise EnumerationTooLarge(f"{n} letters exceeds the enumeration bound {MAX_LETTERS}")
    if d > MAX_LABELS:
        raise EnumerationTooLarge(f"{d} labels exceeds the enumeration bound {MAX_LABELS}")


def _ordered_blockings(letters: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    for p in set_partitions(sorted(letters)):
        for perms in itertools.product(*(itertools.permutations(b) for b in p)):
            yield perms


def enumerate_M(letters: Sequence[int]) -> List[LabelledPartition]:
    """All of M(X) for the letter indices ``letters`` (labels all 1)."""
    letters = sorted(set(letters))
    _check_size(len(letters))
    out = {LabelledPartition(tuple((w, 1) for w in bl)) for bl in _ordered_blockings(letters)}
    return sorted(out)


def enumerate_Md(n: int | Sequence[int], d: int) -> List[LabelledPartition]:
    """All of M_d(X): every partition of M(X) with every labelling of its blocks."""
    letters = list(range(1, n + 1)) if isinstance(n, int) else sorted(set(n))
    _check_size(len(letters), d)
    out = []
    for p in enumerate_M(letters):
        words = [w for w, _ in p.blocks]
        for labels in itertools.product(range(1, d + 1), repeat=len(words)):
            out.append(LabelledPartition(tuple(zip(words, labels))))
    return sorted(out)


def is_ordered(p: LabelledPartition) -> bool:
    """True iff every block lists its letters in increasing order."""
    return all(all(a < b for a, b in zip(w, w[1:])) for w, _ in p.blocks)


def enumerate_OMd(n: int | Sequence[int], d: int) -> List[LabelledPartition]:
    return [p for p in enumerate_Md(n, d) if is_ordered(p)]
