"""Letters, words and block words (basis monomials of free products).

A :class:`Letter` is a triple ``(gen, face, owner)``.  ``owner`` says which
factor algebra of a free product the letter belongs to and ``face`` which
of the ``m`` faces of that algebra.  Because a free product of free algebras
is again a free algebra on the disjoint union of the alphabets, every element
of ``A_1 ⊔ ... ⊔ A_k`` is handled as a flat tuple of letters; the block
structure is recovered on demand with :func:`blocks`.
"""

from __future__ import annotations

import itertools
import re
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, NamedTuple, Sequence, Tuple

__all__ = [
    "BlockWord",
    "Letter",
    "Word",
    "all_words",
    "blocks",
    "bw_degree",
    "bw_multiply",
    "eps_of",
    "flatten",
    "format_word",
    "is_alternating",
    "lc_add",
    "lc_mul",
    "lc_scale",
    "parse_letter",
    "parse_word",
    "retag",
    "unflatten",
]


class Letter(NamedTuple):
    gen: int
    face: int = 1
    owner: int = 1

    def __repr__(self) -> str:
        return format_letter(self)


Word = Tuple[Letter, ...]
BlockWord = Tuple[Tuple[int, Word], ...]


# -- serialization ----------------------------------------------------------

_LETTER_RE = re.compile(r"^x(\d+)(?:@f(\d+))?(?:#a(\d+))?$")


def format_letter(a: Letter) -> str:
    s = f"x{a.gen}"
    if a.face != 1:
        s += f"@f{a.face}"
    if a.owner != 1:
        s += f"#a{a.owner}"
    return s


def parse_letter(s: str) -> Letter:
    m = _LETTER_RE.match(s.strip())
    if not m:
        raise ValueError(f"bad letter {s!r}; expected x<i>[@f<face>][#a<owner>]")
    gen, face, owner = m.groups()
    return Letter(int(gen), int(face or 1), int(owner or 1))


def format_word(w: Sequence[Letter]) -> str:
    return " ".join(format_letter(a) for a in w)


def parse_word(s: str) -> Word:
    toks = s.split()
    if not toks:
        raise ValueError("the empty word is not a word")
    return tuple(parse_letter(t) for t in toks)


# -- enumeration --------------------------------------------------------------

def all_words(alphabet: Sequence[Letter], max_degree: int, min_degree: int = 1) -> Iterator[Word]:
    """All words over ``alphabet`` with ``min_degree <= len <= max_degree``, shortlex order."""
    alphabet = sorted(alphabet)
    for k in range(max(min_degree, 1), max_degree + 1):
        yield from itertools.product(alphabet, repeat=k)


# -- blocks ---------------------------------------------------------------------

def blocks(w: Sequence[Letter], key: Callable[[Letter], Hashable] = lambda a: a.owner) -> List[Tuple[Hashable, Word]]:
    """Split ``w`` into maximal runs on which ``key`` is constant."""
    out: List[Tuple[Hashable, Word]] = []
    for k, run in itertools.groupby(w, key):
        out.append((k, tuple(run)))
    return out


def is_alternating(eps: Sequence[Hashable]) -> bool:
    return len(eps) >= 1 and all(a != b for a, b in zip(eps, eps[1:]))


def bw_multiply(u: BlockWord, v: BlockWord) -> BlockWord:
    """Product in the free product: concatenate, merging the boundary blocks
    when they belong to the same algebra."""
    if not u:
        return tuple(v)
    if not v:
        return tuple(u)
    if u[-1][0] == v[0][0]:
        mid = (u[-1][0], u[-1][1] + v[0][1])
        return tuple(u[:-1]) + (mid,) + tuple(v[1:])
    return tuple(u) + tuple(v)


def eps_of(w: BlockWord) -> Tuple[int, ...]:
    return tuple(owner for owner, _ in w)


def bw_degree(w: BlockWord) -> int:
    return sum(len(b) for _, b in w)


def flatten(w: BlockWord) -> Word:
    """Single word over the disjoint union of the owners' alphabets."""
    return tuple(a._replace(owner=owner) for owner, word in w for a in word)


def unflatten(w: Sequence[Letter]) -> BlockWord:
    """Inverse of :func:`flatten`; block letters come back with owner 1."""
    return tuple((owner, tuple(a._replace(owner=1) for a in run)) for owner, run in blocks(w))


def retag(w: Iterable[Letter], owner: int) -> Word:
    return tuple(a._replace(owner=owner) for a in w)


# -- linear combinations of words (elements of the free algebra) ---------------

LinComb = Dict[Word, object]


def lc_add(p: LinComb, q: LinComb) -> LinComb:
    out = dict(p)
    for w, c in q.items():
        s = out.get(w, 0) + c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def lc_scale(p: LinComb, c) -> LinComb:
    if not c:
        return {}
    return {w: v * c for w, v in p.items()}


def lc_mul(p: LinComb, q: LinComb) -> LinComb:
    out: LinComb = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = w1 + w2
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out
