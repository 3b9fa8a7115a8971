"""Truncated d-tuples of linear functionals on free algebras.

A :class:`Functional` stores ``d`` sparse maps from words to exact scalars,
for words of degree at most the truncation ``N``.  Anything with a ``d``
attribute and a ``__call__(word) -> tuple`` of ``d`` scalars can stand in for
a functional inside the product machinery; stored functionals are only one
such implementation (products are another, see :mod:`uauprod.products`).
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .scalars import Scalar, as_scalar, format_rational, var
from .words import Letter, LinComb, Word, all_words, format_word, lc_mul, parse_word

__all__ = [
    "Functional",
    "SchemaError",
    "Substitution",
    "TruncationError",
    "evaluate",
    "materialize",
    "pullback",
    "random_functional",
    "restrict_marginal",
    "symbolic_functional",
]


class TruncationError(ArithmeticError):
    """A value beyond the truncation degree was requested."""


class SchemaError(ValueError):
    """Malformed functional JSON; the message carries the offending path."""


def _clean(values: Mapping[Word, object]) -> Dict[Word, Scalar]:
    out = {}
    for w, c in values.items():
        c = as_scalar(c)
        if c:
            out[tuple(w)] = c
    return out


class Functional:
    """``d`` linear functionals on the free algebra over ``alphabet``, known up to degree ``N``."""

    def __init__(self, alphabet: Iterable[Letter], N: int, values: Sequence[Mapping[Word, object]] | None = None, d: int | None = None):
        self.alphabet: Tuple[Letter, ...] = tuple(sorted(set(alphabet)))
        if values is None:
            values = [{}] * (d or 1)
        if d is None:
            d = len(values)
        if d < 1 or N < 1:
            raise ValueError("need d >= 1 and N >= 1")
        if len(values) != d:
            raise ValueError(f"expected {d} components, got {len(values)}")
        self.d = d
        self.N = N
        self._letters = frozenset(self.alphabet)
        self.values: Tuple[Dict[Word, Scalar], ...] = tuple(_clean(v) for v in values)
        for comp in self.values:
            for w in comp:
                self._check(w)

    def _check(self, w: Word) -> None:
        if not w:
            raise ValueError("functionals are not evaluated on the empty word")
        if len(w) > self.N:
            raise TruncationError(f"degree {len(w)} exceeds truncation {self.N}")
        for a in w:
            if a not in self._letters:
                raise ValueError(f"letter {a!r} is outside the alphabet {self.alphabet}")

    def value(self, l: int, w: Word) -> Scalar:
        w = tuple(w)
        self._check(w)
        return self.values[l - 1].get(w, 0)

    def __call__(self, w: Word) -> Tuple[Scalar, ...]:
        w = tuple(w)
        self._check(w)
        return tuple(comp.get(w, 0) for comp in self.values)

    def words(self, max_degree: int | None = None) -> Iterable[Word]:
        return all_words(self.alphabet, self.N if max_degree is None else max_degree)

    # vector space structure ------------------------------------------------
    def _like(self, values) -> "Functional":
        return Functional(self.alphabet, self.N, values)

    def __add__(self, other: "Functional") -> "Functional":
        if not isinstance(other, Functional):
            return NotImplemented
        self._compatible(other)
        vals = []
        for a, b in zip(self.values, other.values):
            c = dict(a)
            for w, v in b.items():
                c[w] = c.get(w, 0) + v
            vals.append(c)
        return self._like(vals)

    def __neg__(self) -> "Functional":
        return self.scale(-1)

    def __sub__(self, other: "Functional") -> "Functional":
        return self + (-other)

    def scale(self, c) -> "Functional":
        return self._like([{w: v * c for w, v in comp.items()} for comp in self.values])

    def _compatible(self, other: "Functional") -> None:
        if self.d != other.d or self.alphabet != other.alphabet:
            raise ValueError("functionals live on different spaces")

    def truncate(self, N: int) -> "Functional":
        return Functional(self.alphabet, N, [{w: v for w, v in comp.items() if len(w) <= N} for comp in self.values])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functional):
            return NotImplemented
        return (self.d, self.alphabet, self.N, self.values) == (other.d, other.alphabet, other.N, other.values)

    def __repr__(self) -> str:
        nnz = sum(len(c) for c in self.values)
        return f"Functional(d={self.d}, N={self.N}, alphabet={list(self.alphabet)}, nnz={nnz})"

    # serialization -------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "d": self.d,
            "truncation": self.N,
            "alphabet": [format_word((a,)) for a in self.alphabet],
            "values": {
                str(l + 1): {format_word(w): format_rational(v) for w, v in sorted(comp.items())}
                for l, comp in enumerate(self.values)
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: dict, where: str = "$") -> "Functional":
        if not isinstance(obj, dict):
            raise SchemaError(f"{where}: expected an object")
        for key in ("d", "truncation", "alphabet", "values"):
            if key not in obj:
                raise SchemaError(f"{where}.{key}: missing")
        d, N = obj["d"], obj["truncation"]
        if not isinstance(d, int) or d < 1:
            raise SchemaError(f"{where}.d: expected a positive integer")
        if not isinstance(N, int) or N < 1:
            raise SchemaError(f"{where}.truncation: expected a positive integer")
        try:
            alphabet = [parse_word(s)[0] for s in obj["alphabet"]]
        except (ValueError, TypeError) as e:
            raise SchemaError(f"{where}.alphabet: {e}") from None
        vals: List[Dict[Word, Scalar]] = [{} for _ in range(d)]
        if not isinstance(obj["values"], dict):
            raise SchemaError(f"{where}.values: expected an object")
        for comp, table in obj["values"].items():
            if not comp.isdigit() or not 1 <= int(comp) <= d:
                raise SchemaError(f"{where}.values.{comp}: component must be in 1..{d}")
            if not isinstance(table, dict):
                raise SchemaError(f"{where}.values.{comp}: expected an object")
            for ws, vs in table.items():
                path = f"{where}.values.{comp}[{ws!r}]"
                try:
                    w = parse_word(ws)
                    v = as_scalar(str(vs))
                except (ValueError, ZeroDivisionError) as e:
                    raise SchemaError(f"{path}: {e}") from None
                vals[int(comp) - 1][w] = v
        try:
            return cls(alphabet, N, vals)
        except (ValueError, TruncationError) as e:
            raise SchemaError(f"{where}: {e}") from None

    @classmethod
    def loads(cls, text: str) -> "Functional":
        return cls.from_json(json.loads(text))


def evaluate(phi, l: int, p: LinComb) -> Scalar:
    """Linear extension of component ``l`` of ``phi`` to a combination of words."""
    total: Scalar = Fraction(0)
    for w, c in p.items():
        total = total + c * phi(w)[l - 1]
    return total


def materialize(phi, alphabet: Iterable[Letter], N: int, d: int | None = None) -> Functional:
    """Tabulate a functional-like callable on all words up to degree ``N``."""
    alphabet = tuple(sorted(set(alphabet)))
    d = d or phi.d
    vals: List[Dict[Word, Scalar]] = [{} for _ in range(d)]
    for w in all_words(alphabet, N):
        for l, v in enumerate(phi(w)):
            if v:
                vals[l][w] = v
    return Functional(alphabet, N, vals)


class Substitution:
    """Algebra homomorphism of free algebras fixed by the images of letters.

    Images are linear combinations of non-empty words, so the map preserves the
    non-unital structure; the degree of the map is the largest image degree.
    """

    def __init__(self, images: Mapping[Letter, LinComb]):
        self.images: Dict[Letter, LinComb] = {}
        for a, img in images.items():
            img = {tuple(w): c for w, c in img.items() if c}
            if any(len(w) == 0 for w in img):
                raise ValueError("letters may not be mapped to scalars outside the unitalization")
            self.images[a] = img

    @property
    def degree(self) -> int:
        return max((len(w) for img in self.images.values() for w in img), default=1)

    def __call__(self, w: Word) -> LinComb:
        out: LinComb = {(): Fraction(1)}
        for a in w:
            out = lc_mul(out, self.images.get(a, {(a,): Fraction(1)}))
        return out

    def apply(self, p: LinComb) -> LinComb:
        out: LinComb = {}
        for w, c in p.items():
            for w2, c2 in self(w).items():
                s = out.get(w2, 0) + c * c2
                if s:
                    out[w2] = s
                else:
                    out.pop(w2, None)
        return out

    def compose(self, inner: "Substitution") -> "Substitution":
        """``self ∘ inner``: apply ``inner`` first."""
        return Substitution({a: self.apply(img) for a, img in inner.images.items()})


def pullback(phi: Functional, j: Substitution, source_alphabet: Iterable[Letter] | None = None, N: int | None = None) -> Functional:
    """``phi ∘ j`` on source words of degree at most ``N``.

    ``N`` defaults to the largest degree whose images fit within ``phi``'s
    truncation; asking for more raises :class:`TruncationError`.
    """
    src = tuple(sorted(source_alphabet if source_alphabet is not None else j.images))
    if N is None:
        N = max(1, phi.N // j.degree)
    vals: List[Dict[Word, Scalar]] = [{} for _ in range(phi.d)]
    for w in all_words(src, N):
        img = j(w)
        for u in img:
            if len(u) > phi.N:
                raise TruncationError(f"image of {format_word(w)} has degree {len(u)} > {phi.N}")
        for l in range(phi.d):
            v = evaluate(phi, l + 1, img)
            if v:
                vals[l][w] = v
    return Functional(src, N, vals)


def restrict_marginal(phi, owner: int, N: int | None = None) -> Functional:
    """Restriction of a functional on a free product to the words of one owner."""
    alphabet = [a for a in getattr(phi, "alphabet", ()) if a.owner == owner]
    if N is None:
        N = phi.N
    return materialize(phi, alphabet, N, phi.d)


def symbolic_functional(alphabet: Iterable[Letter], N: int, d: int = 1, index: int = 1) -> Functional:
    """Functional whose value on ``(M, l)`` is the indeterminate ``t[index, M, l]``."""
    alphabet = tuple(sorted(set(alphabet)))
    vals = [{w: var("t", index, w, l) for w in all_words(alphabet, N)} for l in range(1, d + 1)]
    return Functional(alphabet, N, vals)


def random_functional(rng: random.Random, alphabet: Iterable[Letter], N: int, d: int = 1, *, bound: int = 5, density: float = 1.0) -> Functional:
    """Functional with random small rational values (for tests and demos)."""
    alphabet = tuple(sorted(set(alphabet)))
    vals = []
    for _ in range(d):
        comp = {}
        for w in all_words(alphabet, N):
            if rng.random() < density:
                comp[w] = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        vals.append(comp)
    return Functional(alphabet, N, vals)
