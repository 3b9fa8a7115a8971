"""Truncated graded commutative bialgebra ``S(E)``, ``E = (T(V)^{⊔m})^d``.

Generators of ``S(E)`` are labelled words ``(M, l)``: ``M`` a non-empty word
over the flattened alphabet (letters ``Letter(gen, face, owner=1)``) and ``l``
in ``[d]``.  A :data:`SymMonomial` is a sorted tuple of generators; the empty
tuple is the unit.  The degree of a monomial is the total word length.

The coproduct of a generator substitutes ``x -> i_1 x + i_2 x`` in ``M``,
splits each of the resulting words into runs of equal (side, face) and sends
it through the coefficient table of the product: the partition
``(pi_1, pi_2)`` with constant ``alpha`` contributes
``alpha^(l) · prod_{pi_1} (K(a), l') ⊗ prod_{pi_2} (K(a), l')``.

Functionals on ``S(E)`` are lazy (:class:`SymFunctional`); values are computed
when asked for and then cached.  Everything that needs the whole truncated
basis (derivation checks, serialization) enumerates it from an explicit
alphabet.
"""

from __future__ import annotations

import itertools
import json
import re
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from .functionals import TruncationError
from .products import ProductSpec, table_slice
from .scalars import Scalar, as_scalar, format_rational
from .words import Letter, Word, all_words, blocks, format_word, parse_word

__all__ = [
    "LachsBialgebra",
    "SymFunctional",
    "SymMonomial",
    "Tensor2",
    "format_monomial",
    "mono_degree",
    "mono_mul",
    "parse_monomial",
]

Generator = Tuple[Word, int]
SymMonomial = Tuple[Generator, ...]
Tensor2 = Dict[Tuple[SymMonomial, SymMonomial], Scalar]

UNIT: SymMonomial = ()


def mono_mul(a: SymMonomial, b: SymMonomial) -> SymMonomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def mono_degree(u: SymMonomial) -> int:
    return sum(len(w) for w, _ in u)


def generator(word: Sequence[Letter], label: int = 1) -> SymMonomial:
    return ((tuple(a._replace(owner=1) for a in word), label),)


def format_monomial(u: SymMonomial) -> str:
    if not u:
        return "1"
    return " * ".join(f"({format_word(w)})#{l}" for w, l in u)


_GEN_RE = re.compile(r"^\(([^)]*)\)#(\d+)$")


def parse_monomial(s: str) -> SymMonomial:
    s = s.strip()
    if s == "1":
        return UNIT
    gens = []
    for tok in s.split("*"):
        m = _GEN_RE.match(tok.strip())
        if not m:
            raise ValueError(f"bad generator {tok!r}; expected (x1 x2)#l")
        gens.append((parse_word(m.group(1)), int(m.group(2))))
    return tuple(sorted(gens))


def _add(t: dict, key, c) -> None:
    if not c:
        return
    v = t.get(key, 0) + c
    if v:
        t[key] = v
    else:
        t.pop(key, None)


class SymFunctional:
    """Lazy linear functional on ``S(E)`` known up to degree ``N``."""

    def __init__(self, fn: Callable[[SymMonomial], Scalar], N: int, name: str = ""):
        self._fn = fn
        self.N = N
        self.name = name
        self._cache: Dict[SymMonomial, Scalar] = {}

    def __call__(self, u: SymMonomial) -> Scalar:
        u = tuple(u)
        hit = self._cache.get(u)
        if hit is None:
            if mono_degree(u) > self.N:
                raise TruncationError(f"degree {mono_degree(u)} exceeds truncation {self.N}")
            hit = self._fn(u)
            self._cache[u] = hit
        return hit

    @classmethod
    def from_dict(cls, values: Mapping[SymMonomial, object], N: int, name: str = "") -> "SymFunctional":
        vals = {tuple(k): as_scalar(v) for k, v in values.items()}
        return cls(lambda u: vals.get(u, Fraction(0)), N, name)

    def __add__(self, other: "SymFunctional") -> "SymFunctional":
        return SymFunctional(lambda u: self(u) + other(u), min(self.N, other.N))

    def __sub__(self, other: "SymFunctional") -> "SymFunctional":
        return SymFunctional(lambda u: self(u) - other(u), min(self.N, other.N))

    def __neg__(self) -> "SymFunctional":
        return self.scale(-1)

    def scale(self, c) -> "SymFunctional":
        return SymFunctional(lambda u: c * self(u), self.N)

    def to_json(self, basis: Iterable[SymMonomial]) -> dict:
        return {format_monomial(u): format_rational(v) for u in basis if (v := self(u))}

    def dumps(self, basis: Iterable[SymMonomial]) -> str:
        return json.dumps(self.to_json(basis), sort_keys=True, indent=2) + "\n"

    def __repr__(self) -> str:
        return f"SymFunctional({self.name or 'anonymous'}, N={self.N})"


class LachsBialgebra:
    """``S((T(V)^{⊔m})^d)`` with the coproduct induced by ``spec``, truncated at degree ``N``.

    ``alphabet`` is only needed for basis enumeration; coproducts and
    convolutions work for any letters.
    """

    def __init__(self, spec: ProductSpec, N: int, d: int | None = None, alphabet: Iterable[Letter] | None = None):
        self.spec = spec
        self.N = N
        self.d = d or spec.d
        self.alphabet = tuple(sorted({a._replace(owner=1) for a in alphabet})) if alphabet is not None else None
        self._gen_cache: Dict[Generator, Tensor2] = {}
        self._mono_cache: Dict[SymMonomial, Tensor2] = {}
        self.delta = SymFunctional(lambda u: Fraction(1) if not u else Fraction(0), N, "delta")
        self.zero = SymFunctional(lambda u: Fraction(0), N, "zero")

    # -- basis ----------------------------------------------------------------
    def generators(self, max_degree: int | None = None) -> List[SymMonomial]:
        if self.alphabet is None:
            raise ValueError("basis enumeration needs an alphabet")
        top = self.N if max_degree is None else max_degree
        return [((w, l),) for w in all_words(self.alphabet, top) for l in range(1, self.d + 1)]

    def basis(self, max_degree: int | None = None) -> List[SymMonomial]:
        """Every monomial of degree ``<= max_degree``, unit first."""
        top = self.N if max_degree is None else max_degree
        gens = sorted(g for (g,) in self.generators(top))
        out: List[SymMonomial] = []

        def rec(start: int, prefix: list, deg: int):
            out.append(tuple(prefix))
            for i in range(start, len(gens)):
                g = gens[i]
                if deg + len(g[0]) <= top:
                    rec(i, prefix + [g], deg + len(g[0]))

        rec(0, [], 0)
        return sorted(out, key=lambda u: (mono_degree(u), u))

    # -- coproduct -----------------------------------------------------------------
    def coproduct_generator(self, g: Generator) -> Tensor2:
        hit = self._gen_cache.get(g)
        if hit is not None:
            return hit
        word, l = g
        if len(word) > self.N:
            raise TruncationError(f"generator of degree {len(word)} exceeds truncation {self.N}")
        out: Tensor2 = {}
        for sides in itertools.product((1, 2), repeat=len(word)):
            mixed = tuple(a._replace(owner=s) for a, s in zip(word, sides))
            runs = blocks(mixed, lambda a: (a.owner, a.face))
            eps = tuple(key for key, _ in runs)
            for pi, alpha in table_slice(self.spec, eps).items():
                c = alpha[l - 1]
                if not c:
                    continue
                left: List[Generator] = []
                right: List[Generator] = []
                for idx, lab in pi.blocks:
                    side = eps[idx[0] - 1][0]
                    u = tuple(a._replace(owner=1) for p in idx for a in runs[p - 1][1])
                    (left if side == 1 else right).append((u, lab))
                _add(out, (tuple(sorted(left)), tuple(sorted(right))), c)
        self._gen_cache[g] = out
        return out

    def coproduct(self, u: SymMonomial) -> Tensor2:
        """``Delta(u)``, multiplicative over the generators of ``u``."""
        u = tuple(u)
        hit = self._mono_cache.get(u)
        if hit is not None:
            return hit
        if not u:
            out: Tensor2 = {(UNIT, UNIT): Fraction(1)}
        else:
            rest = self.coproduct(u[1:])
            out = {}
            for (a1, a2), c1 in self.coproduct_generator(u[0]).items():
                for (b1, b2), c2 in rest.items():
                    _add(out, (mono_mul(a1, b1), mono_mul(a2, b2)), c1 * c2)
        self._mono_cache[u] = out
        return out

    def counit(self, u: SymMonomial) -> Scalar:
        return self.delta(u)

    def check_coassociative(self, u: SymMonomial) -> bool:
        left: dict = {}
        right: dict = {}
        for (a, b), c in self.coproduct(u).items():
            for (a1, a2), c1 in self.coproduct(a).items():
                _add(left, (a1, a2, b), c * c1)
            for (b1, b2), c2 in self.coproduct(b).items():
                _add(right, (a, b1, b2), c * c2)
        return left == right

    def check_counit(self, u: SymMonomial) -> bool:
        lhs: dict = {}
        rhs: dict = {}
        for (a, b), c in self.coproduct(u).items():
            if not a:
                _add(lhs, b, c)
            if not b:
                _add(rhs, a, c)
        target = {tuple(u): Fraction(1)}
        return lhs == target and rhs == target

    def check_graded(self, u: SymMonomial) -> bool:
        g = mono_degree(u)
        return all(mono_degree(a) + mono_degree(b) == g for a, b in self.coproduct(u))

    # -- convolution calculus ----------------------------------------------------------
    def convolve(self, F1: SymFunctional, F2: SymFunctional) -> SymFunctional:
        def fn(u):
            total: Scalar = Fraction(0)
            for (a, b), c in self.coproduct(u).items():
                x = F1(a)
                if x:
                    total = total + c * x * F2(b)
            return total

        return SymFunctional(fn, min(F1.N, F2.N, self.N), f"({F1.name} * {F2.name})")

    def power(self, F: SymFunctional, k: int) -> SymFunctional:
        out = self.delta
        for _ in range(k):
            out = self.convolve(out, F)
        return out

    def ln_star(self, Phi: SymFunctional) -> SymFunctional:
        """Convolution logarithm; the series stops at the degree of the argument."""
        if Phi(UNIT) != 1:
            raise ValueError("ln_star needs a functional with value 1 at the unit")
        nil = Phi - self.delta
        powers = [self.delta]

        def fn(u):
            g = mono_degree(u)
            while len(powers) <= g:
                powers.append(self.convolve(powers[-1], nil))
            total: Scalar = Fraction(0)
            for k in range(1, g + 1):
                total = total + Fraction((-1) ** (k + 1), k) * powers[k](u)
            return total

        return SymFunctional(fn, min(Phi.N, self.N), f"ln({Phi.name})")

    def exp_star(self, Psi: SymFunctional) -> SymFunctional:
        if Psi(UNIT) != 0:
            raise ValueError("exp_star needs a functional vanishing at the unit")
        powers = [self.delta]

        def fn(u):
            g = mono_degree(u)
            while len(powers) <= g:
                powers.append(self.convolve(powers[-1], Psi))
            total: Scalar = Fraction(0)
            for k in range(0, g + 1):
                total = total + Fraction(1, factorial(k)) * powers[k](u)
            return total

        return SymFunctional(fn, min(Psi.N, self.N), f"exp({Psi.name})")

    def antipode_compose(self, Phi: SymFunctional, check_basis: Iterable[SymMonomial] | None = None) -> SymFunctional:
        """``Phi ∘ A`` for a character ``Phi``, computed as ``exp(-ln Phi)``.

        ``check_basis`` (default: all pairs when an alphabet is known) is used
        to reject inputs that are not multiplicative.
        """
        if check_basis is None and self.alphabet is not None:
            check_basis = self.basis()
        if check_basis is not None and not self.is_multiplicative(Phi, check_basis):
            raise ValueError("antipode_compose needs a multiplicative functional")
        return self.exp_star(-self.ln_star(Phi))

    def is_multiplicative(self, Phi: SymFunctional, basis: Iterable[SymMonomial] | None = None) -> bool:
        basis = list(basis if basis is not None else self.basis())
        if Phi(UNIT) != 1:
            return False
        for a, b in itertools.combinations_with_replacement(basis, 2):
            if a and b and mono_degree(a) + mono_degree(b) <= self.N:
                if Phi(mono_mul(a, b)) != Phi(a) * Phi(b):
                    return False
        return True

    def is_delta_derivation(self, Psi: SymFunctional, basis: Iterable[SymMonomial] | None = None) -> bool:
        """``Psi(ab) = Psi(a) delta(b) + delta(a) Psi(b)`` on all basis pairs within the truncation."""
        basis = list(basis if basis is not None else self.basis())
        for a, b in itertools.combinations_with_replacement(basis, 2):
            if mono_degree(a) + mono_degree(b) > self.N:
                continue
            if Psi(mono_mul(a, b)) != Psi(a) * self.delta(b) + self.delta(a) * Psi(b):
                return False
        return True

    def commutator(self, F1: SymFunctional, F2: SymFunctional) -> SymFunctional:
        return self.convolve(F1, F2) - self.convolve(F2, F1)
