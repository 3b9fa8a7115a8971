"""Exact scalars: rationals (``fractions.Fraction``) and sparse polynomials.

Every number in the package is either a :class:`~fractions.Fraction` (or a
plain ``int``) or a :class:`Poly` with rational coefficients.  Both support
``+``, ``-``, ``*`` and ``==`` with each other, so algorithms are written once
and run over either ring.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple, Union

__all__ = [
    "Fraction",
    "Indeterminate",
    "Poly",
    "Scalar",
    "as_scalar",
    "format_rational",
    "is_zero",
    "parse_rational",
    "poly_coefficient",
    "var",
]


class Indeterminate(NamedTuple):
    """Structured polynomial variable.

    ``kind`` separates families of variables ("t" for functional values,
    "q"/"r"/"s" for product parameters).  For functional values ``index`` is
    the factor (algebra) index, ``word`` the word whose value the variable
    stands for and ``label`` the component in ``[d]``.
    """

    kind: str
    index: int = 0
    word: tuple = ()
    label: int = 0

    def __repr__(self) -> str:
        if self.kind == "t":
            w = "".join(f"x{getattr(a, 'gen', a)}" for a in self.word)
            return f"t[{self.index},{w},{self.label}]"
        if self.index or self.word or self.label:
            return f"{self.kind}{self.index}"
        return self.kind


Monomial = Tuple[Tuple[Any, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _as_mono(mono: Union[Monomial, Iterable[Any], Mapping[Any, int]]) -> Monomial:
    """Normalize a monomial given as a mapping, a multiset iterable or a sorted tuple."""
    if isinstance(mono, Mapping):
        counts = dict(mono)
    else:
        counts: Dict[Any, int] = {}
        for v in mono:
            if isinstance(v, Poly):
                (m, c), = v._terms.items()
                if c != 1 or len(m) != 1 or m[0][1] != 1:
                    raise ValueError(f"{v!r} is not a single indeterminate")
                v = m[0][0]
            counts[v] = counts.get(v, 0) + 1
    return tuple(sorted((v, e) for v, e in counts.items() if e))


class Poly:
    """Sparse commutative polynomial with rational coefficients.

    Terms are stored as ``{monomial: coefficient}`` where a monomial is a
    sorted tuple of ``(variable, exponent)`` pairs; the empty tuple is the
    constant term.  Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Any] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @classmethod
    def variable(cls, v) -> "Poly":
        return cls({((v, 1),): 1})

    @classmethod
    def _lift(cls, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.const(other)
        return None

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items()))

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, mono) -> Fraction:
        return self._terms.get(_as_mono(mono), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = Poly._lift(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        t = dict(self._terms)
        for m, c in o._terms.items():
            t[m] = t.get(m, 0) + c
        return Poly(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = Poly._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Poly._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._terms or not other._terms:
            return Poly()
        t: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Poly(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        """Exact division by a nonzero rational or by a single-term polynomial."""
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Poly) and len(other._terms) == 1:
            (dm, dc), = other._terms.items()
            dd = dict(dm)
            t = {}
            for m, c in self._terms.items():
                md = dict(m)
                for v, e in dd.items():
                    if md.get(v, 0) < e:
                        raise ArithmeticError(f"{self!r} is not divisible by {other!r}")
                    md[v] -= e
                t[_as_mono(md)] = c / dc
            return Poly(t)
        return NotImplemented

    def evaluate(self, subs: Mapping[Any, Any]):
        """Substitute scalars for variables; unmapped variables stay symbolic."""
        total: Any = Fraction(0)
        for m, c in self._terms.items():
            term: Any = c
            for v, e in m:
                term = term * (subs[v] ** e if v in subs else Poly.variable(v) ** e)
            total = total + term
        return total

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        o = Poly._lift(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "*".join(repr(v) if e == 1 else f"{v!r}^{e}" for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


Scalar = Union[int, Fraction, Poly]


def var(kind: str, index: int = 0, word: tuple = (), label: int = 0) -> Poly:
    """Polynomial consisting of the single indeterminate with the given key."""
    return Poly.variable(Indeterminate(kind, index, tuple(word), label))


def is_zero(x) -> bool:
    return not x


def as_scalar(x) -> Scalar:
    """Coerce ints, strings ("p/q") and Fractions to an exact scalar."""
    if isinstance(x, Poly):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating point scalars are not allowed")
    return Fraction(x)


def poly_coefficient(p: Scalar, mono) -> Fraction:
    """Coefficient of ``mono`` (a multiset of indeterminates) in ``p``.

    Rationals are treated as constant polynomials.
    """
    if isinstance(p, Poly):
        return p.coefficient(mono)
    return Fraction(p) if not _as_mono(mono) else Fraction(0)


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise ValueError("empty rational literal")
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"not an exact rational literal: {s!r}")
    return Fraction(s)


def format_rational(x) -> str:
    if isinstance(x, Poly):
        if not x.is_constant():
            raise TypeError("symbolic polynomials have no external serialization")
        x = x.constant_term()
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
