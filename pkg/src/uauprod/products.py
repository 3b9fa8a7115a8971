"""Universal products of functionals on free products of free algebras.

The binary product ``phi_1 ⊙ phi_2`` is the lazy, memoized functional
:class:`Product`.  It evaluates words over the union of both alphabets; the
``left_owners`` set decides which letters belong to the first factor, so the
same class serves binary products, left- or right-nested n-ary products and
the convolution on ``T(V) ⊔ T(V)``.

Families (``q = 1`` and ``(r, s) = (1, 1)`` are the normal ones):

* ``tensor``       value ``q · phi_1(A) phi_2(B)`` on mixed words, ``A``/``B`` the
                   ordered products of the letters from each side;
* ``free``         free product, deformed by scale conjugation
                   ``q^{-1}((q phi_1) ⊛ (q phi_2))``;
* ``boolean``      ``c(r, s, eps) · prod phi(a_i)``;
* ``monotone``     ``phi_1(prod of side-1 blocks) · prod phi_2(side-2 blocks)``;
* ``antimonotone`` the mirror image of ``monotone``;
* ``cfree``        two-state (d = 2) product built on the unitalization;
* ``bifree``       two-faced (m = 2) product from left/right operators;
* ``table``        explicit coefficient table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .functionals import Functional, Substitution, TruncationError, evaluate, pullback, symbolic_functional
from .partitions import LabelledPartition, is_ordered, parse_partition
from .scalars import Indeterminate, Poly, Scalar, as_scalar, format_rational
from .words import Letter, LinComb, Word, all_words, blocks, is_alternating

__all__ = [
    "AxiomReport",
    "CoefficientTable",
    "FAMILIES",
    "Product",
    "ProductSpec",
    "ShapeViolation",
    "apply_table",
    "check_axioms",
    "check_ordered_support",
    "coefficient_table",
    "eval_bifree",
    "eval_cfree",
    "eval_product",
    "extract_coefficients",
    "generic_word",
    "left_nested",
    "norm_eps",
    "right_nested",
]

FAMILIES = ("tensor", "free", "boolean", "monotone", "antimonotone", "cfree", "bifree", "table")
_ALIASES = {
    "tensor_q": "tensor",
    "free_q": "free",
    "boolean_rs": "boolean",
    "monotone_q": "monotone",
    "antimonotone_q": "antimonotone",
    "anti-monotone": "antimonotone",
    "c-free": "cfree",
    "bi-free": "bifree",
}


class ShapeViolation(ValueError):
    """A product polynomial has a monomial outside the span of labelled partitions."""


Eps = Tuple[Tuple[int, int], ...]


def norm_eps(eps: Iterable) -> Eps:
    """Normalize an eps-sequence to ``((owner, face), ...)``; bare ints mean face 1."""
    out = []
    for e in eps:
        if isinstance(e, int):
            out.append((e, 1))
        else:
            o, f = e
            out.append((int(o), int(f)))
    out = tuple(out)
    if not is_alternating(out):
        raise ValueError(f"eps-sequence {out} is empty or not alternating")
    return out


def format_eps(eps: Eps) -> str:
    if all(f == 1 for _, f in eps):
        return " ".join(str(o) for o, _ in eps)
    return " ".join(f"{o}:{f}" for o, f in eps)


def parse_eps(s: str) -> Eps:
    out = []
    for tok in s.split():
        if ":" in tok:
            o, f = tok.split(":")
            out.append((int(o), int(f)))
        else:
            out.append((int(tok), 1))
    return norm_eps(out)


# -- coefficient tables ---------------------------------------------------------


@dataclass(eq=False)
class CoefficientTable:
    """Constants ``alpha^{(eps)}_{pi_1..pi_k}`` keyed by eps and the union of the ``pi_i``.

    The ``pi_i`` are recovered from the union because every block lies inside
    the letters of a single owner (``factors_of``).  Values are ``d``-tuples.
    """

    d: int
    k: int
    N: int
    entries: Dict[Eps, Dict[LabelledPartition, Tuple[Scalar, ...]]] = field(default_factory=dict)

    def slice(self, eps) -> Dict[LabelledPartition, Tuple[Scalar, ...]]:
        eps = norm_eps(eps)
        if len(eps) > self.N:
            raise TruncationError(f"table only covers |eps| <= {self.N}")
        return self.entries.get(eps, {})

    def alpha(self, eps, pi: LabelledPartition) -> Tuple[Scalar, ...]:
        return self.slice(eps).get(pi, (Fraction(0),) * self.d)

    @staticmethod
    def factors_of(eps, pi: LabelledPartition, k: int | None = None) -> Tuple[LabelledPartition, ...]:
        eps = norm_eps(eps)
        k = k or max(o for o, _ in eps)
        owner = {p + 1: o for p, (o, _) in enumerate(eps)}
        parts: List[list] = [[] for _ in range(k)]
        for w, lab in pi.blocks:
            parts[owner[w[0]] - 1].append((w, lab))
        return tuple(LabelledPartition(tuple(p)) for p in parts)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "truncation": self.N,
            "entries": {
                format_eps(eps): {pi.format(): [format_rational(v) for v in vals] for pi, vals in sorted(sl.items())}
                for eps, sl in sorted(self.entries.items())
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CoefficientTable":
        d, k, N = obj["d"], obj.get("k", 2), obj["truncation"]
        entries: Dict[Eps, Dict[LabelledPartition, Tuple[Scalar, ...]]] = {}
        for es, sl in obj["entries"].items():
            eps = parse_eps(es)
            cur = entries.setdefault(eps, {})
            for ps, vals in sl.items():
                pi = parse_partition(ps)
                if sorted(pi.letters) != list(range(1, len(eps) + 1)):
                    raise ValueError(f"partition {ps!r} does not cover the letters of eps {es!r}")
                for w, _ in pi.blocks:
                    if len({eps[i - 1][0] for i in w}) != 1:
                        raise ValueError(f"block {w} of {ps!r} mixes owners of eps {es!r}")
                if len(vals) != d:
                    raise ValueError(f"{ps!r}: expected {d} values")
                cur[pi] = tuple(as_scalar(v) for v in vals)
        return cls(d, k, N, entries)


# -- product specification -------------------------------------------------------


@dataclass(frozen=True)
class ProductSpec:
    family: str
    q: Scalar = Fraction(1)
    r: Scalar = Fraction(1)
    s: Scalar = Fraction(1)
    d: int = 0
    m: int = 0
    table: Optional[CoefficientTable] = None

    def __post_init__(self):
        fam = _ALIASES.get(self.family, self.family)
        if fam not in FAMILIES:
            raise ValueError(f"unknown product family {self.family!r}")
        object.__setattr__(self, "family", fam)
        for name in ("q", "r", "s"):
            v = getattr(self, name)
            if not isinstance(v, Poly):
                object.__setattr__(self, name, as_scalar(v))
        if not self.q:
            raise ValueError("q must be nonzero")
        if not self.r and not self.s:
            raise ValueError("(r, s) must not be (0, 0)")
        if fam == "table" and self.table is None:
            raise ValueError("the table family needs a coefficient table")
        default_d = 2 if fam == "cfree" else (self.table.d if self.table else 1)
        default_m = 2 if fam == "bifree" else 1
        object.__setattr__(self, "d", self.d or default_d)
        object.__setattr__(self, "m", self.m or default_m)
        if fam == "cfree" and self.d != 2:
            raise ValueError("the c-free product is defined for d = 2")

    @property
    def declared_symmetric(self) -> bool:
        if self.family in ("tensor", "free", "cfree", "bifree"):
            return True
        if self.family == "boolean":
            return self.r == self.s
        return False

    def describe(self) -> str:
        if self.family in ("tensor", "free", "monotone", "antimonotone"):
            return f"{self.family}(q={self.q})"
        if self.family == "boolean":
            return f"boolean(r={self.r}, s={self.s})"
        return self.family

    def to_json(self) -> dict:
        out = {"family": self.family}
        if self.family in ("tensor", "free", "monotone", "antimonotone"):
            out["q"] = format_rational(self.q)
        if self.family == "boolean":
            out["r"] = format_rational(self.r)
            out["s"] = format_rational(self.s)
        if self.family == "table":
            out["table"] = self.table.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ProductSpec":
        fam = obj["family"]
        table = CoefficientTable.from_json(obj["table"]) if "table" in obj else None
        kw = {k: as_scalar(str(obj[k])) for k in ("q", "r", "s") if k in obj}
        return cls(fam, table=table, **kw)


# -- evaluation ------------------------------------------------------------------------


def _one(d: int) -> Tuple[Scalar, ...]:
    return (Fraction(1),) * d


def _mul(u: Sequence[Scalar], v: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    return tuple(a * b for a, b in zip(u, v))


class Product:
    """Lazy functional ``phi_1 ⊙ phi_2`` on words over both alphabets.

    Letters whose owner is in ``left_owners`` go to ``f1``, all others to
    ``f2``.  Results are cached per word.
    """

    def __init__(self, spec: ProductSpec, f1, f2, left_owners: Iterable[int] = (1,)):
        if f1.d != f2.d:
            raise ValueError("factors must have the same number of components")
        self.spec = spec
        self.f1, self.f2 = f1, f2
        self.d = f1.d
        self.left: FrozenSet[int] = frozenset(left_owners)
        self._cache: Dict[Word, Tuple[Scalar, ...]] = {}
        self._aux: Dict[Word, Tuple[Scalar, ...]] = {}
        alph = tuple(getattr(f1, "alphabet", ())) + tuple(getattr(f2, "alphabet", ()))
        self.alphabet = tuple(sorted(set(alph)))
        self.N = min(getattr(f1, "N", 10**9), getattr(f2, "N", 10**9))

    def side(self, a: Letter) -> int:
        return 1 if a.owner in self.left else 2

    def factor(self, side: int):
        return self.f1 if side == 1 else self.f2

    def __call__(self, w: Word) -> Tuple[Scalar, ...]:
        w = tuple(w)
        hit = self._cache.get(w)
        if hit is None:
            hit = self._eval(w)
            self._cache[w] = hit
        return hit

    def apply(self, p: LinComb, l: int = 1) -> Scalar:
        return evaluate(self, l, p)

    # ------------------------------------------------------------------------
    def _runs(self, w: Word) -> List[Tuple[int, Word]]:
        return blocks(w, self.side)

    def _eval(self, w: Word) -> Tuple[Scalar, ...]:
        if not w:
            raise ValueError("products are not evaluated on the empty word")
        fam = self.spec.family
        if fam == "bifree":
            return self._bifree(w)
        if fam == "table":
            return apply_table(self.spec.table, [self.f1, self.f2], w, side=self.side)
        runs = self._runs(w)
        if len(runs) == 1:
            s, u = runs[0]
            return tuple(self.factor(s)(u))
        if fam == "tensor":
            return self._tensor(runs)
        if fam == "free":
            return self._free(w)
        if fam == "boolean":
            return self._boolean(runs)
        if fam in ("monotone", "antimonotone"):
            return self._monotone(runs, outer=1 if fam == "monotone" else 2)
        if fam == "cfree":
            return self._cfree(w)
        raise AssertionError(fam)

    def _tensor(self, runs) -> Tuple[Scalar, ...]:
        left = tuple(a for s, u in runs if s == 1 for a in u)
        right = tuple(a for s, u in runs if s == 2 for a in u)
        q = self.spec.q
        return tuple(q * x for x in _mul(self.f1(left), self.f2(right)))

    def _boolean(self, runs) -> Tuple[Scalar, ...]:
        c = Fraction(1)
        for s, _ in runs[1:]:
            c = c * (self.spec.r if s == 1 else self.spec.s)
        val = _one(self.d)
        for s, u in runs:
            val = _mul(val, self.factor(s)(u))
        return tuple(c * x for x in val)

    def _monotone(self, runs, outer: int) -> Tuple[Scalar, ...]:
        inner_count = sum(1 for s, _ in runs if s != outer)
        joined = tuple(a for s, u in runs if s == outer for a in u)
        val = tuple(self.factor(outer)(joined))
        for s, u in runs:
            if s != outer:
                val = _mul(val, self.factor(s)(u))
        qk = self.spec.q ** inner_count
        return tuple(qk * x for x in val)

    # free product: scale-conjugated recursion on centered blocks -------------------
    def _free(self, w: Word) -> Tuple[Scalar, ...]:
        q = self.spec.q
        raw = self._free_raw(w)
        if q == 1:
            return raw
        return tuple((x if isinstance(x, Poly) else Poly.const(x)) / q if isinstance(q, Poly) else x / q for x in raw)

    def _scaled(self, s: int, u: Word) -> Tuple[Scalar, ...]:
        q = self.spec.q
        v = self.factor(s)(u)
        return v if q == 1 else tuple(q * x for x in v)

    def _free_raw(self, w: Word) -> Tuple[Scalar, ...]:
        """q = 1 free product of the q-scaled factors.

        From ``phi(prod (a_i - phi(a_i))) = 0`` for alternating blocks:
        ``phi(a_1...a_n) = -sum_{I ⊊ [n]} (-1)^{n-|I|} phi(prod_I a_i) prod_{I^c} phi(a_i)``.
        """
        if not w:
            return _one(self.d)
        hit = self._aux.get(w)
        if hit is not None:
            return hit
        runs = self._runs(w)
        n = len(runs)
        if n == 1:
            val = self._scaled(*runs[0])
        else:
            moments = [self._scaled(s, u) for s, u in runs]
            total = [Fraction(0)] * self.d
            for mask in range(2 ** n - 1):
                inside = [i for i in range(n) if mask >> i & 1]
                sub = tuple(a for i in inside for a in runs[i][1])
                term = list(self._free_raw(sub))
                for i in range(n):
                    if not mask >> i & 1:
                        term = [t * m for t, m in zip(term, moments[i])]
                sign = 1 if (n - len(inside)) % 2 else -1
                total = [t + sign * x for t, x in zip(total, term)]
            val = tuple(total)
        self._aux[w] = val
        return val

    # c-free -------------------------------------------------------------------
    def _cfree(self, w: Word) -> Tuple[Scalar, ...]:
        return (self._cfree_first(w), self._free_second(w))

    def _free_second(self, w: Word) -> Scalar:
        key = ("free2",) + w
        hit = self._aux.get(key)
        if hit is not None:
            return hit[0]
        runs = self._runs(w)
        n = len(runs)
        if n == 1:
            val = self.factor(runs[0][0])(runs[0][1])[1]
        else:
            total: Scalar = Fraction(0)
            for mask in range(2 ** n - 1):
                inside = [i for i in range(n) if mask >> i & 1]
                sub = tuple(a for i in inside for a in runs[i][1])
                term = self._free_second(sub) if sub else Fraction(1)
                for i in range(n):
                    if not mask >> i & 1:
                        term = term * self.factor(runs[i][0])(runs[i][1])[1]
                sign = 1 if (n - len(inside)) % 2 else -1
                total = total + sign * term
            val = total
        self._aux[key] = (val,)
        return val

    def _cfree_first(self, w: Word) -> Scalar:
        """First component via centering each block with respect to the second state.

        With ``c_i = phi^(2)(a_i)`` and fully centered words factorizing,
        ``Psi(a_1...a_n) = prod (phi^(1)(a_i) - c_i) - sum_{I ⊊ [n]} prod_{I^c} (-c_i) Psi(prod_I a_i)``.
        """
        key = ("cfree1",) + w
        hit = self._aux.get(key)
        if hit is not None:
            return hit[0]
        runs = self._runs(w)
        n = len(runs)
        if n == 1:
            val = self.factor(runs[0][0])(runs[0][1])[0]
        else:
            vals = [self.factor(s)(u) for s, u in runs]
            centered: Scalar = Fraction(1)
            for v in vals:
                centered = centered * (v[0] - v[1])
            total: Scalar = centered
            for mask in range(2 ** n - 1):
                inside = [i for i in range(n) if mask >> i & 1]
                sub = tuple(a for i in inside for a in runs[i][1])
                term = self._cfree_first(sub) if sub else Fraction(1)
                for i in range(n):
                    if not mask >> i & 1:
                        term = term * (-vals[i][1])
                total = total - term
            val = total
        self._aux[key] = (val,)
        return val

    # bi-free: left/right operators on C ⊕ (V_1 ⊔ V_2) ---------------------------------
    def _bifree(self, w: Word) -> Tuple[Scalar, ...]:
        return tuple(self._bifree_component(w, l) for l in range(self.d))

    def _bifree_component(self, w: Word, l: int) -> Scalar:
        # V_s = kernel of the unitalized state of factor s, spanned by the
        # centered words u° = u - phi_s(u) 1.  A vector is a dict from
        # alternating tuples of (side, word) to scalars; () is Omega.
        def phi(s: int, u: Word) -> Scalar:
            return self.factor(s)(u)[l]

        vec: Dict[tuple, Scalar] = {(): Fraction(1)}
        for a in reversed(w):
            s = self.side(a)
            right = a.face == 2
            out: Dict[tuple, Scalar] = {}

            def put(key, c):
                if c:
                    v = out.get(key, 0) + c
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)

            for key, c in vec.items():
                end = (key[-1] if right else key[0]) if key else None
                if key and end[0] == s:
                    u = end[1]
                    rest = key[:-1] if right else key[1:]
                    xu = (a,) + u
                    pu = phi(s, u)
                    put(rest, c * (phi(s, xu) - pu * phi(s, (a,))))
                    put(rest + ((s, xu),) if right else ((s, xu),) + rest, c)
                    put(rest + ((s, (a,)),) if right else ((s, (a,)),) + rest, -c * pu)
                else:
                    put(key, c * phi(s, (a,)))
                    put(key + ((s, (a,)),) if right else ((s, (a,)),) + key, c)
            vec = out
        return vec.get((), Fraction(0))


def eval_product(spec: ProductSpec, factors: Sequence, w: Word) -> Tuple[Scalar, ...]:
    """``(⊙_i phi_i)(w)``, n-ary products nested to the left; factor ``i`` owns letters with owner ``i``."""
    return left_nested(spec, factors)(tuple(w))


def eval_cfree(phi1, phi2, w: Word) -> Tuple[Scalar, ...]:
    return Product(ProductSpec("cfree"), phi1, phi2)(tuple(w))


def eval_bifree(phi1, phi2, w: Word) -> Tuple[Scalar, ...]:
    return Product(ProductSpec("bifree"), phi1, phi2)(tuple(w))


def left_nested(spec: ProductSpec, factors: Sequence):
    """``(...((phi_1 ⊙ phi_2) ⊙ phi_3) ...) ⊙ phi_k``."""
    acc = factors[0]
    for i in range(1, len(factors)):
        acc = Product(spec, acc, factors[i], left_owners=range(1, i + 1))
    return acc


def right_nested(spec: ProductSpec, factors: Sequence):
    """``phi_1 ⊙ (phi_2 ⊙ (... ⊙ phi_k))``."""
    k = len(factors)
    acc = factors[-1]
    for i in range(k - 2, -1, -1):
        acc = Product(spec, factors[i], acc, left_owners=(i + 1,))
    return acc


# -- coefficient extraction ------------------------------------------------------


def generic_word(eps) -> Word:
    """``x_1 ... x_n`` with ``x_p`` owned by ``eps_p``."""
    return tuple(Letter(p + 1, f, o) for p, (o, f) in enumerate(norm_eps(eps)))


def _generic_factors(eps: Eps, d: int, k: int, N: int | None = None) -> List[Functional]:
    word = generic_word(eps)
    facs = []
    for i in range(1, k + 1):
        alphabet = [a for a in word if a.owner == i] or [Letter(0, 1, i)]
        facs.append(symbolic_functional(alphabet, N or len(eps), d, index=i))
    return facs


def _split_monomial(mono, eps: Eps, n: int):
    """Turn a monomial in the t-variables into a labelled partition; return
    (partition or None, residual parameter monomial)."""
    blocks_: list = []
    rest = []
    used: List[int] = []
    for v, e in mono:
        if not (isinstance(v, Indeterminate) and v.kind == "t"):
            rest.append((v, e))
            continue
        if e != 1:
            raise ShapeViolation(f"variable {v!r} occurs with exponent {e}")
        gens = tuple(a.gen for a in v.word)
        if any(a.owner != v.index for a in v.word):
            raise ShapeViolation(f"variable {v!r} mixes owners")
        if len(set(gens)) != len(gens):
            raise ShapeViolation(f"variable {v!r} repeats a letter")
        used.extend(gens)
        blocks_.append((gens, v.label))
    if sorted(used) != list(range(1, n + 1)):
        raise ShapeViolation(f"monomial {mono!r} does not use every letter exactly once")
    return LabelledPartition(tuple(blocks_)), tuple(rest)


def extract_coefficients(spec: ProductSpec, eps, d: int | None = None) -> Dict[LabelledPartition, Tuple[Scalar, ...]]:
    """Table slice for ``eps``: evaluate the product on symbolic functionals at the
    generic word of shape ``eps`` and read off partition coefficients.

    Raises :class:`ShapeViolation` when a monomial is not a product over a
    labelled partition with each letter used exactly once.
    """
    eps = norm_eps(eps)
    d = d or spec.d
    k = max(o for o, _ in eps)
    n = len(eps)
    facs = _generic_factors(eps, d, k)
    values = left_nested(spec, facs)(generic_word(eps))
    table: Dict[LabelledPartition, List[Scalar]] = {}
    for l, val in enumerate(values):
        poly = val if isinstance(val, Poly) else Poly.const(val)
        for mono, c in poly.items():
            pi, rest = _split_monomial(mono, eps, n)
            coef: Scalar = c if not rest else Poly({rest: c})
            slot = table.setdefault(pi, [Fraction(0)] * d)
            slot[l] = slot[l] + coef
    return {pi: tuple(v) for pi, v in sorted(table.items()) if any(v)}


@lru_cache(maxsize=None)
def _cached_slice(spec: ProductSpec, eps: Eps, d: int):
    return extract_coefficients(spec, eps, d)


def coefficient_table(spec: ProductSpec, N: int, k: int = 2, faces: int | None = None) -> CoefficientTable:
    """All slices for alternating eps over ``[k] x [faces]`` with ``|eps| <= N``."""
    faces = faces or spec.m
    table = CoefficientTable(spec.d, k, N)
    colors = [(o, f) for o in range(1, k + 1) for f in range(1, faces + 1)]
    for eps in alternating_sequences(colors, N):
        table.entries[eps] = table_slice(spec, eps)
    return table


def table_slice(spec: ProductSpec, eps) -> Dict[LabelledPartition, Tuple[Scalar, ...]]:
    eps = norm_eps(eps)
    if spec.family == "table":
        return spec.table.slice(eps)
    return _cached_slice(spec, eps, spec.d)


def alternating_sequences(colors: Sequence, N: int, min_len: int = 1) -> Iterator[Eps]:
    def rec(prefix):
        if len(prefix) >= min_len:
            yield tuple(prefix)
        if len(prefix) == N:
            return
        for c in colors:
            if not prefix or prefix[-1] != c:
                yield from rec(prefix + [c])

    yield from rec([])


def apply_table(table: CoefficientTable | ProductSpec, factors: Sequence, w: Word, side=None) -> Tuple[Scalar, ...]:
    """Evaluate ``(⊙ phi_i)(w)`` from coefficient constants alone.

    ``w`` is split into maximal runs of equal (factor, face); the runs are
    the ``a_p`` and each block ``K`` of a partition contributes
    ``phi_i^(l)(K(a))`` with ``K(a)`` the ordered product of its runs.
    """
    side = side or (lambda a: a.owner)
    runs = blocks(w, lambda a: (side(a), a.face))
    eps = tuple(key for key, _ in runs)
    if isinstance(table, ProductSpec):
        sl, d = table_slice(table, eps), table.d
    else:
        sl, d = table.slice(eps), table.d
    total: List[Scalar] = [Fraction(0)] * d
    for pi, alpha in sl.items():
        prod: Scalar = Fraction(1)
        for word, lab in pi.blocks:
            owner = eps[word[0] - 1][0]
            u = tuple(a for p in word for a in runs[p - 1][1])
            prod = prod * factors[owner - 1](u)[lab - 1]
            if not prod:
                break
        if prod:
            total = [t + a * prod for t, a in zip(total, alpha)]
    return tuple(total)


# -- checks ------------------------------------------------------------------------


@dataclass
class AxiomReport:
    spec: str
    N: int
    unital: bool = True
    associative: bool = True
    universal: bool = True
    symmetric: bool = True
    nondegenerate: bool = True
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.unital and self.associative and self.universal and self.nondegenerate

    def lines(self) -> List[str]:
        return [
            f"A1 unital      {'pass' if self.unital else 'FAIL'}",
            f"A2 associative {'pass' if self.associative else 'FAIL'}",
            f"A3 universal   {'pass' if self.universal else 'FAIL'}",
            f"non-degenerate {'pass' if self.nondegenerate else 'FAIL'}",
            f"symmetric={str(self.symmetric).lower()}",
        ]


def _owner_alphabet(owner: int, m: int, gens: Sequence[int]) -> List[Letter]:
    return [Letter(g, f, owner) for g in gens for f in range(1, m + 1)]


def check_axioms(spec: ProductSpec, N: int = 4, *, seed: int = 0, a3_degree: int = 3, a3_trials: int = 2) -> AxiomReport:
    """Check unitality, associativity, universality, symmetry and non-degeneracy.

    (A1) and symmetry use symbolic functionals on all words up to degree
    ``N``; (A2) compares both bracketings on the generic word of every
    alternating 3-owner eps with ``|eps| <= N``; (A3) compares
    ``(phi_1 ⊙ phi_2)∘(j_1 ⊔ j_2)`` with ``(phi_1∘j_1) ⊙ (phi_2∘j_2)`` for random
    substitutions of degree ≤ 2 on symbolic functionals.
    """
    rep = AxiomReport(spec.describe(), N)
    d, m = spec.d, spec.m
    colors = [(o, f) for o in (1, 2, 3) for f in range(1, m + 1)]

    # A1: marginals of symbolic functionals
    a1 = _owner_alphabet(1, m, [1])
    a2 = _owner_alphabet(2, m, [1])
    phi1 = symbolic_functional(a1, N, d, 1)
    phi2 = symbolic_functional(a2, N, d, 2)
    prod = Product(spec, phi1, phi2)
    for phi, alph in ((phi1, a1), (phi2, a2)):
        for w in all_words(alph, N):
            if prod(w) != phi(w):
                rep.unital = False
                rep.failures.append(f"A1: marginal differs on {w}")
                break

    # symmetry: phi_1 ⊙ phi_2 against phi_2 ⊙ phi_1 read on the same word
    swapped = Product(spec, phi2, phi1, left_owners=(2,))
    for w in all_words(a1 + a2, N):
        if prod(w) != swapped(w):
            rep.symmetric = False
            break

    # A2 and non-degeneracy on generic words
    for eps in alternating_sequences(colors, N):
        k = 3
        facs = _generic_factors(eps, d, k)
        word = generic_word(eps)
        lhs = left_nested(spec, facs)(word)
        rhs = right_nested(spec, facs)(word)
        if lhs != rhs:
            rep.associative = False
            rep.failures.append(f"A2: bracketings differ on eps={format_eps(eps)}")
    for eps in alternating_sequences([(o, f) for o in (1, 2) for f in range(1, m + 1)], N, min_len=2):
        if len({o for o, _ in eps}) < 2:
            continue
        if not any(left_nested(spec, _generic_factors(eps, d, 2))(generic_word(eps))):
            rep.nondegenerate = False
            rep.failures.append(f"degenerate on eps={format_eps(eps)}")

    # A3: universality under random substitutions
    rng = random.Random(seed)
    src = _owner_alphabet(1, m, [1]) + _owner_alphabet(2, m, [1])
    tgt = {o: _owner_alphabet(o, m, [1, 2]) for o in (1, 2)}
    big = 2 * a3_degree
    for _ in range(a3_trials):
        images = {}
        for a in src:
            pool = [w for w in all_words([b for b in tgt[a.owner] if b.face == a.face], 2)]
            img = {}
            for w in rng.sample(pool, 2):
                img[w] = Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2))
            images[a] = img
        j = Substitution(images)
        t1 = symbolic_functional(tgt[1], big, d, 1)
        t2 = symbolic_functional(tgt[2], big, d, 2)
        target = Product(spec, t1, t2)
        j1 = Substitution({a: img for a, img in images.items() if a.owner == 1})
        j2 = Substitution({a: img for a, img in images.items() if a.owner == 2})
        pulled = Product(spec, pullback(t1, j1, N=a3_degree), pullback(t2, j2, N=a3_degree))
        for w in all_words(src, a3_degree):
            img = j(w)
            lhs = tuple(evaluate(target, l, img) for l in range(1, d + 1))
            if lhs != pulled(w):
                rep.universal = False
                rep.failures.append(f"A3: substitution breaks universality on {w}")
                break
    return rep


def check_ordered_support(table: CoefficientTable | Mapping) -> List[Tuple[Eps, LabelledPartition]]:
    """Wrong-ordered partitions that carry a nonzero coefficient."""
    entries = table.entries if isinstance(table, CoefficientTable) else table
    bad = []
    for eps, sl in sorted(entries.items()):
        for pi, vals in sorted(sl.items()):
            if any(vals) and not is_ordered(pi):
                bad.append((eps, pi))
    return bad
