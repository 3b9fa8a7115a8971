"""Cumulant functionals of a universal product and the convolution of functionals.

The cumulant of ``phi`` is the logarithm of its multiplicative lift
``S(phi)`` in the convolution algebra of :class:`~uauprod.lachs.LachsBialgebra`,
read off on single labelled words.  Going back, a functional ``psi`` on words
is lifted to the derivation ``D(psi)`` (``psi`` on generators, zero on the
unit and on products) and exponentiated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .functionals import Functional
from .lachs import LachsBialgebra, SymFunctional, SymMonomial
from .products import Product, ProductSpec
from .scalars import Scalar
from .words import BlockWord, Letter, Word, all_words, blocks, flatten

__all__ = [
    "CBHReport",
    "CumulantContext",
    "cbh_check",
    "derivation_lift",
    "exp_odot",
    "lie_bracket",
    "lift_S",
    "ln_odot",
    "reconstruct_product",
    "restrict",
    "star_convolve",
]


@dataclass
class CumulantContext:
    """Dimensions of ``E = (T(V)^{⊔m})^d`` for ``V`` with ``n`` generators, truncated at ``N``."""

    spec: ProductSpec
    n: int = 1
    m: int = 0
    d: int = 0
    N: int = 4
    lachs: LachsBialgebra = field(init=False, repr=False)

    def __post_init__(self):
        self.m = self.m or self.spec.m
        self.d = self.d or self.spec.d
        if self.n < 1 or self.N < 1:
            raise ValueError("need n >= 1 and N >= 1")
        if self.d != self.spec.d:
            raise ValueError(f"{self.spec.describe()} acts on {self.spec.d}-tuples, not {self.d}-tuples")
        self.lachs = LachsBialgebra(self.spec, self.N, self.d, self.alphabet)

    @property
    def alphabet(self) -> Tuple[Letter, ...]:
        """The ``n * m`` letters of the flattened alphabet."""
        return tuple(Letter(g, f, 1) for g in range(1, self.n + 1) for f in range(1, self.m + 1))

    def words(self) -> List[Word]:
        return list(all_words(self.alphabet, self.N))

    def functional(self, values=None) -> Functional:
        return Functional(self.alphabet, self.N, values, d=self.d)


def lift_S(phi, N: int | None = None) -> SymFunctional:
    """Multiplicative extension of ``phi`` to ``S(E)``."""
    N = N if N is not None else phi.N

    def fn(u: SymMonomial) -> Scalar:
        val: Scalar = Fraction(1)
        for w, l in u:
            val = val * phi(w)[l - 1]
            if not val:
                break
        return val

    return SymFunctional(fn, N, "S(phi)")


def derivation_lift(psi, N: int | None = None) -> SymFunctional:
    """``D(psi)``: ``psi`` on single labelled words, zero elsewhere."""
    N = N if N is not None else psi.N

    def fn(u: SymMonomial) -> Scalar:
        if len(u) != 1:
            return Fraction(0)
        w, l = u[0]
        return psi(w)[l - 1]

    return SymFunctional(fn, N, "D(psi)")


def restrict(ctx: CumulantContext, F: SymFunctional, N: int | None = None) -> Functional:
    """Values of ``F`` on single labelled words, as a stored functional."""
    N = ctx.N if N is None else N
    vals: List[Dict[Word, Scalar]] = [{} for _ in range(ctx.d)]
    for w in all_words(ctx.alphabet, N):
        for l in range(1, ctx.d + 1):
            v = F(((w, l),))
            if v:
                vals[l - 1][w] = v
    return Functional(ctx.alphabet, N, vals)


def ln_odot(ctx: CumulantContext, phi: Functional) -> Functional:
    return restrict(ctx, ctx.lachs.ln_star(lift_S(phi, ctx.N)))


def exp_odot(ctx: CumulantContext, psi: Functional) -> Functional:
    return restrict(ctx, ctx.lachs.exp_star(derivation_lift(psi, ctx.N)))


class _Owned:
    """View of a functional on owner-1 letters as a factor owning ``owner``."""

    def __init__(self, phi, owner: int):
        self.phi = phi
        self.d = phi.d
        self.N = getattr(phi, "N", 10**9)
        self.alphabet = tuple(a._replace(owner=owner) for a in getattr(phi, "alphabet", ()))

    def __call__(self, w: Word):
        return self.phi(tuple(a._replace(owner=1) for a in w))


def star_convolve(ctx: CumulantContext, phi1, phi2) -> Functional:
    """``(phi1 ⊙ phi2) ∘ Delta``: each letter becomes ``i_1 x + i_2 x``."""
    prod = Product(ctx.spec, _Owned(phi1, 1), _Owned(phi2, 2))
    vals: List[Dict[Word, Scalar]] = [{} for _ in range(ctx.d)]
    for w in ctx.words():
        total = [Fraction(0)] * ctx.d
        for mask in range(2 ** len(w)):
            mixed = tuple(a._replace(owner=2 if mask >> i & 1 else 1) for i, a in enumerate(w))
            total = [t + v for t, v in zip(total, prod(mixed))]
        for l, v in enumerate(total):
            if v:
                vals[l][w] = v
    return Functional(ctx.alphabet, ctx.N, vals)


def lie_bracket(ctx: CumulantContext, psi1, psi2) -> Functional:
    """``[psi1, psi2]`` in the cumulant Lie algebra."""
    D1, D2 = derivation_lift(psi1, ctx.N), derivation_lift(psi2, ctx.N)
    return restrict(ctx, ctx.lachs.commutator(D1, D2))


@dataclass
class CBHReport:
    spec: str
    N: int
    composition: bool
    symmetric: bool
    additive: bool
    cbh3: bool
    witness: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if not (self.composition and self.cbh3):
            return False
        return self.additive if self.symmetric else True

    def lines(self) -> List[str]:
        return [
            f"ln(phi1*phi2) = CBH(ln phi1, ln phi2) {'pass' if self.composition else 'FAIL'}",
            f"degree<=3 bracket expansion       {'pass' if self.cbh3 else 'FAIL'}",
            f"additive={str(self.additive).lower()} symmetric={str(self.symmetric).lower()}",
        ] + [f"non-additive at {w}" for w in self.witness]


def cbh_check(ctx: CumulantContext, phi1, phi2) -> CBHReport:
    lachs = ctx.lachs
    psi1, psi2 = ln_odot(ctx, phi1), ln_odot(ctx, phi2)
    lhs = ln_odot(ctx, star_convolve(ctx, phi1, phi2))
    E1 = lachs.exp_star(derivation_lift(psi1, ctx.N))
    E2 = lachs.exp_star(derivation_lift(psi2, ctx.N))
    composed = restrict(ctx, lachs.ln_star(lachs.convolve(E1, E2)))
    total = psi1 + psi2
    witness = [
        " ".join(str(a) for a in w)
        for w in ctx.words()
        if lhs(w) != total(w)
    ]

    top = min(ctx.N, 3)
    b12 = lie_bracket(ctx, psi1, psi2)
    series = [
        (Fraction(1), psi1),
        (Fraction(1), psi2),
        (Fraction(1, 2), b12),
        (Fraction(1, 12), lie_bracket(ctx, psi1, b12)),
        (Fraction(-1, 12), lie_bracket(ctx, psi2, b12)),
    ]
    cbh3 = True
    for w in all_words(ctx.alphabet, top):
        expect = [sum((c * f(w)[l] for c, f in series), Fraction(0)) for l in range(ctx.d)]
        if list(lhs(w)) != expect:
            cbh3 = False
            break
    return CBHReport(
        spec=ctx.spec.describe(),
        N=ctx.N,
        composition=composed == lhs,
        symmetric=ctx.spec.declared_symmetric,
        additive=not witness,
        cbh3=cbh3,
        witness=witness,
    )


# -- reconstruction ---------------------------------------------------------------


class _Pullback:
    """``phi_i ∘ j_i`` on words of registered generators.

    A generator stands for one block ``u`` of factor ``i``; a word of
    generators is sent to the concatenation of their blocks when all of them
    belong to factor ``i`` and to zero otherwise.
    """

    def __init__(self, phi, owner: int, registry: Dict[int, Tuple[int, int, Word]], d: int):
        self.phi, self.owner, self.registry, self.d = phi, owner, registry, d
        self.N = 10**9

    def __call__(self, w: Word):
        parts = []
        for a in w:
            owner, face, u = self.registry[a.gen]
            if owner != self.owner:
                return (Fraction(0),) * self.d
            parts.extend(u)
        return tuple(self.phi(tuple(parts)))


def reconstruct_product(ctx: CumulantContext | ProductSpec, factors: Sequence, w: Word | BlockWord) -> Tuple[Scalar, ...]:
    """``(phi_1 ⊙ phi_2)(w)`` rebuilt from cumulants alone.

    Every block of ``w`` becomes a degree-one generator of ``V``; the factors
    are pulled back to ``T(V)``, their cumulants are combined by the
    convolution logarithm of the product of the exponentials, and the result is
    exponentiated again and read at the word of generators.
    """
    spec = ctx.spec if isinstance(ctx, CumulantContext) else ctx
    w = tuple(w)
    if w and isinstance(w[0], tuple) and not isinstance(w[0], Letter):
        w = flatten(w)
    if not w:
        raise ValueError("the empty word is not a word")
    runs = blocks(w, lambda a: (a.owner, a.face))
    registry: Dict[int, Tuple[int, int, Word]] = {}
    gens: List[Letter] = []
    for i, ((owner, face), u) in enumerate(runs, start=1):
        registry[i] = (owner, face, u)
        gens.append(Letter(i, face, 1))
    p = len(gens)
    lachs = LachsBialgebra(spec, p, spec.d)
    pulled = [_Pullback(factors[i], i + 1, registry, spec.d) for i in range(2)]
    cumulants = [lachs.ln_star(lift_S(f, p)) for f in pulled]
    Ds = [derivation_lift(_Restricted(c, spec.d), p) for c in cumulants]
    joint = lachs.convolve(lachs.exp_star(Ds[0]), lachs.exp_star(Ds[1]))
    cbh = derivation_lift(_Restricted(lachs.ln_star(joint), spec.d), p)
    final = lachs.exp_star(cbh)
    word = tuple(gens)
    return tuple(final(((word, l),)) for l in range(1, spec.d + 1))


class _Restricted:
    """Lazy view of a functional on ``S(E)`` at single labelled words."""

    def __init__(self, F: SymFunctional, d: int):
        self.F, self.d, self.N = F, d, F.N

    def __call__(self, w: Word):
        return tuple(self.F(((tuple(w), l),)) for l in range(1, self.d + 1))
