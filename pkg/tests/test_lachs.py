import random
from fractions import Fraction

import pytest

from uauprod.cumulants import CumulantContext, derivation_lift, lift_S, star_convolve
from uauprod.functionals import random_functional
from uauprod.lachs import (
    UNIT,
    LachsBialgebra,
    SymFunctional,
    format_monomial,
    generator,
    mono_degree,
    mono_mul,
    parse_monomial,
)
from uauprod.products import ProductSpec
from uauprod.words import Letter

FIVE = ["tensor", "free", "boolean", "monotone", "antimonotone"]
x, y = Letter(1), Letter(2)


def bialgebra(family, n=1, N=4):
    spec = ProductSpec(family)
    alphabet = [Letter(g, f, 1) for g in range(1, n + 1) for f in range(1, spec.m + 1)]
    return LachsBialgebra(spec, N, spec.d, alphabet)


def random_sym(L, rng, unit=1):
    vals = {u: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for u in L.basis()}
    vals[UNIT] = Fraction(unit)
    return SymFunctional.from_dict(vals, L.N)


def test_monomial_text_round_trip():
    u = mono_mul(generator((x, y), 2), generator((x,), 1))
    assert format_monomial(u) == "(x1)#1 * (x1 x2)#2"
    assert parse_monomial(format_monomial(u)) == u
    assert parse_monomial("1") == UNIT
    assert mono_degree(u) == 3


def test_primitive_generators():
    L = bialgebra("monotone")
    v = generator((x,))
    assert L.coproduct(v) == {(v, UNIT): 1, (UNIT, v): 1}


def test_free_cross_term():
    L = bialgebra("free", n=2)
    u = generator((x, y))
    cop = L.coproduct(u)
    assert cop[(generator((x,)), generator((y,)))] == 1
    assert cop[(generator((y,)), generator((x,)))] == 1
    assert cop[(u, UNIT)] == cop[(UNIT, u)] == 1


@pytest.mark.parametrize("family", FIVE + ["cfree", "bifree"])
def test_bialgebra_laws(family):
    L = bialgebra(family, n=1 if family in ("cfree", "bifree") else 2, N=4 if family != "bifree" else 3)
    gens = L.generators()
    for g in gens:
        assert L.check_counit(g)
        assert L.check_graded(g)
        assert L.check_coassociative(g)
    # multiplicativity carries the laws to products of generators
    for g, h in zip(gens, gens[1:]):
        u = mono_mul(g, h)
        if mono_degree(u) <= L.N:
            assert L.check_coassociative(u) and L.check_counit(u)


@pytest.mark.parametrize("family", FIVE + ["cfree"])
def test_convolution_intertwines_the_lift(family, rng):
    spec = ProductSpec(family)
    ctx = CumulantContext(spec, n=1, N=4)
    f = random_functional(rng, ctx.alphabet, 4, ctx.d)
    g = random_functional(rng, ctx.alphabet, 4, ctx.d)
    lhs = lift_S(star_convolve(ctx, f, g))
    rhs = ctx.lachs.convolve(lift_S(f), lift_S(g))
    for u in ctx.lachs.basis():
        assert lhs(u) == rhs(u)


def test_convolution_units_and_associativity(rng):
    L = bialgebra("monotone", n=2, N=3)
    A, B, C = (random_sym(L, rng) for _ in range(3))
    basis = L.basis()
    for u in basis:
        assert L.convolve(A, L.delta)(u) == A(u) == L.convolve(L.delta, A)(u)
        assert L.convolve(L.convolve(A, B), C)(u) == L.convolve(A, L.convolve(B, C))(u)
    v = generator((x,))
    assert L.convolve(A, B)(v) == A(v) + B(v)


@pytest.mark.parametrize("family", ["tensor", "free", "boolean"])
def test_symmetric_products_give_commutative_convolution(family, rng):
    L = bialgebra(family, n=2, N=4)
    A, B = random_sym(L, rng), random_sym(L, rng)
    assert all(L.convolve(A, B)(u) == L.convolve(B, A)(u) for u in L.basis())


def test_monotone_convolution_is_not_commutative(rng):
    L = bialgebra("monotone", n=1, N=3)
    A, B = random_sym(L, rng), random_sym(L, rng)
    assert any(L.convolve(A, B)(u) != L.convolve(B, A)(u) for u in L.basis())


def test_logarithm_small_cases(rng):
    L = bialgebra("free", n=1, N=4)
    assert all(L.ln_star(L.delta)(u) == 0 for u in L.basis())
    ctx = CumulantContext(ProductSpec("free"), n=1, N=4)
    phi = random_functional(rng, ctx.alphabet, 4)
    S = lift_S(phi)
    ln = L.ln_star(S)
    v, vv = generator((x,)), generator((x, x))
    assert ln(v) == phi((x,))[0]
    assert ln(vv) == phi((x, x))[0] - phi((x,))[0] ** 2
    assert ln(UNIT) == 0
    with pytest.raises(ValueError):
        L.ln_star(L.zero)
    with pytest.raises(ValueError):
        L.exp_star(L.delta)


@pytest.mark.parametrize("family", ["tensor", "monotone"])
def test_exp_and_log_are_inverse(family):
    rng = random.Random(7)
    L = bialgebra(family, n=1, N=4)
    basis = L.basis()
    for _ in range(5):
        Phi = random_sym(L, rng)
        back = L.exp_star(L.ln_star(Phi))
        assert all(back(u) == Phi(u) for u in basis)
        Psi = random_sym(L, rng, unit=0)
        again = L.ln_star(L.exp_star(Psi))
        assert all(again(u) == Psi(u) for u in basis)


def test_antipode(rng):
    ctx = CumulantContext(ProductSpec("monotone"), n=1, N=4)
    L = ctx.lachs
    assert all(L.antipode_compose(L.delta)(u) == L.delta(u) for u in L.basis())
    S = lift_S(random_functional(rng, ctx.alphabet, 4))
    inv = L.antipode_compose(S)
    assert all(L.convolve(S, inv)(u) == L.delta(u) for u in L.basis())
    assert all(L.convolve(inv, S)(u) == L.delta(u) for u in L.basis())
    v = generator((x,))
    assert inv(v) == -S(v)
    with pytest.raises(ValueError):
        L.antipode_compose(random_sym(L, rng))


def test_derivations(rng):
    ctx = CumulantContext(ProductSpec("monotone"), n=1, N=4)
    L = ctx.lachs
    psi1 = random_functional(rng, ctx.alphabet, 4)
    psi2 = random_functional(rng, ctx.alphabet, 4)
    D1, D2 = derivation_lift(psi1), derivation_lift(psi2)
    assert L.is_delta_derivation(D1)
    assert L.is_delta_derivation(L.ln_star(lift_S(psi1)))
    assert L.is_delta_derivation(L.commutator(D1, D2))
    assert not L.is_delta_derivation(random_sym(L, rng, unit=0))
    E = L.exp_star(D1)
    assert L.is_multiplicative(E)
