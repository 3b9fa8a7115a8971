import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uauprod.cumulants import (
    CumulantContext,
    cbh_check,
    derivation_lift,
    exp_odot,
    lie_bracket,
    lift_S,
    ln_odot,
    reconstruct_product,
    star_convolve,
)
from uauprod.functionals import random_functional
from uauprod.lachs import generator, mono_mul
from uauprod.products import Product, ProductSpec
from uauprod.words import Letter, all_words

from conftest import letters

FIVE = ["tensor", "free", "boolean", "monotone", "antimonotone"]
x = Letter(1)
CATALAN = [1, 1, 2, 5, 14]


def xs(k):
    return (x,) * k


def moments(ctx, seq):
    return ctx.functional([{xs(k): Fraction(v) for k, v in enumerate(seq, start=1) if v}])


def test_alphabet_has_n_times_m_letters():
    for n, m, d, N in [(1, 1, 1, 3), (2, 2, 1, 2), (3, 1, 1, 2)]:
        family = "bifree" if m == 2 else "free"
        ctx = CumulantContext(ProductSpec(family), n=n, m=m, d=d, N=N)
        assert len(ctx.alphabet) == n * m
        assert len(ctx.words()) == sum((n * m) ** k for k in range(1, N + 1))


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_lift_is_multiplicative(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    ctx = CumulantContext(ProductSpec("free"), n=2, N=4)
    phi = random_functional(rng, ctx.alphabet, 4, 1)
    S = lift_S(phi)
    words = [w for w in ctx.words() if len(w) <= 2]
    u = generator(data.draw(st.sampled_from(words)))
    v = generator(data.draw(st.sampled_from(words)))
    assert S(mono_mul(u, v)) == S(u) * S(v)
    assert S(u) == phi(u[0][0])[0]


def test_free_cumulants_small_orders(rng):
    ctx = CumulantContext(ProductSpec("free"), N=3)
    phi = random_functional(rng, ctx.alphabet, 3)
    m = [None] + [phi(xs(k))[0] for k in (1, 2, 3)]
    k = ln_odot(ctx, phi)
    assert k(xs(1))[0] == m[1]
    assert k(xs(2))[0] == m[2] - m[1] ** 2
    assert k(xs(3))[0] == m[3] - 3 * m[1] * m[2] + 2 * m[1] ** 3


@pytest.mark.parametrize("family", FIVE)
def test_first_cumulant_is_the_mean(family, rng):
    ctx = CumulantContext(ProductSpec(family), n=2, N=2)
    phi = random_functional(rng, ctx.alphabet, 2)
    k = ln_odot(ctx, phi)
    for a in ctx.alphabet:
        assert k((a,)) == phi((a,))


def test_semicircle_from_a_single_cumulant():
    ctx = CumulantContext(ProductSpec("free"), N=6)
    psi = moments(ctx, [0, 1])
    phi = exp_odot(ctx, psi)
    assert [phi(xs(2 * k))[0] for k in (1, 2, 3)] == CATALAN[1:4]
    assert all(phi(xs(k))[0] == 0 for k in (1, 3, 5))
    assert exp_odot(ctx, ctx.functional()) == ctx.functional()


@pytest.mark.parametrize("family", FIVE + ["cfree", "bifree"])
def test_cumulant_round_trip(family):
    rng = random.Random(11)
    spec = ProductSpec(family)
    N = 4 if spec.m == 1 else 3
    ctx = CumulantContext(spec, n=1, N=N)
    for _ in range(4):
        psi = random_functional(rng, ctx.alphabet, N, ctx.d)
        assert ln_odot(ctx, exp_odot(ctx, psi)) == psi
        assert exp_odot(ctx, ln_odot(ctx, psi)) == psi


def test_convolution_small_cases(rng):
    ctx = CumulantContext(ProductSpec("tensor"), N=3)
    f, g = random_functional(rng, ctx.alphabet, 3), random_functional(rng, ctx.alphabet, 3)
    c = star_convolve(ctx, f, g)
    val = lambda h, k: h(xs(k))[0]
    assert val(c, 1) == val(f, 1) + val(g, 1)
    assert val(c, 2) == val(f, 2) + 2 * val(f, 1) * val(g, 1) + val(g, 2)
    zero = ctx.functional()
    assert star_convolve(ctx, f, zero) == f


def test_monotone_and_antimonotone_are_mirror_images(rng):
    m = CumulantContext(ProductSpec("monotone"), n=2, N=3)
    a = CumulantContext(ProductSpec("antimonotone"), n=2, N=3)
    f, g = random_functional(rng, m.alphabet, 3), random_functional(rng, m.alphabet, 3)
    assert star_convolve(m, f, g) == star_convolve(a, g, f)


@pytest.mark.parametrize("family", ["tensor", "free", "boolean"])
def test_brackets_vanish_for_symmetric_products(family, rng):
    ctx = CumulantContext(ProductSpec(family), n=2, N=4)
    p1, p2 = (random_functional(rng, ctx.alphabet, 4) for _ in range(2))
    assert lie_bracket(ctx, p1, p2) == ctx.functional()


def test_bracket_laws(rng):
    ctx = CumulantContext(ProductSpec("monotone"), n=1, N=4)
    p1, p2, p3 = (random_functional(rng, ctx.alphabet, 4) for _ in range(3))
    br = lambda a, b: lie_bracket(ctx, a, b)
    zero = ctx.functional()
    assert br(p1, p1) == zero
    assert br(p1, p2) == -br(p2, p1)
    assert br(moments(ctx, [1]), moments(ctx, [0, 1])) != zero
    assert br(p1, br(p2, p3)) + br(p2, br(p3, p1)) + br(p3, br(p1, p2)) == zero
    assert ctx.lachs.is_delta_derivation(derivation_lift(br(p1, p2)))


@pytest.mark.parametrize("family", ["tensor", "free", "boolean", "cfree"])
def test_cumulants_add_for_symmetric_products(family, rng):
    ctx = CumulantContext(ProductSpec(family), n=1, N=4)
    f, g = (random_functional(rng, ctx.alphabet, 4, ctx.d) for _ in range(2))
    rep = cbh_check(ctx, f, g)
    assert rep.ok and rep.additive and rep.composition


def test_monotone_cbh_with_explicit_witness():
    ctx = CumulantContext(ProductSpec("monotone"), N=3)
    f = moments(ctx, [1, 0, 0])
    g = moments(ctx, [0, 1, 0])
    rep = cbh_check(ctx, f, g)
    assert rep.composition and rep.cbh3
    lhs = ln_odot(ctx, star_convolve(ctx, f, g))
    total = ln_odot(ctx, f) + ln_odot(ctx, g)
    assert lhs(xs(1)) == total(xs(1))
    assert lhs(xs(2)) == total(xs(2))
    assert lhs(xs(3)) != total(xs(3))
    assert rep.witness == ["x1 x1 x1"]


@pytest.mark.parametrize("family", FIVE + ["cfree", "bifree"])
def test_reconstruction_matches_direct_evaluation(family, rng):
    spec = ProductSpec(family)
    a, b = letters(1, spec.m, (1, 2)), letters(2, spec.m, (1,))
    f = random_functional(rng, a, 4, spec.d)
    g = random_functional(rng, b, 4, spec.d)
    prod = Product(spec, f, g)
    top = 4 if spec.m == 1 else 3
    for w in all_words(a + b, top):
        assert reconstruct_product(spec, [f, g], w) == prod(w)
