import random
from fractions import Fraction

import pytest

from uauprod.cumulants import CumulantContext, ln_odot, star_convolve
from uauprod.oracles import (
    cumulants_from_moments,
    is_interval,
    is_noncrossing,
    moments_from_cumulants,
    monotone_convolve_series,
    set_partitions_rgs,
)
from uauprod.products import ProductSpec
from uauprod.words import Letter

x = Letter(1)
KIND = {"tensor": "classical", "free": "free", "boolean": "boolean"}
BERNOULLI = [0, 1, 0, 1, 0, 1]


def functional(ctx, seq):
    return ctx.functional([{(x,) * k: Fraction(v) for k, v in enumerate(seq, start=1) if v}])


def sequence(phi, N):
    return [phi((x,) * k)[0] for k in range(1, N + 1)]


def random_moments(rng, N):
    return [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(N)]


def test_partition_lattices_have_the_right_sizes():
    for n, (bell, catalan) in enumerate(zip([1, 2, 5, 15, 52, 203], [1, 2, 5, 14, 42, 132]), start=1):
        parts = list(set_partitions_rgs(n))
        assert len(parts) == bell
        assert sum(map(is_noncrossing, parts)) == catalan
        assert sum(map(is_interval, parts)) == 2 ** (n - 1)
    assert not is_noncrossing(((1, 3), (2, 4)))
    assert is_noncrossing(((1, 4), (2, 3)))


@pytest.mark.parametrize("kind,m4", [("classical", 3), ("free", 2), ("boolean", 1)])
def test_pairings(kind, m4):
    assert moments_from_cumulants(kind, [0, 1, 0, 0])[3] == m4


@pytest.mark.parametrize("kind", ["classical", "free", "boolean"])
def test_inversion_round_trip(kind, rng):
    m = random_moments(rng, 6)
    assert moments_from_cumulants(kind, cumulants_from_moments(kind, m)) == m
    with pytest.raises(ValueError):
        moments_from_cumulants("monotone", m)


@pytest.mark.parametrize("family", ["tensor", "free", "boolean"])
def test_pipeline_cumulants_match_partition_sums(family):
    rng = random.Random(3)
    ctx = CumulantContext(ProductSpec(family), N=6)
    for _ in range(20):
        m = random_moments(rng, 6)
        assert sequence(ln_odot(ctx, functional(ctx, m)), 6) == cumulants_from_moments(KIND[family], m)


def test_monotone_series_identity_and_order():
    mu = [1, 2, 3, 4]
    assert monotone_convolve_series(mu, [0] * 4) == mu
    assert monotone_convolve_series([0] * 4, mu) == mu
    a, b = [Fraction(v) for v in (1, 2, 3)], [Fraction(v) for v in (5, 7, 11)]
    m3 = a[2] + b[2] + 3 * a[1] * b[0] + 2 * a[0] * b[1] + a[0] * b[0] ** 2
    assert monotone_convolve_series(a, b)[2] == m3


def test_monotone_pipeline_matches_series():
    rng = random.Random(5)
    ctx = CumulantContext(ProductSpec("monotone"), N=6)
    for _ in range(10):
        mu, nu = random_moments(rng, 6), random_moments(rng, 6)
        conv = star_convolve(ctx, functional(ctx, mu), functional(ctx, nu))
        assert sequence(conv, 6) == monotone_convolve_series(mu, nu, 6)


@pytest.mark.parametrize("family,m4", [("tensor", 8), ("free", 6), ("boolean", 4)])
def test_bernoulli_convolution_table(family, m4):
    ctx = CumulantContext(ProductSpec(family), N=4)
    b = functional(ctx, BERNOULLI[:4])
    conv = sequence(star_convolve(ctx, b, b), 4)
    assert conv[1] == 2 and conv[3] == m4
    kappa = [2 * k for k in cumulants_from_moments(KIND[family], BERNOULLI[:4])]
    assert moments_from_cumulants(KIND[family], kappa) == conv


def test_classical_bernoulli_by_direct_distribution():
    # X + Y with X, Y independent uniform on {-1, 1}
    m4 = sum(Fraction((s + t) ** 4, 4) for s in (-1, 1) for t in (-1, 1))
    assert m4 == 8
