from hypothesis import given, strategies as st

from uauprod.words import (
    Letter,
    all_words,
    blocks,
    bw_multiply,
    eps_of,
    flatten,
    format_word,
    is_alternating,
    lc_mul,
    parse_word,
    unflatten,
)

letter = st.builds(Letter, st.integers(1, 9), st.integers(1, 3), st.integers(1, 3))


@given(st.lists(letter, min_size=1, max_size=6))
def test_serialization_round_trip(w):
    assert parse_word(format_word(w)) == tuple(w)


def test_letter_names():
    assert format_word([Letter(1), Letter(1, 2, 1), Letter(3, 1, 2)]) == "x1 x1@f2 x3#a2"


@given(st.lists(letter, min_size=1, max_size=8))
def test_blocks_alternate_and_flatten_back(w):
    bw = unflatten(w)
    assert is_alternating(eps_of(bw))
    assert [a.gen for a in flatten(bw)] == [a.gen for a in w]
    assert [o for o, _ in blocks(w)] == list(eps_of(bw))


def test_block_multiplication_merges_boundary():
    a, b = (Letter(1),), (Letter(2),)
    u = ((1, a), (2, b))
    v = ((2, b), (1, a))
    assert bw_multiply(u, v) == ((1, a), (2, b + b), (1, a))
    assert bw_multiply((), u) == u


def test_word_count():
    assert len(list(all_words([Letter(1), Letter(2)], 3))) == 2 + 4 + 8


def test_lincomb_product_is_concatenation():
    a, b = Letter(1), Letter(2)
    p = {(a,): 1, (b,): 2}
    sq = lc_mul(p, p)
    assert sq == {(a, a): 1, (a, b): 2, (b, a): 2, (b, b): 4}
