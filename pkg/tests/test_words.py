import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schreierkit import (
    Alphabet,
    AlphabetMismatch,
    EmptyWord,
    FreeWord,
    InvalidLetter,
    Letter,
    ParseError,
    concat_reduce,
    empty_word,
    free_reduce,
    invert,
    is_reduced,
    parse_word,
    prefixes,
)

AB = Alphabet.of("ab")
ABC = Alphabet.of("abc")


def naive_reduce(letters):
    """Oracle: repeat single-pass adjacent cancellation until a fixpoint."""
    current = list(letters)
    while True:
        out = []
        i = 0
        cancelled = False
        while i < len(current):
            if (
                i + 1 < len(current)
                and current[i].gen == current[i + 1].gen
                and current[i].sign == -current[i + 1].sign
            ):
                i += 2
                cancelled = True
            else:
                out.append(current[i])
                i += 1
        current = out
        if not cancelled:
            return tuple(current)


def random_raw(rng, alphabet, max_len):
    return [
        Letter(rng.randrange(alphabet.size), rng.choice((1, -1)))
        for _ in range(rng.randrange(max_len + 1))
    ]


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("A",))
    with pytest.raises(ValueError):
        Alphabet(("ab",))
    assert Alphabet.first(3).names == ("a", "b", "c")


def test_free_reduce_examples():
    assert free_reduce(AB, [Letter(0, 1), Letter(0, -1)]) == empty_word(AB)
    w = free_reduce(ABC, [Letter(0, 1), Letter(1, 1), Letter(1, -1), Letter(2, 1)])
    assert str(w) == "ac"


def test_free_reduce_rejects_bad_letters():
    with pytest.raises(InvalidLetter):
        free_reduce(AB, [Letter(2, 1)])
    with pytest.raises(InvalidLetter):
        free_reduce(AB, [Letter(0, 2)])


def test_free_reduce_against_fixpoint_oracle():
    rng = random.Random(20240521)
    for _ in range(1000):
        raw = random_raw(rng, ABC, 64)
        reduced = free_reduce(ABC, raw)
        assert reduced.letters == naive_reduce(raw)
        assert free_reduce(ABC, reduced.letters) == reduced  # idempotent
        assert is_reduced(reduced.letters)


def test_invert_examples():
    assert invert(empty_word(AB)) == empty_word(AB)
    w = parse_word("aB", AB)
    assert str(invert(w)) == "bA"


def test_invert_laws():
    rng = random.Random(7)
    for _ in range(200):
        w = free_reduce(AB, random_raw(rng, AB, 24))
        assert invert(invert(w)) == w
        assert concat_reduce(w, invert(w)) == empty_word(AB)


def test_concat_examples():
    assert str(concat_reduce(parse_word("ab", AB), parse_word("Ba", AB))) == "aa"
    w = parse_word("abA", AB)
    assert concat_reduce(w, empty_word(AB)) == w


def test_concat_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        concat_reduce(empty_word(AB), empty_word(ABC))


def test_concat_associativity_against_flat_oracle():
    rng = random.Random(99)
    for _ in range(1000):
        u, v, w = (free_reduce(AB, random_raw(rng, AB, 12)) for _ in range(3))
        flat = free_reduce(AB, u.letters + v.letters + w.letters)
        assert concat_reduce(concat_reduce(u, v), w) == flat
        assert concat_reduce(u, concat_reduce(v, w)) == flat


def test_concat_length_parity():
    rng = random.Random(5)
    for _ in range(300):
        u = free_reduce(AB, random_raw(rng, AB, 16))
        v = free_reduce(AB, random_raw(rng, AB, 16))
        assert (len(concat_reduce(u, v)) - len(u) - len(v)) % 2 == 0


def test_prefixes_examples():
    segs = prefixes(parse_word("abAB", AB))
    assert [str(p) for p in segs] == ["1", "a", "ab", "abA"]
    assert [str(p) for p in prefixes(parse_word("aa", AB))] == ["1", "a"]
    with pytest.raises(EmptyWord):
        prefixes(empty_word(AB))


def test_prefixes_properties():
    rng = random.Random(31)
    for _ in range(300):
        w = free_reduce(ABC, random_raw(rng, ABC, 20))
        if len(w) == 0:
            continue
        segs = prefixes(w)
        assert len(segs) == len(w)
        assert len(set(segs)) == len(segs)
        for i, p in enumerate(segs):
            assert len(p) == i
            assert w.letters[: len(p)] == p.letters


def test_parse_examples():
    assert str(parse_word("abA", AB)) == "abA"
    assert parse_word("1", AB) == empty_word(AB)
    assert parse_word("", AB) == empty_word(AB)
    assert parse_word("aA", AB) == empty_word(AB)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_word("abx", AB)
    assert info.value.position == 2


def test_print_parse_roundtrip():
    rng = random.Random(13)
    for _ in range(300):
        w = free_reduce(ABC, random_raw(rng, ABC, 24))
        assert parse_word(str(w), ABC) == w


def test_constructor_rejects_unreduced():
    with pytest.raises(ValueError):
        FreeWord(AB, (Letter(0, 1), Letter(0, -1)))


letters_strategy = st.lists(
    st.tuples(st.integers(0, 2), st.sampled_from((1, -1))).map(lambda t: Letter(*t)),
    max_size=40,
)


@settings(max_examples=300)
@given(letters_strategy)
def test_reduction_idempotent_hypothesis(raw):
    once = free_reduce(ABC, raw)
    assert free_reduce(ABC, once.letters) == once
    assert once.letters == naive_reduce(raw)


@settings(max_examples=200)
@given(letters_strategy, letters_strategy)
def test_concat_hypothesis(raw_u, raw_v):
    u, v = free_reduce(ABC, raw_u), free_reduce(ABC, raw_v)
    uv = concat_reduce(u, v)
    assert is_reduced(uv.letters)
    assert len(uv) <= len(u) + len(v)
    assert uv == free_reduce(ABC, list(raw_u) + list(raw_v))
